#include "kerrml/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "kerrml/errors.hpp"

namespace kerrml {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw domain_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open for reading: " + path);
  return in;
}

double parse_double(const std::string& token, const std::string& path) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw domain_error("malformed number '" + token + "' in " + path);
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

void check_stream(const std::ofstream& out, const std::string& path) {
  if (!out) throw domain_error("write failed: " + path);
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw numerical_error("format_double failed");
  return std::string(buffer, ptr);
}

void write_points_csv(const std::string& path,
                      const std::vector<DataPoint>& points) {
  if (points.empty()) throw domain_error("write_points_csv: no points");
  std::ofstream out = open_out(path);
  const std::size_t dim = points.front().dim();
  for (std::size_t k = 0; k < dim; ++k) {
    out << (k ? ",x" : "x") << (k + 1);
  }
  out << "\n";
  for (const auto& p : points) {
    if (p.dim() != dim) throw domain_error("write_points_csv: ragged points");
    for (std::size_t k = 0; k < dim; ++k) {
      if (k) out << ",";
      out << format_double(p.coords[k]);
    }
    out << "\n";
  }
  check_stream(out, path);
}

std::vector<DataPoint> read_points_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw domain_error("empty CSV: " + path);
  std::vector<DataPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DataPoint p;
    for (const auto& field : split_csv_line(line)) {
      p.coords.push_back(parse_double(field, path));
    }
    points.push_back(std::move(p));
  }
  return points;
}

void write_labeled_csv(const std::string& path,
                       const std::vector<LabeledPoint>& rows) {
  if (rows.empty()) throw domain_error("write_labeled_csv: no rows");
  std::ofstream out = open_out(path);
  out << "x1,x2,label\n";
  for (const auto& row : rows) {
    if (row.x.dim() != 2) {
      throw domain_error("write_labeled_csv: expects 2-coordinate points");
    }
    out << format_double(row.x.coords[0]) << ","
        << format_double(row.x.coords[1]) << "," << row.label << "\n";
  }
  check_stream(out, path);
}

std::vector<LabeledPoint> read_labeled_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw domain_error("empty CSV: " + path);
  std::vector<LabeledPoint> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw domain_error("expected x1,x2,label row in " + path);
    }
    LabeledPoint row;
    row.x = DataPoint(parse_double(fields[0], path),
                      parse_double(fields[1], path));
    const double raw_label = parse_double(fields[2], path);
    if (raw_label != 1.0 && raw_label != -1.0) {
      throw domain_error("label must be -1 or 1 in " + path);
    }
    row.label = raw_label > 0 ? +1 : -1;
    rows.push_back(row);
  }
  return rows;
}

void write_gram_csv(const std::string& path, const GramMatrix& gram) {
  std::ofstream out = open_out(path);
  for (long i = 0; i < gram.rows(); ++i) {
    for (long j = 0; j < gram.cols(); ++j) {
      if (j) out << ",";
      out << format_double(gram.entries(i, j));
    }
    out << "\n";
  }
  check_stream(out, path);
}

GramMatrix read_gram_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& field : split_csv_line(line)) {
      row.push_back(parse_double(field, path));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw domain_error("ragged Gram CSV: " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw domain_error("empty Gram CSV: " + path);
  GramMatrix gram;
  gram.entries.resize(static_cast<long>(rows.size()),
                      static_cast<long>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      gram.entries(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    }
  }
  return gram;
}

void write_displacements_json(const std::string& path,
                              const std::vector<DisplacementPair>& pairs) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& pair : pairs) {
    doc.push_back({{"name", pair.name},
                   {"mu", {pair.mu.real(), pair.mu.imag()}},
                   {"nu", {pair.nu.real(), pair.nu.imag()}}});
  }
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
  check_stream(out, path);
}

std::vector<DisplacementPair> read_displacements_json(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw domain_error("malformed displacement JSON " + path + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw domain_error("displacement JSON must be an array: " + path);
  }
  std::vector<DisplacementPair> pairs;
  for (const auto& item : doc) {
    try {
      DisplacementPair pair;
      pair.name = item.at("name").get<std::string>();
      const auto& mu = item.at("mu");
      const auto& nu = item.at("nu");
      pair.mu = complexd{mu.at(0).get<double>(), mu.at(1).get<double>()};
      pair.nu = complexd{nu.at(0).get<double>(), nu.at(1).get<double>()};
      pairs.push_back(std::move(pair));
    } catch (const nlohmann::json::exception& e) {
      throw domain_error("malformed displacement entry in " + path + ": " +
                         e.what());
    }
  }
  return pairs;
}

void write_trace_csv(const std::string& path,
                     const std::vector<EpochRecord>& trace) {
  std::ofstream out = open_out(path);
  out << "epoch,mu_re,mu_im,empirical_d,avg_error\n";
  for (const auto& record : trace) {
    out << record.epoch_index << "," << format_double(record.mu.real()) << ","
        << format_double(record.mu.imag()) << ","
        << format_double(record.empirical_d) << ","
        << format_double(record.avg_error) << "\n";
  }
  check_stream(out, path);
}

}  // namespace kerrml
