#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kerrml/errors.hpp"
#include "kerrml/io.hpp"
#include "kerrml/kernels.hpp"
#include "kerrml/learn.hpp"
#include "kerrml/measure.hpp"
#include "test_util.hpp"

using kerrml::complexd;
using kerrml::DataPoint;
using kerrml::DisplacementPair;
using kerrml::GramMatrix;
using kerrml::LabeledPoint;

namespace {

// Fresh per-invocation scratch directory so repeated runs never collide.
std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("kerrml_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string scratch_file(const std::string& name) {
  return (scratch_dir() / name).string();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("format_double emits shortest round-tripping decimals") {
  for (const double value :
       {0.0, 1.0, -1.5, 1.0 / 3.0, 1e-300, 6.02e23, 3.141592653589793, -0.1}) {
    CAPTURE(value);
    CHECK(std::stod(kerrml::format_double(value)) == value);
  }
  CHECK(kerrml::format_double(1.0) == "1");
  CHECK(kerrml::format_double(0.5) == "0.5");
  CHECK(kerrml::format_double(0.1) == "0.1");
  CHECK(kerrml::format_double(-2.0) == "-2");
}

TEST_CASE("points CSV round-trips exactly") {
  SUBCASE("two-coordinate points") {
    const std::vector<DataPoint> points{
        DataPoint(0.1, 0.9), DataPoint(1.0 / 3.0, 1e-17),
        DataPoint(0.0, 1.0)};
    const std::string path = scratch_file("points2.csv");
    kerrml::write_points_csv(path, points);

    const auto lines = read_lines(path);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "x1,x2");

    const auto loaded = kerrml::read_points_csv(path);
    REQUIRE(loaded.size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      REQUIRE(loaded[i].dim() == 2);
      CHECK(loaded[i].coords[0] == points[i].coords[0]);
      CHECK(loaded[i].coords[1] == points[i].coords[1]);
    }
  }
  SUBCASE("one-coordinate points get a one-column header") {
    const std::vector<DataPoint> points{DataPoint(0.25), DataPoint(0.75)};
    const std::string path = scratch_file("points1.csv");
    kerrml::write_points_csv(path, points);
    CHECK(read_lines(path)[0] == "x1");
    const auto loaded = kerrml::read_points_csv(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].dim() == 1);
    CHECK(loaded[1].coords[0] == 0.75);
  }
  SUBCASE("malformed inputs throw") {
    CHECK_THROWS_AS(kerrml::write_points_csv(scratch_file("e.csv"), {}),
                    kerrml::domain_error);
    std::vector<DataPoint> ragged{DataPoint(0.1, 0.2), DataPoint(0.3)};
    CHECK_THROWS_AS(kerrml::write_points_csv(scratch_file("r.csv"), ragged),
                    kerrml::domain_error);
    CHECK_THROWS_AS(kerrml::read_points_csv(scratch_file("missing.csv")),
                    kerrml::domain_error);

    const std::string bad = scratch_file("bad_number.csv");
    std::ofstream(bad) << "x1,x2\n0.5,abc\n";
    CHECK_THROWS_AS(kerrml::read_points_csv(bad), kerrml::domain_error);
  }
}

TEST_CASE("labeled CSV round-trips points and labels") {
  const std::vector<LabeledPoint> rows{
      {DataPoint(0.1, 0.2), +1},
      {DataPoint(1.0 / 7.0, 0.99), -1},
      {DataPoint(0.0, 0.0), +1},
  };
  const std::string path = scratch_file("labeled.csv");
  kerrml::write_labeled_csv(path, rows);
  CHECK(read_lines(path)[0] == "x1,x2,label");

  const auto loaded = kerrml::read_labeled_csv(path);
  REQUIRE(loaded.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(loaded[i].x.coords[0] == rows[i].x.coords[0]);
    CHECK(loaded[i].x.coords[1] == rows[i].x.coords[1]);
    CHECK(loaded[i].label == rows[i].label);
  }

  SUBCASE("labels outside {-1, 1} are rejected") {
    const std::string bad = scratch_file("bad_label.csv");
    std::ofstream(bad) << "x1,x2,label\n0.5,0.5,0\n";
    CHECK_THROWS_AS(kerrml::read_labeled_csv(bad), kerrml::domain_error);
  }
  SUBCASE("rows need exactly three fields") {
    const std::string bad = scratch_file("two_fields.csv");
    std::ofstream(bad) << "x1,x2,label\n0.5,0.5\n";
    CHECK_THROWS_AS(kerrml::read_labeled_csv(bad), kerrml::domain_error);
  }
  SUBCASE("writer requires two-coordinate points") {
    const std::vector<LabeledPoint> bad{{DataPoint(0.5), +1}};
    CHECK_THROWS_AS(kerrml::write_labeled_csv(scratch_file("one.csv"), bad),
                    kerrml::domain_error);
  }
}

TEST_CASE("Gram CSV round-trips entries bit-exactly") {
  kerrml::KernelSpec spec;
  spec.kind = kerrml::KernelKind::kerr_coherent_2mode;
  const auto points = testutil::random_unit_square(17, 6);
  const GramMatrix gram = kerrml::gram_exact(points, spec);

  const std::string path = scratch_file("gram.csv");
  kerrml::write_gram_csv(path, gram);
  const GramMatrix loaded = kerrml::read_gram_csv(path);
  REQUIRE(loaded.rows() == gram.rows());
  REQUIRE(loaded.cols() == gram.cols());
  CHECK((loaded.entries - gram.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loaded.provenance == GramMatrix::Provenance::exact);

  SUBCASE("ragged rows throw") {
    const std::string bad = scratch_file("ragged_gram.csv");
    std::ofstream(bad) << "1,0.5\n0.5\n";
    CHECK_THROWS_AS(kerrml::read_gram_csv(bad), kerrml::domain_error);
  }
  SUBCASE("empty file throws") {
    const std::string bad = scratch_file("empty_gram.csv");
    std::ofstream(bad) << "";
    CHECK_THROWS_AS(kerrml::read_gram_csv(bad), kerrml::domain_error);
  }
}

TEST_CASE("displacement JSON round-trips and the bundled table loads") {
  const std::vector<DisplacementPair> pairs{
      {{-0.468484, -0.401083}, {0.64506, 0.419369}, "munu1"},
      {{-0.944138, 1.154442}, {-0.48727, -0.971631}, "munu2"},
      {{-0.734793, 0.161473}, {-1.02449, 0.031192}, "munu3"},
      {{0.400004, 0.603827}, {-0.24941, 0.765836}, "munu4"},
  };

  const std::string path = scratch_file("displacements.json");
  kerrml::write_displacements_json(path, pairs);
  const auto loaded = kerrml::read_displacements_json(path);
  REQUIRE(loaded.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(loaded[i].name == pairs[i].name);
    CHECK(loaded[i].mu == pairs[i].mu);
    CHECK(loaded[i].nu == pairs[i].nu);
  }

  SUBCASE("bundled table matches the canonical values") {
    const auto bundled = kerrml::read_displacements_json(
        std::string(KERRML_DATA_DIR) + "/munu_displacements.json");
    REQUIRE(bundled.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(bundled[i].name == pairs[i].name);
      CHECK(bundled[i].mu == pairs[i].mu);
      CHECK(bundled[i].nu == pairs[i].nu);
    }
  }
  SUBCASE("malformed documents throw") {
    const std::string bad = scratch_file("bad.json");
    std::ofstream(bad) << "{not json";
    CHECK_THROWS_AS(kerrml::read_displacements_json(bad),
                    kerrml::domain_error);

    const std::string object = scratch_file("object.json");
    std::ofstream(object) << "{\"name\": \"munu1\"}";
    CHECK_THROWS_AS(kerrml::read_displacements_json(object),
                    kerrml::domain_error);

    const std::string missing = scratch_file("missing_field.json");
    std::ofstream(missing) << "[{\"name\": \"munu1\", \"mu\": [0.1, 0.2]}]";
    CHECK_THROWS_AS(kerrml::read_displacements_json(missing),
                    kerrml::domain_error);
  }
}

TEST_CASE("sequential traces export with exact fields") {
  kerrml::SequentialConfig cfg;
  cfg.x = 0.25;
  cfg.epochs = 3;
  cfg.shots = 50;
  cfg.seed = 11;
  const auto trace = kerrml::sequential_run(cfg);

  const std::string path = scratch_file("trace.csv");
  kerrml::write_trace_csv(path, trace);
  const auto lines = read_lines(path);
  REQUIRE(lines.size() == trace.size() + 1);
  CHECK(lines[0] == "epoch,mu_re,mu_im,empirical_d,avg_error");

  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::stringstream row(lines[i + 1]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 5);
    CHECK(std::stoi(fields[0]) == trace[i].epoch_index);
    CHECK(std::stod(fields[1]) == trace[i].mu.real());
    CHECK(std::stod(fields[2]) == trace[i].mu.imag());
    CHECK(std::stod(fields[3]) == trace[i].empirical_d);
    CHECK(std::stod(fields[4]) == trace[i].avg_error);
  }

  CHECK_THROWS_AS(
      kerrml::write_trace_csv("/nonexistent-dir/trace.csv", trace),
      kerrml::domain_error);
}
