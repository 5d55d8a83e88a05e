#pragma once

#include <string>
#include <vector>

#include "kerrml/kernels.hpp"
#include "kerrml/learn.hpp"
#include "kerrml/measure.hpp"

namespace kerrml {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Unlabeled points: header "x1,x2" (or "x1" for 1-D points).
void write_points_csv(const std::string& path,
                      const std::vector<DataPoint>& points);
std::vector<DataPoint> read_points_csv(const std::string& path);

// Labeled points: header "x1,x2,label", label in {-1, 1}.
void write_labeled_csv(const std::string& path,
                       const std::vector<LabeledPoint>& rows);
std::vector<LabeledPoint> read_labeled_csv(const std::string& path);

// Gram matrix: row-major values, full precision, no header.
void write_gram_csv(const std::string& path, const GramMatrix& gram);
GramMatrix read_gram_csv(const std::string& path);

// Displacement sets: JSON array of {"name", "mu": [re, im], "nu": [re, im]}.
void write_displacements_json(const std::string& path,
                              const std::vector<DisplacementPair>& pairs);
std::vector<DisplacementPair> read_displacements_json(const std::string& path);

// Sequential-protocol trace: header "epoch,mu_re,mu_im,empirical_d,avg_error".
void write_trace_csv(const std::string& path,
                     const std::vector<EpochRecord>& trace);

}  // namespace kerrml
