#pragma once

#include <stdexcept>
#include <string>

namespace kerrml {

// Invalid input: bad arguments, malformed files, out-of-contract parameters.
// Mapped to process exit code 1 by the command-line tools.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: diverging iterates, non-physical intermediate values.
// Mapped to process exit code 2 by the command-line tools.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int exit_success = 0;
inline constexpr int exit_domain_error = 1;
inline constexpr int exit_numerical_error = 2;

}  // namespace kerrml
