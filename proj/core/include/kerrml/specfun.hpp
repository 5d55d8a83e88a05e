#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace kerrml {

// Largest polynomial degree supported by the recurrence evaluators. Far above
// any Fock cutoff used in practice; guards against runaway loop arguments.
inline constexpr unsigned specfun_max_degree = 4096;

// Precomputed table of ln(n!) for n = 0..n_max. Factorial ratios that would
// overflow in linear space are formed as exp of log differences; n! itself
// overflows double precision at n = 171.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::size_t n_max);

  // ln(n!). Throws domain_error when n exceeds the table.
  double operator()(std::size_t n) const;

  // a! / b! computed as exp(ln a! - ln b!), stable for large a, b.
  double factorial_ratio(std::size_t a, std::size_t b) const;

  std::size_t max_n() const { return table_.size() - 1; }

 private:
  std::vector<double> table_;
};

// Physicists' Hermite polynomial H_n(z), by the three-term recurrence
// H_{n+1}(z) = 2 z H_n(z) - 2 n H_{n-1}(z).
std::complex<double> hermite(unsigned n, std::complex<double> z);

// Associated Laguerre polynomial L_n^k(x) by the three-term recurrence in n.
// Negative k = -m (with m <= n, x >= 0) is reduced to the nonnegative case
// via L_n^{-m}(x) = (-x)^m (n-m)!/n! L_{n-m}^m(x).
// Requires n + k >= 0 and x >= 0; violations throw domain_error.
double assoc_laguerre(unsigned n, int k, double x);

}  // namespace kerrml
