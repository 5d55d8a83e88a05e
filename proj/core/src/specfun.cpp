#include "kerrml/specfun.hpp"

#include <cmath>
#include <string>

#include "kerrml/errors.hpp"

namespace kerrml {

LogFactorialTable::LogFactorialTable(std::size_t n_max) : table_(n_max + 1) {
  table_[0] = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    table_[n] = table_[n - 1] + std::log(static_cast<double>(n));
  }
}

double LogFactorialTable::operator()(std::size_t n) const {
  if (n >= table_.size()) {
    throw domain_error("LogFactorialTable: n = " + std::to_string(n) +
                       " exceeds table size " + std::to_string(table_.size()));
  }
  return table_[n];
}

double LogFactorialTable::factorial_ratio(std::size_t a, std::size_t b) const {
  return std::exp((*this)(a) - (*this)(b));
}

std::complex<double> hermite(unsigned n, std::complex<double> z) {
  if (n > specfun_max_degree) {
    throw domain_error("hermite: degree " + std::to_string(n) +
                       " exceeds supported maximum " +
                       std::to_string(specfun_max_degree));
  }
  if (n == 0) return {1.0, 0.0};
  std::complex<double> h_prev{1.0, 0.0};  // H_0
  std::complex<double> h = 2.0 * z;       // H_1
  for (unsigned k = 1; k < n; ++k) {
    const std::complex<double> h_next =
        2.0 * z * h - 2.0 * static_cast<double>(k) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return h;
}

namespace {

// L_n^k(x) for k >= 0 by the three-term recurrence in n:
// (n+1) L_{n+1}^k = (2n + k + 1 - x) L_n^k - (n + k) L_{n-1}^k.
double laguerre_nonneg(unsigned n, unsigned k, double x) {
  if (n == 0) return 1.0;
  double l_prev = 1.0;                                // L_0^k
  double l = 1.0 + static_cast<double>(k) - x;        // L_1^k
  for (unsigned i = 1; i < n; ++i) {
    const double di = static_cast<double>(i);
    const double dk = static_cast<double>(k);
    const double l_next =
        ((2.0 * di + dk + 1.0 - x) * l - (di + dk) * l_prev) / (di + 1.0);
    l_prev = l;
    l = l_next;
  }
  return l;
}

}  // namespace

double assoc_laguerre(unsigned n, int k, double x) {
  if (n > specfun_max_degree) {
    throw domain_error("assoc_laguerre: degree " + std::to_string(n) +
                       " exceeds supported maximum " +
                       std::to_string(specfun_max_degree));
  }
  if (x < 0.0) {
    throw domain_error("assoc_laguerre: argument x must be nonnegative");
  }
  if (static_cast<long long>(n) + k < 0) {
    throw domain_error("assoc_laguerre: requires n + k >= 0");
  }
  if (k >= 0) return laguerre_nonneg(n, static_cast<unsigned>(k), x);

  // k = -m with m <= n: L_n^{-m}(x) = (-x)^m (n-m)!/n! L_{n-m}^m(x).
  const unsigned m = static_cast<unsigned>(-k);
  double prefactor = 1.0;
  for (unsigned i = 0; i < m; ++i) {
    prefactor *= -x / static_cast<double>(n - i);
  }
  return prefactor * laguerre_nonneg(n - m, m, x);
}

}  // namespace kerrml
