#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kerrml/errors.hpp"
#include "kerrml/rng.hpp"
#include "kerrml/specfun.hpp"
#include "oracles.hpp"

using kerrml::assoc_laguerre;
using kerrml::hermite;
using kerrml::LogFactorialTable;
using complexd = std::complex<double>;

TEST_CASE("log factorial table: exact small factorials and recurrence") {
  const LogFactorialTable lf(64);
  CHECK(lf(0) == 0.0);
  CHECK(lf(1) == 0.0);

  double exact = 1.0;
  for (std::size_t n = 1; n <= 20; ++n) {
    exact *= double(n);
    CHECK(std::exp(lf(n)) == doctest::Approx(exact).epsilon(1e-12));
  }
  for (std::size_t n = 1; n <= 64; ++n) {
    CHECK(lf(n) - lf(n - 1) == doctest::Approx(std::log(double(n))).epsilon(1e-12));
    CHECK(lf(n) >= lf(n - 1));  // monotone
  }
}

TEST_CASE("log factorial table: ratio and bounds") {
  const LogFactorialTable lf(128);
  CHECK(lf.factorial_ratio(5, 3) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(lf.factorial_ratio(3, 5) == doctest::Approx(1.0 / 20.0).epsilon(1e-12));
  CHECK(lf.factorial_ratio(100, 98) == doctest::Approx(9900.0).epsilon(1e-10));
  CHECK(lf.max_n() == 128);
  CHECK_THROWS_AS((void)lf(129), kerrml::domain_error);
}

TEST_CASE("hermite: closed-form base cases") {
  CHECK(hermite(0, complexd{3.7, -1.2}) == complexd{1.0, 0.0});
  CHECK(hermite(1, complexd{0.5, 0.0}).real() == doctest::Approx(1.0));
  CHECK(hermite(1, complexd{0.5, 0.0}).imag() == doctest::Approx(0.0));
  // H_5(x) = 32x^5 - 160x^3 + 120x at x = 1.
  const complexd h5 = hermite(5, complexd{1.0, 0.0});
  CHECK(h5.real() == doctest::Approx(32.0 - 160.0 + 120.0).epsilon(1e-12));
  CHECK(h5.imag() == doctest::Approx(0.0));
}

TEST_CASE("hermite: recurrence matches direct series at complex arguments") {
  kerrml::Rng rng(0x4E3);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned n = unsigned(rng.next_u64() % 16);
    const complexd z{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0};
    const complexd got = hermite(n, z);
    const complexd want = oracle::hermite_series(n, z);
    const double scale = std::max(1.0, std::abs(want));
    CHECK(std::abs(got - want) / scale < 1e-9);
  }
}

TEST_CASE("hermite: degree cap") {
  CHECK_THROWS_AS((void)hermite(kerrml::specfun_max_degree + 1, complexd{0, 0}),
                  kerrml::domain_error);
}

TEST_CASE("assoc_laguerre: closed-form base cases") {
  CHECK(assoc_laguerre(0, 3, 1.7) == 1.0);
  CHECK(assoc_laguerre(0, -0, 0.4) == 1.0);
  CHECK(assoc_laguerre(1, 0, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
  // L_3^2(1.5) against the direct series.
  CHECK(assoc_laguerre(3, 2, 1.5) ==
        doctest::Approx(oracle::laguerre_series(3, 2, 1.5)).epsilon(1e-12));
}

TEST_CASE("assoc_laguerre: recurrence matches direct series on random inputs") {
  kerrml::Rng rng(0x1A6);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned n = unsigned(rng.next_u64() % 21);
    const int k = int(rng.next_u64() % 11);
    const double x = 10.0 * rng.uniform();
    const double got = assoc_laguerre(n, k, x);
    const double want = oracle::laguerre_series(n, k, x);
    const double scale = std::max(1.0, std::abs(want));
    CHECK(std::abs(got - want) / scale < 1e-9);
  }
}

TEST_CASE("assoc_laguerre: negative superscript reduction") {
  // L_n^{-m}(x) = (-x)^m (n-m)!/n! L_{n-m}^m(x), exercised against the series
  // on the reduced side.
  const double got = assoc_laguerre(4, -2, 0.9);
  const double want = (0.9 * 0.9) * (2.0 / 24.0) * oracle::laguerre_series(2, 2, 0.9);
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("assoc_laguerre: domain guards") {
  CHECK_THROWS_AS((void)assoc_laguerre(2, -3, 1.0), kerrml::domain_error);
  CHECK_THROWS_AS((void)assoc_laguerre(2, 0, -0.5), kerrml::domain_error);
}
