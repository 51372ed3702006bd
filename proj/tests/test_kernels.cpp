#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "heatg/errors.hpp"
#include "heatg/kernels.hpp"
#include "heatg/quadrature.hpp"
#include "oracles.hpp"
#include "series.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace heatg;

namespace {

double central(const auto& f, double v, double h = 1e-4) {
  // Richardson-extrapolated central difference, O(h^4).
  const auto d = [&](double k) { return (f(v + k) - f(v - k)) / (2.0 * k); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

void check_derivative(double fd, double exact) {
  if (std::abs(exact) < 1e-10) CHECK(std::abs(fd - exact) <= 1e-9);
  else CHECK_THAT(fd, WithinRel(exact, 1e-5));
}

}  // namespace

TEST_CASE("hermite kernel examples", "[kernels]") {
  const double ref = std::sqrt(std::exp(-1.0) / (1.0 - std::exp(-2.0))) / std::sqrt(std::numbers::pi);
  CHECK_THAT(hermite_heat_kernel(0, 0, 1), WithinRel(ref, 1e-14));
  CHECK_THAT(hermite_heat_kernel(0, 0, 1), WithinAbs(0.368003, 1e-5));
  const double eig = series::hermite(200, 1.0, 1.0, 1.0);
  CHECK_THAT(hermite_heat_kernel(1, 1, 1), WithinRel(eig, 1e-12));
  CHECK_THAT(hermite_heat_kernel(1, 1, 1), WithinAbs(0.231823, 1e-5));
  CHECK(hermite_heat_kernel(2, -3, 0.3) == hermite_heat_kernel(-3, 2, 0.3));
  CHECK_THROWS_AS(hermite_heat_kernel(0, 0, 0), DomainError);
  CHECK_THROWS_AS(hermite_heat_kernel(0, 0, -1), DomainError);
}

TEST_CASE("hermite kernel against naive extended precision", "[kernels]") {
  for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0})
    for (double y : {-2.0, 0.3, 3.5})
      for (double t : {0.05, 0.3, 1.0, 4.0}) {
        const double ref = oracle::hermite_kernel(x, y, t);
        INFO("x=" << x << " y=" << y << " t=" << t);
        CHECK_THAT(hermite_heat_kernel(x, y, t), WithinRel(ref, 1e-12) || WithinAbs(ref, 1e-300));
      }
}

TEST_CASE("small times do not overflow", "[kernels]") {
  for (double t : {1e-8, 1e-4}) {
    const double v = hermite_heat_kernel(30.0, 30.0, t);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    CHECK(std::isfinite(laguerre_heat_kernel(30.0, 30.0, t, 0.5)));
    CHECK(std::isfinite(laguerre_heat_kernel_ds(30.0, 30.0, t, 0.5)));
  }
  CHECK(hermite_heat_kernel(30.0, -30.0, 1e-3) >= 0.0);
}

TEST_CASE("mehler consistency on the line", "[kernels]") {
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double x = -4.0 + i, y = -4.0 + j;
        worst = std::max(worst, std::abs(hermite_heat_kernel(x, y, t) - series::hermite(200, x, y, t)));
      }
  CHECK(worst <= 1e-8);
}

TEST_CASE("mehler consistency on the half-line", "[kernels]") {
  for (double a : {-0.25, 0.5, 1.0, 3.7}) {
    double worst = 0.0;
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
          const double x = i, y = j;
          worst = std::max(worst, std::abs(laguerre_heat_kernel(x, y, t, a) - series::laguerre(300, x, y, t, a)));
        }
    INFO("alpha=" << a);
    CHECK(worst <= 1e-7);
  }
  const double eig = series::laguerre(200, 0.7, 1.3, 0.4, 1.0);
  CHECK_THAT(laguerre_heat_kernel(0.7, 1.3, 0.4, 1.0), WithinAbs(eig, 1e-8));
}

TEST_CASE("laguerre kernel against naive extended precision", "[kernels]") {
  for (double a : {-0.25, 0.5, 3.7})
    for (double x : {0.2, 1.0, 3.0})
      for (double y : {0.5, 2.5})
        for (double t : {0.1, 1.0, 3.0}) {
          INFO("alpha=" << a << " x=" << x << " y=" << y << " t=" << t);
          CHECK_THAT(laguerre_heat_kernel(x, y, t, a), WithinRel(oracle::laguerre_kernel(x, y, t, a), 1e-10));
        }
}

TEST_CASE("half-integer laguerre kernel reduces to the reflected hermite kernel", "[kernels]") {
  for (double x : {0.3, 1.0, 2.2})
    for (double y : {0.5, 2.0, 3.1})
      for (double t : {0.1, 0.5, 2.0}) {
        const double lhs = laguerre_heat_kernel(x, y, t, 0.5);
        const double rhs = hermite_heat_kernel(x, y, t) - hermite_heat_kernel(x, -y, t);
        CHECK_THAT(lhs, WithinRel(rhs, 1e-10) || WithinAbs(rhs, 1e-14));
      }
  CHECK_THAT(laguerre_heat_kernel(1, 2, 0.5, 0.5),
             WithinRel(hermite_heat_kernel(1, 2, 0.5) - hermite_heat_kernel(1, -2, 0.5), 1e-10));
}

TEST_CASE("laguerre kernel symmetry and errors", "[kernels]") {
  CHECK(laguerre_heat_kernel(0.4, 1.7, 0.9, 1.3) == laguerre_heat_kernel(1.7, 0.4, 0.9, 1.3));
  CHECK(laguerre_heat_kernel_ds(0.4, 1.7, 0.9, 1.3) == laguerre_heat_kernel_ds(1.7, 0.4, 0.9, 1.3));
  CHECK(laguerre_heat_kernel(0.4, 1.7, 0.9, 1.3) >= 0.0);
  CHECK_THROWS_AS(laguerre_heat_kernel(0.0, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(laguerre_heat_kernel(1.0, -1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(laguerre_heat_kernel(1.0, 1.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(laguerre_heat_kernel_ds(1.0, 1.0, 1.0, -0.6), DomainError);
}

TEST_CASE("hermite s-derivative", "[kernels]") {
  const auto w11 = [](double s) { return hermite_heat_kernel(1, 1, s); };
  CHECK_THAT(central(w11, 1.0), WithinRel(hermite_heat_kernel_ds(1, 1, 1), 1e-6));
  for (double s : {0.1, 1.0, 5.0}) CHECK(hermite_heat_kernel_ds(0, 0, s) < 0.0);
  CHECK(hermite_heat_kernel_ds(2, -1, 0.5) == hermite_heat_kernel_ds(-1, 2, 0.5));
  CHECK_THROWS_AS(hermite_heat_kernel_ds(0, 0, 0), DomainError);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double x = -4.0 + i, y = -4.0 + j;
        const auto f = [&](double s) { return hermite_heat_kernel(x, y, s); };
        INFO("x=" << x << " y=" << y << " t=" << t);
        CHECK_THAT(central(f, t, 1e-4 * t), WithinRel(hermite_heat_kernel_ds(x, y, t), 1e-5));
      }
}

TEST_CASE("laguerre s-derivative", "[kernels]") {
  const auto f = [](double s) { return laguerre_heat_kernel(1, 1, s, 0.5); };
  CHECK_THAT(central(f, 1.0), WithinRel(laguerre_heat_kernel_ds(1, 1, 1, 0.5), 1e-6));
  for (double a : {-0.25, 0.5, 1.0, 3.7})
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
          const double x = i, y = j;
          const auto g = [&](double s) { return laguerre_heat_kernel(x, y, s, a); };
          INFO("alpha=" << a << " x=" << x << " y=" << y << " t=" << t);
          CHECK_THAT(central(g, t, 1e-4 * t), WithinRel(laguerre_heat_kernel_ds(x, y, t, a), 1e-5));
        }
}

TEST_CASE("derivatives match the differentiated eigen-series", "[kernels]") {
  for (double t : {0.5, 1.5}) {
    CHECK_THAT(hermite_heat_kernel_ds(0.7, -1.1, t),
               WithinAbs(series::heat_kernel(BasisId::hermite(), 200, 0.7, -1.1, t, true), 1e-9));
    CHECK_THAT(laguerre_heat_kernel_ds(0.7, 1.1, t, 1.0),
               WithinAbs(series::heat_kernel(BasisId::laguerre(1.0), 300, 0.7, 1.1, t, true), 1e-9));
  }
}

TEST_CASE("mixed derivative", "[kernels]") {
  const auto f = [](double y) { return hermite_heat_kernel_ds(y, 2.0, 0.7); };
  CHECK_THAT(central(f, 1.0), WithinRel(hermite_heat_kernel_dyds(1, 2, 0.7), 1e-5));
  for (double s : {0.1, 1.0, 3.0}) CHECK_THAT(hermite_heat_kernel_dyds(0, 0, s), WithinAbs(0.0, 1e-15));
  for (double y : {-2.5, 0.4, 3.0})
    for (double z : {-1.0, 1.5})
      for (double s : {0.2, 1.3}) {
        const auto g = [&](double v) { return hermite_heat_kernel_ds(v, z, s); };
        check_derivative(central(g, y), hermite_heat_kernel_dyds(y, z, s));
      }
  CHECK_THROWS_AS(hermite_heat_kernel_dyds(0, 0, 0), DomainError);
}

TEST_CASE("odd reflected kernel", "[kernels]") {
  for (double z : {0.3, 2.0})
    for (double s : {0.2, 1.0}) CHECK_THAT(odd_reflected_kernel_ds(0, z, s), WithinAbs(0.0, 1e-15));
  CHECK(odd_reflected_kernel_ds(1, 2, 0.5) == hermite_heat_kernel_ds(1, 2, 0.5) - hermite_heat_kernel_ds(1, -2, 0.5));
  CHECK_THROWS_AS(odd_reflected_kernel_ds(1, 0, 0.5), DomainError);
  CHECK_THROWS_AS(odd_reflected_kernel_ds(1, 1, 0), DomainError);
  CHECK_THROWS_AS(odd_reflected_kernel(1, -1, 0.5), DomainError);
}

TEST_CASE("stable exponent", "[kernels]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-6.0, 6.0), time(0.01, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double x = coord(rng), y = coord(rng), s = time(rng);
    const auto ex = hermite_exponent(x, y, s);
    const double merged = merged_quadratic_part(x, y, s);
    CHECK_THAT(merged, WithinRel(ex.quadratic_part, 1e-12) || WithinAbs(ex.quadratic_part, 1e-13));
    CHECK(ex.quadratic_part <= -(x - y) * (x - y) / (4.0 * -std::expm1(-2.0 * s)) + 1e-12);
    CHECK_THAT(ex.assemble(), WithinRel(oracle::hermite_kernel(x, y, s), 1e-11) || WithinAbs(0.0, 1e-300));
  }
}

TEST_CASE("kernel evaluation records", "[kernels]") {
  const auto k = hermite_kernel_eval(0.5, -0.2, 0.8);
  CHECK(k.value > 0.0);
  CHECK(k.ds_value == hermite_heat_kernel_ds(0.5, -0.2, 0.8));
  const auto l = laguerre_kernel_eval(0.5, 0.2, 0.8, 1.0);
  CHECK(l.value >= 0.0);
  CHECK(std::isfinite(l.ds_value));
}

TEST_CASE("envelope values", "[kernels]") {
  const double e2 = -std::expm1(-2.0);
  CHECK_THAT(envelope(EnvelopeId::HermiteDs, 0, 0, 1), WithinRel(std::exp(-0.5) / std::pow(e2, 1.5), 1e-14));
  CHECK_THAT(envelope(EnvelopeId::HermiteDs, 0, 0, 1), WithinAbs(0.754, 1e-3));
  const double small = std::pow(0.01, 1.0) * std::exp(-0.02 / 8.0) * std::exp(-1.5) / std::pow(e2, 2.5);
  CHECK_THAT(envelope(EnvelopeId::LaguerreSmall, 0.1, 0.1, 1, 0.5), WithinRel(small, 1e-14));
  const double diff = std::exp(0.25) / (4.0 * std::sqrt(-std::expm1(-0.5)));
  CHECK_THAT(envelope(EnvelopeId::Difference, 2, 2, 0.5, 0.5), WithinRel(diff, 1e-14));
  CHECK_THROWS_AS(envelope(EnvelopeId::LaguerreSmall, 3, 3, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(envelope(EnvelopeId::LaguerreLarge, 0.1, 0.1, 1, 0.5), DomainError);
  CHECK_THROWS_AS(envelope(EnvelopeId::Difference, 0.1, 0.1, 1, 0.5), DomainError);
  CHECK(to_string(EnvelopeId::HermiteMixed) == "HermiteMixed");
}

TEST_CASE("hermite kernel is not conservative", "[kernels]") {
  const auto rule = gauss_legendre(400, -20.0, 20.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) total += rule.weights[i] * hermite_heat_kernel_ds(0.0, rule.nodes[i], 1.0);
  // closed form: d/ds [ (cosh s)^{-1/2} ] at s = 1
  const double exact = -0.5 * std::sinh(1.0) / std::pow(std::cosh(1.0), 1.5);
  CHECK_THAT(total, WithinRel(exact, 1e-10));
  CHECK(std::abs(total) > 1e-6);
}
