#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatg/errors.hpp"
#include "heatg/semigroup.hpp"
#include "heatg/verify.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace heatg;

namespace {

const BasisId H = BasisId::hermite();

GridFunction sampled(const BasisId& basis, int n) {
  return GridFunction::sample(domain_of(basis), [&](double x) { return basis_function(basis, n, x); });
}

}  // namespace

TEST_CASE("expand recovers basis coefficients", "[semigroup]") {
  const auto e3 = expand(sampled(H, 3), H, 20);
  for (std::size_t n = 0; n <= 20; ++n) CHECK_THAT(e3.coeffs[n], WithinAbs(n == 3 ? 1.0 : 0.0, 1e-9));

  const auto mix = GridFunction::sample(Domain::Line, [](double x) {
    return (hermite_function(0, x) + 2.0 * hermite_function(5, x)) / std::sqrt(5.0);
  });
  const auto em = expand(mix, H, 30);
  CHECK_THAT(em.l2_norm() * em.l2_norm(), WithinAbs(1.0, 1e-8));

  const auto L = BasisId::laguerre(0.5);
  const auto el = expand(sampled(L, 2), L, 20);
  for (std::size_t n = 0; n <= 20; ++n) CHECK_THAT(el.coeffs[n], WithinAbs(n == 2 ? 1.0 : 0.0, 1e-8));

  CHECK_THROWS_AS(expand(sampled(H, 0), L, 4), ContractError);
}

TEST_CASE("spectral heat multipliers", "[semigroup]") {
  const auto w = apply_heat_spectral(SpectralExpansion::unit(H, 3), 0.2);
  CHECK_THAT(w.coeffs[3], WithinRel(std::exp(-0.7), 1e-15));
  CHECK_THAT(w.coeffs[3], WithinAbs(0.496585, 1e-6));
  const auto l = apply_heat_spectral(SpectralExpansion::unit(BasisId::laguerre(0.5), 1), 0.1);
  CHECK_THAT(l.coeffs[1], WithinRel(std::exp(-0.35), 1e-15));

  const auto f = random_unit_family(H, 1, 16, 5).front();
  const auto twice = apply_heat_spectral(apply_heat_spectral(f, 0.3), 0.45);
  const auto once = apply_heat_spectral(f, 0.75);
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) CHECK_THAT(twice.coeffs[n], WithinRel(once.coeffs[n], 1e-14));
  CHECK_THROWS_AS(apply_heat_spectral(f, 0.0), DomainError);
}

TEST_CASE("integral route examples", "[semigroup]") {
  CHECK_THAT(apply_heat_integral(sampled(H, 3), 0.2, H, 1.0), WithinAbs(std::exp(-0.7) * hermite_function(3, 1.0), 1e-7));
  const auto zero = GridFunction::sample(Domain::Line, [](double) { return 0.0; });
  CHECK(apply_heat_integral(zero, 0.4, H, 0.3) == 0.0);
  const auto L1 = BasisId::laguerre(1.0);
  CHECK_THAT(apply_heat_integral(sampled(L1, 0), 0.3, L1, 2.0),
             WithinAbs(std::exp(-0.6) * laguerre_function(0, 1.0, 2.0), 1e-7));
  CHECK_THROWS_AS(apply_heat_integral(sampled(H, 3), 0.0, H, 1.0), DomainError);
  CHECK_THROWS_AS(apply_heat_ds(sampled(H, 3), -1.0, H, 1.0), DomainError);
}

TEST_CASE("time derivative of the semigroup", "[semigroup]") {
  for (int n : {0, 2, 7})
    for (double s : {0.2, 1.0}) {
      const double exact = -(n + 0.5) * std::exp(-(n + 0.5) * s) * hermite_function(n, 0.6);
      CHECK_THAT(apply_heat_ds(SpectralExpansion::unit(H, n), s, 0.6), WithinRel(exact, 1e-13));
      CHECK_THAT(apply_heat_ds(sampled(H, n), s, H, 0.6), WithinAbs(exact, 1e-7));
    }
  const SpectralExpansion f{H, {1.0 / std::sqrt(2.0), 0, 0, 0, 1.0 / std::sqrt(2.0)}};
  CHECK_THAT(apply_heat_ds(f.sample(), 0.5, H, 0.7), WithinAbs(apply_heat_ds(f, 0.5, 0.7), 1e-6));

  const auto L = BasisId::laguerre(0.5);
  for (double x : {0.4, 1.5}) {
    const double exact = -5.5 * std::exp(-5.5 * 0.3) * laguerre_function(2, 0.5, x);
    CHECK_THAT(apply_heat_ds(SpectralExpansion::unit(L, 2), 0.3, x), WithinRel(exact, 1e-13));
    CHECK_THAT(apply_heat_ds(sampled(L, 2), 0.3, L, x), WithinAbs(exact, 1e-7));
  }
}

TEST_CASE("integral and spectral routes agree", "[semigroup]") {
  for (const BasisId basis : {H, BasisId::laguerre(0.5), BasisId::laguerre(2.0)}) {
    const auto family = random_unit_family(basis, 4, 16, 42);
    const auto xs = basis.is_hermite() ? std::vector<double>{-6.0, -2.5, -0.3, 0.0, 1.1, 4.0, 7.5}
                                       : std::vector<double>{0.05, 0.4, 1.0, 2.7, 5.0, 8.0};
    double worst = 0.0;
    for (const auto& f : family) {
      const auto g = f.sample();
      for (double t : {0.1, 0.5, 1.0})
        for (double x : xs)
          worst = std::max(worst, std::abs(apply_heat_integral(g, t, basis, x) - f.evaluate_heat(x, t)));
    }
    INFO(basis.name());
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("semigroup law through the integral route", "[semigroup]") {
  const auto f = random_unit_family(H, 1, 16, 43).front().sample();
  const auto rule = default_rule(Domain::Line);
  const auto first = GridFunction::sample(Domain::Line, rule, [&](double y) { return apply_heat_integral(f, 0.3, H, y); });
  for (double x : {-2.0, 0.0, 0.9, 3.3}) {
    const double two_step = apply_heat_integral(first, 0.4, H, x);
    CHECK_THAT(two_step, WithinAbs(apply_heat_integral(f, 0.7, H, x), 1e-5));
  }
}

TEST_CASE("heat semigroup contracts in L2", "[semigroup]") {
  for (const BasisId basis : {H, BasisId::laguerre(-0.25), BasisId::laguerre(1.0)}) {
    const double lambda0 = basis.eigenvalue(0);
    for (const auto& f : random_unit_family(basis, 10, 16, 42))
      for (double t : {0.1, 0.5, 1.0})
        CHECK(apply_heat_spectral(f, t).l2_norm() <= std::exp(-lambda0 * t) * f.l2_norm() * (1.0 + 1e-14));
  }
}

TEST_CASE("odd extension", "[semigroup]") {
  const auto one = GridFunction::sample(Domain::HalfLine, [](double) { return 1.0; });
  const auto odd = odd_extension(one);
  REQUIRE(odd.size() == 2 * one.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(odd.values()[one.size() - 1 - i] == -1.0);
  for (std::size_t i = 0; i + 1 < odd.size(); ++i) REQUIRE(odd.nodes()[i] < odd.nodes()[i + 1]);

  const auto phi = sampled(BasisId::laguerre(0.5), 0);
  const auto phi_o = odd_extension(phi);
  for (double x : {0.3, 1.2, 2.5})
    for (double s : {0.2, 1.0})
      CHECK_THAT(apply_heat_integral(phi_o, s, H, -x), WithinAbs(-apply_heat_integral(phi_o, s, H, x), 1e-12));

  const auto e = expand(phi_o, H, 21);
  for (std::size_t n = 0; n <= 21; n += 2) CHECK(std::abs(e.coeffs[n]) <= 1e-10);
  CHECK_THROWS_AS(odd_extension(sampled(H, 1)), ContractError);
}

TEST_CASE("maximal function", "[semigroup]") {
  const auto grid = default_maximal_t_grid();
  REQUIRE(grid.size() == 64);
  const auto h0 = sampled(H, 0);
  const double expected = std::exp(-0.5 * grid.front()) * hermite_function(0, 0.0);
  CHECK_THAT(maximal_heat(h0, H, 0.0, grid), WithinRel(expected, 1e-9));
  CHECK_THAT(maximal_heat(SpectralExpansion::unit(H, 0), 0.0, grid), WithinRel(expected, 1e-14));
  const auto zero = GridFunction::sample(Domain::Line, [](double) { return 0.0; });
  CHECK(maximal_heat(zero, H, 1.0, grid) == 0.0);
  CHECK_THROWS_AS(maximal_heat(h0, H, 0.0, std::vector<double>{}), ContractError);

  const auto fine = log_spaced(1e-3, 10.0, 127);
  for (const auto& f : random_unit_family(H, 5, 16, 42))
    for (double x : {-1.5, 0.2, 2.0}) {
      const double coarse = maximal_heat(f, x, grid);
      CHECK_THAT(maximal_heat(f, x, fine), WithinRel(coarse, 1e-4));
    }
}

TEST_CASE("gaussian mixture heat flow", "[semigroup]") {
  const auto bump = GaussianMixture::bump(1.0, 0.3);
  CHECK_THAT(bump.l1_norm_bound(), WithinRel(1.0, 1e-14));
  const auto src = bump.as_source();
  for (double y : {-1.0, 0.5, 1.0, 2.4})
    for (double s : {0.05, 0.4, 2.0}) {
      CHECK_THAT(bump.heat(y, s), WithinAbs(apply_heat_integral(src, s, H, y), 1e-10));
      CHECK_THAT(bump.heat_ds(y, s), WithinAbs(apply_heat_ds(src, s, H, y), 1e-9));
    }
  const auto odd = bump.odd_extension();
  CHECK(odd(0.0) == 0.0);
  CHECK_THAT(odd.heat(-0.7, 0.3), WithinAbs(-odd.heat(0.7, 0.3), 1e-15));
}

TEST_CASE("grid functions validate input", "[semigroup]") {
  CHECK_THROWS_AS(GridFunction(Domain::Line, {0.0, 1.0}, {1.0}, {1.0, 1.0}), ContractError);
  CHECK_THROWS_AS(GridFunction(Domain::Line, {1.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}), ContractError);
  CHECK_THROWS_AS(GridFunction(Domain::Line, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}), ContractError);
  CHECK_THROWS_AS(GridFunction(Domain::HalfLine, {0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}), ContractError);
  const auto g = sampled(H, 2);
  CHECK_THAT(g.interpolate(0.123), WithinAbs(hermite_function(2, 0.123), 1e-8));
  CHECK(g.interpolate(11.0) == 0.0);
}
