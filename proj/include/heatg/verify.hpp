#ifndef HEATG_VERIFY_HPP
#define HEATG_VERIFY_HPP

// Norm sweeps, weak-type profiles, the bilinear cone identity, envelope-constant
// fitting, Hardy operators and the H^1 diagnostic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatg/areagfun.hpp"
#include "heatg/errors.hpp"
#include "heatg/quadrature.hpp"
#include "heatg/semigroup.hpp"
#include "heatg/specfun.hpp"

namespace heatg {

// ---------------------------------------------------------------------------
// L^p norms
// ---------------------------------------------------------------------------

inline double lp_norm(std::span<const double> values, std::span<const double> weights, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be at least 1");
  if (values.size() != weights.size()) throw ContractError("lp_norm: values and weights differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::abs(values[i]);
    if (v != 0.0) acc += weights[i] * (p == 2.0 ? v * v : std::pow(v, p));
  }
  return std::pow(acc, 1.0 / p);
}

inline double lp_norm(const GridFunction& f, double p) { return lp_norm(f.values(), f.weights(), p); }

// ---------------------------------------------------------------------------
// Test families
// ---------------------------------------------------------------------------

/// `count` random unit vectors in the span of the first `terms` basis functions.
inline std::vector<SpectralExpansion> random_unit_family(const BasisId& basis, std::size_t count,
                                                         std::size_t terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SpectralExpansion> family;
  family.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    SpectralExpansion e{basis, std::vector<double>(terms)};
    for (double& c : e.coeffs) c = normal(rng);
    const double norm = e.l2_norm();
    for (double& c : e.coeffs) c /= norm;
    family.push_back(std::move(e));
  }
  return family;
}

/// Same, with coefficients |N(0,1)| so every coefficient is positive.
inline std::vector<SpectralExpansion> random_positive_family(const BasisId& basis, std::size_t count,
                                                             std::size_t terms, std::uint64_t seed) {
  auto family = random_unit_family(basis, count, terms, seed);
  for (auto& e : family)
    for (double& c : e.coeffs) c = std::abs(c);
  return family;
}

/// Random odd Hermite expansions in span{h_1, h_3, ..., h_{2 terms - 1}}, scaled so their
/// restriction to (0, inf) has unit L^2 norm.
inline std::vector<SpectralExpansion> random_odd_hermite_family(std::size_t count, std::size_t terms,
                                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SpectralExpansion> family;
  family.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    SpectralExpansion e{BasisId::hermite(), std::vector<double>(2 * terms, 0.0)};
    for (std::size_t j = 0; j < terms; ++j) e.coeffs[2 * j + 1] = normal(rng);
    const double scale = std::sqrt(2.0) / e.l2_norm();
    for (double& c : e.coeffs) c *= scale;
    family.push_back(std::move(e));
  }
  return family;
}

inline std::vector<SpectralExpansion> eigenfunction_family(const BasisId& basis, std::size_t count) {
  std::vector<SpectralExpansion> family;
  for (std::size_t n = 0; n < count; ++n) family.push_back(SpectralExpansion::unit(basis, n));
  return family;
}

// ---------------------------------------------------------------------------
// Boundedness sweeps
// ---------------------------------------------------------------------------

enum class AreaOperator { AreaHermite, AreaLaguerre, AreaHalfLine };

inline std::string to_string(AreaOperator op) {
  switch (op) {
    case AreaOperator::AreaHermite: return "AreaHermite";
    case AreaOperator::AreaLaguerre: return "AreaLaguerre";
    case AreaOperator::AreaHalfLine: return "AreaHalfLine";
  }
  return "unknown";
}

struct NormReport {
  double p = 2.0;
  double q = 2.0;
  std::size_t family_size = 0;
  std::vector<double> ratios;
  double sup_ratio = 0.0;
  double inf_ratio = 0.0;
  bool outside_hypothesis = false;
  std::string note;

  void finalize() {
    family_size = ratios.size();
    if (ratios.empty()) return;
    sup_ratio = *std::max_element(ratios.begin(), ratios.end());
    inf_ratio = *std::min_element(ratios.begin(), ratios.end());
  }

  [[nodiscard]] bool finite() const {
    return !ratios.empty() && std::all_of(ratios.begin(), ratios.end(), [](double r) {
      return std::isfinite(r) && r > 0.0;
    });
  }
};

/// Area g-function values of a family on an evaluation grid, plus the grid used for f's norms.
struct FamilyGValues {
  QuadratureRule xrule;
  QuadratureRule frule;
  std::vector<std::vector<double>> g;  // g[k][i]: member k at xrule node i
};

inline FamilyGValues family_g_values(AreaOperator op, std::span<const SpectralExpansion> family,
                                     const ConeQuadratureSpec& spec) {
  FamilyGValues out;
  const Domain domain = op == AreaOperator::AreaHermite ? Domain::Line : Domain::HalfLine;
  out.xrule = evaluation_rule(domain);
  out.frule = default_rule(domain);
  for (const auto& f : family) {
    const bool ok = op == AreaOperator::AreaLaguerre ? f.basis.is_laguerre() : f.basis.is_hermite();
    if (!ok) throw ContractError("boundedness_sweep: family basis does not match the operator");
  }
  out.g.assign(family.size(), std::vector<double>(out.xrule.size(), 0.0));
  for (std::size_t i = 0; i < out.xrule.size(); ++i) {
    const double x = out.xrule.nodes[i];
    const auto values = op == AreaOperator::AreaHalfLine ? area_g_halfline_hermite_batch(family, x, spec)
                                                         : area_g_batch(family, x, spec);
    for (std::size_t k = 0; k < family.size(); ++k) out.g[k][i] = values[k];
  }
  return out;
}

namespace detail {

inline std::vector<double> sample_on(const SpectralExpansion& f, const QuadratureRule& rule) {
  std::vector<double> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = f.evaluate(rule.nodes[i]);
  return v;
}

inline void require_open_p(double p, const char* who) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError(std::string(who) + ": need 1 < p < inf");
}

}  // namespace detail

/// ||g^q f||_p / ||f||_p over the family for each requested p; g is computed once.
inline std::vector<NormReport> boundedness_sweep(AreaOperator op, double q, std::span<const double> ps,
                                                 std::span<const SpectralExpansion> family,
                                                 const ConeQuadratureSpec& spec = {}) {
  for (double p : ps) detail::require_open_p(p, "boundedness_sweep");
  ConeQuadratureSpec sp = spec;
  sp.q = q;
  const auto values = family_g_values(op, family, sp);
  std::vector<NormReport> reports;
  for (double p : ps) {
    NormReport r;
    r.p = p;
    r.q = q;
    r.outside_hypothesis = q < 2.0;
    if (r.outside_hypothesis) r.note = "q < 2 lies outside the boundedness hypothesis";
    for (std::size_t k = 0; k < family.size(); ++k) {
      const double fn = lp_norm(detail::sample_on(family[k], values.frule), values.frule.weights, p);
      r.ratios.push_back(lp_norm(values.g[k], values.xrule.weights, p) / fn);
    }
    r.finalize();
    reports.push_back(std::move(r));
  }
  return reports;
}

inline NormReport boundedness_sweep(AreaOperator op, double q, double p, std::span<const SpectralExpansion> family,
                                    const ConeQuadratureSpec& spec = {}) {
  const double ps[] = {p};
  return boundedness_sweep(op, q, ps, family, spec).front();
}

/// Reverse (||f||_p / ||g^q f||_p) and direct (||g^q f||_p / ||f||_p) ratios for Laguerre families.
struct ReverseReport {
  NormReport reverse;
  NormReport direct;
};

inline std::vector<ReverseReport> reverse_and_equivalence(double q, std::span<const double> ps,
                                                          std::span<const SpectralExpansion> family,
                                                          const ConeQuadratureSpec& spec = {}) {
  for (double p : ps) detail::require_open_p(p, "reverse_and_equivalence");
  for (const auto& f : family)
    if (f.l2_norm() == 0.0) throw ContractError("reverse_and_equivalence: zero function in family");
  const auto direct = boundedness_sweep(AreaOperator::AreaLaguerre, q, ps, family, spec);
  std::vector<ReverseReport> out;
  for (const auto& d : direct) {
    ReverseReport r;
    r.direct = d;
    r.direct.outside_hypothesis = !(q > 1.0 && q <= 2.0);
    r.direct.note = r.direct.outside_hypothesis ? "q outside (1, 2] lies outside the reverse hypothesis" : "";
    r.reverse = r.direct;
    for (double& v : r.reverse.ratios) v = 1.0 / v;
    r.reverse.finalize();
    out.push_back(std::move(r));
  }
  return out;
}

inline ReverseReport reverse_and_equivalence(double q, double p, std::span<const SpectralExpansion> family,
                                             const ConeQuadratureSpec& spec = {}) {
  const double ps[] = {p};
  return reverse_and_equivalence(q, ps, family, spec).front();
}

/// Relative change of the sup ratio between two reports.
inline double resampling_change(const NormReport& a, const NormReport& b) {
  return std::abs(a.sup_ratio - b.sup_ratio) / std::max(a.sup_ratio, b.sup_ratio);
}

// ---------------------------------------------------------------------------
// Weak type (1, 1)
// ---------------------------------------------------------------------------

struct WeakTypeProfile {
  std::vector<double> lambdas;
  std::vector<double> products;
  double l1_norm = 0.0;
  double sup_product_ratio = 0.0;
};

/// lambda * |{g > lambda}| with the measure taken from the grid weights.
inline WeakTypeProfile weak_type_profile(std::span<const double> g, std::span<const double> weights, double l1_norm,
                                         std::span<const double> lambdas) {
  if (g.size() != weights.size()) throw ContractError("weak_type_profile: values and weights differ in length");
  WeakTypeProfile out;
  out.l1_norm = l1_norm;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  double sup = 0.0;
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw ContractError("weak_type_profile: lambdas must be positive");
    double measure = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] > lambda) measure += weights[i];
    out.products.push_back(lambda * measure);
    sup = std::max(sup, lambda * measure);
  }
  out.sup_product_ratio = l1_norm > 0.0 ? sup / l1_norm : 0.0;
  return out;
}

/// Evaluation grid refined geometrically toward `centre`: panels [c + w 2^{k-1}, c + w 2^k]
/// out to the window edges, 8 Gauss-Legendre nodes each.
inline QuadratureRule bump_evaluation_rule(double centre, double width, double lo, double hi) {
  std::vector<double> breaks{centre};
  for (double d = width / 64.0; centre + d < hi || centre - d > lo; d *= 2.0) {
    if (centre + d < hi) breaks.push_back(centre + d);
    if (centre - d > lo) breaks.push_back(centre - d);
  }
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return composite_gauss_legendre(breaks, 8);
}

/// Weak-type profile of a unit-mass Gaussian bump under AreaHermite (on the line) or
/// AreaHalfLine (odd extension, half-line cone). lambdas are `n_lambda` log-spaced
/// values between 1e-2 and 1 times the largest sampled g.
inline WeakTypeProfile weak_type_profile(AreaOperator op, double q, const GaussianMixture& bump,
                                         std::size_t n_lambda = 24, const ConeQuadratureSpec& spec = {}) {
  if (op == AreaOperator::AreaLaguerre)
    throw ContractError("weak_type_profile: bump profiles are available for AreaHermite and AreaHalfLine");
  if (bump.components.empty()) throw ContractError("weak_type_profile: empty bump");
  ConeQuadratureSpec sp = spec;
  sp.q = q;
  const double centre = bump.components.front().centre;
  const double width = bump.min_width();
  const bool half = op == AreaOperator::AreaHalfLine;
  if (half && !(centre > 0.0)) throw ContractError("weak_type_profile: half-line bump must sit at x > 0");
  const QuadratureRule xrule = bump_evaluation_rule(centre, width, half ? 0.0 : -16.0, 16.0);
  const GaussianMixture field = half ? bump.odd_extension() : bump;
  std::vector<double> g(xrule.size());
  for (std::size_t i = 0; i < xrule.size(); ++i) {
    const auto slices = cone_rule(xrule.nodes[i], half ? Domain::HalfLine : Domain::Line, sp);
    g[i] = std::pow(cone_power_integral(slices, q, [&](double y, double s) { return field.heat_ds(y, s); }),
                    1.0 / q);
  }
  const double gmax = *std::max_element(g.begin(), g.end());
  double l1 = 0.0;
  // unit mass on the line; on the half-line the mass inside (0, inf)
  const auto frule = bump_evaluation_rule(centre, width, half ? 0.0 : -16.0, 16.0);
  for (std::size_t i = 0; i < frule.size(); ++i) l1 += frule.weights[i] * std::abs(bump(frule.nodes[i]));
  if (gmax == 0.0) {
    std::vector<double> unit(n_lambda, 1.0);
    return weak_type_profile(g, xrule.weights, l1, unit);
  }
  const auto lambdas = log_spaced(1e-2 * gmax, gmax, n_lambda);
  return weak_type_profile(g, xrule.weights, l1, lambdas);
}

// ---------------------------------------------------------------------------
// Bilinear cone identity
// ---------------------------------------------------------------------------

struct PolarizationReport {
  double alpha = 0.0;
  double exact = 0.0;
  double quadrature = 0.0;
  double rel_err = 0.0;
  double abs_err = 0.0;
};

/// 8 int_0^inf int int_{Gamma_+(x)} F_a F_b dt dy / (t |J_t(y)|) dx, F = (s d/ds W^alpha_s f)_{s=t^2},
/// with |J_t(y)| = min(2t, y + t); slices are split at y = t where |J| has its kink.
inline PolarizationReport polarization_check(std::span<const double> a, std::span<const double> b, double alpha,
                                             const ConeQuadratureSpec& spec = {},
                                             const QuadratureRule& xrule = evaluation_rule(Domain::HalfLine)) {
  const BasisId basis = BasisId::laguerre(alpha);
  const std::size_t nb = std::max(a.size(), b.size());
  PolarizationReport r;
  r.alpha = alpha;
  for (std::size_t n = 0; n < std::min(a.size(), b.size()); ++n) r.exact += a[n] * b[n];
  if (nb == 0) return r;
  const auto split = [](double t) { return std::vector<double>{t}; };
  std::vector<double> mult(nb);
  std::vector<double> values(nb);
  double total = 0.0;
  for (std::size_t i = 0; i < xrule.size(); ++i) {
    const double x = xrule.nodes[i];
    const auto slices = cone_rule(x, Domain::HalfLine, spec, ConeRegionFilter::all(), split);
    double inner = 0.0;
    for (const auto& slice : slices) {
      for (std::size_t n = 0; n < nb; ++n) {
        const double lambda = basis.eigenvalue(n);
        mult[n] = -slice.s * lambda * std::exp(-lambda * slice.s);
      }
      for (std::size_t j = 0; j < slice.y.size(); ++j) {
        const double y = slice.y[j];
        basis_functions(basis, nb - 1, y, values);
        double fa = 0.0;
        double fb = 0.0;
        for (std::size_t n = 0; n < a.size(); ++n) fa += a[n] * mult[n] * values[n];
        for (std::size_t n = 0; n < b.size(); ++n) fb += b[n] * mult[n] * values[n];
        const double jt = std::min(2.0 * slice.t, y + slice.t);
        inner += slice.w[j] * fa * fb / (slice.t * jt);
      }
    }
    total += xrule.weights[i] * inner;
  }
  r.quadrature = 8.0 * total;
  r.abs_err = std::abs(r.quadrature - r.exact);
  r.rel_err = r.abs_err / std::max(std::abs(r.exact), 1e-12);
  return r;
}

// ---------------------------------------------------------------------------
// Envelope fitting
// ---------------------------------------------------------------------------

/// A sample point of an inequality LHS(x, z, s) <= C RHS(x, z, s); unused coordinates are ignored.
struct EnvelopePoint {
  double x = 0.0;
  double z = 0.0;
  double s = 0.0;
};

struct EnvelopeFitReport {
  std::string inequality_id;
  double c_fit = 0.0;
  double margin = 2.0;
  std::size_t training_size = 0;
  std::size_t validation_size = 0;
  double worst_validation_ratio = 0.0;  // max LHS / (C_fit RHS) on validation
  std::vector<EnvelopePoint> violations;

  [[nodiscard]] bool passed() const { return violations.empty(); }
};

using EnvelopeSampler = std::function<double(const EnvelopePoint&)>;

inline EnvelopeFitReport envelope_fit(std::string inequality_id, const EnvelopeSampler& lhs, const EnvelopeSampler& rhs,
                                      std::span<const EnvelopePoint> training, std::span<const EnvelopePoint> validation,
                                      double margin = 2.0) {
  if (training.empty() || validation.empty()) throw ContractError("envelope_fit: empty grid");
  EnvelopeFitReport r;
  r.inequality_id = std::move(inequality_id);
  r.margin = margin;
  r.training_size = training.size();
  r.validation_size = validation.size();
  const auto ratio_at = [&](const EnvelopePoint& pt) {
    const double right = rhs(pt);
    if (!(right > 0.0)) throw ContractError("envelope_fit: RHS vanishes on the grid (grid-design error)");
    return std::abs(lhs(pt)) / right;
  };
  for (const auto& pt : training) r.c_fit = std::max(r.c_fit, ratio_at(pt));
  for (const auto& pt : validation) {
    const double ratio = ratio_at(pt);
    if (r.c_fit > 0.0) r.worst_validation_ratio = std::max(r.worst_validation_ratio, ratio / r.c_fit);
    if (ratio > margin * r.c_fit) r.violations.push_back(pt);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hardy operators
// ---------------------------------------------------------------------------

using RealFunction = std::function<double(double)>;

namespace detail {

/// Gauss-Legendre over [a, b] split at the given interior breakpoints.
inline double integrate_split(const RealFunction& f, double a, double b, std::span<const double> breaks,
                              std::size_t n) {
  std::vector<double> pts{a, b};
  for (double v : breaks)
    if (v > a && v < b) pts.push_back(v);
  std::sort(pts.begin(), pts.end());
  return composite_gauss_legendre(pts, n).integrate(f);
}

}  // namespace detail

/// H_0 f(x) = (1/x) int_0^x f.
inline double hardy_average(const RealFunction& f, double x, std::span<const double> breaks = {},
                            std::size_t n = 48) {
  if (!(x > 0.0)) throw DomainError("hardy_average: x must be positive");
  return detail::integrate_split(f, 0.0, x, breaks, n) / x;
}

/// H_inf f(x) = int_x^{z_max} f(z)/z dz, with f assumed negligible beyond z_max.
inline double hardy_tail(const RealFunction& f, double x, double z_max, std::span<const double> breaks = {},
                         std::size_t n = 48) {
  if (!(x > 0.0)) throw DomainError("hardy_tail: x must be positive");
  if (x >= z_max) return 0.0;
  std::vector<double> pts(breaks.begin(), breaks.end());
  for (double v = 2.0 * x; v < z_max; v *= 2.0) pts.push_back(v);
  return detail::integrate_split([&](double z) { return f(z) / z; }, x, z_max, pts, n);
}

/// The local operator int_{x/2}^{2x} H(x, z) f(z) dz, through z = x -+ v^2.
inline double hardy_local(const RealFunction& f, double x, std::size_t n = 64) {
  if (!(x > 0.0)) throw DomainError("hardy_local: x must be positive");
  double acc = 0.0;
  const auto left = gauss_legendre(n, 0.0, std::sqrt(0.5 * x));
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double v = left.nodes[i];
    const double z = x - v * v;
    acc += left.weights[i] * (2.0 * v / z + 2.0 / std::sqrt(z)) * f(z);
  }
  const auto right = gauss_legendre(n, 0.0, std::sqrt(x));
  for (std::size_t i = 0; i < right.size(); ++i) {
    const double v = right.nodes[i];
    const double z = x + v * v;
    acc += right.weights[i] * (2.0 * v / z + 2.0 / std::sqrt(z)) * f(z);
  }
  return acc;
}

struct HardyReport {
  NormReport average;
  NormReport tail;
  NormReport local;
};

/// ||T f||_p / ||f||_p for T in {H_0, H_inf, local} over (0, 20], on |f| of each member.
inline HardyReport hardy_boundedness(double p, std::span<const SpectralExpansion> family) {
  if (!(p > 1.0)) throw DomainError("hardy_boundedness: need p > 1 for the averaging operator");
  const QuadratureRule xrule = evaluation_rule(Domain::HalfLine);
  const QuadratureRule frule = default_rule(Domain::HalfLine);
  constexpr double z_max = 20.0;
  HardyReport report;
  for (const auto& e : family) {
    if (!e.basis.is_laguerre()) throw ContractError("hardy_boundedness: family must be half-line expansions");
    const RealFunction f = [&e](double z) { return z > 0.0 ? std::abs(e.evaluate(z)) : 0.0; };
    std::vector<double> fv(frule.size());
    for (std::size_t i = 0; i < frule.size(); ++i) fv[i] = f(frule.nodes[i]);
    const double fn = lp_norm(fv, frule.weights, p);
    std::vector<double> h0(xrule.size());
    std::vector<double> hi(xrule.size());
    std::vector<double> hl(xrule.size());
    for (std::size_t i = 0; i < xrule.size(); ++i) {
      const double x = xrule.nodes[i];
      h0[i] = hardy_average(f, x);
      hi[i] = hardy_tail(f, x, z_max);
      hl[i] = hardy_local(f, x);
    }
    report.average.ratios.push_back(lp_norm(h0, xrule.weights, p) / fn);
    report.tail.ratios.push_back(lp_norm(hi, xrule.weights, p) / fn);
    report.local.ratios.push_back(lp_norm(hl, xrule.weights, p) / fn);
  }
  for (NormReport* r : {&report.average, &report.tail, &report.local}) {
    r->p = p;
    r->finalize();
  }
  return report;
}

// ---------------------------------------------------------------------------
// H^1 diagnostic
// ---------------------------------------------------------------------------

struct H1Report {
  double maximal_l1 = 0.0;
  double l1_plus_g_l1 = 0.0;
  std::optional<double> ratio;  // empty when both sides vanish
};

namespace detail {
inline H1Report finish_h1(double maximal, double l1, double g1) {
  H1Report r{maximal, l1 + g1, std::nullopt};
  if (r.l1_plus_g_l1 > 0.0) r.ratio = r.maximal_l1 / r.l1_plus_g_l1;
  return r;
}
}  // namespace detail

/// ||sup_t |W^alpha_t f| ||_1 against ||f||_1 + ||g^2 f||_1 on the half-line evaluation grid.
inline H1Report h1_diagnostic(const SpectralExpansion& f, const ConeQuadratureSpec& spec = {}) {
  if (!f.basis.is_laguerre()) throw ContractError("h1_diagnostic: expects a Laguerre expansion");
  ConeQuadratureSpec sp = spec;
  sp.q = 2.0;
  const QuadratureRule xrule = evaluation_rule(Domain::HalfLine);
  const QuadratureRule frule = default_rule(Domain::HalfLine);
  const auto tgrid = default_maximal_t_grid();
  double maximal = 0.0;
  double g1 = 0.0;
  for (std::size_t i = 0; i < xrule.size(); ++i) {
    const double x = xrule.nodes[i];
    maximal += xrule.weights[i] * maximal_heat(f, x, tgrid);
    g1 += xrule.weights[i] * area_g_batch(std::span<const SpectralExpansion>(&f, 1), x, sp).front();
  }
  const double l1 = lp_norm(detail::sample_on(f, frule), frule.weights, 1.0);
  return detail::finish_h1(maximal, l1, g1);
}

/// Kernel-route version for sampled inputs.
inline H1Report h1_diagnostic(const GridFunction& f, double alpha, const ConeQuadratureSpec& spec = {},
                              const QuadratureRule& xrule = evaluation_rule(Domain::HalfLine, 48)) {
  if (f.domain() != Domain::HalfLine) throw ContractError("h1_diagnostic: input must live on the half-line");
  const BasisId basis = BasisId::laguerre(alpha);
  ConeQuadratureSpec sp = spec;
  sp.q = 2.0;
  const auto tgrid = default_maximal_t_grid();
  double maximal = 0.0;
  double g1 = 0.0;
  for (std::size_t i = 0; i < xrule.size(); ++i) {
    const double x = xrule.nodes[i];
    maximal += xrule.weights[i] * maximal_heat(f, basis, x, tgrid);
    const auto slices = cone_rule(x, Domain::HalfLine, sp);
    g1 += xrule.weights[i] *
          std::sqrt(cone_power_integral(slices, 2.0, [&](double y, double s) { return apply_heat_ds(f, s, basis, y); }));
  }
  return detail::finish_h1(maximal, lp_norm(f, 1.0), g1);
}

}  // namespace heatg

#endif  // HEATG_VERIFY_HPP
