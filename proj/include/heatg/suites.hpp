#ifndef HEATG_SUITES_HPP
#define HEATG_SUITES_HPP

// Named verification suites shared by the command-line tool and the acceptance
// runner. Each suite returns a flat list of checks: a measured value, the limit
// it is compared with, and whether it passed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "heatg/areagfun.hpp"
#include "heatg/csv.hpp"
#include "heatg/envelopes.hpp"
#include "heatg/kernels.hpp"
#include "heatg/quadrature.hpp"
#include "heatg/verify.hpp"

namespace heatg {

struct Check {
  std::string name;
  std::string label;  // which case of the check, e.g. "p=4"
  double value = 0.0;
  double limit = 0.0;
  bool ok = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  void at_most(std::string name, std::string label, double value, double limit) {
    checks.push_back({std::move(name), std::move(label), value, limit, std::isfinite(value) && value <= limit});
  }
  void at_least(std::string name, std::string label, double value, double limit) {
    checks.push_back({std::move(name), std::move(label), value, limit, std::isfinite(value) && value >= limit});
  }
  void above(std::string name, std::string label, double value, double limit) {
    checks.push_back({std::move(name), std::move(label), value, limit, std::isfinite(value) && value > limit});
  }

  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }

  [[nodiscard]] std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c);
    return out;
  }

  [[nodiscard]] CsvTable table() const {
    CsvTable t;
    t.columns = {"suite", "check", "case", "value", "limit", "passed"};
    for (const auto& c : checks) t.add_row({suite, c.name, c.label, c.value, c.limit, static_cast<long long>(c.ok)});
    return t;
  }
};

namespace detail {

inline std::string label(const std::string& key, double v) { return key + "=" + format_number(v); }

inline std::string label(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += (out.empty() ? "" : " ") + label(k, v);
  return out;
}

/// max / min of a positive list, infinite if any entry is not positive and finite.
inline double spread(const std::vector<double>& v) {
  if (v.empty()) return INFINITY;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (!(*lo > 0.0) || !std::isfinite(*hi)) return INFINITY;
  return *hi / *lo;
}

/// Sanitized sup ratio: infinite when the report has any non-finite or non-positive ratio.
inline double checked_sup(const NormReport& r) { return r.finite() ? r.sup_ratio : INFINITY; }

}  // namespace detail

/// ||g^2 h_n||_2 = ||h_n||_2 / 2 for n < 16 and the cone-to-vertical identity gap at q = 2, 4.
inline SuiteResult l2_isometry_suite(std::uint64_t seed = 42, const ConeQuadratureSpec& spec = {}) {
  SuiteResult s{"l2-isometry", {}};
  const auto H = BasisId::hermite();
  const auto r = boundedness_sweep(AreaOperator::AreaHermite, 2.0, 2.0, eigenfunction_family(H, 16), spec);
  for (std::size_t n = 0; n < r.ratios.size(); ++n)
    s.at_most("half-isometry-rel-err", detail::label("n", static_cast<double>(n)), std::abs(r.ratios[n] - 0.5) / 0.5,
              1e-4);

  const auto f = random_unit_family(H, 1, 8, seed).front();
  const auto xr = evaluation_rule(Domain::Line);
  for (double q : {2.0, 4.0}) {
    double vq = 0.0;
    for (std::size_t i = 0; i < xr.size(); ++i) vq += xr.weights[i] * std::pow(vertical_g(f, xr.nodes[i], q), q);
    s.at_most("identity-gap-rel", detail::label("q", q), gnorm_identity_gap(f, q, spec) / vq, 1e-4);
  }
  return s;
}

/// sup ||g^q f||_p / ||f||_p over two independent 50-function families; finite and within 10%.
inline SuiteResult boundedness_suite(std::uint64_t seed = 42, double q = 2.0,
                                     const std::vector<double>& ps = {1.25, 2.0, 4.0, 8.0},
                                     const ConeQuadratureSpec& spec = {}) {
  SuiteResult s{"boundedness", {}};
  const auto H = BasisId::hermite();
  const auto a = boundedness_sweep(AreaOperator::AreaHermite, q, ps, random_unit_family(H, 50, 16, seed), spec);
  const auto b = boundedness_sweep(AreaOperator::AreaHermite, q, ps, random_unit_family(H, 50, 16, seed + 1), spec);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto lbl = detail::label({{"q", q}, {"p", ps[i]}});
    s.at_most("sup-ratio-finite", lbl, detail::checked_sup(a[i]), 1e300);
    s.at_most("resampling-change", lbl, resampling_change(a[i], b[i]), 0.10);
  }
  return s;
}

/// lambda |{g f > lambda}| / ||f||_1 for bumps of shrinking width: the sup stays within a factor 2.
inline SuiteResult weak_type_suite(double q = 2.0, const ConeQuadratureSpec& spec = {}) {
  SuiteResult s{"weak-type", {}};
  for (AreaOperator op : {AreaOperator::AreaHermite, AreaOperator::AreaHalfLine}) {
    std::vector<double> sups;
    for (double w : {0.1, 0.05, 0.025}) {
      const auto prof = weak_type_profile(op, q, GaussianMixture::bump(1.0, w), 24, spec);
      sups.push_back(prof.sup_product_ratio);
      s.at_most("weak-product", to_string(op) + " " + detail::label("width", w), prof.sup_product_ratio, 1e300);
    }
    s.at_most("width-spread", to_string(op), detail::spread(sups), 2.0);
  }
  return s;
}

/// Reverse and direct ratios for Laguerre families, resampling stability, and the p = q = 2 window.
inline SuiteResult reverse_suite(std::uint64_t seed = 42, const std::vector<double>& qs = {1.5, 2.0},
                                 const std::vector<double>& ps = {1.25, 2.0, 4.0},
                                 const std::vector<double>& alphas = {0.5, 2.0}, const ConeQuadratureSpec& spec = {}) {
  SuiteResult s{"reverse", {}};
  for (double alpha : alphas) {
    const auto L = BasisId::laguerre(alpha);
    const auto fa = random_unit_family(L, 50, 16, seed);
    const auto fb = random_unit_family(L, 50, 16, seed + 1);
    for (double q : qs) {
      const auto a = reverse_and_equivalence(q, ps, fa, spec);
      const auto b = reverse_and_equivalence(q, ps, fb, spec);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto lbl = detail::label({{"alpha", alpha}, {"q", q}, {"p", ps[i]}});
        s.at_most("direct-sup-finite", lbl, detail::checked_sup(a[i].direct), 1e300);
        s.at_most("reverse-sup-finite", lbl, detail::checked_sup(a[i].reverse), 1e300);
        s.at_most("direct-resampling-change", lbl, resampling_change(a[i].direct, b[i].direct), 0.10);
        s.at_most("reverse-resampling-change", lbl, resampling_change(a[i].reverse, b[i].reverse), 0.10);
        if (q == 2.0 && ps[i] == 2.0)
          for (const auto* r : {&a[i].direct, &b[i].direct}) {
            s.above("direct-ratio-lower", lbl, r->inf_ratio, 0.4);
            s.at_most("direct-ratio-upper", lbl, r->sup_ratio, 0.5 + 1e-3);
          }
      }
    }
    if (std::find(qs.begin(), qs.end(), 2.0) != qs.end()) {
      const auto eig = reverse_and_equivalence(2.0, 2.0, eigenfunction_family(L, 16), spec);
      const auto lbl = detail::label({{"alpha", alpha}, {"q", 2.0}, {"p", 2.0}}) + " eigen";
      s.above("direct-ratio-lower", lbl, eig.direct.inf_ratio, 0.4);
      s.at_most("direct-ratio-upper", lbl, eig.direct.sup_ratio, 0.5 + 1e-3);
    }
  }
  return s;
}

/// Spread of ||sup_t |W_t f| ||_1 / (||f||_1 + ||g^2 f||_1) over a positive family.
inline SuiteResult h1_suite(std::uint64_t seed = 42, const std::vector<double>& alphas = {0.5, 2.0},
                            std::size_t count = 20, const ConeQuadratureSpec& spec = {}) {
  SuiteResult s{"h1", {}};
  for (double alpha : alphas) {
    std::vector<double> ratios;
    for (const auto& f : random_positive_family(BasisId::laguerre(alpha), count, 8, seed)) {
      const auto r = h1_diagnostic(f, spec);
      ratios.push_back(r.ratio.value_or(NAN));
    }
    s.at_most("ratio-spread", detail::label("alpha", alpha), detail::spread(ratios), 25.0);
  }
  return s;
}

/// |int d/ds W_s(0, y) dy| at s = 1 on [-10, 10]: the Hermite semigroup does not conserve mass.
inline SuiteResult non_conservation_suite() {
  SuiteResult s{"non-conservation", {}};
  const auto rule = gauss_legendre(400, -10.0, 10.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * hermite_heat_kernel_ds(0.0, rule.nodes[i], 1.0);
  s.above("mass-derivative", "s=1", std::abs(sum), 1e-6);
  return s;
}

// ---------------------------------------------------------------------------
// Polarization
// ---------------------------------------------------------------------------

struct PolarizationPair {
  std::vector<double> a;
  std::vector<double> b;
};

/// The unit pair (phi_0, phi_0), the orthogonal pair (phi_1, phi_2), then random 8-term unit pairs.
inline std::vector<PolarizationPair> polarization_pairs(std::size_t count, std::uint64_t seed) {
  std::vector<PolarizationPair> out;
  if (count > 0) out.push_back({{1.0}, {1.0}});
  if (count > 1) out.push_back({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  if (count > 2) {
    const auto fam = random_unit_family(BasisId::laguerre(0.0), 2 * (count - 2), 8, seed);
    for (std::size_t k = 0; k + 2 < count; ++k) out.push_back({fam[2 * k].coeffs, fam[2 * k + 1].coeffs});
  }
  return out;
}

/// Relative error for pairs with a nonzero inner product, absolute error for orthogonal pairs.
inline bool polarization_ok(const PolarizationReport& r, double tol = 1e-3) {
  return r.exact == 0.0 ? r.abs_err <= tol : r.rel_err <= tol;
}

inline std::vector<PolarizationReport> polarization_suite(double alpha, std::size_t pairs, std::uint64_t seed,
                                                          const ConeQuadratureSpec& spec = {}) {
  std::vector<PolarizationReport> out;
  for (const auto& pr : polarization_pairs(pairs, seed)) out.push_back(polarization_check(pr.a, pr.b, alpha, spec));
  return out;
}

inline CsvTable polarization_table(const std::vector<PolarizationReport>& reports, double tol = 1e-3) {
  CsvTable t;
  t.columns = {"pair", "alpha", "exact", "quadrature", "abs_err", "rel_err", "passed"};
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    t.add_row({static_cast<long long>(k), r.alpha, r.exact, r.quadrature, r.abs_err, r.rel_err,
               static_cast<long long>(polarization_ok(r, tol))});
  }
  return t;
}

inline CsvTable envelope_table(const std::vector<EnvelopeFitReport>& reports) {
  CsvTable t;
  t.columns = {"inequality_id", "c_fit", "margin", "training_size", "validation_size", "worst_validation_ratio",
               "violations", "passed"};
  for (const auto& r : reports)
    t.add_row({r.inequality_id, r.c_fit, r.margin, static_cast<long long>(r.training_size),
               static_cast<long long>(r.validation_size), r.worst_validation_ratio,
               static_cast<long long>(r.violations.size()), static_cast<long long>(r.passed())});
  return t;
}

}  // namespace heatg

#endif  // HEATG_SUITES_HPP
