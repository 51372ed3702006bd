#ifndef HEATG_AREAGFUN_HPP
#define HEATG_AREAGFUN_HPP

// Area and vertical g-functions by tensor quadrature over parabolic cones,
// and cone norms of the derivative kernels.
//
// The cone Gamma(x) = {(y, t): |x - y| < t} is sampled with Gauss-Legendre in
// log t and Gauss-Legendre in y on each t-slice; on the half-line the slice is
// clipped to (max(0, x - t), x + t).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatg/errors.hpp"
#include "heatg/kernels.hpp"
#include "heatg/quadrature.hpp"
#include "heatg/semigroup.hpp"
#include "heatg/specfun.hpp"

namespace heatg {

struct ConeQuadratureSpec {
  double t_min = 1e-3;
  double t_max = 6.0;
  std::size_t n_t = 96;
  std::size_t n_y = 32;
  double q = 2.0;

  void validate() const {
    if (!(t_min > 0.0) || !(t_max > t_min)) throw ContractError("cone spec: need 0 < t_min < t_max");
    if (n_t < 8 || n_y < 8) throw ContractError("cone spec: n_t and n_y must be at least 8");
    if (!(q > 1.0)) throw ContractError("cone spec: q must exceed 1");
  }

  [[nodiscard]] ConeQuadratureSpec refined() const {
    ConeQuadratureSpec r = *this;
    r.n_t *= 2;
    r.n_y *= 2;
    return r;
  }

  [[nodiscard]] ConeQuadratureSpec with_halved_apex() const {
    ConeQuadratureSpec r = *this;
    r.t_min *= 0.5;
    return r;
  }
};

enum class RegionKind { All, SmallBessel, LargeBessel };

/// Restricts a cone to L(z) (w <= 1) or R(z) (w >= 1), w = y z e^{-t^2} / (1 - e^{-2t^2}).
struct ConeRegionFilter {
  RegionKind kind = RegionKind::All;
  double z = 0.0;

  static ConeRegionFilter all() { return {}; }
  static ConeRegionFilter small(double z) { return {RegionKind::SmallBessel, z}; }
  static ConeRegionFilter large(double z) { return {RegionKind::LargeBessel, z}; }

  /// The y at which w = 1 on the slice of height t (w is increasing in y).
  [[nodiscard]] double boundary(double t) const { return 2.0 * std::sinh(t * t) / z; }

  [[nodiscard]] bool accepts(double y, double t) const {
    if (kind == RegionKind::All) return true;
    const bool below = y <= boundary(t);
    return kind == RegionKind::SmallBessel ? below : !below;
  }
};

struct GFunctionResult {
  double x = 0.0;
  double value = 0.0;
  double refinement_delta = 0.0;
};

/// One t-slice of a cone rule: y nodes and the plain dt dy weights (no 1/t^2).
struct ConeSlice {
  double t = 0.0;
  double s = 0.0;
  std::vector<double> y;
  std::vector<double> w;
};

namespace detail {

inline void append_segment(ConeSlice& slice, double a, double b, std::size_t n, bool endpoint_at_zero,
                           double wt) {
  if (!(b > a)) return;
  if (endpoint_at_zero) {
    // y = b u^2 clusters nodes at the origin where half-line integrands behave like y^p.
    const auto rule = gauss_legendre_halfline(n, b);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      slice.y.push_back(rule.nodes[i]);
      slice.w.push_back(wt * rule.weights[i]);
    }
    return;
  }
  const auto rule = gauss_legendre(n, a, b);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    slice.y.push_back(rule.nodes[i]);
    slice.w.push_back(wt * rule.weights[i]);
  }
}

inline std::size_t log_panels(std::size_t n_t) { return n_t >= 32 ? 4 : 1; }

inline double power(double v, double q) { return q == 2.0 ? v * v : std::pow(v, q); }

}  // namespace detail

/// Tensor rule over Gamma(x) (Line) or Gamma_+(x) (HalfLine), optionally restricted by a
/// region filter and with extra per-slice breakpoints.
inline std::vector<ConeSlice> cone_rule(double x, Domain domain, const ConeQuadratureSpec& spec,
                                        const ConeRegionFilter& filter = ConeRegionFilter::all(),
                                        const std::function<std::vector<double>(double)>& extra_breaks = {}) {
  spec.validate();
  if (filter.kind != RegionKind::All && !(filter.z > 0.0))
    throw ContractError("cone_rule: Bessel region filters need z > 0");
  if (filter.kind != RegionKind::All && domain != Domain::HalfLine)
    throw ContractError("cone_rule: Bessel region filters apply to half-line cones only");
  // On the half-line the slice meets the origin from t = x on; the t-integrand has a kink there.
  const double kink = domain == Domain::HalfLine ? x : 0.0;
  const auto trule = gauss_legendre_log(spec.n_t, spec.t_min, spec.t_max, detail::log_panels(spec.n_t), kink);
  std::vector<ConeSlice> slices;
  slices.reserve(trule.size());
  for (std::size_t k = 0; k < trule.size(); ++k) {
    const double t = trule.nodes[k];
    ConeSlice slice{t, t * t, {}, {}};
    const double a = domain == Domain::HalfLine ? std::max(0.0, x - t) : x - t;
    const double b = x + t;
    if (!(b > a)) continue;
    std::vector<double> breaks{a, b};
    if (filter.kind != RegionKind::All) breaks.push_back(filter.boundary(t));
    if (extra_breaks)
      for (double v : extra_breaks(t)) breaks.push_back(v);
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double lo = std::max(a, breaks[i]);
      const double hi = std::min(b, breaks[i + 1]);
      if (!(hi > lo)) continue;
      if (!filter.accepts(0.5 * (lo + hi), t)) continue;
      const bool at_zero = domain == Domain::HalfLine && lo == 0.0;
      detail::append_segment(slice, lo, hi, spec.n_y, at_zero, trule.weights[k]);
    }
    if (!slice.y.empty()) slices.push_back(std::move(slice));
  }
  return slices;
}

/// int int_cone |s * field(y, s)|^q dt dy / t^2 with s = t^2.
template <class Field>
double cone_power_integral(const std::vector<ConeSlice>& slices, double q, Field&& field) {
  double acc = 0.0;
  for (const auto& slice : slices) {
    const double inv_t2 = 1.0 / (slice.t * slice.t);
    for (std::size_t j = 0; j < slice.y.size(); ++j) {
      const double v = std::abs(slice.s * field(slice.y[j], slice.s));
      if (v != 0.0) acc += slice.w[j] * inv_t2 * detail::power(v, q);
    }
  }
  return acc;
}

namespace detail {

/// Evaluates a Field-valued area function and records the change under one grid doubling
/// and under halving t_min.
template <class Eval>
GFunctionResult with_refinement(double x, const ConeQuadratureSpec& spec, Eval&& eval) {
  const double base = eval(spec);
  const double finer = eval(spec.refined());
  const double deeper = eval(spec.with_halved_apex());
  return {x, base, std::max(std::abs(finer - base), std::abs(deeper - base))};
}

inline void require_domain_point(Domain domain, double x, const char* who) {
  if (domain == Domain::HalfLine && !(x > 0.0)) throw DomainError(std::string(who) + ": x must be positive");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spectral batch evaluation
// ---------------------------------------------------------------------------

/// Area g-functions of many expansions in one basis at one point, sharing the basis
/// evaluations over the cone nodes.
inline std::vector<double> area_g_batch(std::span<const SpectralExpansion> family, double x,
                                        const ConeQuadratureSpec& spec) {
  if (family.empty()) return {};
  const BasisId basis = family.front().basis;
  std::size_t nmax = 0;
  for (const auto& f : family) {
    if (!(f.basis == basis)) throw ContractError("area_g_batch: family members must share a basis");
    nmax = std::max(nmax, f.nmax());
  }
  const Domain domain = domain_of(basis);
  detail::require_domain_point(domain, x, "area_g");
  const auto slices = cone_rule(x, domain, spec);
  const std::size_t nb = nmax + 1;
  std::vector<double> acc(family.size(), 0.0);
  std::vector<double> mult(nb);
  std::vector<double> values(nb);
  for (const auto& slice : slices) {
    for (std::size_t n = 0; n < nb; ++n) {
      const double lambda = basis.eigenvalue(n);
      mult[n] = -slice.s * lambda * std::exp(-lambda * slice.s);
    }
    const double inv_t2 = 1.0 / (slice.t * slice.t);
    for (std::size_t j = 0; j < slice.y.size(); ++j) {
      basis_functions(basis, nmax, slice.y[j], values);
      const double wj = slice.w[j] * inv_t2;
      for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& c = family[k].coeffs;
        double v = 0.0;
        for (std::size_t n = 0; n < c.size(); ++n) v += c[n] * mult[n] * values[n];
        v = std::abs(v);
        if (v != 0.0) acc[k] += wj * detail::power(v, spec.q);
      }
    }
  }
  for (double& a : acc) a = std::pow(a, 1.0 / spec.q);
  return acc;
}

inline GFunctionResult area_g(const SpectralExpansion& f, double x, const ConeQuadratureSpec& spec) {
  return detail::with_refinement(x, spec, [&](const ConeQuadratureSpec& sp) {
    return area_g_batch(std::span<const SpectralExpansion>(&f, 1), x, sp).front();
  });
}

// ---------------------------------------------------------------------------
// Kernel-route area functions
// ---------------------------------------------------------------------------

inline GFunctionResult area_g(const GridFunction& f, double x, const ConeQuadratureSpec& spec,
                              const BasisId& basis) {
  if (f.domain() != domain_of(basis)) throw ContractError("area_g: grid domain does not match the basis");
  detail::require_domain_point(f.domain(), x, "area_g");
  return detail::with_refinement(x, spec, [&](const ConeQuadratureSpec& sp) {
    const auto slices = cone_rule(x, f.domain(), sp);
    const double v = cone_power_integral(slices, sp.q, [&](double y, double s) {
      return apply_heat_ds(f, s, basis, y);
    });
    return std::pow(v, 1.0 / sp.q);
  });
}

inline GFunctionResult area_g(const FunctionSource& f, double x, const ConeQuadratureSpec& spec,
                              const BasisId& basis) {
  if (f.domain != domain_of(basis)) throw ContractError("area_g: source domain does not match the basis");
  detail::require_domain_point(f.domain, x, "area_g");
  return detail::with_refinement(x, spec, [&](const ConeQuadratureSpec& sp) {
    const auto slices = cone_rule(x, f.domain, sp);
    const double v = cone_power_integral(slices, sp.q, [&](double y, double s) {
      return apply_heat_ds(f, s, basis, y);
    });
    return std::pow(v, 1.0 / sp.q);
  });
}

/// Hermite area function of a Gaussian mixture on the line, through its closed-form heat flow.
inline GFunctionResult area_g(const GaussianMixture& f, double x, const ConeQuadratureSpec& spec) {
  return detail::with_refinement(x, spec, [&](const ConeQuadratureSpec& sp) {
    const auto slices = cone_rule(x, Domain::Line, sp);
    const double v = cone_power_integral(slices, sp.q, [&](double y, double s) { return f.heat_ds(y, s); });
    return std::pow(v, 1.0 / sp.q);
  });
}

/// g^{q,+}: the Hermite area integrand of the odd extension, over Gamma_+(x).
inline GFunctionResult area_g_halfline_hermite(const GridFunction& f, double x, const ConeQuadratureSpec& spec) {
  if (f.domain() != Domain::HalfLine) throw ContractError("area_g_halfline_hermite: input must live on the half-line");
  if (!(x > 0.0)) throw DomainError("area_g_halfline_hermite: x must be positive");
  const GridFunction fo = odd_extension(f);
  const BasisId hermite = BasisId::hermite();
  return detail::with_refinement(x, spec, [&](const ConeQuadratureSpec& sp) {
    const auto slices = cone_rule(x, Domain::HalfLine, sp);
    const double v = cone_power_integral(slices, sp.q, [&](double y, double s) {
      return apply_heat_ds(fo, s, hermite, y);
    });
    return std::pow(v, 1.0 / sp.q);
  });
}

/// g^{q,+} of the restriction to (0, inf) of an odd Hermite expansion (whose odd extension
/// is the expansion itself).
inline std::vector<double> area_g_halfline_hermite_batch(std::span<const SpectralExpansion> odd_family, double x,
                                                         const ConeQuadratureSpec& spec) {
  if (!(x > 0.0)) throw DomainError("area_g_halfline_hermite: x must be positive");
  for (const auto& f : odd_family) {
    if (!f.basis.is_hermite()) throw ContractError("area_g_halfline_hermite: expansions must be Hermite");
    for (std::size_t n = 0; n < f.coeffs.size(); n += 2)
      if (f.coeffs[n] != 0.0) throw ContractError("area_g_halfline_hermite: expansion must be odd");
  }
  if (odd_family.empty()) return {};
  std::size_t nmax = 0;
  for (const auto& f : odd_family) nmax = std::max(nmax, f.nmax());
  const BasisId basis = BasisId::hermite();
  const auto slices = cone_rule(x, Domain::HalfLine, spec);
  std::vector<double> acc(odd_family.size(), 0.0);
  std::vector<double> mult(nmax + 1);
  std::vector<double> values(nmax + 1);
  for (const auto& slice : slices) {
    for (std::size_t n = 0; n <= nmax; ++n) {
      const double lambda = basis.eigenvalue(n);
      mult[n] = -slice.s * lambda * std::exp(-lambda * slice.s);
    }
    const double inv_t2 = 1.0 / (slice.t * slice.t);
    for (std::size_t j = 0; j < slice.y.size(); ++j) {
      basis_functions(basis, nmax, slice.y[j], values);
      for (std::size_t k = 0; k < odd_family.size(); ++k) {
        const auto& c = odd_family[k].coeffs;
        double v = 0.0;
        for (std::size_t n = 1; n < c.size(); n += 2) v += c[n] * mult[n] * values[n];
        v = std::abs(v);
        if (v != 0.0) acc[k] += slice.w[j] * inv_t2 * detail::power(v, spec.q);
      }
    }
  }
  for (double& a : acc) a = std::pow(a, 1.0 / spec.q);
  return acc;
}

// ---------------------------------------------------------------------------
// Vertical g-function and the change-of-variables identity
// ---------------------------------------------------------------------------

/// Log-panelled rule in t for the vertical g-function.
struct VerticalSpec {
  double t_min = 1e-6;
  double t_max = 60.0;
  std::size_t n = 192;
  std::size_t panels = 8;

  [[nodiscard]] QuadratureRule rule() const { return gauss_legendre_log(n, t_min, t_max, panels); }
};

/// {int_0^inf |t d/dt W_t f(x)|^r dt/t}^{1/r}, with `field(x, t)` returning d/dt W_t f(x).
template <class Field>
double vertical_g_field(Field&& field, double x, double r, const VerticalSpec& spec = {}) {
  if (!(r > 1.0)) throw DomainError("vertical_g: r must exceed 1");
  const auto rule = spec.rule();
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double v = std::abs(t * field(x, t));
    if (v != 0.0) acc += rule.weights[i] / t * std::pow(v, r);
  }
  return std::pow(acc, 1.0 / r);
}

inline double vertical_g(const SpectralExpansion& f, double x, double r, const VerticalSpec& spec = {}) {
  detail::require_domain_point(domain_of(f.basis), x, "vertical_g");
  return vertical_g_field([&](double xx, double t) { return f.evaluate_heat_ds(xx, t); }, x, r, spec);
}

inline double vertical_g(const GridFunction& f, double x, double r, const BasisId& basis,
                         const VerticalSpec& spec = {}) {
  if (f.domain() != domain_of(basis)) throw ContractError("vertical_g: grid domain does not match the basis");
  detail::require_domain_point(f.domain(), x, "vertical_g");
  return vertical_g_field([&](double xx, double t) { return apply_heat_ds(f, t, basis, xx); }, x, r, spec);
}

/// x-grid used for L^p norms of g-functions: Gauss-Legendre on [-16, 16] for the line,
/// quadratically mapped onto (0, 20] for the half-line.
inline QuadratureRule evaluation_rule(Domain domain, std::size_t n = 0) {
  if (domain == Domain::Line) return gauss_legendre(n == 0 ? 256 : n, -16.0, 16.0);
  return gauss_legendre_halfline(n == 0 ? 192 : n, 20.0);
}

/// | ||g^q_W f||_q^q - ||g_q f||_q^q |, each side by its own quadrature.
inline double gnorm_identity_gap(const SpectralExpansion& f, double q, const ConeQuadratureSpec& spec = {},
                                 const QuadratureRule& xrule = evaluation_rule(Domain::Line),
                                 const VerticalSpec& vspec = {}) {
  if (!f.basis.is_hermite()) throw ContractError("gnorm_identity_gap: the identity is stated on the line");
  if (!(q > 1.0)) throw DomainError("gnorm_identity_gap: q must exceed 1");
  ConeQuadratureSpec sp = spec;
  sp.q = q;
  double area = 0.0;
  double vertical = 0.0;
  for (std::size_t i = 0; i < xrule.size(); ++i) {
    const double x = xrule.nodes[i];
    const double a = area_g_batch(std::span<const SpectralExpansion>(&f, 1), x, sp).front();
    const double v = vertical_g(f, x, q, vspec);
    area += xrule.weights[i] * std::pow(a, q);
    vertical += xrule.weights[i] * detail::power(v, q);
  }
  return std::abs(area - vertical);
}

// ---------------------------------------------------------------------------
// Kernel cone norms
// ---------------------------------------------------------------------------

enum class KernelNormVariant {
  HermiteDs,        // d/ds W_s(y, z) over Gamma(x)
  HermiteMixed,     // d^2/(dy ds) W_s(y, z) over Gamma(x)
  HermiteHalfCone,  // d/ds W_s(y, z) over Gamma_+(x)
  HermiteNegated,   // d/ds W_s(y, -z) over Gamma_+(x)
  LaguerreFull,     // d/ds W^alpha_s(y, z) over Gamma_+(x)
  LaguerreSmall,    // the same over Gamma_+(x) intersected with L(z)
  LaguerreLarge,    // the same over Gamma_+(x) intersected with R(z)
  OddReflected,     // d/ds [W_s(y, z) - W_s(y, -z)] over Gamma_+(x)
  Difference,       // d/ds [W_s(y, z) - W^alpha_s(y, z)] over Gamma_+(x)
};

inline std::string to_string(KernelNormVariant v) {
  switch (v) {
    case KernelNormVariant::HermiteDs: return "HermiteDs";
    case KernelNormVariant::HermiteMixed: return "HermiteMixed";
    case KernelNormVariant::HermiteHalfCone: return "HermiteHalfCone";
    case KernelNormVariant::HermiteNegated: return "HermiteNegated";
    case KernelNormVariant::LaguerreFull: return "LaguerreFull";
    case KernelNormVariant::LaguerreSmall: return "LaguerreSmall";
    case KernelNormVariant::LaguerreLarge: return "LaguerreLarge";
    case KernelNormVariant::OddReflected: return "OddReflected";
    case KernelNormVariant::Difference: return "Difference";
  }
  return "unknown";
}

/// {int int_cone |(s D(y, z))_{s=t^2}|^q dt dy / t^2}^{1/q} for the derivative kernel D of `variant`.
inline double kernel_cone_norm(double x, double z, double q, const ConeQuadratureSpec& spec,
                               KernelNormVariant variant, double alpha = 0.0) {
  using V = KernelNormVariant;
  const bool regular_on_diagonal = variant == V::HermiteNegated || variant == V::LaguerreSmall;
  if (x == z && !regular_on_diagonal) throw ContractError("kernel_cone_norm: x and z must differ");
  const bool line = variant == V::HermiteDs || variant == V::HermiteMixed;
  if (!line && (!(x > 0.0) || !(z > 0.0)))
    throw ContractError("kernel_cone_norm: half-line variants need x, z > 0");
  const bool laguerre = variant == V::LaguerreFull || variant == V::LaguerreSmall ||
                        variant == V::LaguerreLarge || variant == V::Difference;
  if (laguerre && !(alpha > -0.5)) throw ContractError("kernel_cone_norm: alpha must exceed -1/2");
  ConeQuadratureSpec sp = spec;
  sp.q = q;
  ConeRegionFilter filter;
  if (variant == V::LaguerreSmall) filter = ConeRegionFilter::small(z);
  if (variant == V::LaguerreLarge) filter = ConeRegionFilter::large(z);
  const auto slices = cone_rule(x, line ? Domain::Line : Domain::HalfLine, sp, filter);
  const auto field = [&](double y, double s) -> double {
    switch (variant) {
      case V::HermiteDs:
      case V::HermiteHalfCone: return hermite_heat_kernel_ds(y, z, s);
      case V::HermiteMixed: return hermite_heat_kernel_dyds(y, z, s);
      case V::HermiteNegated: return hermite_heat_kernel_ds(y, -z, s);
      case V::LaguerreFull:
      case V::LaguerreSmall:
      case V::LaguerreLarge: return y > 0.0 ? laguerre_heat_kernel_ds(y, z, s, alpha) : 0.0;
      case V::OddReflected: return odd_reflected_kernel_ds(y, z, s);
      case V::Difference:
        return y > 0.0 ? hermite_heat_kernel_ds(y, z, s) - laguerre_heat_kernel_ds(y, z, s, alpha) : 0.0;
    }
    return 0.0;
  };
  return std::pow(cone_power_integral(slices, q, field), 1.0 / q);
}

// ---------------------------------------------------------------------------
// Hardy majorants
// ---------------------------------------------------------------------------

/// Region-wise majorants of the cone norms: 1/x for z < x/2, 1/z for z > 2x, and the
/// local kernel H(x, z) = (1/z)(1 + sqrt(z/|z - x|)) for x/2 < z < 2x.
struct HardyMajorants {
  std::optional<double> inner;  // z < x/2
  std::optional<double> outer;  // z > 2x
  std::optional<double> local;  // x/2 < z < 2x
};

inline double hardy_local_kernel(double x, double z) {
  if (z == x) throw DomainError("hardy_local_kernel: singular at z = x");
  return (1.0 + std::sqrt(z / std::abs(z - x))) / z;
}

inline HardyMajorants hardy_majorants(double x, double z) {
  if (!(x > 0.0) || !(z > 0.0)) throw DomainError("hardy_majorants: x and z must be positive");
  HardyMajorants m;
  if (z < 0.5 * x) m.inner = 1.0 / x;
  if (z > 2.0 * x) m.outer = 1.0 / z;
  if (z > 0.5 * x && z < 2.0 * x) m.local = hardy_local_kernel(x, z);
  return m;
}

/// int_{x/2}^{2x} H(x, z) dz by Gauss-Legendre after z = x -+ v^2 removes the square-root singularity.
inline double hardy_local_integral(double x, std::size_t n = 64) {
  if (!(x > 0.0)) throw DomainError("hardy_local_integral: x must be positive");
  double acc = 0.0;
  const auto left = gauss_legendre(n, 0.0, std::sqrt(0.5 * x));
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double v = left.nodes[i];
    const double z = x - v * v;
    acc += left.weights[i] * 2.0 * v * (1.0 / z + std::sqrt(z) / (z * v));
  }
  const auto right = gauss_legendre(n, 0.0, std::sqrt(x));
  for (std::size_t i = 0; i < right.size(); ++i) {
    const double v = right.nodes[i];
    const double z = x + v * v;
    acc += right.weights[i] * 2.0 * v * (1.0 / z + std::sqrt(z) / (z * v));
  }
  return acc;
}

}  // namespace heatg

#endif  // HEATG_AREAGFUN_HPP
