#ifndef HEATG_SEMIGROUP_HPP
#define HEATG_SEMIGROUP_HPP

// The Hermite and Laguerre heat semigroups applied to functions, through the
// spectral multipliers e^{-lambda_n t} on coefficients and, independently,
// through quadrature against the Mehler kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "heatg/errors.hpp"
#include "heatg/kernels.hpp"
#include "heatg/quadrature.hpp"
#include "heatg/specfun.hpp"

namespace heatg {

enum class Domain { Line, HalfLine };

inline Domain domain_of(const BasisId& basis) {
  return basis.is_hermite() ? Domain::Line : Domain::HalfLine;
}

/// Default sampling rules: 512 Gauss-Legendre nodes on [-10, 10] for the line,
/// 512 nodes mapped quadratically onto (0, 14] for the half-line.
inline QuadratureRule default_rule(Domain domain, std::size_t n = 512) {
  return domain == Domain::Line ? gauss_legendre(n, -10.0, 10.0) : gauss_legendre_halfline(n, 14.0);
}

// ---------------------------------------------------------------------------
// GridFunction
// ---------------------------------------------------------------------------

/// A real function sampled on a quadrature grid.
class GridFunction {
 public:
  GridFunction(Domain domain, std::vector<double> nodes, std::vector<double> values,
               std::vector<double> weights)
      : domain_(domain), nodes_(std::move(nodes)), values_(std::move(values)), weights_(std::move(weights)) {
    if (nodes_.size() != values_.size() || nodes_.size() != weights_.size())
      throw ContractError("GridFunction: nodes, values and weights must have equal length");
    if (nodes_.empty()) throw ContractError("GridFunction: empty grid");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!(weights_[i] > 0.0)) throw ContractError("GridFunction: weights must be positive");
      if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
        throw ContractError("GridFunction: nodes must be strictly increasing");
    }
    if (domain_ == Domain::HalfLine && !(nodes_.front() > 0.0))
      throw ContractError("GridFunction: half-line nodes must be positive");
  }

  template <class F>
  static GridFunction sample(Domain domain, const QuadratureRule& rule, F&& f) {
    std::vector<double> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.nodes[i]);
    return GridFunction(domain, rule.nodes, std::move(values), rule.weights);
  }

  template <class F>
  static GridFunction sample(Domain domain, F&& f) {
    return sample(domain, default_rule(domain), std::forward<F>(f));
  }

  [[nodiscard]] Domain domain() const { return domain_; }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }

  /// Local 8-point Lagrange interpolation between nodes; zero beyond the last node.
  [[nodiscard]] double interpolate(double x) const {
    if (x > nodes_.back() || (domain_ == Domain::Line && x < nodes_.front())) return 0.0;
    if (domain_ == Domain::HalfLine && x <= 0.0) return 0.0;
    constexpr std::size_t stencil = 8;
    const std::size_t n = nodes_.size();
    if (n <= stencil) return lagrange(0, n, x);
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t pos = static_cast<std::size_t>(it - nodes_.begin());
    std::size_t first = pos >= stencil / 2 ? pos - stencil / 2 : 0;
    first = std::min(first, n - stencil);
    return lagrange(first, stencil, x);
  }

  /// Largest node spacing among the nodes within `radius` of x (or the nearest spacing).
  [[nodiscard]] double local_spacing(double x, double radius) const {
    const auto lo = std::lower_bound(nodes_.begin(), nodes_.end(), x - radius);
    const auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), x + radius);
    std::size_t a = static_cast<std::size_t>(lo - nodes_.begin());
    std::size_t b = static_cast<std::size_t>(hi - nodes_.begin());
    if (a > 0) --a;
    if (b >= nodes_.size()) b = nodes_.size() - 1;
    double h = 0.0;
    for (std::size_t i = a; i < b; ++i) h = std::max(h, nodes_[i + 1] - nodes_[i]);
    if (h == 0.0) h = std::numeric_limits<double>::infinity();
    return h;
  }

 private:
  [[nodiscard]] double lagrange(std::size_t first, std::size_t count, double x) const {
    double acc = 0.0;
    for (std::size_t i = first; i < first + count; ++i) {
      double basis = 1.0;
      for (std::size_t j = first; j < first + count; ++j)
        if (j != i) basis *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
      acc += basis * values_[i];
    }
    return acc;
  }

  Domain domain_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

/// f_o(-x) = -f(x): mirrors a half-line grid onto the line.
inline GridFunction odd_extension(const GridFunction& f) {
  if (f.domain() != Domain::HalfLine) throw ContractError("odd_extension: input must live on the half-line");
  const std::size_t n = f.size();
  std::vector<double> nodes(2 * n);
  std::vector<double> values(2 * n);
  std::vector<double> weights(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[n - 1 - i] = -f.nodes()[i];
    values[n - 1 - i] = -f.values()[i];
    weights[n - 1 - i] = f.weights()[i];
    nodes[n + i] = f.nodes()[i];
    values[n + i] = f.values()[i];
    weights[n + i] = f.weights()[i];
  }
  return GridFunction(Domain::Line, std::move(nodes), std::move(values), std::move(weights));
}

// ---------------------------------------------------------------------------
// SpectralExpansion
// ---------------------------------------------------------------------------

/// Finite coefficient vector against an orthonormal eigenbasis.
struct SpectralExpansion {
  BasisId basis;
  std::vector<double> coeffs;

  static SpectralExpansion unit(BasisId basis, std::size_t n) {
    SpectralExpansion e{basis, std::vector<double>(n + 1, 0.0)};
    e.coeffs[n] = 1.0;
    return e;
  }

  [[nodiscard]] std::size_t nmax() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  [[nodiscard]] double l2_norm() const {
    double acc = 0.0;
    for (double c : coeffs) acc += c * c;
    return std::sqrt(acc);
  }

  [[nodiscard]] double evaluate(double x) const {
    if (coeffs.empty()) return 0.0;
    std::vector<double> values(coeffs.size());
    basis_functions(basis, nmax(), x, values);
    double acc = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) acc += coeffs[n] * values[n];
    return acc;
  }

  /// W_t f(x) = sum a_n e^{-lambda_n t} basis_n(x).
  [[nodiscard]] double evaluate_heat(double x, double t) const {
    if (coeffs.empty()) return 0.0;
    std::vector<double> values(coeffs.size());
    basis_functions(basis, nmax(), x, values);
    double acc = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
      acc += coeffs[n] * std::exp(-basis.eigenvalue(n) * t) * values[n];
    return acc;
  }

  /// d/ds W_s f(x) = -sum lambda_n e^{-lambda_n s} a_n basis_n(x).
  [[nodiscard]] double evaluate_heat_ds(double x, double s) const {
    if (coeffs.empty()) return 0.0;
    std::vector<double> values(coeffs.size());
    basis_functions(basis, nmax(), x, values);
    double acc = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      const double lambda = basis.eigenvalue(n);
      acc -= lambda * std::exp(-lambda * s) * coeffs[n] * values[n];
    }
    return acc;
  }

  [[nodiscard]] GridFunction sample(const QuadratureRule& rule) const {
    return GridFunction::sample(domain_of(basis), rule, [this](double x) { return evaluate(x); });
  }
  [[nodiscard]] GridFunction sample() const { return sample(default_rule(domain_of(basis))); }
};

inline SpectralExpansion operator*(double scale, SpectralExpansion e) {
  for (double& c : e.coeffs) c *= scale;
  return e;
}

inline SpectralExpansion operator+(const SpectralExpansion& a, const SpectralExpansion& b) {
  if (!(a.basis == b.basis)) throw ContractError("SpectralExpansion: adding expansions in different bases");
  SpectralExpansion out{a.basis, std::vector<double>(std::max(a.coeffs.size(), b.coeffs.size()), 0.0)};
  for (std::size_t n = 0; n < a.coeffs.size(); ++n) out.coeffs[n] += a.coeffs[n];
  for (std::size_t n = 0; n < b.coeffs.size(); ++n) out.coeffs[n] += b.coeffs[n];
  return out;
}

/// Coefficients <f, basis_n> by quadrature on f's own grid.
inline SpectralExpansion expand(const GridFunction& f, const BasisId& basis, std::size_t nmax) {
  if (f.domain() != domain_of(basis)) throw ContractError("expand: grid domain does not match basis");
  SpectralExpansion out{basis, std::vector<double>(nmax + 1, 0.0)};
  std::vector<double> values(nmax + 1);
  for (std::size_t j = 0; j < f.size(); ++j) {
    basis_functions(basis, nmax, f.nodes()[j], values);
    const double wf = f.weights()[j] * f.values()[j];
    for (std::size_t n = 0; n <= nmax; ++n) out.coeffs[n] += wf * values[n];
  }
  return out;
}

inline SpectralExpansion apply_heat_spectral(const SpectralExpansion& e, double t) {
  if (!(t > 0.0)) throw DomainError("apply_heat_spectral: time must be positive");
  SpectralExpansion out = e;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] *= std::exp(-e.basis.eigenvalue(n) * t);
  return out;
}

// ---------------------------------------------------------------------------
// Kernel-integral route
// ---------------------------------------------------------------------------

/// A function given pointwise, with an optional support window and feature width.
/// The width steers the panel size of kernel-adapted quadratures.
struct FunctionSource {
  Domain domain = Domain::Line;
  std::function<double(double)> f;
  double support_lo = -std::numeric_limits<double>::infinity();
  double support_hi = std::numeric_limits<double>::infinity();
  double feature_width = std::numeric_limits<double>::infinity();

  [[nodiscard]] double operator()(double x) const { return f(x); }

  static FunctionSource from_grid(const GridFunction& g) {
    FunctionSource src;
    src.domain = g.domain();
    src.f = [g](double x) { return g.interpolate(x); };
    src.support_lo = g.domain() == Domain::Line ? g.nodes().front() : 0.0;
    src.support_hi = g.nodes().back();
    return src;
  }
};

enum class KernelOrder { Value, TimeDerivative };

namespace detail {

inline double kernel_at(const BasisId& basis, KernelOrder order, double y, double z, double s) {
  if (basis.is_hermite())
    return order == KernelOrder::Value ? hermite_heat_kernel(y, z, s) : hermite_heat_kernel_ds(y, z, s);
  if (z <= 0.0) return 0.0;
  return order == KernelOrder::Value ? laguerre_heat_kernel(y, z, s, basis.alpha)
                                     : laguerre_heat_kernel_ds(y, z, s, basis.alpha);
}

/// Gaussian envelope of either Mehler kernel in its second variable: centre y sech s, width sqrt(tanh s).
inline std::pair<double, double> kernel_window(double y, double s) {
  return {y / std::cosh(s), std::sqrt(std::tanh(s))};
}

constexpr double kWindowSigmas = 14.0;
constexpr std::size_t kPanelNodes = 16;
constexpr std::size_t kMaxPanels = 256;

}  // namespace detail

/// int K(y, z, s) f(z) dz over a quadrature adapted to the kernel's Gaussian window
/// and to the source's support and feature width.
inline double heat_integral_adapted(const FunctionSource& f, const BasisId& basis, KernelOrder order,
                                    double y, double s) {
  if (!(s > 0.0)) throw DomainError("heat_integral_adapted: time must be positive");
  if (f.domain != domain_of(basis)) throw ContractError("heat_integral_adapted: domain mismatch");
  const auto [centre, sigma] = detail::kernel_window(y, s);
  double a = std::max(centre - detail::kWindowSigmas * sigma, f.support_lo);
  double b = std::min(centre + detail::kWindowSigmas * sigma, f.support_hi);
  if (basis.is_laguerre()) a = std::max(a, 0.0);
  if (!(b > a)) return 0.0;
  const double scale = std::min(sigma, f.feature_width);
  const double width = b - a;
  std::size_t panels = static_cast<std::size_t>(std::ceil(width / (3.0 * scale)));
  panels = std::clamp<std::size_t>(panels, 1, detail::kMaxPanels);
  const auto& ref = legendre_reference(detail::kPanelNodes);
  double acc = 0.0;
  const double h = width / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const bool endpoint = basis.is_laguerre() && p == 0 && lo == 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      double z;
      double w;
      if (endpoint) {
        // z = h u^2 absorbs the z^{alpha+1/2} behaviour at the origin
        const double u = 0.5 * (ref.nodes[i] + 1.0);
        z = h * u * u;
        w = 0.5 * ref.weights[i] * 2.0 * h * u;
      } else {
        z = lo + 0.5 * h * (ref.nodes[i] + 1.0);
        w = 0.5 * h * ref.weights[i];
      }
      if (z <= 0.0 && basis.is_laguerre()) continue;
      acc += w * detail::kernel_at(basis, order, y, z, s) * f(z);
    }
  }
  return acc;
}

namespace detail {

inline double grid_heat_integral(const GridFunction& f, const BasisId& basis, KernelOrder order, double x,
                                 double t) {
  if (!(t > 0.0)) throw DomainError("apply_heat_integral: time must be positive");
  if (f.domain() != domain_of(basis)) throw ContractError("apply_heat_integral: grid domain does not match basis");
  if (basis.is_laguerre() && !(x > 0.0)) throw DomainError("apply_heat_integral: x must be positive on the half-line");
  const auto [centre, sigma] = kernel_window(x, t);
  // Node quadrature needs the kernel resolved by the grid; otherwise integrate
  // the interpolated samples on a kernel-adapted rule.
  if (sigma >= 2.0 * f.local_spacing(centre, 4.0 * sigma)) {
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f.values()[j] == 0.0) continue;
      acc += f.weights()[j] * kernel_at(basis, order, x, f.nodes()[j], t) * f.values()[j];
    }
    return acc;
  }
  return heat_integral_adapted(FunctionSource::from_grid(f), basis, order, x, t);
}

}  // namespace detail

/// W_t f(x) by quadrature against the Mehler kernel.
inline double apply_heat_integral(const GridFunction& f, double t, const BasisId& basis, double x) {
  return detail::grid_heat_integral(f, basis, KernelOrder::Value, x, t);
}

/// d/ds W_s f(x) by differentiation under the integral sign.
inline double apply_heat_ds(const GridFunction& f, double s, const BasisId& basis, double x) {
  return detail::grid_heat_integral(f, basis, KernelOrder::TimeDerivative, x, s);
}

/// Exact spectral value of d/ds W_s f(x).
inline double apply_heat_ds(const SpectralExpansion& e, double s, double x) {
  if (!(s > 0.0)) throw DomainError("apply_heat_ds: time must be positive");
  return e.evaluate_heat_ds(x, s);
}

inline double apply_heat_integral(const FunctionSource& f, double t, const BasisId& basis, double x) {
  return heat_integral_adapted(f, basis, KernelOrder::Value, x, t);
}

inline double apply_heat_ds(const FunctionSource& f, double s, const BasisId& basis, double x) {
  return heat_integral_adapted(f, basis, KernelOrder::TimeDerivative, x, s);
}

// ---------------------------------------------------------------------------
// Gaussian mixtures: closed-form Hermite semigroup
// ---------------------------------------------------------------------------

/// sum_k amplitude_k exp(-(x - centre_k)^2 / (2 width_k^2)) on the line.
///
/// The Mehler kernel is Gaussian in its second variable (centre y sech s,
/// variance tanh s), so W_s of each component is again Gaussian:
///   W_s g(y) = A w sqrt(tanh s / ((tanh s + w^2) sinh s))
///              exp(-y^2 tanh(s)/2 - (y sech s - mu)^2 / (2 (tanh s + w^2))).
struct GaussianMixture {
  struct Component {
    double amplitude;
    double centre;
    double width;
  };
  std::vector<Component> components;

  /// Unit-L^1-mass Gaussian bump.
  static GaussianMixture bump(double centre, double width) {
    return {{{1.0 / (width * std::sqrt(2.0 * std::numbers::pi)), centre, width}}};
  }

  /// Odd extension of the restriction to (0, inf): adds the mirrored negative copy.
  [[nodiscard]] GaussianMixture odd_extension() const {
    GaussianMixture out = *this;
    for (const auto& c : components) out.components.push_back({-c.amplitude, -c.centre, c.width});
    return out;
  }

  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (const auto& c : components) {
      const double u = (x - c.centre) / c.width;
      acc += c.amplitude * std::exp(-0.5 * u * u);
    }
    return acc;
  }

  [[nodiscard]] double l1_norm_bound() const {
    double acc = 0.0;
    for (const auto& c : components) acc += std::abs(c.amplitude) * c.width * std::sqrt(2.0 * std::numbers::pi);
    return acc;
  }

  [[nodiscard]] double min_width() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& c : components) w = std::min(w, c.width);
    return w;
  }

  [[nodiscard]] double heat(double y, double s) const {
    double value = 0.0;
    double ds = 0.0;
    heat_and_ds(y, s, value, ds);
    return value;
  }

  [[nodiscard]] double heat_ds(double y, double s) const {
    double value = 0.0;
    double ds = 0.0;
    heat_and_ds(y, s, value, ds);
    return ds;
  }

  void heat_and_ds(double y, double s, double& value, double& ds) const {
    if (!(s > 0.0)) throw DomainError("GaussianMixture: time must be positive");
    const double tau = std::tanh(s);
    const double sech = 1.0 / std::cosh(s);
    const double sinh = std::sinh(s);
    const double dtau = sech * sech;
    const double coth = std::cosh(s) / sinh;
    value = 0.0;
    ds = 0.0;
    for (const auto& c : components) {
      const double w2 = c.width * c.width;
      const double v = tau + w2;
      const double m = y * sech - c.centre;
      const double f = c.amplitude * c.width * std::sqrt(tau / (v * sinh)) *
                       std::exp(-0.5 * y * y * tau - m * m / (2.0 * v));
      const double dlog = 0.5 * (dtau / tau - dtau / v - coth) - 0.5 * y * y * dtau +
                          m * y * sech * tau / v + m * m * dtau / (2.0 * v * v);
      value += f;
      ds += f * dlog;
    }
  }

  [[nodiscard]] FunctionSource as_source() const {
    FunctionSource src;
    src.domain = Domain::Line;
    GaussianMixture copy = *this;
    src.f = [copy](double x) { return copy(x); };
    src.feature_width = min_width();
    return src;
  }
};

// ---------------------------------------------------------------------------
// Maximal function
// ---------------------------------------------------------------------------

/// 64 log-spaced times in [1e-3, 10]; approximates sup_{t>0} from below.
inline std::vector<double> default_maximal_t_grid(std::size_t n = 64) { return log_spaced(1e-3, 10.0, n); }

namespace detail {

/// max |g(t)| over the grid, then a golden-section search in log t between the
/// neighbours of the discrete maximiser. Every value is attained, so the result
/// stays a lower bound of the supremum.
template <class G>
double grid_supremum(std::span<const double> t_grid, G&& g) {
  if (t_grid.empty()) throw ContractError("maximal_heat: empty time grid");
  std::vector<double> values(t_grid.size());
  std::size_t arg = 0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw ContractError("maximal_heat: times must be positive");
    values[i] = std::abs(g(t_grid[i]));
    if (values[i] > values[arg]) arg = i;
  }
  double best = values[arg];
  if (arg == 0 || arg + 1 == t_grid.size()) return best;
  constexpr double ratio = 0.6180339887498949;
  double a = std::log(t_grid[arg - 1]);
  double b = std::log(t_grid[arg + 1]);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = std::abs(g(std::exp(c)));
  double fd = std::abs(g(std::exp(d)));
  for (int it = 0; it < 40 && b - a > 1e-10; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = std::abs(g(std::exp(c)));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = std::abs(g(std::exp(d)));
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace detail

inline double maximal_heat(const GridFunction& f, const BasisId& basis, double x, std::span<const double> t_grid) {
  return detail::grid_supremum(t_grid, [&](double t) { return apply_heat_integral(f, t, basis, x); });
}

inline double maximal_heat(const SpectralExpansion& e, double x, std::span<const double> t_grid) {
  if (e.coeffs.empty()) {
    if (t_grid.empty()) throw ContractError("maximal_heat: empty time grid");
    return 0.0;
  }
  std::vector<double> values(e.coeffs.size());
  basis_functions(e.basis, e.nmax(), x, values);
  return detail::grid_supremum(t_grid, [&](double t) {
    double acc = 0.0;
    for (std::size_t n = 0; n < e.coeffs.size(); ++n)
      acc += e.coeffs[n] * std::exp(-e.basis.eigenvalue(n) * t) * values[n];
    return acc;
  });
}

}  // namespace heatg

#endif  // HEATG_SEMIGROUP_HPP
