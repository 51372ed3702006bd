#ifndef HEATG_QUADRATURE_HPP
#define HEATG_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "heatg/errors.hpp"

namespace heatg {

/// A one-dimensional quadrature rule: sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }

  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

namespace detail {

inline QuadratureRule compute_legendre_reference(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace detail

/// Gauss-Legendre rule on [-1, 1]. Rules are computed once per size and cached.
inline const QuadratureRule& legendre_reference(std::size_t n) {
  if (n == 0) throw ContractError("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(detail::compute_legendre_reference(n));
  return *slot;
}

/// Gauss-Legendre rule mapped affinely onto [a, b].
inline QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  const auto& ref = legendre_reference(n);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

/// Gauss-Legendre on (0, length] through x = length * u^2, u in (0, 1].
///
/// The quadratic map absorbs the x^(alpha+1/2) endpoint behaviour of the
/// Laguerre functions, so products phi_n * phi_m become smooth in u.
inline QuadratureRule gauss_legendre_halfline(std::size_t n, double length) {
  const auto& ref = legendre_reference(n);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 0.5 * (ref.nodes[i] + 1.0);
    rule.nodes[i] = length * u * u;
    rule.weights[i] = 0.5 * ref.weights[i] * 2.0 * length * u;
  }
  return rule;
}

/// Gauss-Legendre in log t over [t_min, t_max]; weights include the Jacobian dt = t du.
/// A `split` strictly inside the interval cuts its panel in two, each keeping the full node count.
inline QuadratureRule gauss_legendre_log(std::size_t n, double t_min, double t_max,
                                         std::size_t panels = 1, double split = 0.0) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw ContractError("log rule needs 0 < t_min < t_max");
  if (panels == 0) panels = 1;
  const double lo = std::log(t_min);
  const double hi = std::log(t_max);
  const std::size_t per_panel = (n + panels - 1) / panels;
  std::vector<double> edges(panels + 1);
  for (std::size_t p = 0; p <= panels; ++p)
    edges[p] = lo + (hi - lo) * static_cast<double>(p) / static_cast<double>(panels);
  edges.back() = hi;
  if (split > t_min && split < t_max) {
    const double ls = std::log(split);
    if (std::find(edges.begin(), edges.end(), ls) == edges.end()) {
      edges.insert(std::upper_bound(edges.begin(), edges.end(), ls), ls);
    }
  }
  QuadratureRule rule;
  rule.nodes.reserve(per_panel * (edges.size() - 1));
  rule.weights.reserve(per_panel * (edges.size() - 1));
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const auto piece = gauss_legendre(per_panel, edges[p], edges[p + 1]);
    for (std::size_t i = 0; i < piece.size(); ++i) {
      const double t = std::exp(piece.nodes[i]);
      rule.nodes.push_back(t);
      rule.weights.push_back(piece.weights[i] * t);
    }
  }
  return rule;
}

/// Concatenates Gauss-Legendre panels between consecutive breakpoints.
inline QuadratureRule composite_gauss_legendre(const std::vector<double>& breakpoints,
                                               std::size_t nodes_per_panel) {
  QuadratureRule rule;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double a = breakpoints[p];
    const double b = breakpoints[p + 1];
    if (!(b > a)) continue;
    const auto piece = gauss_legendre(nodes_per_panel, a, b);
    rule.nodes.insert(rule.nodes.end(), piece.nodes.begin(), piece.nodes.end());
    rule.weights.insert(rule.weights.end(), piece.weights.begin(), piece.weights.end());
  }
  return rule;
}

/// n log-spaced points in [lo, hi], endpoints included.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw ContractError("log_spaced needs 0 < lo <= hi");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

}  // namespace heatg

#endif  // HEATG_QUADRATURE_HPP
