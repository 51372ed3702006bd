#ifndef HEATG_SPECFUN_HPP
#define HEATG_SPECFUN_HPP

// Hermite and Laguerre functions, the exponentially scaled modified Bessel
// function I_alpha of real order, and the coefficients of its large-argument
// expansion.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "heatg/errors.hpp"

namespace heatg {

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

/// log Gamma(x) for x > 0 (Lanczos, g = 607/128, 15 terms); reflection below 1/2.
inline double log_gamma(double x) {
  static constexpr std::array<double, 15> c = {
      0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
      .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
      -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
      .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};
  constexpr double g = 607.0 / 128.0;
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x), sin(pi x) > 0 on (0, 1/2).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double xm = x - 1.0;
  double a = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (xm + static_cast<double>(i));
  const double t = xm + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(a);
}

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

enum class BasisKind { HermiteLine, LaguerreHalfLine };

/// Identifies an orthonormal eigenbasis: Hermite functions on the line or
/// Laguerre functions phi_n^alpha on (0, inf).
struct BasisId {
  BasisKind kind = BasisKind::HermiteLine;
  double alpha = 0.0;  // only meaningful for LaguerreHalfLine

  static BasisId hermite() { return {BasisKind::HermiteLine, 0.0}; }
  static BasisId laguerre(double alpha) {
    if (!(alpha > -0.5)) throw DomainError("Laguerre basis requires alpha > -1/2");
    return {BasisKind::LaguerreHalfLine, alpha};
  }

  [[nodiscard]] bool is_hermite() const { return kind == BasisKind::HermiteLine; }
  [[nodiscard]] bool is_laguerre() const { return kind == BasisKind::LaguerreHalfLine; }

  /// Heat-semigroup eigenvalue: n + 1/2 (Hermite) or 2n + alpha + 1 (Laguerre).
  [[nodiscard]] double eigenvalue(std::size_t n) const {
    const double nn = static_cast<double>(n);
    return is_hermite() ? nn + 0.5 : 2.0 * nn + alpha + 1.0;
  }

  friend bool operator==(const BasisId& a, const BasisId& b) {
    if (a.kind != b.kind) return false;
    return a.is_hermite() || a.alpha == b.alpha;
  }

  [[nodiscard]] std::string name() const {
    return is_hermite() ? std::string("hermite") : "laguerre(alpha=" + std::to_string(alpha) + ")";
  }
};

namespace detail {
constexpr double kRescaleThreshold = 1e200;
constexpr double kLogRescale = 460.51701859880913680;  // log(1e200)
}  // namespace detail

/// h_0(x), ..., h_nmax(x) into out (size nmax + 1).
///
/// Orthonormal three-term recurrence with a separately tracked log-scale, so
/// the Gaussian seed e^{-x^2/2} never underflows before the recurrence has
/// grown the mantissa back (|x| up to ~60, n in the thousands).
inline void hermite_functions(std::size_t nmax, double x, std::span<double> out) {
  if (out.size() < nmax + 1) throw ContractError("hermite_functions: output span too small");
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  out[0] = cur * std::exp(log_scale);
  for (std::size_t n = 0; n < nmax; ++n) {
    const double nn = static_cast<double>(n);
    const double next = x * std::sqrt(2.0 / (nn + 1.0)) * cur - std::sqrt(nn / (nn + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > detail::kRescaleThreshold) {
      cur /= detail::kRescaleThreshold;
      prev /= detail::kRescaleThreshold;
      log_scale += detail::kLogRescale;
    }
    out[n + 1] = cur * std::exp(log_scale);
  }
}

inline double hermite_function(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: order must be non-negative");
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  hermite_functions(static_cast<std::size_t>(n), x, buf);
  return buf.back();
}

/// phi_0^alpha(x), ..., phi_nmax^alpha(x) into out (size nmax + 1), x > 0.
///
/// Uses the normalized Laguerre recurrence for l_n = sqrt(n!/Gamma(n+alpha+1)) L_n^alpha(x^2),
/// l_{n+1} = [(2n+alpha+1-u) l_n - sqrt(n(n+alpha)) l_{n-1}] / sqrt((n+1)(n+alpha+1)),
/// and phi_n = sqrt(2) e^{-u/2} x^{alpha+1/2} l_n with u = x^2.
inline void laguerre_functions(std::size_t nmax, double alpha, double x, std::span<double> out) {
  if (!(alpha > -0.5)) throw DomainError("laguerre_functions: alpha must exceed -1/2");
  if (!(x > 0.0)) throw DomainError("laguerre_functions: x must be positive");
  if (out.size() < nmax + 1) throw ContractError("laguerre_functions: output span too small");
  const double u = x * x;
  double log_scale =
      0.5 * std::log(2.0) - 0.5 * u + (alpha + 0.5) * std::log(x) - 0.5 * log_gamma(alpha + 1.0);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(log_scale);
  for (std::size_t n = 0; n < nmax; ++n) {
    const double nn = static_cast<double>(n);
    const double next = ((2.0 * nn + alpha + 1.0 - u) * cur - std::sqrt(nn * (nn + alpha)) * prev) /
                        std::sqrt((nn + 1.0) * (nn + alpha + 1.0));
    prev = cur;
    cur = next;
    if (std::abs(cur) > detail::kRescaleThreshold) {
      cur /= detail::kRescaleThreshold;
      prev /= detail::kRescaleThreshold;
      log_scale += detail::kLogRescale;
    }
    out[n + 1] = cur * std::exp(log_scale);
  }
}

inline double laguerre_function(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre_function: order must be non-negative");
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  laguerre_functions(static_cast<std::size_t>(n), alpha, x, buf);
  return buf.back();
}

/// All basis functions of orders 0..nmax at x. Laguerre at x <= 0 returns the boundary limit 0.
inline void basis_functions(const BasisId& basis, std::size_t nmax, double x, std::span<double> out) {
  if (basis.is_hermite()) {
    hermite_functions(nmax, x, out);
  } else if (x <= 0.0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(nmax + 1), 0.0);
  } else {
    laguerre_functions(nmax, basis.alpha, x, out);
  }
}

inline double basis_function(const BasisId& basis, int n, double x) {
  return basis.is_hermite() ? hermite_function(n, x) : laguerre_function(n, basis.alpha, x);
}

/// Row n holds the n-th basis function sampled at the nodes. Immutable after construction.
class BasisFunctionTable {
 public:
  BasisFunctionTable(BasisId basis, std::size_t nmax, std::vector<double> nodes)
      : basis_(basis), nmax_(nmax), nodes_(std::move(nodes)), values_((nmax + 1) * nodes_.size()) {
    std::vector<double> column(nmax_ + 1);
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      basis_functions(basis_, nmax_, nodes_[j], column);
      for (std::size_t n = 0; n <= nmax_; ++n) values_[n * nodes_.size() + j] = column[n];
    }
  }

  [[nodiscard]] const BasisId& basis() const { return basis_; }
  [[nodiscard]] std::size_t nmax() const { return nmax_; }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] std::span<const double> row(std::size_t n) const {
    return {values_.data() + n * nodes_.size(), nodes_.size()};
  }
  [[nodiscard]] double operator()(std::size_t n, std::size_t j) const {
    return values_[n * nodes_.size() + j];
  }

 private:
  BasisId basis_;
  std::size_t nmax_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Modified Bessel function of the first kind
// ---------------------------------------------------------------------------

/// [alpha, k] = (4a^2 - 1)(4a^2 - 9)...(4a^2 - (2k-1)^2) / (2^{2k} k!).
inline double bracket_coeff(double alpha, int k) {
  if (k < 0) throw DomainError("bracket_coeff: k must be non-negative");
  const double mu = 4.0 * alpha * alpha;
  double value = 1.0;
  for (int j = 1; j <= k; ++j) {
    const double odd = 2.0 * j - 1.0;
    value *= (mu - odd * odd) / (4.0 * j);
  }
  return value;
}

/// Number of terms kept in the large-argument expansion.
inline constexpr int kBesselAsymptoticTerms = 10;

/// Switch point between the ascending series and the asymptotic expansion.
inline double bessel_switch_point(double alpha) { return std::max(25.0, 2.0 * alpha * alpha); }

/// e^{-z} I_alpha(z) from the ascending series; all terms are positive.
inline double bessel_i_series_scaled(double alpha, double z) {
  if (z < 0.0) throw DomainError("bessel_i_series_scaled: z must be non-negative");
  if (z == 0.0) {
    if (alpha == 0.0) return 1.0;
    return alpha > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double half = 0.5 * z;
  const double quarter_sq = half * half;
  double term = std::exp(alpha * std::log(half) - log_gamma(alpha + 1.0) - z);
  double sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= quarter_sq / (static_cast<double>(k) * (static_cast<double>(k) + alpha));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

/// e^{-z} I_alpha(z) from sqrt(z) I_alpha(z) ~ e^z/sqrt(2 pi) sum_k (-1)^k [alpha,k] (2z)^{-k}.
inline double bessel_i_asymptotic_scaled(double alpha, double z, int terms = kBesselAsymptoticTerms) {
  if (!(z > 0.0)) throw DomainError("bessel_i_asymptotic_scaled: z must be positive");
  const double mu = 4.0 * alpha * alpha;
  double coeff = 1.0;
  double sum = 1.0;
  const double inv = 1.0 / (2.0 * z);
  double power = 1.0;
  for (int k = 1; k <= terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    coeff *= (mu - odd * odd) / (4.0 * k);
    power *= -inv;
    sum += coeff * power;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

/// e^{-z} I_alpha(z) for alpha > -1/2, z >= 0.
inline double bessel_i_scaled(double alpha, double z) {
  if (!(alpha > -0.5)) throw DomainError("bessel_i_scaled: alpha must exceed -1/2");
  if (z < 0.0 || std::isnan(z)) throw DomainError("bessel_i_scaled: z must be non-negative");
  if (z <= bessel_switch_point(alpha)) return bessel_i_series_scaled(alpha, z);
  return bessel_i_asymptotic_scaled(alpha, z);
}

/// sqrt(z) e^{-z} I_alpha(z); finite at z = 0 (limit 0) for every alpha > -1/2.
inline double sqrt_bessel_i_scaled(double alpha, double z) {
  if (z == 0.0) return 0.0;
  return std::sqrt(z) * bessel_i_scaled(alpha, z);
}

}  // namespace heatg

#endif  // HEATG_SPECFUN_HPP
