#ifndef HEATG_KERNELS_HPP
#define HEATG_KERNELS_HPP

// Mehler heat kernels for the Hermite and Laguerre semigroups, their time
// derivatives, and the constant-free majorants used by the estimate checks.
//
// Every kernel is assembled as exp(prefactor_log + quadratic_part) with
//   quadratic_part = -[(x - e^{-s} y)^2 + (y - e^{-s} x)^2] / (2 (1 - e^{-2s})) <= 0,
// so nothing overflows for small s or large |x|, |y|.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "heatg/errors.hpp"
#include "heatg/specfun.hpp"

namespace heatg {

/// Value and s-derivative of a heat kernel at (x, y, s).
struct KernelEval {
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
  double value = 0.0;
  double ds_value = 0.0;
};

/// Log-space decomposition of the Hermite Mehler kernel.
struct StableExponent {
  double quadratic_part = 0.0;
  double prefactor_log = 0.0;

  [[nodiscard]] double assemble() const { return std::exp(quadratic_part + prefactor_log); }
};

namespace detail {

inline void require_positive_time(double s, const char* who) {
  if (!(s > 0.0)) throw DomainError(std::string(who) + ": time must be positive");
}

/// 1 - e^{-2s} without cancellation for small s.
inline double one_minus_e2(double s) { return -std::expm1(-2.0 * s); }

/// (x - e y)^2 + (y - e x)^2 with e = e^{-s}.
inline double mehler_quadratic(double x, double y, double e) {
  const double a = x - e * y;
  const double b = y - e * x;
  return a * a + b * b;
}

}  // namespace detail

inline StableExponent hermite_exponent(double x, double y, double s) {
  detail::require_positive_time(s, "hermite_exponent");
  const double e = std::exp(-s);
  const double d = detail::one_minus_e2(s);
  StableExponent out;
  out.quadratic_part = -detail::mehler_quadratic(x, y, e) / (2.0 * d);
  out.prefactor_log = -0.5 * std::log(std::numbers::pi) + 0.5 * (-s - std::log(d));
  return out;
}

/// The same quadratic part through the merged form (x-y)^2 (1+e^{-2s}) + 2xy (1-e^{-s})^2.
inline double merged_quadratic_part(double x, double y, double s) {
  detail::require_positive_time(s, "merged_quadratic_part");
  const double e = std::exp(-s);
  const double one_minus_e = -std::expm1(-s);
  const double d = detail::one_minus_e2(s);
  const double diff = x - y;
  return -(diff * diff * (1.0 + e * e) + 2.0 * x * y * one_minus_e * one_minus_e) / (2.0 * d);
}

/// Bessel argument ratio y z e^{-s} / (1 - e^{-2s}); compared with 1 it selects L(z) or R(z).
inline double bessel_region_parameter(double y, double z, double s) {
  detail::require_positive_time(s, "bessel_region_parameter");
  return y * z * std::exp(-s) / detail::one_minus_e2(s);
}

// ---------------------------------------------------------------------------
// Hermite
// ---------------------------------------------------------------------------

inline double hermite_heat_kernel(double x, double y, double t) {
  detail::require_positive_time(t, "hermite_heat_kernel");
  return hermite_exponent(x, y, t).assemble();
}

inline double hermite_heat_kernel_ds(double x, double y, double s) {
  detail::require_positive_time(s, "hermite_heat_kernel_ds");
  const double e = std::exp(-s);
  const double e2 = e * e;
  const double d = detail::one_minus_e2(s);
  const double q = detail::mehler_quadratic(x, y, e);
  const double bracket =
      1.0 + e2 + 2.0 * e * (y * (x - e * y) + x * (y - e * x)) - 2.0 * e2 * q / d;
  const double envelope = std::exp(-q / (2.0 * d) - 0.5 * s) / (d * std::sqrt(d));
  return -0.5 / std::sqrt(std::numbers::pi) * envelope * bracket;
}

inline KernelEval hermite_kernel_eval(double x, double y, double s) {
  return {x, y, s, hermite_heat_kernel(x, y, s), hermite_heat_kernel_ds(x, y, s)};
}

/// d^2/(dy ds) W_s(y, z).
inline double hermite_heat_kernel_dyds(double y, double z, double s) {
  detail::require_positive_time(s, "hermite_heat_kernel_dyds");
  const double e = std::exp(-s);
  const double e2 = e * e;
  const double d = detail::one_minus_e2(s);
  const double a = y - e * z;
  const double b = z - e * y;
  const double q = a * a + b * b;
  const double ds = hermite_heat_kernel_ds(y, z, s);
  const double envelope = std::exp(-q / (2.0 * d) - 0.5 * s) / (d * std::sqrt(d));
  return -(a - b * e) / d * ds -
         2.0 / std::sqrt(std::numbers::pi) * envelope * (e * b - e2 * (a - e * b) / d);
}

/// d/ds [W_s(y, z) - W_s(y, -z)]: the kernel of W_s acting on odd extensions.
inline double odd_reflected_kernel_ds(double y, double z, double s) {
  if (!(z > 0.0)) throw DomainError("odd_reflected_kernel_ds: z must be positive");
  detail::require_positive_time(s, "odd_reflected_kernel_ds");
  return hermite_heat_kernel_ds(y, z, s) - hermite_heat_kernel_ds(y, -z, s);
}

inline double odd_reflected_kernel(double y, double z, double s) {
  if (!(z > 0.0)) throw DomainError("odd_reflected_kernel: z must be positive");
  return hermite_heat_kernel(y, z, s) - hermite_heat_kernel(y, -z, s);
}

// ---------------------------------------------------------------------------
// Laguerre
// ---------------------------------------------------------------------------

namespace detail {
inline void require_laguerre_args(double x, double y, double s, double alpha, const char* who) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError(std::string(who) + ": x and y must be positive");
  require_positive_time(s, who);
  if (!(alpha > -0.5)) throw DomainError(std::string(who) + ": alpha must exceed -1/2");
}
}  // namespace detail

/// W_t^alpha(x, y) = sqrt(2c) [sqrt(w) I_alpha(w) e^{-w}] e^{w - (x^2+y^2)(1+e^{-2t})/(2(1-e^{-2t}))},
/// with c = e^{-t}/(1-e^{-2t}), w = 2xyc; the merged exponent is the Hermite quadratic part.
inline double laguerre_heat_kernel(double x, double y, double t, double alpha) {
  detail::require_laguerre_args(x, y, t, alpha, "laguerre_heat_kernel");
  const double e = std::exp(-t);
  const double d = detail::one_minus_e2(t);
  const double c = e / d;
  const double w = 2.0 * x * y * c;
  const double exponent = -detail::mehler_quadratic(x, y, e) / (2.0 * d);
  if (exponent < -745.0) return 0.0;
  return std::sqrt(2.0 * c) * sqrt_bessel_i_scaled(alpha, w) * std::exp(exponent);
}

/// d/ds W_s^alpha(y, z) in scaled-Bessel form:
/// sqrt(2c) e^{-Q/2D} sqrt(w) { [-(alpha+1) R + 2 (y^2+z^2) c^2] I~_alpha(w) - R w I~_{alpha+1}(w) },
/// R = (1+e^{-2s})/(1-e^{-2s}), I~_nu(w) = e^{-w} I_nu(w).
inline double laguerre_heat_kernel_ds(double y, double z, double s, double alpha) {
  detail::require_laguerre_args(y, z, s, alpha, "laguerre_heat_kernel_ds");
  const double e = std::exp(-s);
  const double d = detail::one_minus_e2(s);
  const double c = e / d;
  const double r = (1.0 + e * e) / d;
  const double w = 2.0 * y * z * c;
  if (w == 0.0) return 0.0;
  const double exponent = -detail::mehler_quadratic(y, z, e) / (2.0 * d);
  if (exponent < -745.0) return 0.0;
  const double inner = (-(alpha + 1.0) * r + 2.0 * (y * y + z * z) * c * c) * bessel_i_scaled(alpha, w) -
                       r * w * bessel_i_scaled(alpha + 1.0, w);
  return std::sqrt(2.0 * c) * std::sqrt(w) * std::exp(exponent) * inner;
}

inline KernelEval laguerre_kernel_eval(double x, double y, double s, double alpha) {
  return {x, y, s, laguerre_heat_kernel(x, y, s, alpha), laguerre_heat_kernel_ds(x, y, s, alpha)};
}

// ---------------------------------------------------------------------------
// Envelopes (right-hand sides of the pointwise kernel bounds, constant-free)
// ---------------------------------------------------------------------------

enum class EnvelopeId {
  HermiteDs,      // |d_s W_s(x,y)|       <= C e^{-Q/8D} e^{-s/2} / D^{3/2}
  HermiteMixed,   // |d_y d_s W_s(y,z)|   <= C e^{-Q/16D} e^{-s/2} / D^2
  LaguerreSmall,  // |d_s W_s^a(y,z)|     <= C (yz)^{a+1/2} e^{-(y^2+z^2)/8s} e^{-(a+1)s} / D^{a+2},   on L(z)
  LaguerreLarge,  // |d_s W_s^a(y,z)|     <= C e^{-Q/2D} e^{-3s/2} (y^2+z^2) / D^{5/2},              on R(z)
  Difference,     // |d_s (W^a - W)(y,z)| <= C e^{-(y-z)^2/2s} e^{s/2} / (yz (1-e^{-s})^{1/2}),        on R(z)
};

inline std::string_view to_string(EnvelopeId id) {
  switch (id) {
    case EnvelopeId::HermiteDs: return "HermiteDs";
    case EnvelopeId::HermiteMixed: return "HermiteMixed";
    case EnvelopeId::LaguerreSmall: return "LaguerreSmall";
    case EnvelopeId::LaguerreLarge: return "LaguerreLarge";
    case EnvelopeId::Difference: return "Difference";
  }
  return "unknown";
}

/// Right-hand side of the bound identified by `id` at (a, b, s), without its constant.
/// (a, b) is (x, y) for the Hermite bounds and (y, z) for the Laguerre ones.
inline double envelope(EnvelopeId id, double a, double b, double s, double alpha = 0.0) {
  detail::require_positive_time(s, "envelope");
  const double e = std::exp(-s);
  const double d = detail::one_minus_e2(s);
  switch (id) {
    case EnvelopeId::HermiteDs: {
      const double q = detail::mehler_quadratic(a, b, e);
      return std::exp(-q / (8.0 * d) - 0.5 * s) / std::pow(d, 1.5);
    }
    case EnvelopeId::HermiteMixed: {
      const double q = detail::mehler_quadratic(a, b, e);
      return std::exp(-q / (16.0 * d) - 0.5 * s) / (d * d);
    }
    case EnvelopeId::LaguerreSmall: {
      detail::require_laguerre_args(a, b, s, alpha, "envelope(LaguerreSmall)");
      if (bessel_region_parameter(a, b, s) > 1.0)
        throw DomainError("envelope(LaguerreSmall): point outside L(z)");
      return std::pow(a * b, alpha + 0.5) *
             std::exp(-(a * a + b * b) / (8.0 * s) - (alpha + 1.0) * s) / std::pow(d, alpha + 2.0);
    }
    case EnvelopeId::LaguerreLarge: {
      detail::require_laguerre_args(a, b, s, alpha, "envelope(LaguerreLarge)");
      if (bessel_region_parameter(a, b, s) < 1.0)
        throw DomainError("envelope(LaguerreLarge): point outside R(z)");
      const double q = detail::mehler_quadratic(a, b, e);
      return std::exp(-q / (2.0 * d) - 1.5 * s) * (a * a + b * b) / std::pow(d, 2.5);
    }
    case EnvelopeId::Difference: {
      detail::require_laguerre_args(a, b, s, alpha, "envelope(Difference)");
      if (bessel_region_parameter(a, b, s) < 1.0)
        throw DomainError("envelope(Difference): point outside R(z)");
      const double diff = a - b;
      return std::exp(-diff * diff / (2.0 * s) + 0.5 * s) / (a * b * std::sqrt(-std::expm1(-s)));
    }
  }
  throw ContractError("envelope: unknown id");
}

}  // namespace heatg

#endif  // HEATG_KERNELS_HPP
