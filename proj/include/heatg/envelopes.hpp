#ifndef HEATG_ENVELOPES_HPP
#define HEATG_ENVELOPES_HPP

// The catalogue of kernel estimates checked by envelope fitting: pointwise bounds
// on the derivative kernels and cone-norm bounds, each on a training lattice and a
// shifted validation lattice.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "heatg/areagfun.hpp"
#include "heatg/csv.hpp"
#include "heatg/kernels.hpp"
#include "heatg/quadrature.hpp"
#include "heatg/verify.hpp"

namespace heatg {

struct EnvelopeSuiteConfig {
  double margin = 2.0;
  double q = 2.0;
  std::vector<double> alphas{-0.25, 0.5, 2.0};
  ConeQuadratureSpec spec{};
};

/// Lattice lo, lo + step, ... <= hi shifted by `offset`.
inline std::vector<double> lattice(double lo, double hi, double step, double offset) {
  std::vector<double> out;
  for (double v = lo + offset; v <= hi + 1e-12; v += step) out.push_back(v);
  return out;
}

/// Training s-values: 16 log-spaced points in [0.01, 4]; validation: their log-midpoints.
inline std::vector<double> envelope_times(bool validation) {
  const auto s = log_spaced(0.01, 4.0, 16);
  if (!validation) return s;
  std::vector<double> mid;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) mid.push_back(std::sqrt(s[i] * s[i + 1]));
  return mid;
}

using PointFilter = std::function<bool(const EnvelopePoint&)>;

/// (x, z, s) lattice points accepted by `keep`; the RHS must be representable at every point kept.
inline std::vector<EnvelopePoint> envelope_grid(double lo, double hi, bool validation, bool with_time,
                                                const PointFilter& keep, const EnvelopeSampler& rhs) {
  const auto axis = lattice(lo, hi, 0.5, validation ? 0.25 : 0.0);
  const std::vector<double> times = with_time ? envelope_times(validation) : std::vector<double>{0.0};
  std::vector<EnvelopePoint> pts;
  for (double x : axis)
    for (double z : axis)
      for (double s : times) {
        const EnvelopePoint pt{x, z, s};
        if (!keep(pt)) continue;
        if (!(rhs(pt) > 1e-290)) continue;
        pts.push_back(pt);
      }
  return pts;
}

namespace detail {

inline EnvelopeFitReport fit_on_lattice(const std::string& id, double lo, double hi, bool with_time,
                                        const PointFilter& keep, const EnvelopeSampler& lhs,
                                        const EnvelopeSampler& rhs, double margin) {
  const auto training = envelope_grid(lo, hi, false, with_time, keep, rhs);
  const auto validation = envelope_grid(lo, hi, true, with_time, keep, rhs);
  return envelope_fit(id, lhs, rhs, training, validation, margin);
}

inline std::string with_alpha(const std::string& id, double alpha) {
  return id + "[alpha=" + format_number(alpha) + "]";
}

}  // namespace detail

/// One inequality of the catalogue, evaluated by `run`.
struct EnvelopeCase {
  std::string id;
  std::function<EnvelopeFitReport()> run;
};

inline std::vector<EnvelopeCase> envelope_catalogue(const EnvelopeSuiteConfig& cfg = {}) {
  using V = KernelNormVariant;
  std::vector<EnvelopeCase> cases;
  const double m = cfg.margin;
  const double q = cfg.q;
  const auto spec = cfg.spec;
  const auto apart = [](const EnvelopePoint& p) { return std::abs(p.x - p.z) >= 0.2 - 1e-12; };
  const auto any = [](const EnvelopePoint&) { return true; };

  cases.push_back({"hermite-ds-pointwise", [=] {
    return detail::fit_on_lattice(
        "hermite-ds-pointwise", -4.0, 4.0, true, any,
        [](const EnvelopePoint& p) { return hermite_heat_kernel_ds(p.x, p.z, p.s); },
        [](const EnvelopePoint& p) { return envelope(EnvelopeId::HermiteDs, p.x, p.z, p.s); }, m);
  }});
  cases.push_back({"hermite-mixed-pointwise", [=] {
    return detail::fit_on_lattice(
        "hermite-mixed-pointwise", -4.0, 4.0, true, any,
        [](const EnvelopePoint& p) { return hermite_heat_kernel_dyds(p.x, p.z, p.s); },
        [](const EnvelopePoint& p) { return envelope(EnvelopeId::HermiteMixed, p.x, p.z, p.s); }, m);
  }});
  cases.push_back({"hermite-ds-cone", [=] {
    return detail::fit_on_lattice(
        "hermite-ds-cone", 0.2, 6.0, false, apart,
        [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::HermiteDs); },
        [](const EnvelopePoint& p) { return 1.0 / std::abs(p.x - p.z); }, m);
  }});
  cases.push_back({"hermite-mixed-cone", [=] {
    return detail::fit_on_lattice(
        "hermite-mixed-cone", 0.2, 6.0, false, apart,
        [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::HermiteMixed); },
        [](const EnvelopePoint& p) { return 1.0 / ((p.x - p.z) * (p.x - p.z)); }, m);
  }});
  cases.push_back({"hermite-negated-cone", [=] {
    return detail::fit_on_lattice(
        "hermite-negated-cone", 0.2, 6.0, false, any,
        [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::HermiteNegated); },
        [](const EnvelopePoint& p) { return 1.0 / (p.x + p.z); }, m);
  }});
  cases.push_back({"odd-reflected-near", [=] {
    return detail::fit_on_lattice(
        "odd-reflected-near", 0.2, 6.0, false, [](const EnvelopePoint& p) { return p.z < 0.5 * p.x; },
        [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::OddReflected); },
        [](const EnvelopePoint& p) { return p.z / (p.x * p.x); }, m);
  }});
  cases.push_back({"odd-reflected-far", [=] {
    return detail::fit_on_lattice(
        "odd-reflected-far", 0.2, 6.0, false, [](const EnvelopePoint& p) { return p.z > 2.0 * p.x; },
        [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::OddReflected); },
        [](const EnvelopePoint& p) { return 1.0 / p.z; }, m);
  }});

  for (double alpha : cfg.alphas) {
    const auto small_region = [](const EnvelopePoint& p) { return bessel_region_parameter(p.x, p.z, p.s) <= 1.0; };
    const auto large_region = [](const EnvelopePoint& p) { return bessel_region_parameter(p.x, p.z, p.s) >= 1.0; };
    const auto separated = [](const EnvelopePoint& p) { return p.z < 0.5 * p.x || p.z > 2.0 * p.x; };
    const auto local = [apart](const EnvelopePoint& p) { return apart(p) && p.z > 0.5 * p.x && p.z < 2.0 * p.x; };
    const auto near = [](const EnvelopePoint& p) { return p.z < 0.5 * p.x; };
    const auto power_ratio = [alpha](const EnvelopePoint& p) {
      return std::pow(p.z, alpha + 0.5) / std::pow(p.x, alpha + 1.5);
    };

    std::string id = detail::with_alpha("laguerre-ds-small-pointwise", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, true, small_region,
          [alpha](const EnvelopePoint& p) { return laguerre_heat_kernel_ds(p.x, p.z, p.s, alpha); },
          [alpha](const EnvelopePoint& p) { return envelope(EnvelopeId::LaguerreSmall, p.x, p.z, p.s, alpha); }, m);
    }});
    id = detail::with_alpha("laguerre-ds-large-pointwise", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, true, large_region,
          [alpha](const EnvelopePoint& p) { return laguerre_heat_kernel_ds(p.x, p.z, p.s, alpha); },
          [alpha](const EnvelopePoint& p) { return envelope(EnvelopeId::LaguerreLarge, p.x, p.z, p.s, alpha); }, m);
    }});
    id = detail::with_alpha("difference-large-pointwise", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, true, large_region,
          [alpha](const EnvelopePoint& p) {
            return laguerre_heat_kernel_ds(p.x, p.z, p.s, alpha) - hermite_heat_kernel_ds(p.x, p.z, p.s);
          },
          [alpha](const EnvelopePoint& p) { return envelope(EnvelopeId::Difference, p.x, p.z, p.s, alpha); }, m);
    }});
    id = detail::with_alpha("laguerre-cone-separated", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, false, separated,
          [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::LaguerreFull, alpha); },
          [](const EnvelopePoint& p) { return p.z < 0.5 * p.x ? 1.0 / p.x : 1.0 / p.z; }, m);
    }});
    id = detail::with_alpha("laguerre-cone-small", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, false, apart,
          [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::LaguerreSmall, alpha); },
          [alpha](const EnvelopePoint& p) {
            return std::pow(p.z, alpha + 0.5) / std::pow(p.x + p.z, alpha + 1.5);
          },
          m);
    }});
    id = detail::with_alpha("laguerre-cone-large", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, false, apart,
          [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::LaguerreLarge, alpha); },
          [](const EnvelopePoint& p) {
            const double big = std::max(p.x, p.z);
            return big * big / std::pow(std::abs(p.x - p.z), 3.0);
          },
          m);
    }});
    id = detail::with_alpha("difference-cone-local", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, false, local,
          [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::Difference, alpha); },
          [](const EnvelopePoint& p) { return hardy_local_kernel(p.x, p.z); }, m);
    }});
    id = detail::with_alpha("laguerre-cone-small-near", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, false, near,
          [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::LaguerreSmall, alpha); },
          power_ratio, m);
    }});
    id = detail::with_alpha("laguerre-cone-large-near", alpha);
    cases.push_back({id, [=] {
      return detail::fit_on_lattice(
          id, 0.2, 6.0, false, near,
          [=](const EnvelopePoint& p) { return kernel_cone_norm(p.x, p.z, q, spec, V::LaguerreLarge, alpha); },
          power_ratio, m);
    }});
  }
  return cases;
}

inline std::vector<EnvelopeFitReport> run_envelope_suite(const EnvelopeSuiteConfig& cfg = {}) {
  std::vector<EnvelopeFitReport> out;
  for (const auto& c : envelope_catalogue(cfg)) out.push_back(c.run());
  return out;
}

}  // namespace heatg

#endif  // HEATG_ENVELOPES_HPP
