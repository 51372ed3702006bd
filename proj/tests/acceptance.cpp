// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Each criterion also has a wall-clock budget that counts toward its verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heatg/heatg.hpp"
#include "series.hpp"

using namespace heatg;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Verdict()> run;
};

std::string fmt(double v) { return format_number(v); }

/// Rolls a suite into a verdict naming its worst (or first failing) check.
Verdict from_suite(const SuiteResult& s) {
  Verdict v{s.passed(), std::to_string(s.checks.size()) + " checks"};
  for (const auto& c : s.failures()) v.detail += "; failed " + c.name + " [" + c.label + "] " + fmt(c.value) + " vs " + fmt(c.limit);
  return v;
}

Verdict mehler_consistency() {
  double worst_h = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double x = -4.0 + i, y = -4.0 + j;
        worst_h = std::max(worst_h, std::abs(hermite_heat_kernel(x, y, t) - series::hermite(200, x, y, t)));
      }
  double worst_l = 0.0;
  for (double a : {-0.25, 0.5, 1.0, 3.7})
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j)
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
          const double x = 0.5 * i, y = 0.5 * j;
          worst_l = std::max(worst_l, std::abs(laguerre_heat_kernel(x, y, t, a) - series::laguerre(300, x, y, t, a)));
        }
  return {worst_h <= 1e-8 && worst_l <= 1e-7, "hermite max abs " + fmt(worst_h) + ", laguerre max abs " + fmt(worst_l)};
}

/// Richardson-extrapolated central difference in s with a step proportional to s.
double central(const std::function<double(double)>& f, double v) {
  const double h = 1e-4 * v;
  const auto d = [&](double k) { return (f(v + k) - f(v - k)) / (2.0 * k); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

Verdict derivative_formulas() {
  double worst = 0.0;
  const auto track = [&](double fd, double exact) { worst = std::max(worst, std::abs(fd - exact) / std::abs(exact)); };
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double x = -4.0 + i, y = -4.0 + j;
        track(central([&](double s) { return hermite_heat_kernel(x, y, s); }, t), hermite_heat_kernel_ds(x, y, t));
      }
  for (double a : {-0.25, 0.5, 1.0, 3.7})
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j)
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
          const double x = 0.5 * i, y = 0.5 * j;
          track(central([&](double s) { return laguerre_heat_kernel(x, y, s, a); }, t),
                laguerre_heat_kernel_ds(x, y, t, a));
        }
  return {worst <= 1e-5, "max rel " + fmt(worst)};
}

Verdict half_integer_reduction() {
  double worst = 0.0;
  for (int i = 1; i <= 16; ++i)
    for (int j = 1; j <= 16; ++j)
      for (double t : {0.1, 0.5, 1.0}) {
        const double x = 0.25 * i, y = 0.25 * j;
        const double rhs = hermite_heat_kernel(x, y, t) - hermite_heat_kernel(x, -y, t);
        worst = std::max(worst, std::abs(laguerre_heat_kernel(x, y, t, 0.5) - rhs));
      }
  return {worst <= 1e-10, "max abs " + fmt(worst)};
}

Verdict polarization() {
  Verdict v{true, ""};
  for (double alpha : {-0.25, 0.5, 1.0, 3.7}) {
    const auto reports = polarization_suite(alpha, 10, 42);
    double worst_rel = 0.0, orth_abs = 0.0;
    bool has_unit = false, has_orth = false;
    for (const auto& r : reports) {
      v.ok = v.ok && polarization_ok(r);
      if (r.exact == 0.0) {
        has_orth = true;
        orth_abs = std::max(orth_abs, r.abs_err);
      } else {
        has_unit = has_unit || r.exact == 1.0;
        worst_rel = std::max(worst_rel, r.rel_err);
      }
    }
    v.ok = v.ok && has_unit && has_orth;
    v.detail += (v.detail.empty() ? "" : "; ") + std::string("alpha=") + fmt(alpha) + " rel " + fmt(worst_rel) +
                " orth abs " + fmt(orth_abs);
  }
  return v;
}

Verdict envelope_suite() {
  const auto reports = run_envelope_suite();
  Verdict v{!reports.empty(), std::to_string(reports.size()) + " inequalities"};
  double worst = 0.0;
  for (const auto& r : reports) {
    worst = std::max(worst, r.worst_validation_ratio);
    if (!r.passed()) {
      v.ok = false;
      v.detail += "; " + r.inequality_id + " has " + std::to_string(r.violations.size()) + " violations";
    }
  }
  v.detail += ", worst validation ratio " + fmt(worst);
  return v;
}

Verdict boundedness() {
  const auto a = boundedness_suite(42);
  const auto b = weak_type_suite();
  SuiteResult all{"boundedness", a.checks};
  all.checks.insert(all.checks.end(), b.checks.begin(), b.checks.end());
  return from_suite(all);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"mehler-closed-form-matches-eigen-series", 10, mehler_consistency},
      {"time-derivative-matches-finite-differences", 5, derivative_formulas},
      {"half-integer-laguerre-is-reflected-hermite", 1, half_integer_reduction},
      {"line-area-function-half-isometry", 60, [] { return from_suite(l2_isometry_suite()); }},
      {"half-line-polarization-identity", 120, polarization},
      {"kernel-envelope-catalogue", 600, envelope_suite},
      {"area-function-boundedness-and-weak-type", 600, boundedness},
      {"reverse-inequality-and-equivalence", 600, [] { return from_suite(reverse_suite()); }},
      {"hardy-space-maximal-vs-area", 300, [] { return from_suite(h1_suite()); }},
      {"hermite-semigroup-not-conservative", 1, [] { return from_suite(non_conservation_suite()); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.budget_s;
    const bool ok = v.ok && in_time;
    failed += ok ? 0 : 1;
    std::printf("%s %s (%s; %.2fs of %.0fs%s)\n", ok ? "PASS" : "FAIL", c.name.c_str(), v.detail.c_str(), elapsed,
                c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
