// heatg: batch front end. Every command writes one CSV table (to --out, or stdout)
// whose leading '#' lines echo the effective configuration.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatg/heatg.hpp"

namespace {

using namespace heatg;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  std::string text;

  [[nodiscard]] std::vector<double> points() const {
    if (n == 1) return {lo};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
  }
};

Grid parse_grid(const std::string& text, const char* flag) {
  Grid g;
  g.text = text;
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  try {
    if (b == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    g.lo = std::stod(text.substr(0, a), &used);
    if (used != a) throw std::invalid_argument(text);
    g.hi = std::stod(text.substr(a + 1, b - a - 1), &used);
    if (used != b - a - 1) throw std::invalid_argument(text);
    g.n = std::stoi(text.substr(b + 1), &used);
    if (used != text.size() - b - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + ": expected lo:hi:count, got '" + text + "'");
  }
  if (g.n < 1 || (g.n > 1 && !(g.hi > g.lo))) throw UsageError(std::string(flag) + ": need count >= 1 and lo < hi");
  return g;
}

struct BasisChoice {
  std::string name = "hermite";
  double alpha = 0.5;

  [[nodiscard]] BasisId id() const { return name == "hermite" ? BasisId::hermite() : BasisId::laguerre(alpha); }
  [[nodiscard]] bool laguerre() const { return name == "laguerre"; }
};

void require_domain(const BasisChoice& b, const Grid& g, const char* flag) {
  if (b.laguerre() && !(g.lo > 0.0)) throw UsageError(std::string(flag) + ": laguerre grids must lie in (0, inf)");
}

struct Options {
  std::uint64_t seed = 42;
  std::string out;

  BasisChoice basis;
  double t = 1.0;
  std::string xgrid;
  std::string ygrid = "-4:4:9";
  double q = 2.0;
  std::string f = "eigen:0";
  ConeQuadratureSpec cone{};
  std::string suite;
  std::size_t pairs = 10;
  double tolerance = 1e-3;
  double margin = 2.0;
  std::string case_filter;
  std::size_t count = 20;
};

/// Emits the table and any failed checks; returns the exit status.
int finish(CsvTable table, const Options& opt, const std::vector<std::string>& failures) {
  table.add_meta("status", failures.empty() ? "pass" : "fail");
  table.add_meta("failures", std::to_string(failures.size()));
  if (opt.out.empty()) {
    std::cout << table.str();
    std::cout.flush();
    if (!std::cout) return kIo;
  } else if (!table.write(opt.out)) {
    std::cerr << "heatg: cannot write '" << opt.out << "'\n";
    return kIo;
  }
  for (const auto& line : failures) std::cerr << "FAIL " << line << '\n';
  return failures.empty() ? kPass : kCheckFailed;
}

void echo_common(CsvTable& t, const std::string& command, const Options& opt) {
  t.add_meta("command", command);
  t.add_meta("seed", std::to_string(opt.seed));
  t.add_meta("out", opt.out.empty() ? "-" : opt.out);
}

void echo_basis(CsvTable& t, const BasisChoice& b) {
  t.add_meta("basis", b.name);
  if (b.laguerre()) t.add_meta("alpha", b.alpha);
}

void echo_cone(CsvTable& t, const ConeQuadratureSpec& c) {
  t.add_meta("t_min", c.t_min);
  t.add_meta("t_max", c.t_max);
  t.add_meta("n_t", std::to_string(c.n_t));
  t.add_meta("n_y", std::to_string(c.n_y));
}

void validate_cone(const ConeQuadratureSpec& c) {
  try {
    c.validate();
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
}

int run_kernel(const Options& opt) {
  const Grid xs = parse_grid(opt.xgrid.empty() ? (opt.basis.laguerre() ? "0.25:4:16" : "-4:4:9") : opt.xgrid, "--xgrid");
  const Grid ys = parse_grid(opt.basis.laguerre() && opt.ygrid == "-4:4:9" ? "0.25:4:16" : opt.ygrid, "--ygrid");
  require_domain(opt.basis, xs, "--xgrid");
  require_domain(opt.basis, ys, "--ygrid");
  if (!(opt.t > 0.0)) throw UsageError("--t must be positive");
  if (opt.basis.laguerre() && !(opt.basis.alpha > -1.0)) throw UsageError("--alpha must exceed -1");

  CsvTable table;
  echo_common(table, "kernel", opt);
  echo_basis(table, opt.basis);
  table.add_meta("t", opt.t);
  table.add_meta("xgrid", xs.text);
  table.add_meta("ygrid", ys.text);
  table.columns = {"x", "y", "kernel", "kernel_ds"};
  for (double x : xs.points())
    for (double y : ys.points()) {
      const bool h = !opt.basis.laguerre();
      const double a = opt.basis.alpha;
      table.add_row({x, y, h ? hermite_heat_kernel(x, y, opt.t) : laguerre_heat_kernel(x, y, opt.t, a),
                     h ? hermite_heat_kernel_ds(x, y, opt.t) : laguerre_heat_kernel_ds(x, y, opt.t, a)});
    }
  return finish(std::move(table), opt, {});
}

SpectralExpansion parse_input(const std::string& text, const BasisId& basis, std::uint64_t seed) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  int n = -1;
  try {
    std::size_t used = 0;
    if (colon != std::string::npos) n = std::stoi(text.substr(colon + 1), &used);
    if (colon == std::string::npos || used != text.size() - colon - 1) n = -1;
  } catch (const std::logic_error&) {
    n = -1;
  }
  if (kind == "eigen" && n >= 0) return SpectralExpansion::unit(basis, static_cast<std::size_t>(n));
  if (kind == "random" && n >= 1) return random_unit_family(basis, 1, static_cast<std::size_t>(n), seed).front();
  throw UsageError("--f: expected eigen:N or random:TERMS, got '" + text + "'");
}

int run_gfun(const Options& opt) {
  const Grid xs = parse_grid(opt.xgrid.empty() ? (opt.basis.laguerre() ? "0.25:4:16" : "-4:4:33") : opt.xgrid, "--xgrid");
  require_domain(opt.basis, xs, "--xgrid");
  if (opt.basis.laguerre() && !(opt.basis.alpha > -1.0)) throw UsageError("--alpha must exceed -1");
  ConeQuadratureSpec cone = opt.cone;
  cone.q = opt.q;
  validate_cone(cone);
  const auto f = parse_input(opt.f, opt.basis.id(), opt.seed);

  CsvTable table;
  echo_common(table, "gfun", opt);
  echo_basis(table, opt.basis);
  table.add_meta("q", opt.q);
  table.add_meta("f", opt.f);
  table.add_meta("xgrid", xs.text);
  echo_cone(table, cone);
  table.columns = {"x", "g", "refinement_delta"};
  for (double x : xs.points()) {
    const auto r = area_g(f, x, cone);
    table.add_row({r.x, r.value, r.refinement_delta});
  }
  return finish(std::move(table), opt, {});
}

int run_suite(const SuiteResult& s, CsvTable table, const Options& opt) {
  const auto rows = s.table();
  table.columns = rows.columns;
  table.rows = rows.rows;
  std::vector<std::string> failures;
  for (const auto& c : s.failures())
    failures.push_back("suite=" + s.suite + " check=" + c.name + " case=" + c.label + " value=" +
                       format_number(c.value) + " limit=" + format_number(c.limit));
  return finish(std::move(table), opt, failures);
}

int run_verify(const Options& opt) {
  if (!(opt.q > 1.0)) throw UsageError("--q must exceed 1");
  CsvTable table;
  echo_common(table, "verify", opt);
  table.add_meta("suite", opt.suite);
  table.add_meta("q", opt.q);
  if (opt.suite == "l2-isometry") return run_suite(l2_isometry_suite(opt.seed), std::move(table), opt);
  if (opt.suite == "boundedness") return run_suite(boundedness_suite(opt.seed, opt.q), std::move(table), opt);
  if (opt.suite == "weak-type") return run_suite(weak_type_suite(opt.q), std::move(table), opt);
  if (opt.suite == "reverse") return run_suite(reverse_suite(opt.seed), std::move(table), opt);
  if (opt.suite == "h1") return run_suite(h1_suite(opt.seed), std::move(table), opt);
  return run_suite(non_conservation_suite(), std::move(table), opt);
}

int run_polarize(const Options& opt) {
  if (!(opt.basis.alpha > -1.0)) throw UsageError("--alpha must exceed -1");
  if (opt.pairs < 1) throw UsageError("--pairs must be at least 1");
  if (!(opt.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  const auto reports = polarization_suite(opt.basis.alpha, opt.pairs, opt.seed);
  CsvTable table = polarization_table(reports, opt.tolerance);
  echo_common(table, "polarize", opt);
  table.add_meta("alpha", opt.basis.alpha);
  table.add_meta("pairs", std::to_string(opt.pairs));
  table.add_meta("tolerance", opt.tolerance);
  std::vector<std::string> failures;
  for (std::size_t k = 0; k < reports.size(); ++k)
    if (!polarization_ok(reports[k], opt.tolerance))
      failures.push_back("polarize pair=" + std::to_string(k) + " rel_err=" + format_number(reports[k].rel_err) +
                         " abs_err=" + format_number(reports[k].abs_err));
  return finish(std::move(table), opt, failures);
}

int run_envelope(const Options& opt) {
  if (!(opt.margin >= 1.0)) throw UsageError("--margin must be at least 1");
  EnvelopeSuiteConfig cfg;
  cfg.margin = opt.margin;
  std::vector<EnvelopeFitReport> reports;
  for (const auto& c : envelope_catalogue(cfg))
    if (opt.case_filter.empty() || c.id.find(opt.case_filter) != std::string::npos) reports.push_back(c.run());
  if (reports.empty()) throw UsageError("--case '" + opt.case_filter + "' matches no inequality");
  CsvTable table = envelope_table(reports);
  echo_common(table, "envelope", opt);
  table.add_meta("margin", opt.margin);
  table.add_meta("case", opt.case_filter.empty() ? "*" : opt.case_filter);
  std::vector<std::string> failures;
  for (const auto& r : reports)
    if (!r.passed())
      failures.push_back("envelope id=" + r.inequality_id + " violations=" + std::to_string(r.violations.size()) +
                         " worst=" + format_number(r.worst_validation_ratio));
  return finish(std::move(table), opt, failures);
}

int run_h1(const Options& opt) {
  if (!(opt.basis.alpha > -1.0)) throw UsageError("--alpha must exceed -1");
  if (opt.count < 2) throw UsageError("--count must be at least 2");
  CsvTable table;
  echo_common(table, "h1", opt);
  table.add_meta("alpha", opt.basis.alpha);
  table.add_meta("count", std::to_string(opt.count));
  table.add_meta("spread_limit", 25.0);
  table.columns = {"index", "maximal_l1", "l1_plus_g_l1", "ratio"};
  std::vector<double> ratios;
  const auto family = random_positive_family(BasisId::laguerre(opt.basis.alpha), opt.count, 8, opt.seed);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto r = h1_diagnostic(family[k]);
    ratios.push_back(r.ratio.value_or(NAN));
    table.add_row({static_cast<long long>(k), r.maximal_l1, r.l1_plus_g_l1, ratios.back()});
  }
  const double spread = detail::spread(ratios);
  table.add_meta("spread", spread);
  std::vector<std::string> failures;
  if (!(spread <= 25.0)) failures.push_back("h1 spread=" + format_number(spread) + " limit=25");
  return finish(std::move(table), opt, failures);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Hermite and Laguerre heat semigroups, area g-functions, and their verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", opt.seed, "Seed for random test families")->capture_default_str();
  app.add_option("--out", opt.out, "Output CSV path (default: stdout)");

  const std::vector<std::string> bases{"hermite", "laguerre"};
  const auto add_alpha = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", opt.basis.alpha, "Laguerre type alpha > -1")->capture_default_str();
  };

  auto* kernel = app.add_subcommand("kernel", "Heat kernel and its s-derivative on a grid");
  kernel->add_option("--basis", opt.basis.name)->check(CLI::IsMember(bases))->capture_default_str();
  add_alpha(kernel);
  kernel->add_option("--t", opt.t, "Time s > 0")->capture_default_str();
  kernel->add_option("--xgrid", opt.xgrid, "lo:hi:count");
  kernel->add_option("--ygrid", opt.ygrid, "lo:hi:count")->capture_default_str();

  auto* gfun = app.add_subcommand("gfun", "Area g-function of a test input on a grid");
  gfun->add_option("--basis", opt.basis.name)->check(CLI::IsMember(bases))->capture_default_str();
  add_alpha(gfun);
  gfun->add_option("--q", opt.q, "Cone exponent q > 1")->capture_default_str();
  gfun->add_option("--f", opt.f, "eigen:N or random:TERMS")->capture_default_str();
  gfun->add_option("--xgrid", opt.xgrid, "lo:hi:count");
  gfun->add_option("--t-min", opt.cone.t_min)->capture_default_str();
  gfun->add_option("--t-max", opt.cone.t_max)->capture_default_str();
  gfun->add_option("--n-t", opt.cone.n_t)->capture_default_str();
  gfun->add_option("--n-y", opt.cone.n_y)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("--suite", opt.suite)
      ->required()
      ->check(CLI::IsMember({"l2-isometry", "boundedness", "weak-type", "reverse", "h1", "non-conservation"}));
  verify->add_option("--q", opt.q, "Cone exponent for boundedness and weak-type")->capture_default_str();

  auto* polarize = app.add_subcommand("polarize", "Bilinear reproduction check on a suite of pairs");
  add_alpha(polarize);
  polarize->add_option("--pairs", opt.pairs)->capture_default_str();
  polarize->add_option("--tolerance", opt.tolerance, "Relative error bound (absolute for orthogonal pairs)")
      ->capture_default_str();

  auto* envelope = app.add_subcommand("envelope", "Fit constants for the kernel estimate catalogue");
  envelope->add_option("--margin", opt.margin)->capture_default_str();
  envelope->add_option("--case", opt.case_filter, "Run only inequalities whose id contains this text");

  auto* h1 = app.add_subcommand("h1", "Maximal-function versus g-function comparison");
  add_alpha(h1);
  h1->add_option("--count", opt.count)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (kernel->parsed()) return run_kernel(opt);
    if (gfun->parsed()) return run_gfun(opt);
    if (verify->parsed()) return run_verify(opt);
    if (polarize->parsed()) return run_polarize(opt);
    if (envelope->parsed()) return run_envelope(opt);
    return run_h1(opt);
  } catch (const UsageError& e) {
    std::cerr << "heatg: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "heatg: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "heatg: " << e.what() << '\n';
    return kUsage;
  }
}
