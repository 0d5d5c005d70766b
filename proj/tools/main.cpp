// krein: command-line front end for the extension toolkit.
//
//   krein <weyl-grid|spectrum|resolvent|verify|density|calibrate> [flags]
//
// Exit codes: 0 success, 1 invariant failure, 2 config error, 3 spectral guard.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krein/boundary_triple.hpp"
#include "krein/error.hpp"
#include "krein/extension_solver.hpp"
#include "krein/format.hpp"
#include "krein/krein_field.hpp"
#include "krein/models.hpp"
#include "krein/spectral_measure.hpp"
#include "krein/verify.hpp"
#include "table.hpp"

using nlohmann::json;

namespace krein::cli {
namespace {

enum Exit : int { kOk = 0, kInvariant = 1, kConfig = 2, kGuard = 3 };

// Raised for malformed or missing configuration; always exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code)
{
  switch (code) {
  case ErrorCode::SpectrumCollision:
  case ErrorCode::IntervalTouchesBaseSpectrum:
  case ErrorCode::SingularBoundaryOperator:
  case ErrorCode::SingularResolvent:
    return kGuard;
  case ErrorCode::RankDeficientTrace:
  case ErrorCode::IdentityViolation:
  case ErrorCode::NoConvergence:
  case ErrorCode::ConvergenceFailure:
  case ErrorCode::NonFiniteValue:
    return kInvariant;
  default:
    return kConfig;
  }
}

// Flags as parsed; only those actually given override the config file.
struct Flags {
  std::string config_path;
  std::string model;
  std::vector<double> theta;
  std::vector<double> interval;
  int grid = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  long long oracle_cap = 0;
  std::vector<std::string> z;
  long long n = 0;
  long long k = 0;
  double half_width = 0.0;
  double spacing = 0.0;
  double site = 0.0;
  std::string model_file;
  double alpha = 0.0;
  double coupling = 0.0;
  bool distinguished = false;
};

Complex parse_complex(const std::string &text)
{
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      return {parse_double(text), 0.0};
    }
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
  } catch (const Error &) {
    throw ConfigError("cannot parse complex number '" + text + "' (expected re,im)");
  }
}

template <class T>
T get_or(const json &cfg, const char *key, T fallback)
{
  if (!cfg.contains(key) || cfg[key].is_null()) {
    return fallback;
  }
  try {
    return cfg[key].get<T>();
  } catch (const json::exception &) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

// Effective run configuration, resolved from config file plus flag overrides.
struct RunConfig {
  json effective;
  ModelSpec model;
  std::optional<std::vector<double>> theta;
  bool distinguished = false;
  std::optional<double> alpha;
  std::optional<double> coupling;
  std::optional<std::pair<double, double>> interval;
  std::optional<int> grid;
  std::optional<double> epsilon;
  std::vector<Complex> z;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "csv";
  Index oracle_cap = 4096;
};

RunConfig resolve_config(const Flags &f, const CLI::App &app)
{
  json cfg = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      throw ConfigError("cannot open config file " + f.config_path);
    }
    try {
      cfg = json::parse(in);
    } catch (const json::exception &e) {
      throw ConfigError("config file " + f.config_path + ": " + e.what());
    }
    if (!cfg.is_object()) {
      throw ConfigError("config file must hold a JSON object");
    }
  }
  auto given = [&](const char *name) { return app.count(name) > 0; };
  if (given("--model")) cfg["model"] = f.model;
  if (given("--theta")) cfg["theta"] = f.theta;
  if (given("--interval")) cfg["interval"] = f.interval;
  if (given("--grid")) cfg["grid"] = f.grid;
  if (given("--epsilon")) cfg["epsilon"] = f.epsilon;
  if (given("--seed")) cfg["seed"] = f.seed;
  if (given("--out")) cfg["out"] = f.out;
  if (given("--format")) cfg["format"] = f.format;
  if (given("--oracle-cap")) cfg["oracle_cap"] = f.oracle_cap;
  if (given("--n")) cfg["n"] = f.n;
  if (given("--k")) cfg["k"] = f.k;
  if (given("--half-width")) cfg["half_width"] = f.half_width;
  if (given("--spacing")) cfg["spacing"] = f.spacing;
  if (given("--site")) cfg["site"] = f.site;
  if (given("--model-file")) cfg["model_file"] = f.model_file;
  if (given("--alpha")) cfg["alpha"] = f.alpha;
  if (given("--coupling")) cfg["coupling"] = f.coupling;
  if (given("--distinguished")) cfg["distinguished"] = f.distinguished;
  if (given("--z")) {
    json zs = json::array();
    for (const auto &s : f.z) {
      const Complex z = parse_complex(s);
      zs.push_back({z.real(), z.imag()});
    }
    cfg["z"] = zs;
  }

  RunConfig rc;
  if (!cfg.contains("model")) {
    throw ConfigError("no model given (--model)");
  }
  try {
    rc.model.kind = parse_model_kind(get_or<std::string>(cfg, "model", ""));
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  rc.model.n = get_or<long long>(cfg, "n", 0);
  rc.model.k = get_or<long long>(cfg, "k", 1);
  rc.seed = get_or<std::uint64_t>(cfg, "seed", 42);
  rc.model.seed = rc.seed;
  rc.model.half_width = get_or<double>(cfg, "half_width", 20.0);
  rc.model.spacing = get_or<double>(cfg, "spacing", 0.0);
  rc.model.site = get_or<double>(cfg, "site", 0.0);
  rc.model.path = get_or<std::string>(cfg, "model_file", "");

  if (cfg.contains("theta")) rc.theta = get_or<std::vector<double>>(cfg, "theta", {});
  rc.distinguished = get_or<bool>(cfg, "distinguished", false);
  if (cfg.contains("alpha")) rc.alpha = get_or<double>(cfg, "alpha", 0.0);
  if (cfg.contains("coupling")) rc.coupling = get_or<double>(cfg, "coupling", 0.0);
  if (cfg.contains("interval")) {
    const auto iv = get_or<std::vector<double>>(cfg, "interval", {});
    if (iv.size() != 2 || !(iv[0] < iv[1])) {
      throw ConfigError("interval needs two increasing values a < b");
    }
    rc.interval = std::pair{iv[0], iv[1]};
  }
  if (cfg.contains("grid")) {
    rc.grid = get_or<int>(cfg, "grid", 0);
    if (*rc.grid < 0) {
      throw ConfigError("grid must be non-negative");
    }
  }
  if (cfg.contains("epsilon")) {
    rc.epsilon = get_or<double>(cfg, "epsilon", 0.0);
    if (!(*rc.epsilon > 0.0)) {
      throw ConfigError("epsilon must be positive");
    }
  }
  if (cfg.contains("z")) {
    const json &zs = cfg["z"];
    if (!zs.is_array()) {
      throw ConfigError("z must be a list of [re, im] pairs");
    }
    for (const auto &p : zs) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw ConfigError("z must be a list of [re, im] pairs");
      }
      rc.z.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }
  rc.out = get_or<std::string>(cfg, "out", "");
  rc.format = get_or<std::string>(cfg, "format", "csv");
  if (rc.format != "csv" && rc.format != "json") {
    throw ConfigError("format must be csv or json");
  }
  const long long cap = get_or<long long>(cfg, "oracle_cap", 4096);
  if (cap < 0) {
    throw ConfigError("oracle cap must be non-negative");
  }
  rc.oracle_cap = cap;
  // Output path and format do not change the records.
  cfg.erase("out");
  cfg.erase("format");
  rc.effective = cfg;
  return rc;
}

struct Context {
  RunConfig rc;
  Model model;
  KreinField field;
};

// Extension selected by the configuration, if any.
std::optional<ExtensionSpec> resolve_extension(const Context &ctx)
{
  const RunConfig &rc = ctx.rc;
  if (rc.distinguished) {
    return ExtensionSpec::distinguished();
  }
  if (rc.theta) {
    const Index k = ctx.field.aux_dim();
    if (static_cast<Index>(rc.theta->size()) != k * k) {
      throw ConfigError("theta needs k*k = " + std::to_string(k * k) + " values, got " +
                        std::to_string(rc.theta->size()));
    }
    Matrix theta(k, k);
    for (Index r = 0; r < k; ++r) {
      for (Index c = 0; c < k; ++c) {
        theta(r, c) = (*rc.theta)[static_cast<std::size_t>(r * k + c)];
      }
    }
    return ExtensionSpec::parameter(theta);
  }
  if (rc.alpha) {
    if (rc.model.kind != ModelKind::LatticeLaplacianDelta) {
      throw ConfigError("alpha calibration needs the latticeLaplacianDelta model");
    }
    return calibrate_theta_for_coupling(ctx.model, ctx.field, *rc.alpha);
  }
  if (rc.coupling) {
    return calibrate_theta_for_rank_one(ctx.field, *rc.coupling);
  }
  if (ctx.model.theta) {
    return ExtensionSpec::parameter(*ctx.model.theta);
  }
  return std::nullopt;
}

ExtensionSpec require_extension(const Context &ctx)
{
  auto spec = resolve_extension(ctx);
  if (!spec) {
    throw ConfigError("no extension given (--theta, --alpha, --coupling or --distinguished)");
  }
  return *spec;
}

std::pair<double, double> require_interval(const RunConfig &rc)
{
  if (!rc.interval) {
    throw ConfigError("--interval a b is required");
  }
  return *rc.interval;
}

// z points from --z, or the line x + i*epsilon over --interval with --grid points.
std::vector<Complex> sample_points(const RunConfig &rc)
{
  std::vector<Complex> zs = rc.z;
  if (rc.interval) {
    const int grid = rc.grid.value_or(0);
    const auto [a, b] = *rc.interval;
    const double eps = rc.epsilon.value_or(1e-4 * (b - a));
    for (int i = 0; i < grid; ++i) {
      const double x = grid == 1 ? a : a + (b - a) * i / (grid - 1);
      zs.emplace_back(x, eps);
    }
  }
  if (zs.empty()) {
    throw ConfigError("empty grid: give --z points or --interval with --grid N > 0");
  }
  return zs;
}

std::string entry_name(const char *prefix, Index r, Index c)
{
  return std::string(prefix) + "_" + std::to_string(r) + "_" + std::to_string(c);
}

struct Output {
  Table table;
  std::vector<std::pair<std::string, Table>> side; // extra files, suffix -> table
  int exit = kOk;
  std::string message;
};

Output cmd_weyl_grid(const Context &ctx)
{
  const auto zs = sample_points(ctx.rc);
  const Index k = ctx.field.aux_dim();
  std::vector<std::string> cols{"z"};
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < k; ++c) {
      cols.push_back(entry_name("gamma", r, c));
    }
  }
  cols.push_back("min_eig_im_gamma");
  Output out{Table(cols), {}, kOk, {}};
  for (const Complex z : zs) {
    WeylSample s;
    try {
      s = weyl(ctx.field, z);
    } catch (const Error &e) {
      if (e.code() == ErrorCode::SpectrumCollision) {
        throw Error(e.code(), "grid point z = " + format_double(z.real()) + (z.imag() < 0 ? "" : "+") +
                                  format_double(z.imag()) + "i lies on the spectrum of A");
      }
      throw;
    }
    std::vector<Cell> row{z};
    for (Index r = 0; r < k; ++r) {
      for (Index c = 0; c < k; ++c) {
        row.emplace_back(s.gamma(r, c));
      }
    }
    row.emplace_back(min_eigenvalue(imag_part(s.gamma)));
    out.table.add(std::move(row));
  }
  return out;
}

Output cmd_spectrum(const Context &ctx)
{
  const ExtensionSpec spec = require_extension(ctx);
  const int grid = ctx.rc.grid.value_or(200);
  if (grid < 16) {
    throw ConfigError("spectrum needs --grid >= 16");
  }
  const EigenScan scan = ctx.rc.interval
                             ? eigen_solve(ctx.field, spec, ctx.rc.interval->first, ctx.rc.interval->second, grid)
                             : eigen_solve_resolvent_set(ctx.field, spec, 1e-7, grid);

  const bool oracle = ctx.field.dim() <= ctx.rc.oracle_cap;
  Spectrum reference;
  if (oracle) {
    reference = diagonalize(recover_operator(ctx.field, spec, Complex(0.0, 1.0)));
  }
  // Recorded relative to the output file so the records do not depend on where it was written.
  const std::string vec_file =
      ctx.rc.out.empty() ? "" : std::filesystem::path(ctx.rc.out).filename().string() + ".eigenvectors.csv";

  Output out{Table({"lambda", "multiplicity", "bc_residual", "eigenvector_file", "oracle_match"}), {}, kOk, {}};
  Table vectors({"lambda_index", "column", "component", "value"});
  for (std::size_t j = 0; j < scan.eigenvalues.size(); ++j) {
    const EigenResult &r = scan.eigenvalues[j];
    std::string match = "skipped";
    if (oracle) {
      const double tol = 1e-8 * std::max(1.0, std::abs(r.lambda));
      Index count = 0;
      for (Index i = 0; i < reference.values.size(); ++i) {
        count += std::abs(reference.values(i) - r.lambda) <= tol ? 1 : 0;
      }
      match = count == r.multiplicity ? "true" : "false";
    }
    out.table.add({r.lambda, static_cast<long long>(r.multiplicity), boundary_condition_residual(ctx.field, spec, r),
                   vec_file, match});
    for (Index c = 0; c < r.eigenvectors.cols(); ++c) {
      for (Index i = 0; i < r.eigenvectors.rows(); ++i) {
        vectors.add({static_cast<long long>(j), static_cast<long long>(c), static_cast<long long>(i),
                     r.eigenvectors(i, c)});
      }
    }
  }
  for (const auto &f : scan.failures) {
    out.exit = kInvariant;
    out.message = "root refinement failed in [" + format_double(f.lower) + ", " + format_double(f.upper) +
                  "]: " + f.reason;
  }
  if (!vec_file.empty()) {
    out.side.emplace_back(".eigenvectors.csv", std::move(vectors));
  }
  return out;
}

Output cmd_resolvent(const Context &ctx)
{
  const ExtensionSpec spec = require_extension(ctx);
  const auto zs = sample_points(ctx.rc);
  const bool oracle = ctx.field.dim() <= ctx.rc.oracle_cap;
  std::optional<BaseOperator> recovered;
  if (oracle) {
    recovered = recover_operator(ctx.field, spec, Complex(0.0, 1.0));
  }
  Output out{Table({"z", "membership", "trace_resolvent", "oracle_residual"}), {}, kOk, {}};
  const RealVector &ev = ctx.field.base().eigenvalues();
  for (const Complex z : zs) {
    if (resolvent_membership(ctx.field, spec, z) == Membership::InSpectrum) {
      out.table.add({z, std::string("spectrum"), Complex(NAN, NAN), NAN});
      continue;
    }
    // tr R_Theta(z) = sum 1/(z - lambda_j) + tr[(Theta + Gamma)^{-1} G(conj z)^* G(z)]
    Complex trace = 0.0;
    for (Index i = 0; i < ev.size(); ++i) {
      trace += 1.0 / (z - ev(i));
    }
    if (spec.has_parameter()) {
      const Matrix gz = gmap(ctx.field, z);
      const Matrix gzbar = gmap(ctx.field, std::conj(z));
      const Matrix m = boundary_operator(ctx.field, spec, z).fullPivLu().solve(gzbar.adjoint() * gz);
      trace += m.trace();
    }
    double residual = NAN;
    if (recovered) {
      const Index n = ctx.field.dim();
      const Matrix eye = Matrix::Identity(n, n);
      const Matrix rz = krein_resolvent_apply(ctx.field, spec, z, eye);
      residual = max_abs(rz - recovered->solve(z, eye)) / std::max(1.0, max_abs(rz));
    }
    out.table.add({z, std::string("resolvent"), trace, residual});
  }
  return out;
}

Output cmd_verify(const Context &ctx)
{
  auto spec = resolve_extension(ctx);
  VerifyOptions opts;
  opts.seed = ctx.rc.seed;
  opts.oracle_cap = ctx.rc.oracle_cap;
  const auto results = verify_invariants(ctx.field, spec.value_or(ExtensionSpec::distinguished()), opts);
  Output out{Table({"invariant", "max_residual", "tolerance", "passed", "note"}), {}, kOk, {}};
  for (const auto &r : results) {
    out.table.add({r.name, r.max_residual, r.tolerance, r.passed, r.note});
    if (!r.passed && out.exit == kOk) {
      out.exit = kInvariant;
      out.message = "invariant failed: " + r.name + " (residual " + format_double(r.max_residual) + " > " +
                    format_double(r.tolerance) + ")";
    }
  }
  return out;
}

Output cmd_density(const Context &ctx)
{
  const ExtensionSpec spec = require_extension(ctx);
  if (!spec.has_parameter()) {
    throw Error(ErrorCode::NotApplicable, "density of (Theta + Gamma)^{-1} needs a Theta");
  }
  const auto [a, b] = require_interval(ctx.rc);
  const int grid = ctx.rc.grid.value_or(0);
  if (grid < 1) {
    throw ConfigError("empty grid: density needs --grid N > 0");
  }
  const double eps = ctx.rc.epsilon.value_or(1e-4 * (b - a));
  const Index k = ctx.field.aux_dim();
  std::vector<std::string> cols{"lambda", "epsilon", "trace_density", "perturbation_trace_density"};
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < k; ++c) {
      cols.push_back(entry_name("density", r, c));
    }
  }
  cols.push_back("status");
  Output out{Table(cols), {}, kOk, {}};
  for (const auto &p : density_scan(ctx.field, spec, a, b, grid, eps)) {
    std::vector<Cell> row{p.lambda, eps};
    if (p.sample) {
      row.emplace_back(p.sample->trace_density);
      row.emplace_back(p.sample->perturbation_trace_density);
      for (Index r = 0; r < k; ++r) {
        for (Index c = 0; c < k; ++c) {
          row.emplace_back(p.sample->density(r, c));
        }
      }
      row.emplace_back(std::string("ok"));
    } else {
      row.emplace_back(NAN);
      row.emplace_back(NAN);
      for (Index i = 0; i < k * k; ++i) {
        row.emplace_back(Complex(NAN, NAN));
      }
      row.emplace_back(std::string(to_string(*p.error)));
    }
    out.table.add(std::move(row));
  }
  return out;
}

Output cmd_calibrate(const Context &ctx)
{
  if (!ctx.rc.alpha && !ctx.rc.coupling) {
    throw ConfigError("calibrate needs --alpha (lattice) or --coupling");
  }
  const ExtensionSpec spec = ctx.rc.alpha ? calibrate_theta_for_coupling(ctx.model, ctx.field, *ctx.rc.alpha)
                                          : calibrate_theta_for_rank_one(ctx.field, *ctx.rc.coupling);
  const double theta = spec.theta()(0, 0).real();

  // Lowest eigenvalue below the spectrum of A, if any.
  const double bottom = ctx.field.base().eigenvalues()(0);
  const double bound = spectral_search_bound(ctx.field, spec);
  double lowest = NAN;
  const double gap = 1e-7 * std::max(1.0, std::abs(bottom));
  if (-bound < bottom - gap) {
    const EigenScan scan = eigen_solve(ctx.field, spec, -bound, bottom - gap, ctx.rc.grid.value_or(200));
    if (!scan.eigenvalues.empty()) {
      lowest = scan.eigenvalues.front().lambda;
    }
  }
  double reference = NAN;
  if (ctx.rc.alpha) {
    reference = continuum_delta_reference(*ctx.rc.alpha);
  }
  Output out{Table({"theta", "lowest_eigenvalue", "continuum_reference"}), {}, kOk, {}};
  out.table.add({theta, lowest, reference});
  return out;
}

void emit(const Output &out, const RunConfig &rc)
{
  Provenance prov{KREIN_VERSION, rc.effective, rc.seed};
  if (rc.out.empty()) {
    write_table(std::cout, out.table, prov, rc.format);
    return;
  }
  std::ofstream file(rc.out, std::ios::binary);
  if (!file) {
    throw ConfigError("cannot write " + rc.out);
  }
  write_table(file, out.table, prov, rc.format);
  for (const auto &[suffix, table] : out.side) {
    std::ofstream side(rc.out + suffix, std::ios::binary);
    if (!side) {
      throw ConfigError("cannot write " + rc.out + suffix);
    }
    write_table(side, table, prov, "csv");
  }
}

void add_common_flags(CLI::App &sub, Flags &f)
{
  sub.add_option("--config", f.config_path, "JSON config file; flags override its values");
  sub.add_option("--model", f.model, "scalarZero|diagPair|randomHermitian|latticeLaplacianDelta|fromFile");
  sub.add_option("--theta", f.theta, "k*k real entries of Theta, row-major")->delimiter(',');
  sub.add_option("--interval", f.interval, "real interval a b")->expected(2);
  sub.add_option("--grid", f.grid, "grid points");
  sub.add_option("--epsilon", f.epsilon, "distance above the real axis");
  sub.add_option("--seed", f.seed, "random seed");
  sub.add_option("--out", f.out, "output path (default stdout)");
  sub.add_option("--format", f.format, "csv or json");
  sub.add_option("--oracle-cap", f.oracle_cap, "largest n for dense oracle checks");
  sub.add_option("--z", f.z, "sample point re,im (repeatable)");
  sub.add_option("--n", f.n, "dimension of random or lattice models");
  sub.add_option("--k", f.k, "trace rank of random and diagPair models");
  sub.add_option("--half-width", f.half_width, "lattice box half width L");
  sub.add_option("--spacing", f.spacing, "lattice spacing h (sets n)");
  sub.add_option("--site", f.site, "lattice interaction point");
  sub.add_option("--model-file", f.model_file, "model file for --model fromFile");
  sub.add_option("--alpha", f.alpha, "lattice delta strength; calibrates Theta");
  sub.add_option("--coupling", f.coupling, "rank-one coupling c in A + c tau^* tau; calibrates Theta");
  sub.add_flag("--distinguished", f.distinguished, "use the relation {0} x h (Theta = infinity)");
}

} // namespace
} // namespace krein::cli

int main(int argc, char **argv)
{
  using namespace krein;
  using namespace krein::cli;

  CLI::App app{"Self-adjoint extensions by the Krein resolvent formula"};
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char *name;
    const char *help;
    Output (*run)(const Context &);
  };
  const Command commands[] = {
      {"weyl-grid", "evaluate the Weyl function on sample points", cmd_weyl_grid},
      {"spectrum", "eigenvalues of the extension in an interval", cmd_spectrum},
      {"resolvent", "resolvent membership and trace at sample points", cmd_resolvent},
      {"verify", "run the invariant suite", cmd_verify},
      {"density", "spectral density scan", cmd_density},
      {"calibrate", "Theta for a given coupling", cmd_calibrate},
  };
  std::vector<CLI::App *> subs;
  for (const auto &c : commands) {
    CLI::App *sub = app.add_subcommand(c.name, c.help);
    add_common_flags(*sub, flags);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kConfig;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) {
      continue;
    }
    try {
      const RunConfig rc = resolve_config(flags, *subs[i]);
      Model model = build_model(rc.model);
      KreinField field = build_field(model.op, model.trace);
      const Context ctx{rc, std::move(model), std::move(field)};
      const Output out = commands[i].run(ctx);
      emit(out, rc);
      if (!out.message.empty()) {
        std::cerr << commands[i].name << ": " << out.message << '\n';
      }
      return out.exit;
    } catch (const ConfigError &e) {
      std::cerr << commands[i].name << ": config error: " << e.what() << '\n';
      return kConfig;
    } catch (const Error &e) {
      std::cerr << commands[i].name << ": " << e.what() << '\n';
      return exit_code_for(e.code());
    } catch (const std::exception &e) {
      std::cerr << commands[i].name << ": " << e.what() << '\n';
      return kConfig;
    }
  }
  return kConfig;
}
