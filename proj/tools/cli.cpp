#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "wallforge/io.hpp"
#include "wallforge/painleve.hpp"
#include "wallforge/sweep.hpp"
#include "wallforge/tf_limit.hpp"
#include "wallforge/validate.hpp"

namespace wallforge::cli {

namespace {

using nlohmann::json;

struct BadParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Writes through a temporary stream so a failed open surfaces as IoError
// before anything is computed into it.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot write " + path);
  }
  body(f);
  f.flush();
  if (!f) {
    throw IoError("write failed: " + path);
  }
}

void write_json(const std::string& path, const json& j) {
  write_file(path, [&](std::ostream& o) { o << j.dump(1) << '\n'; });
}

std::string format_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CouplingParams coupling(double mu) {
  try {
    return CouplingParams(mu);
  } catch (const std::invalid_argument& e) {
    throw BadParameter(e.what());
  }
}

// --parallel N, capped by WALLFORGE_THREADS when set.
int worker_count(int requested) {
  int n = std::max(1, requested);
  if (const char* cap = std::getenv("WALLFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v >= 1) {
      n = std::min<long>(n, v);
    }
  }
  return n;
}

// ---- tf ----

struct TfArgs {
  double mu = 0.0;
  double z = 0.0;
  double x_min = -10.0;
  double x_max = 10.0;
  int samples = 2001;
  std::string out = "tf_profile.csv";
  std::string summary = "tf_summary.json";
};

int cmd_tf(const TfArgs& a, std::ostream& out) {
  const CouplingParams params = coupling(a.mu);
  if (a.samples < 2 || !(a.x_min < a.x_max)) {
    throw BadParameter("tf: need samples >= 2 and x-min < x-max");
  }
  const TFProfile tf = tf_build(params, a.z);
  write_file(a.out, [&](std::ostream& o) {
    o << "x,u,v\n";
    char line[96];
    for (int i = 0; i < a.samples; ++i) {
      const double x = i + 1 == a.samples ? a.x_max : a.x_min + (a.x_max - a.x_min) * i / (a.samples - 1);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", x, tf_u(tf, x), tf_v(tf, x));
      o << line;
    }
  });
  json s;
  s["mu"] = params.mu();
  s["E0"] = tf_energy(tf);
  s["z"] = tf.z;
  s["x0"] = tf.x0;
  s["x1"] = tf.x1;
  s["c1"] = tf.c1;
  s["c2"] = tf.c2;
  s["c3"] = tf.c3;
  s["u0_prime_at_z"] = tf_u_prime(tf, tf.z);
  write_json(a.summary, s);
  out << "E0 " << format_g17(s["E0"].get<double>()) << '\n';
  return kOk;
}

// ---- solve ----

struct SolveArgs {
  double mu = 0.0;
  double eps = 0.0;
  double L = 20.0;
  std::optional<int> n;
  double tol = 1e-10;
  double nodes_per_layer = 20.0;
  bool strict = false;
  std::string out = "profile.csv";
  std::string json_out = "solution.json";
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const CouplingParams params = coupling(a.mu);
  if (!(a.eps > 0.0) || !std::isfinite(a.eps)) {
    throw BadParameter("solve: eps must be positive");
  }
  if (!(a.L > 0.0) || !(a.tol > 0.0) || !(a.nodes_per_layer > 0.0)) {
    throw BadParameter("solve: L, tol and nodes-per-layer must be positive");
  }
  const Grid rule = Grid::for_eps(a.L, a.eps, a.nodes_per_layer);
  int n = rule.size();
  if (a.n) {
    if (*a.n < 201 || *a.n % 2 == 0) {
      throw BadParameter("solve: n must be odd and >= 201");
    }
    n = *a.n;
    if (!Grid(a.L, n).resolves(a.eps, a.nodes_per_layer)) {
      if (a.strict) {
        throw BadParameter("solve: n = " + std::to_string(n) + " does not resolve eps (need n >= " +
                           std::to_string(rule.size()) + ")");
      }
      err << "warning: n = " << n << " does not resolve eps; using n = " << rule.size() << '\n';
      n = rule.size();
    }
  }
  SolverConfig cfg;
  cfg.newton_tol = a.tol;
  cfg.nodes_per_layer = a.nodes_per_layer;

  try {
    const SolveResult sr = solve(params, a.eps, Grid(a.L, n), cfg);
    write_file(a.out, [&](std::ostream& o) { write_profile_csv(o, sr.profile); });
    write_file(a.json_out, [&](std::ostream& o) { write_solution_json(o, params, sr); });
    out << format_g17(sr.eps) << ' ' << format_g17(sr.energy) << ' ' << format_g17(sr.residual) << ' '
        << format_g17(sr.z_eps) << ' ' << sr.newton_iterations << '\n';
    return kOk;
  } catch (const SolverError& e) {
    json d;
    d["status"] = "failed";
    d["message"] = e.what();
    d["iteration"] = e.iteration();
    d["residual"] = e.residual();
    d["mu"] = params.mu();
    d["eps"] = a.eps;
    d["L"] = a.L;
    d["n"] = n;
    write_json(a.json_out, d);
    throw;
  }
}

// ---- sweep ----

struct SweepArgs {
  double mu = 0.0;
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  double L = 20.0;
  double nodes_per_layer = 20.0;
  double tol = 1e-10;
  int parallel = 1;
  std::string out = "sweep.csv";
  std::string fits = "fits.json";
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const CouplingParams params = coupling(a.mu);
  for (std::size_t i = 0; i < a.eps.size(); ++i) {
    if (!(a.eps[i] > 0.0) || (i > 0 && !(a.eps[i] < a.eps[i - 1]))) {
      throw BadParameter("sweep: eps list must be positive and strictly decreasing");
    }
  }
  if (!(a.L > 0.0) || !(a.tol > 0.0) || !(a.nodes_per_layer > 0.0)) {
    throw BadParameter("sweep: L, tol and nodes-per-layer must be positive");
  }
  SolverConfig cfg;
  cfg.newton_tol = a.tol;
  cfg.nodes_per_layer = a.nodes_per_layer;
  SweepOptions opts;
  opts.threads = worker_count(a.parallel);
  const SweepResult sw = run_sweep(params, a.eps, GridRule{a.L, a.nodes_per_layer}, cfg, opts);
  write_file(a.out, [&](std::ostream& o) { write_sweep_csv(o, sw.records); });
  if (sw.records.size() >= 3) {
    const GapFit g = fit_gap(sw.records);
    const LineFit l = fit_vprime(sw.records);
    write_file(a.fits, [&](std::ostream& o) { write_fits_json(o, g, l); });
    out << "A " << format_g17(g.A) << " B " << format_g17(g.B) << " r2 " << format_g17(g.r2) << '\n';
  } else {
    out << "fewer than 3 eps values: fits skipped\n";
  }
  return kOk;
}

// ---- painleve ----

struct PainleveArgs {
  double mu = 0.0;
  std::optional<double> t_min;
  std::optional<double> t_max;
  double lo = -5.0;
  double hi = 5.0;
  int m = 2001;
  int samples = 1001;
  double tol = 1e-10;
  std::string out = "painleve.csv";
  std::string summary = "painleve_summary.json";
  std::vector<std::string> from_solution;
};

// a.csv, index 2 -> a.2.csv
std::string indexed_path(const std::string& path, std::size_t index) {
  if (index == 0) return path;
  std::filesystem::path p(path);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + "." + std::to_string(index) + ext;
}

int cmd_painleve(const PainleveArgs& a, std::ostream& out) {
  const CouplingParams params = coupling(a.mu);
  const PainleveCoefficient c = painleve_coefficient(params);
  const double half = 12.0 * std::pow(c.a, -1.0 / 3.0);
  const double t_minus = a.t_min.value_or(-half), t_plus = a.t_max.value_or(half);
  if (!(t_minus < a.lo && a.lo < a.hi && a.hi < t_plus) || a.samples < 2) {
    throw BadParameter("painleve: need t-min < lo < hi < t-max and samples >= 2");
  }
  PainleveProblem prob = [&] {
    try {
      return PainleveProblem(c.a, t_minus, t_plus, a.m);
    } catch (const std::invalid_argument& e) {
      throw BadParameter(e.what());
    }
  }();

  // Load everything first: a missing file must not leave partial output.
  std::vector<StoredSolution> stored;
  for (const std::string& path : a.from_solution) {
    stored.push_back(load_solution(path));
    if (std::abs(stored.back().mu - params.mu()) > 1e-12 * params.mu()) {
      throw BadParameter("painleve: " + path + " was computed for mu = " + format_g17(stored.back().mu));
    }
  }

  const PainleveSolution phi0 = hastings_mcleod_solve(prob, a.tol);
  const MonotoneInterpolant interp(phi0.t, phi0.phi);

  json s;
  s["mu"] = params.mu();
  s["k"] = c.k;
  s["a"] = c.a;
  s["t_minus"] = t_minus;
  s["t_plus"] = t_plus;
  s["m"] = a.m;
  s["residual"] = phi0.residual;
  s["iterations"] = phi0.iterations;
  s["left_ratio"] = interp(t_minus / 2) / std::sqrt(-c.a * t_minus / 2);
  s["distances"] = json::array();

  if (stored.empty()) {
    write_file(a.out, [&](std::ostream& o) { write_painleve_csv(o, phi0, a.lo, a.hi, a.samples); });
  }
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const RescaledProfile rp = rescale_profile(stored[i].result, a.lo, a.hi, a.samples);
    const std::string path = indexed_path(a.out, i);
    write_file(path, [&](std::ostream& o) { write_painleve_csv(o, phi0, rp); });
    s["distances"].push_back({{"file", a.from_solution[i]},
                              {"eps", rp.eps},
                              {"sup_dist", painleve_distance(rp, phi0, a.lo, a.hi)},
                              {"csv", path}});
  }
  write_json(a.summary, s);
  out << "a " << format_g17(c.a) << " residual " << format_g17(phi0.residual) << '\n';
  return kOk;
}

// ---- validate ----

struct ValidateArgs {
  double mu = 3.0;
  std::string inject_fault;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const CouplingParams params = coupling(a.mu);
  PotentialModel model = PotentialModel::standard(params);
  if (a.inject_fault == "gradient-sign") {
    model.gradient = [params](double u, double v) {
      const Gradient2 g = potential_gradient(params, u, v);
      return Gradient2{-g.du, -g.dv};
    };
  } else if (!a.inject_fault.empty()) {
    throw BadParameter("validate: unknown fault " + a.inject_fault);
  }
  const std::vector<CheckResult> checks = run_validation(model, params);
  print_report(out, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  out << (ok ? "all checks passed\n" : "validation FAILED\n");
  return ok ? kOk : kValidationFailed;
}

// Flat `key = value` config: each key becomes `--key value` unless the
// command line already sets it. `#` starts a comment; true/false toggle flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config " + path);
  }
  const auto given = [&](const std::string& flag) {
    return std::any_of(args.begin() + 1, args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadParameter(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string flag = "--" + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (given(flag)) continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value != "false") {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Domain walls of a two-component Ginzburg-Landau system", "wallforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  TfArgs tf;
  auto* tf_cmd = app.add_subcommand("tf", "Sample the Thomas-Fermi wall");
  tf_cmd->add_option("--mu", tf.mu, "coupling, > 1")->required();
  tf_cmd->add_option("--z", tf.z, "corner position");
  tf_cmd->add_option("--x-min", tf.x_min);
  tf_cmd->add_option("--x-max", tf.x_max);
  tf_cmd->add_option("--samples", tf.samples);
  tf_cmd->add_option("--out", tf.out, "profile CSV");
  tf_cmd->add_option("--summary", tf.summary, "summary JSON");

  SolveArgs so;
  auto* solve_cmd = app.add_subcommand("solve", "Solve for the wall at one eps");
  solve_cmd->add_option("--mu", so.mu)->required();
  solve_cmd->add_option("--eps", so.eps)->required();
  solve_cmd->add_option("--L", so.L, "half width of the domain");
  solve_cmd->add_option("--n", so.n, "node count (odd)");
  solve_cmd->add_option("--tol", so.tol, "Newton tolerance");
  solve_cmd->add_option("--nodes-per-layer", so.nodes_per_layer);
  solve_cmd->add_flag("--strict", so.strict, "reject under-resolved grids instead of refining");
  solve_cmd->add_option("--out", so.out, "profile CSV");
  solve_cmd->add_option("--json", so.json_out, "solution JSON (diagnostics on failure)");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve over a decreasing eps ladder");
  sweep_cmd->add_option("--mu", sw.mu)->required();
  sweep_cmd->add_option("--eps", sw.eps)->delimiter(',');
  sweep_cmd->add_option("--L", sw.L);
  sweep_cmd->add_option("--nodes-per-layer", sw.nodes_per_layer);
  sweep_cmd->add_option("--tol", sw.tol);
  sweep_cmd->add_option("--parallel", sw.parallel, "worker threads (capped by WALLFORGE_THREADS)");
  sweep_cmd->add_option("--out", sw.out, "sweep CSV");
  sweep_cmd->add_option("--fits", sw.fits, "fits JSON");

  PainleveArgs pa;
  auto* painleve_cmd = app.add_subcommand("painleve", "Solve the corner-layer limit problem");
  painleve_cmd->add_option("--mu", pa.mu)->required();
  painleve_cmd->add_option("--t-min", pa.t_min, "left end of the BVP window");
  painleve_cmd->add_option("--t-max", pa.t_max, "right end of the BVP window");
  painleve_cmd->add_option("--lo", pa.lo, "left end of the output window");
  painleve_cmd->add_option("--hi", pa.hi, "right end of the output window");
  painleve_cmd->add_option("--m", pa.m, "BVP node count");
  painleve_cmd->add_option("--samples", pa.samples);
  painleve_cmd->add_option("--tol", pa.tol);
  painleve_cmd->add_option("--out", pa.out, "CSV");
  painleve_cmd->add_option("--summary", pa.summary, "summary JSON");
  painleve_cmd->add_option("--from-solution", pa.from_solution, "solution JSON to rescale (repeatable)");

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Run the invariant suite");
  validate_cmd->add_option("--mu", va.mu);
  validate_cmd->add_option("--inject-fault", va.inject_fault)->group("");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const BadParameter& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameters;
  }
  app.add_option("--config", "flat key = value file; flags override it");
  std::vector<std::string> rev(expanded.rbegin(), std::prev(expanded.rend()));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameters;
  }

  try {
    if (*tf_cmd) return cmd_tf(tf, out);
    if (*solve_cmd) return cmd_solve(so, out, err);
    if (*sweep_cmd) return cmd_sweep(sw, out);
    if (*painleve_cmd) return cmd_painleve(pa, out);
    return cmd_validate(va, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const SweepError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameters;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  }
}

}  // namespace wallforge::cli
