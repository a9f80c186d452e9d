#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "juliadim/asymptotics.hpp"
#include "juliadim/derivative.hpp"
#include "juliadim/measures.hpp"
#include "juliadim/pressure.hpp"
#include "juliadim/report.hpp"
#include "juliadim/rescaling.hpp"
#include "juliadim/verify.hpp"

using namespace juliadim;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts plain numbers and multiples of pi: "pi", "pi/2", "3pi/4", "0.5pi".
double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto number = [&](const std::string& part, double fallback) {
    if (part.empty()) return fallback;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed angle '" + text + "'");
    }
    if (used != part.size()) throw UsageError("malformed angle '" + text + "'");
    return v;
  };
  auto pos = s.find("pi");
  if (pos == std::string::npos) return number(s, NAN);
  double factor = number(s.substr(0, pos), 1.0);
  std::string rest = s.substr(pos + 2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw UsageError("malformed angle '" + text + "'");
    divisor = number(rest.substr(1), NAN);
  }
  return factor * kPi / divisor;
}

// "alpha:t", for example "pi:0.01" or "1.5708:0.0025".
RayParameter parse_ray(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
    throw UsageError("malformed ray '" + text + "' (expected alpha:t)");
  double alpha = parse_angle(text.substr(0, colon));
  std::string ts = text.substr(colon + 1);
  std::size_t used = 0;
  double t = 0;
  try {
    t = std::stod(ts, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed ray '" + text + "'");
  }
  if (used != ts.size()) throw UsageError("malformed ray '" + text + "'");
  try {
    return RayParameter::make(alpha, t);
  } catch (const DomainError& e) {
    throw UsageError("ray '" + text + "': " + e.what());
  }
}

struct Common {
  std::string out = "out";
  int threads = 0;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int depth = 0;  // 0: command default
  int max_depth = kPressureDepthCap;
  std::string config;
};

// Plain key=value lines; '#' starts a comment. Only fills options that
// were not given on the command line.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    std::stringstream items(value);
    std::string item;
    while (std::getline(items, item, ',')) opt->add_result(trim(item));
    opt->run_callback();
  }
}

RunConfig base_config(const std::string& command, const Common& c) {
  RunConfig cfg;
  cfg.command = command;
  cfg.out_dir = c.out;
  cfg.threads = c.threads;
  cfg.seed = c.seed;
  cfg.tol = c.tol;
  cfg.max_depth = c.max_depth;
  return cfg;
}

std::string path_in(const std::string& dir, const std::string& name) {
  return dir + "/" + name;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& line : cfg.lines()) {
    auto eq = line.find('=');
    j[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return j;
}

std::vector<RayParameter> ray_grid(const std::vector<std::string>& rays,
                                   const std::vector<std::string>& alphas,
                                   const std::vector<double>& ts) {
  std::vector<RayParameter> out;
  for (const auto& r : rays) out.push_back(parse_ray(r));
  if (!alphas.empty() || !ts.empty()) {
    if (alphas.empty() || ts.empty()) throw UsageError("--alpha and --t must be given together");
    for (const auto& a : alphas)
      for (double t : ts) {
        try {
          out.push_back(RayParameter::make(parse_angle(a), t));
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
      }
  }
  if (out.empty()) throw UsageError("empty ray grid: give --ray or --alpha with --t");
  return out;
}

void fill_grid(RunConfig& cfg, const std::vector<RayParameter>& rays) {
  for (const auto& r : rays) {
    cfg.alphas.push_back(r.alpha);
    cfg.ts.push_back(r.t);
  }
}

int cmd_omega(const Common& c, int points) {
  if (points < 2) throw UsageError("empty grid: --points must be at least 2");
  RunConfig cfg = base_config("omega", c);
  cfg.extra["points"] = std::to_string(points);
  cfg.validate();
  OmegaProfile prof = omega_profile(points);
  CsvTable table({"alpha", "alpha_deg", "omega"});
  for (std::size_t i = 0; i < prof.alpha.size(); ++i)
    table.add_row({num(prof.alpha[i]), num(prof.alpha[i] * 180.0 / kPi), num(prof.value[i])});
  write_csv(path_in(c.out, "omega.csv"), cfg, table);

  double a0 = alpha_zero();
  SvgSeries s;
  s.x = prof.alpha;
  s.y = prof.value;
  for (double& x : s.x) x *= 180.0 / kPi;
  char label[64];
  std::snprintf(label, sizeof label, "alpha0 = %.3f deg", a0 * 180.0 / kPi);
  std::vector<std::string> comments = cfg.lines();
  comments.push_back("alpha0_deg=" + num(a0 * 180.0 / kPi));
  write_text(path_in(c.out, "omega.svg"),
             svg_plot({s}, "Omega(alpha)", "alpha (degrees)", "Omega",
                      {{a0 * 180.0 / kPi, label}}, comments));
  std::printf("wrote %zu rows to %s; alpha0 = %.6f deg\n", table.rows(),
              path_in(c.out, "omega.csv").c_str(), a0 * 180.0 / kPi);
  return 0;
}

int cmd_alpha0(const Common& c) {
  RunConfig cfg = base_config("alpha0", c);
  cfg.validate();
  double tol = std::max(c.tol, 1e-10);
  double a0 = alpha_zero(tol);
  json j;
  j["config"] = config_json(cfg);
  j["alpha0_rad"] = a0;
  j["alpha0_deg"] = a0 * 180.0 / kPi;
  j["opening_angle_deg"] = 2 * a0 * 180.0 / kPi;
  j["omega_at_alpha0"] = omega(a0);
  j["omega_at_pi"] = omega(kPi);
  j["omega_limit_at_zero"] = omega_limit_at_zero();
  j["dimension_slope_constant"] = dimension_slope_constant();
  write_json(path_in(c.out, "alpha0.json"), j);
  std::printf("alpha0 = %.12f rad = %.6f deg\n", a0, a0 * 180.0 / kPi);
  return 0;
}

int cmd_dim(const Common& c, const std::vector<RayParameter>& rays) {
  RunConfig cfg = base_config("dim", c);
  fill_grid(cfg, rays);
  cfg.validate();
  DimensionOptions opt;
  opt.max_depth = c.max_depth;
  opt.pressure.threads = c.threads;
  auto rows = dimension_scan(rays, c.tol, opt);
  CsvTable table({"alpha", "t", "delta_re", "delta_im", "d", "err", "depth", "cap_reached",
                  "warning", "error", "seconds"},
                 {"seconds"});
  int failures = 0;
  for (const auto& r : rows) {
    Complex delta = r.ray.delta();
    const auto& e = r.estimate;
    if (!r.error.empty()) ++failures;
    table.add_row({num(r.ray.alpha), num(r.ray.t), num(delta.real()), num(delta.imag()),
                   r.error.empty() ? num(e.d_value) : "", r.error.empty() ? num(e.extrapolation_error) : "",
                   std::to_string(e.depth_used), e.depth_cap_reached ? "1" : "0", e.warning,
                   r.error, num(r.seconds)});
    if (r.error.empty())
      std::printf("alpha=%.6f t=%g d=%.12f err=%.2e depth=%d\n", r.ray.alpha, r.ray.t,
                  e.d_value, e.extrapolation_error, e.depth_used);
    else
      std::printf("alpha=%.6f t=%g error: %s\n", r.ray.alpha, r.ray.t, r.error.c_str());
  }
  write_csv(path_in(c.out, "dim.csv"), cfg, table);
  return failures ? 1 : 0;
}

int cmd_deriv(const Common& c, const std::vector<RayParameter>& rays, const std::string& method,
              double h_factor, int max_density) {
  if (method != "formula" && method != "fd" && method != "both")
    throw UsageError("unknown method '" + method + "' (expected formula, fd or both)");
  RunConfig cfg = base_config("deriv", c);
  fill_grid(cfg, rays);
  cfg.depth = c.depth ? c.depth : kDefaultAtomLevel;
  cfg.extra["method"] = method;
  cfg.extra["h_factor"] = num(h_factor);
  cfg.extra["max_density_iterations"] = std::to_string(max_density);
  cfg.validate();
  DerivativeOptions opt;
  opt.threads = c.threads;
  opt.max_density_iterations = max_density;
  CsvTable table({"alpha", "t", "method", "dprime", "scaled", "err", "num", "den",
                  "excluded_mass", "scaled_exponent", "d", "error"});
  int failures = 0;
  auto add = [&](const DerivativeEstimate& e) {
    table.add_row({num(e.ray.alpha), num(e.ray.t), method_name(e.method), num(e.value),
                   num(e.scaled), num(e.error), num(e.numerator), num(e.denominator),
                   num(e.excluded_mass), num(e.scaled_exponent), num(e.d), ""});
    std::printf("alpha=%.6f t=%g %s: d'=%.6f sqrt(t) d'=%.6f err=%.2e (omega %.6f)\n",
                e.ray.alpha, e.ray.t, method_name(e.method), e.value, e.scaled, e.error,
                omega(e.ray.alpha));
  };
  for (const auto& ray : rays) {
    auto attempt = [&](const char* name, auto&& fn) {
      try {
        add(fn());
      } catch (const Error& e) {
        ++failures;
        table.add_row({num(ray.alpha), num(ray.t), name, "", "", "", "", "", "", "", "",
                       e.what()});
        std::printf("alpha=%.6f t=%g %s: error: %s\n", ray.alpha, ray.t, name, e.what());
      }
    };
    if (method != "fd")
      attempt("formula", [&] { return derivative_formula(ray, cfg.depth, c.tol, opt); });
    if (method != "formula")
      attempt("finite_difference",
              [&] { return derivative_fd(ray, ray.t * h_factor, c.tol, opt); });
  }
  write_csv(path_in(c.out, "deriv.csv"), cfg, table);
  return failures ? 1 : 0;
}

int cmd_rescale(const Common& c, const std::vector<std::string>& alphas,
                const std::vector<double>& ts, double R, double coefficient, bool key) {
  if (alphas.empty() || ts.empty()) throw UsageError("empty grid: give --alpha and --t");
  RunConfig cfg = base_config("rescale", c);
  cfg.depth = c.depth ? c.depth : 20;
  cfg.ts = ts;
  for (const auto& a : alphas) cfg.alphas.push_back(parse_angle(a));
  cfg.extra["R"] = num(R);
  cfg.extra["coefficient"] = num(coefficient);
  cfg.validate();
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] < ts[i - 1])) throw UsageError("--t must be strictly decreasing");
  for (double t : ts)
    if (!(t > 0)) throw UsageError("--t values must be positive");
  CsvTable table({"alpha", "R", "t", "d_H", "window_points", "arc_points", "warning"});
  CsvTable keys({"alpha", "R", "t", "scaled_integral", "target", "gap", "scaled_phi_integral",
                 "phi_target", "phi_gap", "window_atoms", "warning"});
  for (double alpha : cfg.alphas) {
    double a = alpha > kPi ? 2 * kPi - alpha : alpha;
    for (const auto& r : convergence_study(a, R, ts, cfg.depth, coefficient, c.threads)) {
      table.add_row({num(alpha), num(R), num(r.t), num(r.d_H), std::to_string(r.window_points),
                     std::to_string(r.arc_points), r.warning});
      std::printf("alpha=%.6f t=%g d_H=%.5f (%zu window points)\n", alpha, r.t, r.d_H,
                  r.window_points);
    }
    if (!key) continue;
    DerivativeOptions opt;
    opt.threads = c.threads;
    for (double t : ts) {
      KeyIntegralReport k =
          key_integral_check(RayParameter::make(alpha, t), R, kDefaultAtomLevel, opt);
      keys.add_row({num(alpha), num(R), num(t), num(k.scaled_integral), num(k.target),
                    num(k.gap), num(k.scaled_phi_integral), num(k.phi_target), num(k.phi_gap),
                    std::to_string(k.window_atoms), k.warning});
      std::printf("alpha=%.6f t=%g key integral %.5f vs %.5f (gap %.3f)\n", alpha, t,
                  k.scaled_integral, k.target, k.gap);
    }
  }
  write_csv(path_in(c.out, "rescale.csv"), cfg, table);
  if (key) write_csv(path_in(c.out, "key_integral.csv"), cfg, keys);
  return 0;
}

int cmd_measure(const Common& c, const std::string& ray_text, const std::string& kind,
                int max_density) {
  if (kind != "conformal" && kind != "invariant")
    throw UsageError("unknown measure kind '" + kind + "'");
  RayParameter ray = ray_text.empty() ? RayParameter{kPi, 0.0} : parse_ray(ray_text);
  RunConfig cfg = base_config("measure", c);
  cfg.depth = c.depth ? c.depth : 14;
  fill_grid(cfg, {ray});
  cfg.extra["kind"] = kind;
  cfg.validate();
  Complex delta = ray.delta();
  DimensionOptions dopt;
  dopt.pressure.threads = c.threads;
  double d = delta == 0.0 ? 1.0 : dimension(delta, c.tol, dopt).d_value;
  MeasureAtoms atoms = conformal_atoms(delta, d, cfg.depth, c.threads);
  if (kind == "invariant") atoms = invariant_density_adaptive(atoms, max_density, c.threads);
  write_csv(path_in(c.out, "atoms.csv"), cfg, atom_table(atoms));
  double lyap = integrate(atoms, [](Complex z) { return std::log(std::abs(2.0 * z)); });
  json j;
  j["config"] = config_json(cfg);
  j["delta"] = {delta.real(), delta.imag()};
  j["exponent"] = d;
  j["kind"] = kind;
  j["depth"] = atoms.level;
  j["atoms"] = atoms.size();
  j["mass"] = atoms.total_mass();
  j["integral_log_derivative"] = lyap;
  if (kind == "invariant") {
    j["density_iterations"] = atoms.density_iterations;
    j["density_change"] = atoms.density_change;
  }
  write_json(path_in(c.out, "measure.json"), j);
  std::printf("%zu %s atoms at depth %d, mass %.12f, integral of log|f'| %.8f\n", atoms.size(),
              kind.c_str(), atoms.level, atoms.total_mass(), lyap);
  return 0;
}

int cmd_verify(const Common& c, const std::string& level_text, double coefficient) {
  VerifyLevel level;
  try {
    level = parse_verify_level(level_text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  RunConfig cfg = base_config("verify", c);
  cfg.extra["level"] = verify_level_name(level);
  cfg.extra["coefficient"] = num(coefficient);
  cfg.validate();
  VerifyOptions opt;
  opt.level = level;
  opt.hyperbola_coefficient = coefficient;
  opt.seed = c.seed;
  opt.threads = c.threads;

  VerifyReport rep;
  rep.level = level;
  for (int id = 1; id <= kCriterionCount; ++id) {
    CriterionResult r;
    if (criterion_in_level(id, level)) {
      r = run_criterion(id, opt, &rep.tables);
    } else {
      r.id = id;
      r.name = criterion_name(id);
      r.skipped = true;
      r.detail = "runs only at level full";
    }
    std::printf("%s\n", format_result(r).c_str());
    std::fflush(stdout);
    rep.results.push_back(r);
  }
  for (auto& [name, table] : determinism_tables(c.threads)) rep.tables.emplace_back(name + "_check", table);
  for (const auto& [name, table] : rep.tables)
    write_csv(path_in(c.out, "verify_" + name + ".csv"), cfg, table);

  json j;
  j["config"] = config_json(cfg);
  j["level"] = verify_level_name(level);
  j["passed"] = rep.all_passed();
  json list = json::array();
  for (const auto& r : rep.results)
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                    {"skipped", r.skipped}, {"seconds", r.seconds}, {"detail", r.detail}});
  j["criteria"] = list;
  write_json(path_in(c.out, "verify.json"), j);
  std::printf("%s\n", rep.all_passed() ? "verify: all criteria passed" : "verify: FAILED");
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff dimension of Julia sets of z^2 - 2 + delta"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--out", c.out, "output directory");
  app.add_option("--threads", c.threads, "worker threads (0: hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--tol", c.tol, "target tolerance")->check(CLI::PositiveNumber);
  app.add_option("--depth", c.depth, "tree depth");
  app.add_option("--max-depth", c.max_depth, "pressure depth cap");
  app.add_option("--config", c.config, "key=value file; command-line flags win");

  auto* omega_cmd = app.add_subcommand("omega", "limit profile of the scaled derivative");
  int points = 500;
  omega_cmd->add_option("--points", points, "grid size on (0, pi]");

  auto* alpha0_cmd = app.add_subcommand("alpha0", "zero of the profile and constants");

  std::vector<std::string> rays, alphas;
  std::vector<double> ts;
  auto* dim_cmd = app.add_subcommand("dim", "dimension along rays");
  dim_cmd->add_option("--ray", rays, "alpha:t, repeatable");
  dim_cmd->add_option("--alpha", alphas, "angles (numbers or multiples of pi)");
  dim_cmd->add_option("--t", ts, "magnitudes");

  auto* deriv_cmd = app.add_subcommand("deriv", "directional derivative of the dimension");
  std::string method = "both";
  double h_factor = 0.2;
  int max_density = DerivativeOptions{}.max_density_iterations;
  deriv_cmd->add_option("--ray", rays, "alpha:t, repeatable");
  deriv_cmd->add_option("--alpha", alphas, "angles");
  deriv_cmd->add_option("--t", ts, "magnitudes");
  deriv_cmd->add_option("--method", method, "formula, fd or both");
  deriv_cmd->add_option("--h-factor", h_factor, "finite-difference step as a fraction of t");
  deriv_cmd->add_option("--max-density-iterations", max_density, "density iteration cap");

  auto* rescale_cmd = app.add_subcommand("rescale", "rescaled window against the hyperbola");
  double R = 2.0, coefficient = kHyperbolaCoefficient;
  bool key = false;
  rescale_cmd->add_option("--alpha", alphas, "angles");
  rescale_cmd->add_option("--t", ts, "decreasing magnitudes");
  rescale_cmd->add_option("--R", R, "window size")->check(CLI::Range(1.0, 1e6));
  rescale_cmd->add_option("--coefficient", coefficient, "hyperbola coefficient");
  rescale_cmd->add_flag("--key-integral", key, "also compare the key integral");

  auto* measure_cmd = app.add_subcommand("measure", "conformal or invariant atoms");
  std::string ray_text, kind = "conformal";
  measure_cmd->add_option("--ray", ray_text, "alpha:t (default: delta = 0)");
  measure_cmd->add_option("--kind", kind, "conformal or invariant");
  measure_cmd->add_option("--max-density-iterations", max_density, "density iteration cap");

  auto* verify_cmd = app.add_subcommand("verify", "acceptance suite");
  std::string level = "fast";
  double verify_coefficient = kHyperbolaCoefficient;
  verify_cmd->add_option("--level", level, "fast or full");
  verify_cmd->add_option("--hyperbola-coefficient", verify_coefficient,
                         "override the hyperbola coefficient (sabotage check)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (!c.config.empty()) apply_config(app, app.get_subcommands().front(), c.config);
    if (*omega_cmd) return cmd_omega(c, points);
    if (*alpha0_cmd) return cmd_alpha0(c);
    if (*dim_cmd) return cmd_dim(c, ray_grid(rays, alphas, ts));
    if (*deriv_cmd) return cmd_deriv(c, ray_grid(rays, alphas, ts), method, h_factor, max_density);
    if (*rescale_cmd) return cmd_rescale(c, alphas, ts, R, coefficient, key);
    if (*measure_cmd) return cmd_measure(c, ray_text, kind, max_density);
    if (*verify_cmd) return cmd_verify(c, level, verify_coefficient);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsageError;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
