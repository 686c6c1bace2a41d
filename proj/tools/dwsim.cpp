// Experiment runner: d.o.f. tables, time-sharing plans, finite-power
// simulations, slope fits, and deterministic-model entropy checks, all
// emitted as CSV plus a JSON manifest for reproducibility.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <dwsim/dwsim.hpp>

namespace {

using nlohmann::json;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CsvFile {
  std::ofstream out;

  CsvFile(const std::string& path, const std::vector<std::string>& header) : out(path) {
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
    if (!out) throw std::runtime_error("write failure on output CSV");
  }
};

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& effective_config) {
  json m;
  m["tool"] = "dwsim";
  m["version"] = std::string(dwsim::kVersion);
  m["command"] = command;
  m["config"] = effective_config;
  m["output"] = out_path;
  const std::string path = out_path + ".manifest.json";
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open manifest file: " + path);
  f << m.dump(2) << '\n';
}

// JSON config supplies defaults; explicit flags override them. Unknown or
// mistyped fields are reported by name.
json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config file not readable: " + path);
  json cfg;
  try {
    f >> cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return cfg;
}

void check_known_keys(const json& cfg, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : cfg.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw std::invalid_argument("config field '" + key + "': not recognized here");
  }
}

template <class T>
void from_cfg(const json& cfg, const char* key, T& target) {
  if (!cfg.contains(key)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config field '") + key + "': wrong type");
  }
}

// ---- dof-table ------------------------------------------------------------

struct DofTableArgs {
  std::vector<double> alphas;
  std::string csi = "full";
  int relays = 2;
  std::string out = "dof_table.csv";
};

void run_dof_table(const DofTableArgs& a) {
  if (a.alphas.empty()) throw std::invalid_argument("field 'alphas': must be a non-empty list");
  for (double v : a.alphas)
    if (!(v >= 0.0)) throw std::invalid_argument("field 'alphas': entries must be >= 0");
  if (a.relays < 2) throw std::invalid_argument("field 'relays': must be >= 2");
  const dwsim::CsiMode csi = dwsim::csi_from_name(a.csi);

  CsvFile csv(a.out, {"alpha1", "alpha2", "relays", "csi", "ds_lower", "ds_upper"});
  if (a.relays == 2) {
    for (double a1 : a.alphas)
      for (double a2 : a.alphas) {
        const double v = csi == dwsim::CsiMode::Full ? dwsim::ds_full(a1, a2)
                                                     : dwsim::ds_nocsi(a1, a2);
        csv.row({fmt12(a1), fmt12(a2), "2", a.csi, fmt12(v), fmt12(v)});
      }
  } else {
    for (const auto& r : dwsim::region_sweep(a.alphas, csi, a.relays))
      csv.row({fmt12(r.alpha), fmt12(r.alpha), std::to_string(a.relays), a.csi,
               fmt12(r.ds_lower), fmt12(r.ds_upper)});
  }

  json cfg{{"alphas", a.alphas}, {"csi", a.csi}, {"relays", a.relays}, {"out", a.out}};
  write_manifest(a.out, "dof-table", cfg);
}

// ---- plan -----------------------------------------------------------------

struct PlanArgs {
  double alpha1 = -1.0, alpha2 = -1.0;  // two-relay point
  double alpha = -1.0;                  // symmetric multi-relay point
  std::string csi = "full";
  int relays = 2;
  std::string out = "plan.csv";
};

void run_plan(const PlanArgs& a) {
  if (a.relays < 2) throw std::invalid_argument("field 'relays': must be >= 2");
  const dwsim::CsiMode csi = dwsim::csi_from_name(a.csi);

  dwsim::TimeSharePlan plan;
  json cfg{{"csi", a.csi}, {"relays", a.relays}, {"out", a.out}};
  if (a.relays == 2 && a.alpha < 0.0) {
    if (a.alpha1 < 0.0 || a.alpha2 < 0.0)
      throw std::invalid_argument("fields 'alpha1'/'alpha2': required for a two-relay plan");
    plan = dwsim::plan_timeshare(a.alpha1, a.alpha2, csi);
    cfg["alpha1"] = a.alpha1;
    cfg["alpha2"] = a.alpha2;
  } else {
    if (a.alpha < 0.0)
      throw std::invalid_argument("field 'alpha': required for a symmetric multi-relay plan");
    plan = dwsim::plan_timeshare_multi(a.relays, a.alpha, csi);
    cfg["alpha"] = a.alpha;
  }

  std::vector<std::string> header = {"scheme", "lambda", "ds_rate", "ds_contribution"};
  for (int k = 1; k <= plan.relays; ++k) header.push_back("usage_" + std::to_string(k));
  CsvFile csv(a.out, header);
  for (const auto& e : plan.entries) {
    std::vector<std::string> cells = {e.scheme, fmt12(e.lambda), fmt12(e.ds_rate),
                                      fmt12(e.ds_contribution())};
    for (double u : e.usage) cells.push_back(fmt12(u));
    csv.row(cells);
  }

  cfg["achieved_ds"] = plan.achieved_ds;
  cfg["swapped"] = plan.swapped;
  write_manifest(a.out, "plan", cfg);
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string scheme = "coj";
  std::vector<double> powers;
  double delta = 0.1;
  double support_bound = 2.0;
  int fades = 50;
  long long trials = 0;
  std::uint64_t seed = 1;
  int threads = 0;
  bool fixed_fading = false;
  double tol_bits = 1e-3;
  std::string out = "simulate.csv";
};

void run_simulate(const SimulateArgs& a) {
  if (a.powers.empty()) throw std::invalid_argument("field 'powers': must be a non-empty list");
  if (a.fades < 1) throw std::invalid_argument("field 'fades': must be >= 1");
  if (a.trials < 0) throw std::invalid_argument("field 'trials': must be >= 0");
  if (!(a.tol_bits > 0.0)) throw std::invalid_argument("field 'tol_bits': must be > 0");
  const dwsim::Scheme scheme = dwsim::scheme_from_name(a.scheme);

  dwsim::SimOptions opt;
  opt.support_bound = a.support_bound;
  opt.threads = a.threads;
  opt.fixed_fading = a.fixed_fading;
  opt.quad.tol_bits = a.tol_bits;

  CsvFile csv(a.out, {"scheme", "power", "delta", "support_bound", "n_fades", "n_trials", "seed",
                      "i_dest", "i_eve", "rate_lb", "ser"});
  for (double p : a.powers) {
    const dwsim::SimRecord r =
        dwsim::simulate_point(scheme, p, a.delta, a.fades, a.trials, a.seed, opt);
    csv.row({a.scheme, fmt12(r.power), fmt12(r.delta), fmt12(r.support_bound),
             std::to_string(r.n_fades), std::to_string(r.n_trials), std::to_string(a.seed),
             fmt12(r.i_dest), fmt12(r.i_eve), fmt12(r.rate_lb), fmt12(r.ser)});
  }

  json cfg{{"scheme", a.scheme},   {"powers", a.powers},
           {"delta", a.delta},     {"support_bound", a.support_bound},
           {"fades", a.fades},     {"trials", a.trials},
           {"seed", a.seed},       {"threads", a.threads},
           {"fixed_fading", a.fixed_fading}, {"tol_bits", a.tol_bits},
           {"out", a.out}};
  write_manifest(a.out, "simulate", cfg);
}

// ---- slope ----------------------------------------------------------------

struct SlopeArgs {
  std::string in;
  std::string out = "slope.csv";
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

void run_slope(const SlopeArgs& a) {
  if (a.in.empty()) throw std::invalid_argument("field 'in': path to a simulate CSV is required");
  std::ifstream f(a.in);
  if (!f) throw std::invalid_argument("field 'in': cannot read " + a.in);

  std::string line;
  if (!std::getline(f, line)) throw std::invalid_argument("field 'in': empty CSV");
  const std::vector<std::string> header = split_csv_line(line);
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::invalid_argument("field 'in': CSV lacks a '" + name + "' column");
  };
  const std::size_t c_power = col("power");
  const std::size_t c_dest = col("i_dest"), c_eve = col("i_eve"), c_rate = col("rate_lb");

  std::vector<std::pair<double, double>> dest, eve, rate;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("field 'in': ragged CSV row");
    const double p = std::stod(cells[c_power]);
    dest.emplace_back(p, std::stod(cells[c_dest]));
    eve.emplace_back(p, std::stod(cells[c_eve]));
    rate.emplace_back(p, std::stod(cells[c_rate]));
  }

  CsvFile csv(a.out, {"quantity", "slope", "intercept", "n_points", "power_min", "power_max"});
  auto emit = [&](const char* name, const std::vector<std::pair<double, double>>& pts) {
    const dwsim::LinearFit fit = dwsim::fit_dof_line(pts);
    double pmin = pts.front().first, pmax = pmin;
    for (const auto& [p, r] : pts) {
      pmin = std::min(pmin, p);
      pmax = std::max(pmax, p);
    }
    csv.row({name, fmt12(fit.slope), fmt12(fit.intercept), std::to_string(pts.size()),
             fmt12(pmin), fmt12(pmax)});
  };
  emit("i_dest", dest);
  emit("i_eve", eve);
  emit("rate_lb", rate);

  json cfg{{"in", a.in}, {"out", a.out}};
  write_manifest(a.out, "slope", cfg);
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  int instances = 1000;
  double p_max = 49.0;  // floor(sqrt(49)) = 7
  double support_bound = 2.0;
  std::uint64_t seed = 1;
  std::string out = "oracle.csv";
};

void run_oracle(const OracleArgs& a) {
  if (a.instances < 1) throw std::invalid_argument("field 'instances': must be >= 1");
  const long long x_max = dwsim::det_input_max(a.p_max);
  if (x_max > 31)
    throw std::invalid_argument("field 'p_max': floor(sqrt(p_max)) must be <= 31");

  CsvFile csv(a.out, {"instance", "x_max", "h_y2", "h_x1_given_x2", "h_x1_given_gx1", "slack",
                      "violated"});
  const int n = int(x_max) + 1;
  const std::vector<int> sizes = {n, n};
  int violations = 0;
  for (int i = 0; i < a.instances; ++i) {
    dwsim::Rng rng = dwsim::Rng::stream(a.seed, 3, std::uint64_t(i));
    const dwsim::FadingState f = dwsim::sample_fading(rng, a.support_bound, 2);
    const dwsim::Pmf joint = dwsim::random_joint_pmf(sizes, rng);
    const dwsim::DetEntropyReport r = dwsim::det_entropy_check(f, a.p_max, joint);
    violations += r.violated ? 1 : 0;
    csv.row({std::to_string(i), std::to_string(x_max), fmt12(r.h_y2), fmt12(r.h_x1_given_x2),
             fmt12(r.h_x1_given_gx1), fmt12(r.slack), r.violated ? "1" : "0"});
  }

  json cfg{{"instances", a.instances},
           {"p_max", a.p_max},
           {"support_bound", a.support_bound},
           {"seed", a.seed},
           {"out", a.out},
           {"violations", violations}};
  write_manifest(a.out, "oracle", cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diamond-network secrecy experiments"};
  app.set_version_flag("--version", std::string(dwsim::kVersionString));
  app.require_subcommand(1);

  // config defaults are read before CLI11 parses, so explicit flags win
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc)
      config_path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      config_path = arg.substr(9);
  }

  json cfg = json::object();
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  std::string config_flag;  // consumed above; registered so parsing accepts it
  app.add_option("--config", config_flag, "JSON config file; explicit flags override it");

  DofTableArgs dof_args;
  const char* config_help = "JSON config file; explicit flags override it";
  PlanArgs plan_args;
  SimulateArgs sim_args;
  SlopeArgs slope_args;
  OracleArgs oracle_args;

  CLI::App* dof = app.add_subcommand("dof-table", "evaluate the d.o.f. formulas over a grid");
  CLI::App* plan = app.add_subcommand("plan", "time-sharing plan for one operating point");
  CLI::App* sim = app.add_subcommand("simulate", "finite-power rate/leakage/error sweep");
  CLI::App* slope = app.add_subcommand("slope", "fit d.o.f. slopes over a simulate CSV");
  CLI::App* oracle = app.add_subcommand("oracle", "deterministic-model entropy checks");

  int exit_code = 0;
  try {
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");

    from_cfg(cfg, "alphas", dof_args.alphas);
    from_cfg(cfg, "alpha1", plan_args.alpha1);
    from_cfg(cfg, "alpha2", plan_args.alpha2);
    from_cfg(cfg, "alpha", plan_args.alpha);
    from_cfg(cfg, "scheme", sim_args.scheme);
    from_cfg(cfg, "powers", sim_args.powers);
    from_cfg(cfg, "delta", sim_args.delta);
    from_cfg(cfg, "support_bound", sim_args.support_bound);
    from_cfg(cfg, "fades", sim_args.fades);
    from_cfg(cfg, "trials", sim_args.trials);
    from_cfg(cfg, "seed", sim_args.seed);
    from_cfg(cfg, "threads", sim_args.threads);
    from_cfg(cfg, "fixed_fading", sim_args.fixed_fading);
    from_cfg(cfg, "tol_bits", sim_args.tol_bits);
    from_cfg(cfg, "in", slope_args.in);
    from_cfg(cfg, "instances", oracle_args.instances);
    from_cfg(cfg, "p_max", oracle_args.p_max);
    from_cfg(cfg, "csi", dof_args.csi);
    from_cfg(cfg, "csi", plan_args.csi);
    from_cfg(cfg, "relays", dof_args.relays);
    from_cfg(cfg, "relays", plan_args.relays);
    from_cfg(cfg, "support_bound", oracle_args.support_bound);
    from_cfg(cfg, "seed", oracle_args.seed);
    from_cfg(cfg, "out", dof_args.out);
    from_cfg(cfg, "out", plan_args.out);
    from_cfg(cfg, "out", sim_args.out);
    from_cfg(cfg, "out", slope_args.out);
    from_cfg(cfg, "out", oracle_args.out);

    for (CLI::App* sub : {dof, plan, sim, slope, oracle})
      sub->add_option("--config", config_flag, config_help);

    dof->add_option("--alphas", dof_args.alphas, "grid values (comma separated)")
        ->delimiter(',');
    dof->add_option("--csi", dof_args.csi, "full or no_eve");
    dof->add_option("--relays", dof_args.relays, "relay count (2 = general pair grid)");
    dof->add_option("--out", dof_args.out, "output CSV path");

    plan->add_option("--alpha1", plan_args.alpha1, "link 1 d.o.f. (two-relay)");
    plan->add_option("--alpha2", plan_args.alpha2, "link 2 d.o.f. (two-relay)");
    plan->add_option("--alpha", plan_args.alpha, "symmetric link d.o.f. (multi-relay)");
    plan->add_option("--csi", plan_args.csi, "full or no_eve");
    plan->add_option("--relays", plan_args.relays, "relay count");
    plan->add_option("--out", plan_args.out, "output CSV path");

    sim->add_option("--scheme", sim_args.scheme, "cj, mb, sab, bcj, bcj_swapped or coj");
    sim->add_option("--powers", sim_args.powers, "transmit powers (comma separated)")
        ->delimiter(',');
    sim->add_option("--delta", sim_args.delta, "constellation exponent knob in (0,1)");
    sim->add_option("--support-bound", sim_args.support_bound, "fading support bound L");
    sim->add_option("--fades", sim_args.fades, "fade draws per power");
    sim->add_option("--trials", sim_args.trials, "decoding trials per power (0 = skip)");
    sim->add_option("--seed", sim_args.seed, "master seed");
    sim->add_option("--threads", sim_args.threads, "worker threads (0 = hardware)");
    sim->add_flag("--fixed-fading", sim_args.fixed_fading, "pin all work to fade stream 0");
    sim->add_option("--tol-bits", sim_args.tol_bits, "quadrature tolerance per integral");
    sim->add_option("--out", sim_args.out, "output CSV path");

    slope->add_option("--in", slope_args.in, "simulate CSV to fit");
    slope->add_option("--out", slope_args.out, "output CSV path");

    oracle->add_option("--instances", oracle_args.instances, "random (fade, pmf) instances");
    oracle->add_option("--p-max", oracle_args.p_max, "power cap; inputs run to floor(sqrt)");
    oracle->add_option("--support-bound", oracle_args.support_bound, "fading support bound L");
    oracle->add_option("--seed", oracle_args.seed, "master seed");
    oracle->add_option("--out", oracle_args.out, "output CSV path");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? 0 : 1;
    }

    if (!cfg.empty()) {
      if (dof->parsed())
        check_known_keys(cfg, {"alphas", "csi", "relays", "out"});
      else if (plan->parsed())
        check_known_keys(cfg, {"alpha1", "alpha2", "alpha", "csi", "relays", "out"});
      else if (sim->parsed())
        check_known_keys(cfg, {"scheme", "powers", "delta", "support_bound", "fades", "trials",
                               "seed", "threads", "fixed_fading", "tol_bits", "out"});
      else if (slope->parsed())
        check_known_keys(cfg, {"in", "out"});
      else if (oracle->parsed())
        check_known_keys(cfg, {"instances", "p_max", "support_bound", "seed", "out"});
    }

    if (dof->parsed()) run_dof_table(dof_args);
    if (plan->parsed()) run_plan(plan_args);
    if (sim->parsed()) run_simulate(sim_args);
    if (slope->parsed()) run_slope(slope_args);
    if (oracle->parsed()) run_oracle(oracle_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    exit_code = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    exit_code = 2;
  }
  return exit_code;
}
