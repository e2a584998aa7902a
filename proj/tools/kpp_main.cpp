#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kpp/cell.hpp"
#include "kpp/config.hpp"
#include "kpp/errors.hpp"
#include "kpp/experiment.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/logistic.hpp"
#include "kpp/spectral.hpp"

namespace {

using kpp::json;

struct GlobalOpts {
  std::string config;
  std::string out;
  int threads = 0;
  bool quiet = false;

  int resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("KPP_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }
};

struct ReactionOpts {
  std::string family = "fisher";
  double amplitude = 0.5;
  double period = 1.0;
  std::string table_path;

  json fragment() const {
    json j;
    j["family"] = family;
    j["amplitude"] = amplitude;
    j["period"] = period;
    if (!table_path.empty()) j["table_path"] = table_path;
    return j;
  }
};

void add_reaction_flags(CLI::App* cmd, ReactionOpts& r) {
  cmd->add_option("--reaction", r.family,
                  "reaction family: fisher|periodic_fisher|table");
  cmd->add_option("--amplitude", r.amplitude, "periodic_fisher amplitude");
  cmd->add_option("--period", r.period, "cell period L");
  cmd->add_option("--reaction-table", r.table_path, "table file for family=table");
}

kpp::Nonlinearity reaction_of(const GlobalOpts& g, const ReactionOpts& r) {
  if (!g.config.empty()) {
    const json doc = kpp::parse_config_file(g.config);
    if (doc.contains("reaction")) return kpp::reaction_from_config(doc["reaction"]);
  }
  return kpp::reaction_from_config(r.fragment());
}

void emit(const GlobalOpts& g, const std::string& name, const std::string& content) {
  if (g.out.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(g.out);
  std::ofstream out(std::filesystem::path(g.out) / name, std::ios::binary);
  out << content;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Reads a run directory written by `kpp simulate` back into a FrontRun.
kpp::FrontRun load_run(const std::string& dir) {
  std::ifstream meta_in(std::filesystem::path(dir) / "run.json");
  if (!meta_in) throw std::invalid_argument("not a run directory (no run.json): " + dir);
  const json meta = json::parse(meta_in);

  kpp::FrontRun run;
  run.dt = meta.at("dt").get<double>();
  run.dx = meta.at("dx").get<double>();
  run.period = meta.value("period", 1.0);
  run.boundary_threshold = meta.value("boundary_threshold", 1e-4);
  if (meta.contains("taint_time")) run.taint_time = meta["taint_time"].get<double>();
  const double x_left = meta.at("x_left").get<double>();

  std::ifstream csv(std::filesystem::path(dir) / "snapshots.csv");
  if (!csv) throw std::invalid_argument("not a run directory (no snapshots.csv): " + dir);
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#') continue;
    kpp::LineField field;
    field.x_left = x_left;
    field.dx = run.dx;
    std::istringstream row(line);
    std::string cell;
    bool first = true;
    while (std::getline(row, cell, ',')) {
      const double v = std::stod(cell);
      if (first) {
        run.times.push_back(v);
        first = false;
      } else {
        field.values.push_back(v);
      }
    }
    run.mass.push_back(0.0);
    run.right_boundary.push_back(field.values.empty() ? 0.0 : field.values.back());
    run.snapshots.push_back(std::move(field));
  }
  if (run.snapshots.empty())
    throw std::invalid_argument("run directory has no snapshots: " + dir);
  return run;
}

int cmd_levelsets(const GlobalOpts& g, const std::string& run_dir, double m,
                  double t, double window) {
  const kpp::FrontRun run = load_run(run_dir);
  json out;
  out["m"] = m;
  out["t"] = t;
  out["tainted"] = run.tainted_at(t);
  if (window > 0.0) {
    const auto avg = kpp::extract_average_level_set(run, m, t, window);
    out["window"] = window;
    out["positions"] = avg.positions;
    out["all"] = avg.all;
  } else {
    out["positions"] = kpp::extract_level_set(run, m, t);
  }
  emit(g, "levelsets.json", out.dump(2) + "\n");
  return kpp::kExitPass;
}

int cmd_logistic(const GlobalOpts& g, const ReactionOpts& r, double t_lo,
                 double t_hi, int samples, double level) {
  const kpp::Nonlinearity f = reaction_of(g, r);
  if (!f.homogeneous())
    throw std::invalid_argument("logistic: reaction must be homogeneous");
  const kpp::LogisticProfile profile = kpp::solve_profile(f);
  if (level > 0.0) {
    json out;
    out["m"] = level;
    out["level_time"] = profile.level_time(level);
    emit(g, "logistic.json", out.dump(2) + "\n");
    return kpp::kExitPass;
  }
  std::string csv = kpp::kCsvSchemaHeader;
  csv += "\n# t,phi\n";
  for (int i = 0; i <= samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / samples;
    csv += fmt(t) + "," + fmt(profile.eval(t)) + "\n";
  }
  emit(g, "logistic.csv", csv);
  return kpp::kExitPass;
}

int cmd_eigen(const GlobalOpts& g, const ReactionOpts& r, int N) {
  const kpp::Nonlinearity f = reaction_of(g, r);
  const kpp::EigenPair at0 = kpp::eigenpair_at_zero(f, N);
  const kpp::EigenPair at1 = kpp::eigenpair_at_one(f, N);
  json out;
  out["f0"] = at0.eigenvalue;
  out["f1"] = at1.eigenvalue;
  out["psi0_integral"] = at0.psi.integral();
  out["psi1_integral"] = at1.psi.integral();
  out["N"] = N;
  emit(g, "eigen.json", out.dump(2) + "\n");
  std::string csv = kpp::kCsvSchemaHeader;
  csv += "\n# x,psi0,psi1\n";
  for (std::size_t i = 0; i < at0.psi.size(); ++i)
    csv += fmt(at0.psi.node(i)) + "," + fmt(at0.psi.values[i]) + "," +
           fmt(at1.psi.values[i]) + "\n";
  if (!g.out.empty()) emit(g, "eigen.csv", csv);
  return kpp::kExitPass;
}

int cmd_bmt(const GlobalOpts& g, const ReactionOpts& r, double m, double T,
            int N, double dt) {
  const kpp::Nonlinearity f = reaction_of(g, r);
  const kpp::TerminalValueResult res = kpp::solve_terminal_value(f, m, T, 1e-8, N, dt);
  json out;
  out["B"] = res.B;
  out["m"] = res.m;
  out["T"] = res.T;
  out["iterations"] = res.iterations;
  out["terminal_mean"] = res.terminal_mean;
  emit(g, "bmt.json", out.dump(2) + "\n");
  return kpp::kExitPass;
}

int cmd_globalsol(const GlobalOpts& g, const ReactionOpts& r, int n, double t_max,
                  int N, double dt) {
  const kpp::Nonlinearity f = reaction_of(g, r);
  const kpp::GlobalSolution sol = kpp::construct_global_solution(f, n, t_max, N, dt);
  json out;
  out["alpha"] = sol.alpha;
  out["omega"] = sol.omega;
  out["f0"] = sol.at_zero.eigenvalue;
  out["f1"] = sol.at_one.eigenvalue;
  out["n"] = sol.n;
  out["t_min"] = sol.t_min();
  out["t_max"] = sol.t_max();
  emit(g, "globalsol.json", out.dump(2) + "\n");
  std::string csv = kpp::kCsvSchemaHeader;
  csv += "\n# t,mean,min,max\n";
  for (std::size_t i = 0; i < sol.times.size(); ++i)
    csv += fmt(sol.times[i]) + "," + fmt(sol.means[i]) + "," +
           fmt(sol.fields[i].min()) + "," + fmt(sol.fields[i].max()) + "\n";
  if (!g.out.empty()) emit(g, "globalsol.csv", csv);
  return kpp::kExitPass;
}

int run_config(const GlobalOpts& g, const std::string& experiment_override) {
  if (g.config.empty()) {
    std::cerr << "usage error: --config is required\n";
    return kpp::kExitUsage;
  }
  kpp::ExperimentConfig cfg = kpp::load_experiment_config(g.config);
  if (!experiment_override.empty()) cfg.experiment = experiment_override;
  if (!g.out.empty()) cfg.out_dir = g.out;
  return kpp::run_experiment(cfg, g.quiet);
}

int cmd_sweep(const GlobalOpts& g) {
  if (g.config.empty()) {
    std::cerr << "usage error: --config is required\n";
    return kpp::kExitUsage;
  }
  const json doc = kpp::parse_config_file(g.config);
  if (!doc.contains("configs") || !doc["configs"].is_array()) {
    std::cerr << "usage error: sweep config needs a 'configs' array of file paths\n";
    return kpp::kExitUsage;
  }
  std::vector<std::string> paths = doc["configs"].get<std::vector<std::string>>();
  const std::filesystem::path base = std::filesystem::path(g.config).parent_path();
  std::vector<kpp::ExperimentConfig> cfgs;
  for (const std::string& p : paths) {
    std::filesystem::path full = p;
    if (full.is_relative()) full = base / full;
    kpp::ExperimentConfig cfg = kpp::load_experiment_config(full.string());
    const std::string stem = full.stem().string();
    cfg.out_dir = (std::filesystem::path(g.out.empty() ? "out" : g.out) / stem).string();
    cfgs.push_back(std::move(cfg));
  }

  const int workers = std::min<int>(g.resolved_threads(), static_cast<int>(cfgs.size()));
  std::vector<int> codes(cfgs.size(), 0);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < cfgs.size(); i = next.fetch_add(1))
        codes[i] = kpp::run_experiment(cfgs[i], true);
    });
  for (auto& th : pool) th.join();

  int worst = kpp::kExitPass;
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    if (!g.quiet)
      std::cout << paths[i] << ": exit " << codes[i] << "\n";
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kpp-front: accelerating-front laboratory for reaction-diffusion "
               "equations with slowly decaying initial data"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config, "config file (TOML or JSON)")->configurable(false);
  app.add_option("--out", g.out, "output directory");
  app.add_option("--threads", g.threads, "worker threads (default: KPP_THREADS or hardware)");
  app.add_flag("--quiet", g.quiet, "suppress progress output");

  auto* simulate = app.add_subcommand("simulate", "run a front simulation from a config");

  auto* levelsets = app.add_subcommand("levelsets", "extract level sets from a finished run");
  std::string run_dir;
  double ls_m = 0.5, ls_t = 0.0, ls_window = 0.0;
  levelsets->add_option("--run", run_dir, "run directory")->required();
  levelsets->add_option("--m", ls_m, "level");
  levelsets->add_option("--t", ls_t, "time")->required();
  levelsets->add_option("--window", ls_window, "window length for average-level sets");

  auto* logistic = app.add_subcommand("logistic", "saturation ODE profile");
  ReactionOpts lg_r;
  add_reaction_flags(logistic, lg_r);
  double lg_lo = -10.0, lg_hi = 10.0, lg_level = 0.0;
  int lg_samples = 200;
  logistic->add_option("--t-min", lg_lo, "sample range start");
  logistic->add_option("--t-max", lg_hi, "sample range end");
  logistic->add_option("--samples", lg_samples, "sample count");
  logistic->add_option("--level", lg_level, "report the level time T_m instead");

  auto* eigen = app.add_subcommand("eigen", "principal eigenpairs");
  ReactionOpts ei_r;
  add_reaction_flags(eigen, ei_r);
  int ei_N = 512;
  eigen->add_option("--N", ei_N, "grid points");

  auto* bmt = app.add_subcommand("bmt", "terminal-value problem B(m,T)");
  ReactionOpts bm_r;
  add_reaction_flags(bmt, bm_r);
  double bm_m = 0.5, bm_T = 10.0, bm_dt = 1e-3;
  int bm_N = 64;
  bmt->add_option("--m", bm_m, "target mean");
  bmt->add_option("--T", bm_T, "horizon");
  bmt->add_option("--N", bm_N, "cell grid points");
  bmt->add_option("--dt", bm_dt, "time step");

  auto* globalsol = app.add_subcommand("globalsol", "global-in-time cell solution");
  ReactionOpts gs_r;
  add_reaction_flags(globalsol, gs_r);
  int gs_n = 1000, gs_N = 64;
  double gs_tmax = 8.0, gs_dt = 1e-3;
  globalsol->add_option("--n", gs_n, "starting level 1/n");
  globalsol->add_option("--t-max", gs_tmax, "forward horizon after re-indexing");
  globalsol->add_option("--N", gs_N, "cell grid points");
  globalsol->add_option("--dt", gs_dt, "time step");

  auto* verify = app.add_subcommand("verify", "run a verification experiment");
  std::string experiment;
  verify->add_option("--experiment", experiment,
                     "hom_levelsets|mean_levelsets|flatness|bmt_rate|ratio_limit");

  auto* sweep = app.add_subcommand("sweep", "run many configs in a worker pool");

  // Let global flags (--config, --out, ...) appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kpp::kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_config(g, "simulate");
    if (levelsets->parsed()) return cmd_levelsets(g, run_dir, ls_m, ls_t, ls_window);
    if (logistic->parsed()) return cmd_logistic(g, lg_r, lg_lo, lg_hi, lg_samples, lg_level);
    if (eigen->parsed()) return cmd_eigen(g, ei_r, ei_N);
    if (bmt->parsed()) return cmd_bmt(g, bm_r, bm_m, bm_T, bm_N, bm_dt);
    if (globalsol->parsed()) return cmd_globalsol(g, gs_r, gs_n, gs_tmax, gs_N, gs_dt);
    if (verify->parsed()) return run_config(g, experiment);
    if (sweep->parsed()) return cmd_sweep(g);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kpp::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kpp::kExitSolverError;
  }
  return kpp::kExitUsage;
}
