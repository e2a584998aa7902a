#include "kpp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "kpp/cell.hpp"
#include "kpp/errors.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/logistic.hpp"
#include "kpp/spectral.hpp"
#include "kpp/svg.hpp"

namespace kpp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex16(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json numerics_of(const ExperimentConfig& cfg) {
  return cfg.raw.value("numerics", json::object());
}

/// Front snapshots as CSV: one row per stored snapshot, t then node values.
std::string front_csv(const FrontRun& run) {
  std::string out = kCsvSchemaHeader;
  out += "\n# t,u(x_left),u(x_left+dx),...\n";
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    out += fmt(run.times[k]);
    for (double v : run.snapshots[k].values) {
      out += ",";
      out += fmt(v);
    }
    out += "\n";
  }
  return out;
}

json run_summary(const FrontRun& run) {
  json j;
  j["dt"] = run.dt;
  j["dx"] = run.dx;
  j["x_left"] = run.snapshots.front().x_left;
  j["x_right"] = run.snapshots.front().x_right();
  j["period"] = run.period;
  j["snapshots"] = run.snapshots.size();
  j["horizon"] = run.times.back();
  j["boundary_threshold"] = run.boundary_threshold;
  j["tainted"] = std::isfinite(run.taint_time);
  if (std::isfinite(run.taint_time)) j["taint_time"] = run.taint_time;
  j["final_right_boundary"] = run.right_boundary.back();
  j["final_mass"] = run.mass.back();
  return j;
}

std::string front_svg(const FrontRun& run, const std::string& title) {
  std::vector<Series> series;
  // Up to five snapshots, spread over the run.
  const std::size_t n = run.snapshots.size();
  std::vector<std::size_t> picks;
  for (int k = 0; k < 5; ++k)
    picks.push_back(std::min(n - 1, k * (n - 1) / 4));
  std::size_t prev = static_cast<std::size_t>(-1);
  for (std::size_t idx : picks) {
    if (idx == prev) continue;
    prev = idx;
    const LineField& s = run.snapshots[idx];
    Series ser;
    ser.name = "t=" + fmt(run.times[idx]).substr(0, 6);
    for (std::size_t i = 0; i < s.size(); ++i) {
      ser.x.push_back(s.node(i));
      ser.y.push_back(s.values[i]);
    }
    series.push_back(std::move(ser));
  }
  PlotStyle style;
  style.title = title;
  style.x_label = "x";
  style.y_label = "u";
  return render_svg(series, style);
}

struct FrontSetup {
  Nonlinearity f;
  InitialData u0;
  double dt = 1e-3;
  LineGrid grid;
  FrontSimOptions opts;
};

/// Reaction, initial data, and domain from the config; the domain is
/// planned from the principal eigenvalue unless numerics pins it.
FrontSetup front_setup(const ExperimentConfig& cfg, double T, double m_min) {
  FrontSetup s{reaction_from_config(cfg.raw.value("reaction", json::object())),
               initial_data_from_config(cfg.raw.value("initial_data", json::object())),
               1e-3,
               {}};
  const json num = numerics_of(cfg);
  s.dt = num.value("dt", 1e-3);
  s.opts.stride = num.value("stride", 50);
  s.opts.boundary_threshold = num.value("boundary_threshold", s.opts.boundary_threshold);
  const double dx = num.value("dx", 0.25);
  if (num.contains("x_left") && num.contains("x_right")) {
    s.grid = {dx, num["x_left"].get<double>(), num["x_right"].get<double>()};
  } else {
    const double f0 = eigenpair_at_zero(s.f).eigenvalue;
    const DomainPlan plan = plan_domain(s.u0, f0, T, m_min,
                                        num.value("safety", 1.5), dx);
    s.grid = {plan.dx, plan.x_left, plan.x_right};
  }
  return s;
}

std::vector<double> m_list_of(const ExperimentConfig& cfg) {
  if (cfg.raw.contains("m_list"))
    return cfg.raw["m_list"].get<std::vector<double>>();
  return {0.25, 0.5, 0.75};
}

void emit_report(ArtifactWriter& art, const VerificationReport& rep, bool quiet) {
  art.write("report.json", report_to_json(rep).dump(2) + "\n");
  if (!quiet) {
    std::cout << rep.theorem << ": " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : rep.checks)
      std::cout << "  " << (c.pass ? "pass" : "FAIL") << (c.counted ? "  " : "* ")
                << c.label << "  predicted=" << c.predicted
                << " measured=" << c.measured
                << (c.note.empty() ? "" : ("  (" + c.note + ")")) << "\n";
  }
}

int exp_simulate(const ExperimentConfig& cfg, ArtifactWriter& art, bool quiet) {
  const json num = numerics_of(cfg);
  const double T = num.value("T", 5.0);
  FrontSetup s = front_setup(cfg, T, cfg.raw.value("m_min", 0.25));
  const FrontRun run = simulate_front(s.f, s.u0, T, s.grid, s.dt, s.opts);
  art.write("snapshots.csv", front_csv(run));
  art.write("run.json", run_summary(run).dump(2) + "\n");
  art.write("front.svg", front_svg(run, "front evolution"));
  if (!quiet)
    std::cout << "simulate: " << run.snapshots.size() << " snapshots on ["
              << s.grid.x_left << ", " << s.grid.x_right << "]\n";
  return kExitPass;
}

int exp_hom_levelsets(const ExperimentConfig& cfg, ArtifactWriter& art, bool quiet) {
  const json num = numerics_of(cfg);
  const double T = num.value("T", 10.0);
  const double eps = cfg.raw.value("eps", 0.05);
  const std::vector<double> m_list = m_list_of(cfg);
  const double m_min = *std::min_element(m_list.begin(), m_list.end());

  FrontSetup s = front_setup(cfg, T, m_min);
  if (!s.f.homogeneous())
    throw std::invalid_argument("hom_levelsets requires a homogeneous reaction");
  const LogisticProfile profile = solve_profile(s.f);
  const FrontRun run = simulate_front(s.f, s.u0, T, s.grid, s.dt, s.opts);
  art.write("snapshots.csv", front_csv(run));
  art.write("run.json", run_summary(run).dump(2) + "\n");
  art.write("front.svg", front_svg(run, "front evolution"));

  // Rightmost measured m=mid level position against the prediction, over time.
  const double m_mid = m_list[m_list.size() / 2];
  Series measured{"measured", {}, {}}, predicted{"predicted", {}, {}};
  std::string csv = kCsvSchemaHeader;
  csv += "\n# t,measured_rightmost,predicted\n";
  for (std::size_t k = 0; k < run.times.size(); ++k) {
    const double t = run.times[k];
    if (t < 1.0 || run.tainted_at(t)) continue;
    const auto xs = extract_level_set(run, m_mid, t);
    if (xs.empty()) continue;
    double pred;
    try {
      pred = predict_level_position(profile, s.u0, m_mid, t);
    } catch (const RangeError&) {
      continue;  // early times: the predicted level is above the tail range
    }
    measured.x.push_back(t);
    measured.y.push_back(xs.back());
    predicted.x.push_back(t);
    predicted.y.push_back(pred);
    csv += fmt(t) + "," + fmt(xs.back()) + "," + fmt(pred) + "\n";
  }
  art.write("levelset.csv", csv);
  if (!measured.x.empty()) {
    PlotStyle style;
    style.log_y = true;
    style.title = "rightmost level set, m=" + fmt(m_mid).substr(0, 6);
    style.x_label = "t";
    style.y_label = "position";
    art.write("levelset.svg", render_svg({measured, predicted}, style));
  }

  VerificationReport rep = verify_homogeneous_levelsets(run, profile, s.u0, m_list, T, eps);
  rep.provenance = hex16(content_hash(front_csv(run)));
  emit_report(art, rep, quiet);
  return rep.pass() ? kExitPass : kExitVerificationFailure;
}

GlobalSolution global_from_config(const ExperimentConfig& cfg, const Nonlinearity& f) {
  const json num = numerics_of(cfg);
  return construct_global_solution(f, cfg.raw.value("n", 1000),
                                   cfg.raw.value("t_max", 8.0),
                                   num.value("N", 64), num.value("cell_dt", 1e-3));
}

int exp_mean_levelsets(const ExperimentConfig& cfg, ArtifactWriter& art, bool quiet) {
  const json num = numerics_of(cfg);
  const double T = num.value("T", 10.0);
  const double eps = cfg.raw.value("eps", 0.05);
  const std::vector<double> m_list =
      cfg.raw.contains("m_list") ? m_list_of(cfg) : std::vector<double>{0.5};
  const double m_min = *std::min_element(m_list.begin(), m_list.end());

  FrontSetup s = front_setup(cfg, T, m_min);
  const GlobalSolution g = global_from_config(cfg, s.f);
  const FrontRun run = simulate_front(s.f, s.u0, T, s.grid, s.dt, s.opts);
  art.write("snapshots.csv", front_csv(run));
  art.write("run.json", run_summary(run).dump(2) + "\n");
  art.write("front.svg", front_svg(run, "front evolution"));

  VerificationReport rep =
      verify_mean_levelsets(run, g, s.u0, m_list, T, eps, cfg.raw.value("margin", -1.0));
  rep.provenance = hex16(content_hash(front_csv(run)));
  emit_report(art, rep, quiet);
  return rep.pass() ? kExitPass : kExitVerificationFailure;
}

int exp_flatness(const ExperimentConfig& cfg, ArtifactWriter& art, bool quiet) {
  const json num = numerics_of(cfg);
  const double T1 = cfg.raw.value("T1", 8.0);
  const double T2 = cfg.raw.value("T2", 12.0);
  const double threshold = cfg.raw.value("threshold", 0.05);

  FrontSetup s = front_setup(cfg, T2, cfg.raw.value("m_min", 0.25));
  const GlobalSolution g = global_from_config(cfg, s.f);
  const FrontRun run = simulate_front(s.f, s.u0, T2, s.grid, s.dt, s.opts);
  art.write("snapshots.csv", front_csv(run));
  art.write("run.json", run_summary(run).dump(2) + "\n");

  const double L = s.f.period;
  const int n_lo = cfg.raw.value("n_lo", 1);
  const int n_hi = cfg.raw.value(
      "n_hi", static_cast<int>(std::floor(run.snapshots.front().x_right() / L)) - 1);

  VerificationReport rep = verify_flatness(run, T1, run, T2, g, s.u0, n_lo, n_hi, threshold);
  rep.provenance = hex16(content_hash(front_csv(run)));

  const FlatnessScan scan = flatness_scan(run, g, s.u0, T2, n_lo, n_hi);
  std::string csv = kCsvSchemaHeader;
  csv += "\n# cell,sup_discrepancy\n";
  Series ser{"discrepancy at T2", {}, {}};
  for (const auto& [n, d] : scan.per_cell) {
    csv += std::to_string(n) + "," + fmt(d) + "\n";
    ser.x.push_back(n);
    ser.y.push_back(d);
  }
  art.write("flatness.csv", csv);
  if (!ser.x.empty()) {
    PlotStyle style;
    style.title = "cell-wise discrepancy";
    style.x_label = "cell index";
    style.y_label = "sup |u - phi|";
    art.write("flatness.svg", render_svg({ser}, style));
  }

  emit_report(art, rep, quiet);
  return rep.pass() ? kExitPass : kExitVerificationFailure;
}

int exp_bmt_rate(const ExperimentConfig& cfg, ArtifactWriter& art, bool quiet) {
  const json num = numerics_of(cfg);
  const Nonlinearity f = reaction_from_config(cfg.raw.value("reaction", json::object()));
  const double m = cfg.raw.value("m", 0.5);
  const std::vector<double> T_list =
      cfg.raw.contains("T_list") ? cfg.raw["T_list"].get<std::vector<double>>()
                                 : std::vector<double>{6.0, 8.0, 10.0, 12.0};
  const int N = num.value("N", 64);
  const double dt = num.value("cell_dt", num.value("dt", 1e-3));
  const double tol_rel = cfg.raw.value("tol_rel", 0.02);

  std::vector<std::pair<double, double>> samples;
  std::string csv = kCsvSchemaHeader;
  csv += "\n# T,B\n";
  for (double T : T_list) {
    const double B = solve_terminal_value(f, m, T, 1e-10, N, dt).B;
    samples.emplace_back(T, B);
    csv += fmt(T) + "," + fmt(B) + "\n";
  }
  art.write("bmt.csv", csv);

  const double rate = fit_decay_rate(samples);
  const double f0 = eigenpair_at_zero(f, num.value("eigen_N", 512)).eigenvalue;

  Series data{"B(m,T)", {}, {}}, fitline{"fitted rate", {}, {}};
  double c = 0.0;
  for (const auto& [T, B] : samples) c += std::log(B) + rate * T;
  c /= static_cast<double>(samples.size());
  for (const auto& [T, B] : samples) {
    data.x.push_back(T);
    data.y.push_back(B);
    fitline.x.push_back(T);
    fitline.y.push_back(std::exp(c - rate * T));
  }
  PlotStyle style;
  style.log_y = true;
  style.title = "terminal-value decay";
  style.x_label = "T";
  style.y_label = "B(m,T)";
  art.write("bmt.svg", render_svg({data, fitline}, style));

  VerificationReport rep;
  rep.theorem = "bmt_rate";
  rep.params = {{"m", m}, {"tol_rel", tol_rel}};
  rep.provenance = hex16(content_hash(csv));
  TheoremCheck c1;
  c1.label = "fitted_rate_matches_f0";
  c1.predicted = f0;
  c1.measured = rate;
  c1.tolerance = tol_rel;
  c1.pass = std::fabs(rate - f0) <= tol_rel * f0;
  rep.checks.push_back(c1);
  emit_report(art, rep, quiet);
  return rep.pass() ? kExitPass : kExitVerificationFailure;
}

int exp_ratio_limit(const ExperimentConfig& cfg, ArtifactWriter& art, bool quiet) {
  const json num = numerics_of(cfg);
  const Nonlinearity f = reaction_from_config(cfg.raw.value("reaction", json::object()));
  const double m = cfg.raw.value("m", 0.5);
  const std::vector<double> T_list =
      cfg.raw.contains("T_list") ? cfg.raw["T_list"].get<std::vector<double>>()
                                 : std::vector<double>{6.0, 9.0, 12.0};
  const double tol = cfg.raw.value("tol", 0.05);

  const std::vector<double> ratios = ratio_limit_check(
      f, m, T_list, num.value("N", 64), num.value("cell_dt", num.value("dt", 1e-3)));

  std::string csv = kCsvSchemaHeader;
  csv += "\n# T,ratio\n";
  for (std::size_t i = 0; i < T_list.size(); ++i)
    csv += fmt(T_list[i]) + "," + fmt(ratios[i]) + "\n";
  art.write("ratio.csv", csv);

  VerificationReport rep;
  rep.theorem = "ratio_limit";
  rep.params = {{"m", m}, {"tol", tol}};
  rep.provenance = hex16(content_hash(csv));
  TheoremCheck near;
  near.label = "final_ratio_near_1";
  near.predicted = 1.0;
  near.measured = ratios.back();
  near.tolerance = tol;
  near.pass = std::fabs(ratios.back() - 1.0) <= tol;
  rep.checks.push_back(near);
  TheoremCheck dec;
  dec.label = "deviation_decreasing";
  dec.pass = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (std::fabs(ratios[i] - 1.0) >= std::fabs(ratios[i - 1] - 1.0)) dec.pass = false;
  dec.predicted = std::fabs(ratios.front() - 1.0);
  dec.measured = std::fabs(ratios.back() - 1.0);
  rep.checks.push_back(dec);
  emit_report(art, rep, quiet);
  return rep.pass() ? kExitPass : kExitVerificationFailure;
}

}  // namespace

std::uint64_t content_hash(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ArtifactWriter::ArtifactWriter(std::string out_dir) : dir_(std::move(out_dir)) {
  std::filesystem::create_directories(dir_);
}

std::string ArtifactWriter::write(const std::string& name, const std::string& content) {
  const std::filesystem::path path = std::filesystem::path(dir_) / name;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write artifact: " + path.string());
  out << content;
  entries_.emplace_back(name, content_hash(content));
  return path.string();
}

void ArtifactWriter::finalize(const json& metadata) {
  json manifest;
  manifest["schema"] = "kpp-front manifest v1";
  manifest["metadata"] = metadata;
  manifest["created_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  json files = json::array();
  for (const auto& [name, hash] : entries_)
    files.push_back({{"name", name}, {"fnv1a", hex16(hash)}});
  manifest["files"] = files;
  std::ofstream out(std::filesystem::path(dir_) / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << "\n";
}

json report_to_json(const VerificationReport& report) {
  json j;
  j["theorem"] = report.theorem;
  j["pass"] = report.pass();
  j["params"] = report.params;
  j["provenance"] = report.provenance;
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"label", c.label},
                      {"predicted", c.predicted},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"counted", c.counted},
                      {"note", c.note}});
  j["checks"] = checks;
  return j;
}

int run_experiment(const ExperimentConfig& cfg, bool quiet) {
  try {
    ArtifactWriter art(cfg.out_dir);
    int code;
    if (cfg.experiment == "simulate")
      code = exp_simulate(cfg, art, quiet);
    else if (cfg.experiment == "hom_levelsets")
      code = exp_hom_levelsets(cfg, art, quiet);
    else if (cfg.experiment == "mean_levelsets")
      code = exp_mean_levelsets(cfg, art, quiet);
    else if (cfg.experiment == "flatness")
      code = exp_flatness(cfg, art, quiet);
    else if (cfg.experiment == "bmt_rate")
      code = exp_bmt_rate(cfg, art, quiet);
    else if (cfg.experiment == "ratio_limit")
      code = exp_ratio_limit(cfg, art, quiet);
    else
      throw std::invalid_argument("unknown experiment: " + cfg.experiment);

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["exit_code"] = code;
    meta["seed"] = cfg.seed;
    art.finalize(meta);
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  }
}

}  // namespace kpp
