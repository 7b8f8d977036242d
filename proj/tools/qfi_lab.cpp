#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "qfi/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitUsage = 3;
constexpr int kExitClaims = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int steps = 0;
  int threads = 0;  // 0 = unset; env fallback handled by CLI11
};

int run_figure(const std::string& scenario, const CommonOpts& opt) {
  static const std::set<std::string> known{"fig1a", "fig1b", "fig3", "fig4"};
  if (!known.count(scenario)) {
    std::cerr << "unknown scenario: " << scenario << "\n";
    return kExitUsage;
  }
  const auto loaded = qfi::report::load_config(opt.config_path);
  qfi::ExperimentConfig cfg =
      qfi::report::experiment_from_config(loaded.raw, scenario);
  if (opt.steps > 0) cfg.steps = opt.steps;
  if (opt.threads > 0) cfg.threads = opt.threads;

  const auto panels = qfi::run_scenario(cfg);
  fs::create_directories(opt.out_dir);

  qfi::report::RunManifest manifest;
  manifest.scenario = scenario;
  manifest.config_hash = loaded.hash;
  manifest.parameters = loaded.raw;
  for (const auto& ds : panels) {
    const std::string name = ds.panel + ".csv";
    qfi::report::write_text_file(fs::path(opt.out_dir) / name,
                                 qfi::report::csv_from_dataset(ds));
    manifest.outputs.push_back(
        {name, {ds.x_column, "series", ds.y_column}, ds.rows.size()});
  }
  qfi::report::write_text_file(
      fs::path(opt.out_dir) / (scenario + "_manifest.json"),
      qfi::report::manifest_json(manifest).dump(2) + "\n");
  return kExitOk;
}

int run_claims(const std::string& out_path) {
  const auto claims = qfi::run_claim_checks();
  const json j = qfi::report::claims_json(claims);
  if (!out_path.empty()) {
    fs::create_directories(fs::path(out_path).parent_path().empty()
                               ? "."
                               : fs::path(out_path).parent_path().string());
    qfi::report::write_text_file(out_path, j.dump(2) + "\n");
  } else {
    std::cout << j.dump(2) << "\n";
  }
  bool all = true;
  for (const auto& c : claims) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << " computed "
              << c.computed << " vs " << c.paper_value << "\n";
    all = all && c.pass;
  }
  return all ? kExitOk : kExitClaims;
}

double sweep_metric(const std::string& metric, const json& cfg,
                    const std::map<std::string, double>& axes) {
  const double amp = cfg.value("amp", 1.0);
  const auto axis = [&](const char* name, double def) {
    auto it = axes.find(name);
    return it != axes.end() ? it->second : cfg.value(name, def);
  };
  if (metric == "oscillation_amplitude") {
    const double f = axis("dt_factor", 2.0);
    const double d = axis("delta", cfg.value("delta_frame", 1e-3)) * amp;
    const int n_slots = cfg.value("n_slots", 140);
    const double horizon = n_slots * std::numbers::pi / (2.0 * amp);
    const double dt = std::numbers::pi / (f * amp);
    const auto ps =
        qfi::method2_probability_trace(amp, d, dt, int(horizon / dt));
    double hi = 0.0;
    for (double p : ps) hi = std::max(hi, p);
    return hi;
  }
  if (metric == "segmented_fi") {
    const double tau = axis("tau", 1.0);
    const double d = axis("delta", 0.5) * amp;
    const double total = cfg.value("total", 400.0);
    return qfi::closed_form_fi(
               qfi::Formula::h2_exact_window_sum,
               {.amp = amp, .delta = d, .tau = tau, .total = total})
        .value;
  }
  throw qfi::report::ConfigError("unknown sweep metric: " + metric);
}

int run_sweep(const CommonOpts& opt) {
  const auto loaded = qfi::report::load_config(opt.config_path);
  const json& cfg = loaded.raw;
  if (!cfg.contains("sweep") || !cfg["sweep"].contains("axes") ||
      !cfg["sweep"].contains("metric")) {
    throw qfi::report::ConfigError("sweep config needs sweep.axes and sweep.metric");
  }
  const auto& axes_j = cfg["sweep"]["axes"];
  if (!axes_j.is_array() || axes_j.empty() || axes_j.size() > 2) {
    std::cerr << "sweep: need 1 or 2 axes\n";
    return kExitUsage;
  }
  struct Axis {
    std::string param;
    std::vector<double> values;
  };
  std::vector<Axis> axes;
  for (const auto& a : axes_j) {
    qfi::GridSpec g{a.value("min", 0.0), a.value("max", 0.0),
                    a.value("points", 0), a.value("log", false)};
    if (g.points < 1 || !(g.max >= g.min)) {
      std::cerr << "sweep: empty grid\n";
      return kExitUsage;
    }
    Axis ax;
    ax.param = a.at("param").get<std::string>();
    ax.values = g.points == 1 ? std::vector<double>{g.min} : qfi::grid_values(g);
    axes.push_back(std::move(ax));
  }
  const std::string metric = cfg["sweep"]["metric"].get<std::string>();

  std::string csv;
  for (const auto& ax : axes) csv += ax.param + ",";
  csv += metric + "\n";
  const auto cell = [&](double v1, double v2, bool two) {
    std::map<std::string, double> at;
    at[axes[0].param] = v1;
    if (two) at[axes[1].param] = v2;
    const double y = sweep_metric(metric, cfg, at);
    csv += qfi::report::format_double(v1) + ",";
    if (two) csv += qfi::report::format_double(v2) + ",";
    csv += qfi::report::format_double(y) + "\n";
  };
  if (axes.size() == 1) {
    for (double v : axes[0].values) cell(v, 0.0, false);
  } else {
    for (double v1 : axes[0].values) {
      for (double v2 : axes[1].values) cell(v1, v2, true);
    }
  }

  fs::create_directories(opt.out_dir);
  qfi::report::write_text_file(fs::path(opt.out_dir) / "sweep.csv", csv);
  qfi::report::RunManifest manifest;
  manifest.scenario = "sweep:" + metric;
  manifest.config_hash = loaded.hash;
  manifest.parameters = cfg;
  std::vector<std::string> cols;
  for (const auto& ax : axes) cols.push_back(ax.param);
  cols.push_back(metric);
  manifest.outputs.push_back({"sweep.csv", cols, 0});
  qfi::report::write_text_file(fs::path(opt.out_dir) / "sweep_manifest.json",
                               qfi::report::manifest_json(manifest).dump(2) + "\n");
  return kExitOk;
}

int run_simulate(const CommonOpts& opt) {
  const auto loaded = qfi::report::load_config(opt.config_path);
  const json& cfg = loaded.raw;
  const json h = cfg.value("hamiltonian", json::object());
  static const std::map<std::string, qfi::HamiltonianKind> kinds{
      {"H1", qfi::HamiltonianKind::H1},
      {"H2", qfi::HamiltonianKind::H2},
      {"EffectiveLinearY", qfi::HamiltonianKind::EffectiveLinearY},
      {"EffectiveLinearZ", qfi::HamiltonianKind::EffectiveLinearZ},
      {"ZDrift", qfi::HamiltonianKind::ZDrift}};
  const std::string kind = h.value("kind", "H1");
  if (!kinds.count(kind)) {
    throw qfi::report::ConfigError("unknown hamiltonian kind: " + kind);
  }
  qfi::HamiltonianSpec spec;
  spec.kind = kinds.at(kind);
  spec.amp = h.value("amp", 1.0);
  spec.omega = h.value("omega", 0.0);
  spec.phase = h.value("phase", 0.0);
  spec.drift = h.value("drift", 0.0);

  const json s = cfg.value("sequence", json::object());
  const std::string type = s.value("type", "none");
  qfi::ControlSequence seq;
  const double duration = cfg.value("duration", 10.0);
  if (type == "method1") {
    seq = qfi::build_method1(spec.amp, s.value("drift", 0.0),
                             s.value("dt", 0.25 / spec.amp), duration)
              .sequence;
  } else if (type == "method2") {
    seq = qfi::build_method2(s.value("amp_est", spec.amp), s.value("k", 0),
                             duration)
              .sequence;
  } else if (type == "h2_train") {
    seq = qfi::build_h2_pulse_train(s.value("drift", spec.omega), duration)
              .sequence;
  } else if (type != "none") {
    throw qfi::report::ConfigError("unknown sequence type: " + type);
  }

  const int samples = cfg.value("samples", 100);
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i) ts[i] = duration * (i + 1) / samples;
  const auto us = qfi::evolve_recording(spec, seq, ts, opt.steps);

  std::string csv =
      "t,p_flip,u00_re,u00_im,u01_re,u01_im,u10_re,u10_im,u11_re,u11_im\n";
  const auto in = qfi::x_down();
  const auto out_state = qfi::x_up();
  using qfi::report::format_double;
  for (int i = 0; i < samples; ++i) {
    const auto& u = us[i];
    csv += format_double(ts[i]) + "," +
           format_double(qfi::transition_probability(u, in, out_state));
    for (const auto& e : {u.m.m00, u.m.m01, u.m.m10, u.m.m11}) {
      csv += "," + format_double(e.real()) + "," + format_double(e.imag());
    }
    csv += "\n";
  }
  fs::create_directories(opt.out_dir);
  qfi::report::write_text_file(fs::path(opt.out_dir) / "simulate.csv", csv);
  qfi::report::RunManifest manifest;
  manifest.scenario = "simulate";
  manifest.config_hash = loaded.hash;
  manifest.parameters = cfg;
  manifest.outputs.push_back({"simulate.csv", {"t", "p_flip", "u"}, size_t(samples)});
  qfi::report::write_text_file(fs::path(opt.out_dir) / "simulate_manifest.json",
                               qfi::report::manifest_json(manifest).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qubit sensing simulator and Fisher-information toolkit"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string scenario;
  std::string claims_out;

  auto* fig = app.add_subcommand("figure", "generate a figure dataset");
  fig->add_option("scenario", scenario, "fig1a|fig1b|fig3|fig4")->required();
  fig->add_option("--config", opt.config_path, "JSON config path")->required();
  fig->add_option("--out", opt.out_dir, "output directory");
  fig->add_option("--steps", opt.steps, "propagator steps per segment");
  fig->add_option("--threads", opt.threads, "worker threads")
      ->envname("QFI_LAB_THREADS");

  auto* clm = app.add_subcommand("claims", "run the quantitative claim checks");
  clm->add_option("--out", claims_out, "report JSON path");

  auto* swp = app.add_subcommand("sweep", "1- or 2-axis parameter sweep");
  swp->add_option("--config", opt.config_path, "JSON config path")->required();
  swp->add_option("--out", opt.out_dir, "output directory");
  swp->add_option("--threads", opt.threads, "worker threads")
      ->envname("QFI_LAB_THREADS");

  auto* sim = app.add_subcommand("simulate", "raw evolution dump");
  sim->add_option("--config", opt.config_path, "JSON config path")->required();
  sim->add_option("--out", opt.out_dir, "output directory");
  sim->add_option("--steps", opt.steps, "propagator steps per segment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (fig->parsed()) return run_figure(scenario, opt);
    if (clm->parsed()) return run_claims(claims_out);
    if (swp->parsed()) return run_sweep(opt);
    if (sim->parsed()) return run_simulate(opt);
  } catch (const qfi::report::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
