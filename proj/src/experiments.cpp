#include "qfi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace qfi {

namespace {
constexpr double kPi = std::numbers::pi;

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string format_series(const std::string& base, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%g", base.c_str(), value);
  return buf;
}

}  // namespace

std::vector<double> grid_values(const GridSpec& g) {
  if (g.points < 2 || !(g.max > g.min) || (g.log_scale && !(g.min > 0.0))) {
    throw std::invalid_argument("GridSpec: need points >= 2 and max > min (> 0 for log)");
  }
  std::vector<double> xs(g.points);
  for (int i = 0; i < g.points; ++i) {
    const double f = double(i) / (g.points - 1);
    xs[i] = g.log_scale ? g.min * std::pow(g.max / g.min, f)
                        : g.min + f * (g.max - g.min);
  }
  return xs;
}

void validate(const CurveDataset& ds) {
  std::map<std::string, double> last;
  for (const auto& r : ds.rows) {
    auto it = last.find(r.series);
    if (it != last.end() && !(r.x > it->second)) {
      throw std::invalid_argument("CurveDataset: x not increasing in series " +
                                  r.series);
    }
    last[r.series] = r.x;
  }
}

std::vector<double> method2_probability_trace(double amp, double delta,
                                              double dt, int n_slots) {
  const QubitState in = x_down();
  const QubitState out = x_up();
  const Unitary2 px = pauli_exp({1.0, 0.0, 0.0}, kPi / 2.0);
  Unitary2 u{identity2()};
  std::vector<double> ps(n_slots);
  for (int j = 0; j < n_slots; ++j) {
    u = compose(analytic_slot_unitary(delta, amp, j * dt, dt), u);
    ps[j] = transition_probability(u, in, out);
    u = compose(px, u);
  }
  return ps;
}

std::vector<double> method2_fi_trace(double amp, double delta, double dt,
                                     int n_slots) {
  const double t_max = n_slots * dt;
  const double h = 1e-4 * dt / (t_max * t_max);
  const auto pp = method2_probability_trace(amp, delta + h, dt, n_slots);
  const auto pm = method2_probability_trace(amp, delta - h, dt, n_slots);
  const auto pp2 = method2_probability_trace(amp, delta + 0.5 * h, dt, n_slots);
  const auto pm2 = method2_probability_trace(amp, delta - 0.5 * h, dt, n_slots);
  const auto p0 = method2_probability_trace(amp, delta, dt, n_slots);
  std::vector<double> fi(n_slots);
  for (int j = 0; j < n_slots; ++j) {
    const double d1 = (pp[j] - pm[j]) / (2.0 * h);
    const double d2 = (pp2[j] - pm2[j]) / h;
    const double dp = (4.0 * d2 - d1) / 3.0;
    const double den = p0[j] * (1.0 - p0[j]);
    if (den < 1e-12) {
      const double second = (pp[j] - 2.0 * p0[j] + pm[j]) / (h * h);
      fi[j] = 2.0 * std::abs(second);
    } else {
      fi[j] = dp * dp / den;
    }
  }
  return fi;
}

double amplitude_lifetime(const std::vector<double>& ts,
                          const std::vector<double>& ps, double threshold) {
  const int n = static_cast<int>(ps.size());
  const int w = std::max(10, n / 60);
  for (int i = 2 * w; i < n; ++i) {
    double lo = 1.0, hi = 0.0;
    for (int j = i - w; j <= i; ++j) {
      lo = std::min(lo, ps[j]);
      hi = std::max(hi, ps[j]);
    }
    if (hi - lo < threshold) return ts[i];
  }
  return std::numeric_limits<double>::infinity();
}

double fit_scaling_exponent(const std::vector<double>& xs,
                            const std::vector<double>& ys, double x_min,
                            double x_max) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit_scaling_exponent: size mismatch");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < x_min || xs[i] > x_max) continue;
    if (!(ys[i] > 0.0) || !(xs[i] > 0.0)) {
      throw std::invalid_argument("fit_scaling_exponent: needs positive data");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("fit_scaling_exponent: < 2 points in window");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// figure datasets
// ---------------------------------------------------------------------------

namespace {

// Numeric classical FI of the method-1 effective evolution at the given
// times, via simulated probabilities and detuning-scaled differences.
std::vector<double> method1_effective_fi(double amp, double delta,
                                         const std::vector<double>& ts,
                                         int threads) {
  std::vector<double> fi(ts.size());
  parallel_for(static_cast<int>(ts.size()), threads, [&](int i) {
    const double t = ts[i];
    const double h = 1e-4 / (amp * t * t);
    const auto p_of = [&](double d) {
      // the effective Hamiltonian commutes with itself; the accumulated
      // sigma_y angle is exact
      const double half = amp * (1.0 - std::cos(2.0 * d * t)) / (2.0 * d);
      const double s = std::sin(half);
      return s * s;
    };
    fi[i] = classical_fi(p_of, delta, h).value;
  });
  return fi;
}

std::vector<CurveDataset> fig1_panel(const ExperimentConfig& cfg, bool panel_b) {
  const double amp = cfg.amp;
  const double omega = cfg.omega * amp;
  const auto ts = grid_values(cfg.time_grid);
  CurveDataset ds;
  ds.panel = panel_b ? "fig1b" : "fig1a";
  ds.x_column = "t";
  ds.y_column = "fi";
  ds.metadata["amp"] = std::to_string(amp);
  ds.metadata["omega"] = std::to_string(omega);
  ds.metadata["time_unit"] = "1/amp";
  ds.metadata["fi_unit"] = "1/amp^2";

  for (double t : ts) {
    ds.rows.push_back(
        {t, "optimal_bound",
         closed_form_fi(Formula::optimal_fi_h1, {.amp = amp, .t = t}).value});
  }

  if (!panel_b) {
    for (double rel : cfg.deltas_rel) {
      const double d = rel * omega;
      const std::string name = format_series("method1_eq13_delta", rel);
      for (double t : ts) {
        ds.rows.push_back(
            {t, name,
             closed_form_fi(Formula::method1_fi, {.amp = amp, .delta = d, .t = t})
                 .value});
      }
      if (cfg.numeric_overlay) {
        const auto fi = method1_effective_fi(amp, d, ts, cfg.threads);
        const std::string num = format_series("method1_numeric_delta", rel);
        for (std::size_t i = 0; i < ts.size(); ++i) {
          ds.rows.push_back({ts[i], num, fi[i]});
        }
      }
      ds.metadata["formula"] = formula_name(Formula::method1_fi);
    }
  } else {
    const double d = cfg.deltas_rel.front() * omega;
    for (double t : ts) {
      ds.rows.push_back(
          {t, "method1_eq13",
           closed_form_fi(Formula::method1_fi, {.amp = amp, .delta = d, .t = t})
               .value});
      ds.rows.push_back(
          {t, "method2_ideal",
           closed_form_fi(Formula::method2_fi, {.amp = amp, .t = t, .k = 0})
              .value});
    }
    if (cfg.numeric_overlay) {
      // method-2 numeric FI at slot boundaries nearest the grid times
      const double dt = kPi / (2.0 * amp);
      const int n_slots = static_cast<int>(std::ceil(ts.back() / dt));
      const auto fi = method2_fi_trace(amp, d, dt, n_slots);
      double last_x = 0.0;
      for (double t : ts) {
        int j = std::max(1, static_cast<int>(std::round(t / dt)));
        if (j > n_slots) j = n_slots;
        const double x = j * dt;
        if (x <= last_x) continue;
        last_x = x;
        ds.rows.push_back({x, "method2_numeric", fi[j - 1]});
      }
    }
    ds.metadata["delta"] = std::to_string(d);
  }
  validate(ds);
  return {ds};
}

}  // namespace

std::vector<CurveDataset> run_fig1(const ExperimentConfig& cfg) {
  if (cfg.scenario == "fig1a") return fig1_panel(cfg, false);
  if (cfg.scenario == "fig1b") return fig1_panel(cfg, true);
  throw std::invalid_argument("run_fig1: scenario must be fig1a or fig1b");
}

std::vector<CurveDataset> run_fig3(const ExperimentConfig& cfg) {
  const double amp = cfg.amp;
  const double d = cfg.delta_frame * amp;
  const double horizon = cfg.n_slots * kPi / (2.0 * amp);

  CurveDataset top;
  top.panel = "fig3_top";
  top.x_column = "t";
  top.y_column = "probability";
  top.metadata["delta"] = std::to_string(d);
  for (double f : cfg.dt_factors_top) {
    const double dt = kPi / (f * amp);
    const int n = static_cast<int>(horizon / dt);
    const auto ps = method2_probability_trace(amp, d, dt, n);
    const std::string name = format_series("dt_pi_over", f);
    for (int j = 0; j < n; ++j) top.rows.push_back({(j + 1) * dt, name, ps[j]});
  }
  validate(top);

  CurveDataset bot;
  bot.panel = "fig3_bottom";
  bot.x_column = "t";
  bot.y_column = "fi";
  bot.metadata["delta"] = std::to_string(d);
  for (double f : cfg.dt_factors_bottom) {
    const double dt = kPi / (f * amp);
    const int n = static_cast<int>(horizon / dt);
    const auto fi = method2_fi_trace(amp, d, dt, n);
    const std::string name = format_series("dt_pi_over", f);
    for (int j = 0; j < n; ++j) bot.rows.push_back({(j + 1) * dt, name, fi[j]});
  }
  {
    // no control: plain rotating-frame evolution, same sampling
    const double dt = kPi / (2.0 * amp);
    const int n = static_cast<int>(horizon / dt);
    std::vector<double> fi(n);
    const double h = 1e-4 / (amp * horizon);
    const QubitState in = x_down();
    const QubitState out = x_up();
    const auto p_at = [&](double dv, int j) {
      return transition_probability(
          {analytic_slot_unitary(dv, amp, 0.0, (j + 1) * dt)}, in, out);
    };
    for (int j = 0; j < n; ++j) {
      const auto p_of = [&](double dv) { return p_at(dv, j); };
      fi[j] = classical_fi(p_of, d, h).value;
    }
    for (int j = 0; j < n; ++j) {
      bot.rows.push_back({(j + 1) * dt, "no_control", fi[j]});
    }
  }
  validate(bot);
  return {top, bot};
}

std::vector<CurveDataset> run_fig4(const ExperimentConfig& cfg) {
  const double amp = cfg.amp;

  CurveDataset top;
  top.panel = "fig4_top";
  top.x_column = "T";
  top.y_column = "fi";
  top.metadata["tau"] = std::to_string(cfg.tau);
  top.metadata["delta"] = std::to_string(cfg.delta_small * amp);
  const double ds = cfg.delta_small * amp;
  for (double T : grid_values(cfg.total_grid)) {
    if (T < cfg.tau) continue;
    top.rows.push_back(
        {T, "small_delta_formula",
         closed_form_fi(Formula::h2_small_delta_total,
                        {.amp = amp, .delta = ds, .tau = cfg.tau, .total = T})
             .value});
    top.rows.push_back(
        {T, "exact_window_sum",
         closed_form_fi(Formula::h2_exact_window_sum,
                        {.amp = amp, .delta = ds, .tau = cfg.tau, .total = T})
             .value});
    top.rows.push_back(
        {T, "envelope_16_3",
         closed_form_fi(Formula::seg_controlled_total,
                        {.amp = amp, .tau = cfg.tau, .total = T})
             .value});
  }
  validate(top);

  CurveDataset bot;
  bot.panel = "fig4_bottom";
  bot.x_column = "delta";
  bot.y_column = "fi";
  bot.metadata["T"] = std::to_string(cfg.total);
  for (double tau : cfg.taus) {
    const std::string ex = format_series("exact_tau", tau);
    const std::string ap = format_series("approx_tau", tau);
    for (double d : grid_values(cfg.delta_grid)) {
      const double dd = d * amp;
      bot.rows.push_back(
          {d, ex,
           closed_form_fi(Formula::h2_exact_window_sum,
                          {.amp = amp, .delta = dd, .tau = tau, .total = cfg.total})
               .value});
      bot.rows.push_back(
          {d, ap,
           closed_form_fi(Formula::h2_large_delta_total,
                          {.amp = amp, .delta = dd, .tau = tau, .total = cfg.total})
               .value});
    }
  }
  validate(bot);
  return {top, bot};
}

std::vector<CurveDataset> run_scenario(const ExperimentConfig& cfg) {
  if (cfg.scenario == "fig1a" || cfg.scenario == "fig1b") return run_fig1(cfg);
  if (cfg.scenario == "fig3") return run_fig3(cfg);
  if (cfg.scenario == "fig4") return run_fig4(cfg);
  throw std::invalid_argument("run_scenario: unknown scenario " + cfg.scenario);
}

// ---------------------------------------------------------------------------
// two-time optimization
// ---------------------------------------------------------------------------

TwoTimeResult optimize_two_times(double amp, double total, bool phi_known,
                                 int method, int grid, double phi) {
  if (!(total > 0.0)) throw std::invalid_argument("optimize_two_times: T > 0");
  if (grid < 2) throw std::invalid_argument("optimize_two_times: degenerate grid");
  if (method != 1 && method != 2) {
    throw std::invalid_argument("optimize_two_times: method must be 1 or 2");
  }

  // Per-measurement score vectors d(theta)/d(delta, phi) in the ideal small-
  // detuning models; both methods share the rank-1 structure v = c (t^2, t).
  const double dt0 = kPi / (2.0 * amp);
  const auto v_of = [&](double t) {
    if (method == 2) return std::pair<double, double>{2.0 * t * t / dt0, 2.0 * t / dt0};
    const double c = 2.0 * amp * std::cos(phi);
    return std::pair<double, double>{c * t * t, c * t};
  };

  TwoTimeResult best;
  best.singular = true;
  const double unit = amp * amp * std::pow(total, 4);

  if (phi_known) {
    // no nuisance parameter: a single measurement at T is optimal
    const auto v = v_of(total);
    best.t1 = total;
    best.t2 = total;
    best.singular = false;
    best.coefficient = v.first * v.first / unit;
    return best;
  }

  for (int i = 1; i <= grid; ++i) {
    const double t1 = total * i / grid;
    const auto v1 = v_of(t1);
    for (int j = 1; j <= grid; ++j) {
      const double t2 = total * j / grid;
      const auto v2 = v_of(t2);
      // mean information matrix of the two measurements
      const FIMatrix2 m{0.5 * (v1.first * v1.first + v2.first * v2.first),
                        0.5 * (v1.first * v1.second + v2.first * v2.second),
                        0.5 * (v1.second * v1.second + v2.second * v2.second)};
      const CrbResult c = crb_variance(m, FiParam::delta);
      if (c.singular) continue;
      const double score = 1.0 / c.variance;
      if (best.singular || score > best.coefficient * unit) {
        best.singular = false;
        best.coefficient = score / unit;
        best.t1 = std::max(t1, t2);
        best.t2 = std::min(t1, t2);
      }
    }
  }
  return best;
}

}  // namespace qfi
