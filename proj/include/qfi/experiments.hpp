#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfi/control.hpp"
#include "qfi/dynamics.hpp"
#include "qfi/fisher.hpp"

namespace qfi {

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log_scale = false;
};

std::vector<double> grid_values(const GridSpec& g);

// All frequencies in units of amp (Omega), all times in 1/amp; amp itself is
// the unit anchor and stays 1 unless a config overrides it.
struct ExperimentConfig {
  std::string scenario;
  double amp = 1.0;
  double omega = 0.02;                    // fig1: amp = 50 omega
  std::vector<double> deltas_rel{0.04, 0.08};  // fig1: delta / omega
  GridSpec time_grid{50.0, 4000.0, 120, true};
  bool numeric_overlay = true;

  double delta_frame = 1e-3;              // fig3 detuning
  std::vector<double> dt_factors_top{2.0, 1.96, 1.9, 2.06};
  std::vector<double> dt_factors_bottom{2.0, 1.96, 1.8};
  int n_slots = 140;                      // fig3 trace length in pi/(2 amp) units

  double tau = 1.0;                       // fig4 top window
  double delta_small = 0.05;              // fig4 top detuning
  GridSpec total_grid{2.0, 400.0, 160, true};   // fig4 top T range
  std::vector<double> taus{1.0, 0.8, 0.5};      // fig4 bottom
  GridSpec delta_grid{0.2, 4.0, 240, false};    // fig4 bottom delta range
  double total = 400.0;                   // fig4 bottom T

  int steps = 0;    // propagator steps per segment (0 = auto)
  int threads = 1;
  int two_time_grid = 100;
};

struct CurveRow {
  double x = 0.0;
  std::string series;
  double y = 0.0;
};

struct CurveDataset {
  std::string panel;       // e.g. "fig3_top"
  std::string x_column;    // e.g. "t"
  std::string y_column;    // e.g. "fi"
  std::vector<CurveRow> rows;
  std::map<std::string, std::string> metadata;
};

// x strictly increasing within each series
void validate(const CurveDataset& ds);

std::vector<CurveDataset> run_fig1(const ExperimentConfig& cfg);  // fig1a|fig1b
std::vector<CurveDataset> run_fig3(const ExperimentConfig& cfg);
std::vector<CurveDataset> run_fig4(const ExperimentConfig& cfg);
std::vector<CurveDataset> run_scenario(const ExperimentConfig& cfg);

// Least-squares slope of log y against log x over x in [x_min, x_max].
double fit_scaling_exponent(const std::vector<double>& xs,
                            const std::vector<double>& ys, double x_min,
                            double x_max);

// Ideal quadratic-phase transition trace P(N dt), N = 1..n, built from the
// exact slot unitaries of the rotating-frame Hamiltonian.
std::vector<double> method2_probability_trace(double amp, double delta,
                                              double dt, int n_slots);

// Numeric classical FI at the slot boundaries, by central differences across
// re-simulated traces (one Richardson refinement).
std::vector<double> method2_fi_trace(double amp, double delta, double dt,
                                     int n_slots);

// First time the windowed peak-to-peak oscillation amplitude stays below
// `threshold`; +inf when it never does within the trace.
double amplitude_lifetime(const std::vector<double>& ts,
                          const std::vector<double>& ps, double threshold);

struct TwoTimeResult {
  double t1 = 0.0;
  double t2 = 0.0;
  // 1/(I^-1)_dd of the per-measurement (mean) information matrix, in units
  // of amp^2 T^4. Zero when the matrix is singular over the whole grid.
  double coefficient = 0.0;
  bool singular = false;
};

// Grid search over (t1, t2) in (0, T]^2 for the pair of measurement times
// maximizing the retrievable information about the detuning when the signal
// phase is an unknown nuisance parameter. With phi_known the optimum is the
// single time T.
TwoTimeResult optimize_two_times(double amp, double total, bool phi_known,
                                 int method, int grid, double phi = 0.0);

struct ClaimCheck {
  std::string id;
  double paper_value = 0.0;
  double computed = 0.0;
  double deviation = 0.0;  // relative where paper_value != 0, absolute else
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<ClaimCheck> run_claim_checks();

}  // namespace qfi
