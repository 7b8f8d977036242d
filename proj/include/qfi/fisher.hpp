#pragma once

#include <functional>
#include <map>
#include <string>

#include "qfi/dynamics.hpp"
#include "qfi/su2.hpp"

namespace qfi {

enum class FiSource { closed_form, numeric_qfi, numeric_classical, upper_bound };

struct FisherResult {
  double value = 0.0;
  FiSource source = FiSource::closed_form;
  bool limit_case = false;  // set when the P->0/1 fallback was taken
  std::map<std::string, double> params;
};

// i U^dag dU/dp, Hermitized, via central differences with one Richardson
// refinement. h defaults to 1e-6 * max(|param|, 1); pass an explicit h
// whenever the unitary's phase response is steep.
struct GeneratorResult {
  CMat2 g;
  double hermiticity_residual = 0.0;
};

GeneratorResult qfi_generator(const std::function<Unitary2(double)>& u_of_param,
                              double param, double h = 0.0);

FisherResult qfi_max(const CMat2& generator);
FisherResult qfi_state(const CMat2& generator, const QubitState& psi0);

// Two-outcome classical FI (dP/dg)^2 (1/P + 1/(1-P)); within 1e-9 of P = 0
// or 1 it returns the 2|P''| limit and flags the result.
FisherResult classical_fi(const std::function<double(double)>& p_of_param,
                          double param, double h = 0.0);

// 2x2 symmetric FI matrix over (delta, phi): [[a, b], [b, c]].
struct FIMatrix2 {
  double a = 0.0, b = 0.0, c = 0.0;
  double smallest_eigenvalue() const;
  double largest_eigenvalue() const;
};

FIMatrix2 operator+(const FIMatrix2& m1, const FIMatrix2& m2);
FIMatrix2 operator*(double s, const FIMatrix2& m);

FIMatrix2 fi_matrix_2(const std::function<double(double, double)>& p_of_params,
                      double delta, double phi, double h = 0.0);

enum class FiParam { delta, phi };

// (M^-1)_{which,which}; singularity (condition number >= 1e12) is a value,
// not an exception.
struct CrbResult {
  double variance = 0.0;
  bool singular = false;
};

CrbResult crb_variance(const FIMatrix2& m, FiParam which);

struct SegmentationPlan {
  double tau = 0.0;  // measurement window
  double total = 0.0;  // total time T
  int windows() const;
};

void validate(const SegmentationPlan& plan);

// Sum of per-window FI over windows starting at t = 0, tau, 2*tau, ...
FisherResult segmented_total_fi(const std::function<double(double)>& per_window_fi,
                                const SegmentationPlan& plan);

// ---------------------------------------------------------------------------
// Registry of closed-form FI expressions. Params carry whatever each formula
// reads; the regime notes live with the formulas below.
// ---------------------------------------------------------------------------
enum class Formula {
  method1_fi,                  // (amp^2/d^4)(cos 2dt - 1 + 2dt sin 2dt)^2
  method1_large_t_fi,          // 4 (amp/d)^2 sin^2(2dT) T^2
  method2_fi,                  // 4 amp^2 t^4 (2/(pi(2k+1)))^2
  optimal_fi_h1,               // 4 amp^2 t^4
  h2_train_fi,                 // (4/pi)^2 amp^2 t^4
  seg_no_control_per_window,   // 4 amp^2 (2t+tau)^2 sin^2(s tau)/s^2, s^2=w^2+amp^2
  seg_no_control_total,        // 16 amp^2/s^2 sin^2(s tau) T^3/(3 tau)
  seg_controlled_per_window,   // 4 amp^2 ((t+tau)^2 - t^2)^2
  seg_controlled_total,        // (16/3) amp^2 tau T^3
  seg_sum_2t_plus_tau_exact,   // 4 sum_t (2t+tau)^2, the exact finite sum
  seg_inline_16t3_over_tau,    // 16 T^3/tau   (inline asymptote; keeps the /3
  seg_16t3_over_3tau,          // 16 T^3/(3 tau)  discrepancy explicit)
  h2_small_delta_total,        // 16 amp^2 tau (T^3/6 + T cos(4dT)/(16 d^2) + ...)
  h2_large_delta_total,        // 8 (amp/d)^2 (T^3/(3 tau)) sin^2(d tau)
  h2_exact_window_sum,         // (amp^2/d^4) sum over windows of the full bracket
};

struct FormulaParams {
  double amp = 0.0;    // Omega
  double delta = 0.0;  // detuning
  double omega = 0.0;  // signal frequency (no-control formulas)
  double t = 0.0;      // single-measurement time
  double tau = 0.0;    // window length
  double total = 0.0;  // total time T
  int k = 0;           // pulse-spacing index
};

FisherResult closed_form_fi(Formula id, const FormulaParams& p);
std::string formula_name(Formula id);

// [ integral of the eigenvalue spread of dH/domega ]^2 (the Pang bound).
// Analytic for H1/EffectiveLinear*/ZDrift; piecewise-exact for H2.
FisherResult qfi_upper_bound(const HamiltonianSpec& spec, double total);

// Maximizer of sin^2(x)/x: x* solves tan x = 2x in (0, pi/2), found by
// bisection on 2x cos x - sin x.
struct OptimalTau {
  double x_star = 0.0;
  double tau_star = 0.0;
  double coefficient = 0.0;  // of T^3 in the optimal total FI
};

double optimal_sin_sq_over_x();  // x* itself
OptimalTau optimal_tau_no_control(double amp, double omega);
OptimalTau optimal_tau_h2(double delta);

}  // namespace qfi
