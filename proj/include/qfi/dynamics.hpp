#pragma once

#include <vector>

#include "qfi/control.hpp"
#include "qfi/su2.hpp"

namespace qfi {

enum class HamiltonianKind {
  H1,                // amp (sigma_x cos(2 w t + phase) + sigma_y sin(2 w t + phase))
  H2,                // amp sigma_z sin(2 w t + phase)
  EffectiveLinearY,  // 2 amp w t sigma_y
  EffectiveLinearZ,  // (4/pi) amp w t sigma_z
  ZDrift,            // drift sigma_z
};

struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::ZDrift;
  double amp = 0.0;    // Omega, rad/s
  double omega = 0.0;  // signal (or detuning) frequency, rad/s
  double phase = 0.0;  // initial signal phase, rad
  double drift = 0.0;  // omega', rad/s (ZDrift only)
};

void validate(const HamiltonianSpec& spec);
CMat2 hamiltonian_at(const HamiltonianSpec& spec, double t);
HamiltonianFn hamiltonian_fn(const HamiltonianSpec& spec);

// Upper bound on ||H(t)|| over [0, horizon], used by the auto step policy.
double hamiltonian_norm_bound(const HamiltonianSpec& spec, double horizon);

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  int n_steps = 1;
};

void validate(const TimeGrid& grid);

// Brute-force time-ordered product of exp(-i H(t_mid) dt) steps (midpoint
// rule, second order in the step). This is the oracle every closed form in
// the library is checked against. Refuses steps with ||H||*dt >= 0.1.
Unitary2 propagate_piecewise(const HamiltonianFn& h, const TimeGrid& grid);
Unitary2 propagate_piecewise(const HamiltonianSpec& spec, const TimeGrid& grid);

// Unitary for the slot (t, t+dt) of the rotating-frame Hamiltonian
// amp (sigma_x cos(2 delta t) + sigma_y sin(2 delta t)):
//   exp(-i delta sigma_z dt) exp(-i(-delta sigma_z
//       + amp cos(2 delta t) sigma_x + amp sin(2 delta t) sigma_y) dt)
// With t = 0 this is the plain (0, t) evolution.
Unitary2 analytic_slot_unitary(double delta, double amp, double t, double dt);

// U_I = exp(i H0 t) U_lab with H0 = drift sigma_z.
Unitary2 to_rotating_frame(const Unitary2& u_lab, double drift, double t);

// Interleaved product of segment propagators and instantaneous pulses, in
// time order over [0, duration]. Hamiltonian times are absolute throughout;
// segments never reset the signal phase. n_steps_per_segment <= 0 selects
// the default policy: step = min(pi / (50 max||H||), segment/20).
Unitary2 evolve_with_pulses(const HamiltonianSpec& spec,
                            const ControlSequence& seq, double duration,
                            int n_steps_per_segment = 0);
Unitary2 evolve_with_pulses(const HamiltonianFn& h, double norm_bound,
                            const ControlSequence& seq, double duration,
                            int n_steps_per_segment = 0);

// Same evolution, recording U(0, t) at each requested sample time (sorted,
// within [0, duration]). A sample time landing on a pulse time records the
// pre-pulse unitary.
std::vector<Unitary2> evolve_recording(const HamiltonianSpec& spec,
                                       const ControlSequence& seq,
                                       const std::vector<double>& sample_times,
                                       int n_steps_per_segment = 0);
std::vector<Unitary2> evolve_recording(const HamiltonianFn& h,
                                       double norm_bound,
                                       const ControlSequence& seq,
                                       const std::vector<double>& sample_times,
                                       int n_steps_per_segment = 0);

}  // namespace qfi
