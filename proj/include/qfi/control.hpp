#pragma once

#include <functional>
#include <vector>

#include "qfi/su2.hpp"

namespace qfi {

// Instantaneous ideal rotation: exp(-i (angle/2) n.sigma), i.e. `angle` is
// the Bloch rotation angle (pi for a pi-pulse).
struct PulseEvent {
  double time = 0.0;
  Axis3 axis{};
  double angle = 0.0;
};

enum class ControlLabel { None, Pang, Method1, Method2, H2PulseTrain };

// Frame drift plus an ordered train of instantaneous pulses. Together with a
// Hamiltonian this fully determines the controlled evolution.
struct ControlSequence {
  double frame_drift = 0.0;  // omega', applied as a sigma_z rotating frame
  std::vector<PulseEvent> pulses;
  ControlLabel label = ControlLabel::None;
};

void validate(const ControlSequence& seq);  // strictly increasing pulse times

Unitary2 pulse_unitary(const PulseEvent& p);

// |<psi_out| U |psi_0>|^2
double transition_probability(const Unitary2& u, const QubitState& psi0,
                              const QubitState& psi_out);
double survival_probability(const Unitary2& u, const QubitState& psi0,
                            const QubitState& psi_out);

using HamiltonianFn = std::function<CMat2(double)>;

// ---------------------------------------------------------------------------
// Sequence builders. All work in the rotating frame at frame_drift, where the
// signal Hamiltonian is H1/H2 with its frequency replaced by the detuning
// delta = omega - omega'; callers pass delta explicitly when simulating.
// ---------------------------------------------------------------------------

// Signal-cancelling drive: the residual frame Hamiltonian is
// amp*[(cos(2 delta t) - 1) sigma_x + sin(2 delta t) sigma_y], which for
// |delta| t << 1 reduces to 2*amp*delta*t sigma_y.
struct PangControl {
  ControlSequence sequence;  // no pulses, frame at omega'
  double amp = 0.0;
  double drift = 0.0;
  double duration = 0.0;
};

PangControl build_pang_control(double amp, double drift, double duration);

// Residual frame Hamiltonian after exact cancellation.
HamiltonianFn pang_frame_hamiltonian(double amp, double delta);
// Literal additive drive in the lab: H1(omega) - H1(omega') + omega' sigma_z.
HamiltonianFn pang_lab_hamiltonian(double amp, double omega, double drift);
// Relative Ramsey phase 2*delta*amp*t^2; transition probability sin^2(phase/2).
double pang_predicted_phase(double amp, double delta, double t);
double pang_predicted_transition(double amp, double delta, double t);

// Y pi-pulses every dt in the rotating frame; cancels the sigma_x quadrature
// leaving amp*sin(2 delta t) sigma_y.
struct Method1Control {
  ControlSequence sequence;
  double amp = 0.0;
  double dt = 0.0;
  double duration = 0.0;
};

// Rejects amp*dt > 0.3, where the averaging premise has broken down.
Method1Control build_method1(double amp, double drift, double dt,
                             double duration);

// Exact effective Hamiltonian amp*sin(2 delta t + phase) sigma_y.
HamiltonianFn method1_effective_hamiltonian(double amp, double delta,
                                            double phase = 0.0);

// X pi-pulses every dt = (2k+1) pi / (2 amp_est).
struct Method2Control {
  ControlSequence sequence;
  double amp_est = 0.0;
  double dt = 0.0;
  int k = 0;
  double duration = 0.0;
};

Method2Control build_method2(double amp_est, int k, double duration);

// sin^2(delta t^2 / dt), the ideal quadratic-phase law at t = N dt.
double method2_predicted_transition(double delta, double t, double dt);
// With an unknown signal phase: sin^2(delta t^2/dt + t phi/dt).
double method2_predicted_transition(double delta, double phi, double t,
                                    double dt);

// X pi-pulses at t = (pi / (4 omega')) (2N+1); rectifies H2 into
// (2/pi) amp sin(2 delta t) sigma_z.
struct H2PulseTrainControl {
  ControlSequence sequence;
  double drift = 0.0;
  double duration = 0.0;
};

H2PulseTrainControl build_h2_pulse_train(double drift, double duration);

// Accumulated sigma_z phase of the rectified Hamiltonian,
// (2 amp / (pi delta)) (1 - cos(2 delta t)); transition sin^2(phase/2).
double h2_train_predicted_phase(double amp, double delta, double t);
double h2_train_predicted_transition(double amp, double delta, double t);

}  // namespace qfi
