#include "qfi/control.hpp"

#include <cmath>
#include <numbers>

namespace qfi {

namespace {
constexpr double kPi = std::numbers::pi;

double sin_sq(double x) {
  const double s = std::sin(x);
  return s * s;
}
}  // namespace

void validate(const ControlSequence& seq) {
  if (!std::isfinite(seq.frame_drift)) {
    throw std::invalid_argument("ControlSequence: frame_drift must be finite");
  }
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
    const auto& p = seq.pulses[i];
    if (p.time < 0.0 || !std::isfinite(p.time) || !std::isfinite(p.angle)) {
      throw std::invalid_argument("ControlSequence: bad pulse time or angle");
    }
    if (i > 0 && !(p.time > seq.pulses[i - 1].time)) {
      throw std::invalid_argument(
          "ControlSequence: pulse times must be strictly increasing");
    }
  }
}

Unitary2 pulse_unitary(const PulseEvent& p) {
  return pauli_exp(p.axis, 0.5 * p.angle);
}

double transition_probability(const Unitary2& u, const QubitState& psi0,
                              const QubitState& psi_out) {
  const cplx a = inner(psi_out, apply(u, psi0));
  return std::norm(a);
}

double survival_probability(const Unitary2& u, const QubitState& psi0,
                            const QubitState& psi_out) {
  return 1.0 - transition_probability(u, psi0, psi_out);
}

PangControl build_pang_control(double amp, double drift, double duration) {
  if (!(amp > 0.0)) throw std::invalid_argument("build_pang_control: amp > 0");
  PangControl c;
  c.sequence.frame_drift = drift;
  c.sequence.label = ControlLabel::Pang;
  c.amp = amp;
  c.drift = drift;
  c.duration = duration;
  return c;
}

HamiltonianFn pang_frame_hamiltonian(double amp, double delta) {
  return [amp, delta](double t) {
    const double th = 2.0 * delta * t;
    return amp * ((std::cos(th) - 1.0) * sigma_x() + std::sin(th) * sigma_y());
  };
}

HamiltonianFn pang_lab_hamiltonian(double amp, double omega, double drift) {
  return [amp, omega, drift](double t) {
    return amp * ((std::cos(2.0 * omega * t) - std::cos(2.0 * drift * t)) * sigma_x() +
                  (std::sin(2.0 * omega * t) - std::sin(2.0 * drift * t)) * sigma_y()) +
           drift * sigma_z();
  };
}

double pang_predicted_phase(double amp, double delta, double t) {
  return 2.0 * delta * amp * t * t;
}

double pang_predicted_transition(double amp, double delta, double t) {
  return sin_sq(0.5 * pang_predicted_phase(amp, delta, t));
}

Method1Control build_method1(double amp, double drift, double dt,
                             double duration) {
  if (!(dt > 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("build_method1: dt and duration must be > 0");
  }
  if (amp * dt > 0.3) {
    throw std::invalid_argument(
        "build_method1: amp*dt > 0.3; the sigma_x cancellation requires "
        "amp*dt << 1, shorten the pulse spacing");
  }
  Method1Control c;
  c.sequence.frame_drift = drift;
  c.sequence.label = ControlLabel::Method1;
  c.amp = amp;
  c.dt = dt;
  c.duration = duration;
  const int n = static_cast<int>(std::floor(duration / dt));
  c.sequence.pulses.reserve(n);
  for (int j = 1; j <= n; ++j) {
    c.sequence.pulses.push_back({j * dt, {0.0, 1.0, 0.0}, kPi});
  }
  return c;
}

HamiltonianFn method1_effective_hamiltonian(double amp, double delta,
                                            double phase) {
  return [amp, delta, phase](double t) {
    return (amp * std::sin(2.0 * delta * t + phase)) * sigma_y();
  };
}

Method2Control build_method2(double amp_est, int k, double duration) {
  if (!(amp_est > 0.0)) throw std::invalid_argument("build_method2: amp_est > 0");
  if (k < 0) throw std::invalid_argument("build_method2: k >= 0");
  if (!(duration > 0.0)) throw std::invalid_argument("build_method2: duration > 0");
  Method2Control c;
  c.sequence.label = ControlLabel::Method2;
  c.amp_est = amp_est;
  c.k = k;
  c.dt = (2 * k + 1) * kPi / (2.0 * amp_est);
  c.duration = duration;
  const int n = static_cast<int>(std::floor(duration / c.dt));
  c.sequence.pulses.reserve(n);
  for (int j = 1; j <= n; ++j) {
    c.sequence.pulses.push_back({j * c.dt, {1.0, 0.0, 0.0}, kPi});
  }
  return c;
}

double method2_predicted_transition(double delta, double t, double dt) {
  return sin_sq(delta * t * t / dt);
}

double method2_predicted_transition(double delta, double phi, double t,
                                    double dt) {
  return sin_sq(delta * t * t / dt + t * phi / dt);
}

H2PulseTrainControl build_h2_pulse_train(double drift, double duration) {
  if (!(drift > 0.0)) throw std::invalid_argument("build_h2_pulse_train: drift > 0");
  if (!(duration > 0.0)) {
    throw std::invalid_argument("build_h2_pulse_train: duration > 0");
  }
  H2PulseTrainControl c;
  c.sequence.frame_drift = drift;
  c.sequence.label = ControlLabel::H2PulseTrain;
  c.drift = drift;
  c.duration = duration;
  const double base = kPi / (4.0 * drift);
  for (int n = 0;; ++n) {
    const double t = base * (2 * n + 1);
    if (t > duration) break;
    c.sequence.pulses.push_back({t, {1.0, 0.0, 0.0}, kPi});
  }
  return c;
}

double h2_train_predicted_phase(double amp, double delta, double t) {
  if (delta == 0.0) return 0.0;
  return 2.0 * amp / (kPi * delta) * (1.0 - std::cos(2.0 * delta * t));
}

double h2_train_predicted_transition(double amp, double delta, double t) {
  return sin_sq(0.5 * h2_train_predicted_phase(amp, delta, t));
}

}  // namespace qfi
