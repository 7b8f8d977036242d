#include "qfi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qfi {

namespace {

constexpr cplx I{0.0, 1.0};

// exp(-i H dt) for Hermitian H = a0*1 + a.sigma via the closed form; exact to
// machine precision, unlike an eigensolver round-trip.
Unitary2 step_exp(const CMat2& h, double dt) {
  const double a0 = 0.5 * std::real(h.m00 + h.m11);
  const double ax = 0.5 * std::real(h.m01 + h.m10);
  const double ay = 0.5 * std::imag(h.m10 - h.m01);
  const double az = 0.5 * std::real(h.m00 - h.m11);
  const double r = std::sqrt(ax * ax + ay * ay + az * az);
  const cplx ph = std::exp(-I * (a0 * dt));
  if (r == 0.0) return {ph * identity2()};
  const double c = std::cos(r * dt);
  const double s = std::sin(r * dt);
  const CMat2 ns = axis_dot_sigma({ax / r, ay / r, az / r});
  return {ph * (c * identity2() - (I * s) * ns)};
}

double step_norm(const CMat2& h) {
  const double a0 = 0.5 * std::real(h.m00 + h.m11);
  const double ax = 0.5 * std::real(h.m01 + h.m10);
  const double ay = 0.5 * std::imag(h.m10 - h.m01);
  const double az = 0.5 * std::real(h.m00 - h.m11);
  return std::abs(a0) + std::sqrt(ax * ax + ay * ay + az * az);
}

int default_segment_steps(double seg_len, double norm_bound) {
  const double by_norm = std::numbers::pi / (50.0 * std::max(norm_bound, 1e-12));
  const double step = std::min(by_norm, seg_len / 20.0);
  return std::max(1, static_cast<int>(std::ceil(seg_len / step)));
}

}  // namespace

void validate(const HamiltonianSpec& spec) {
  if (!(spec.amp >= 0.0) || !std::isfinite(spec.amp)) {
    throw std::invalid_argument("HamiltonianSpec: amp must be finite and >= 0");
  }
  if (!std::isfinite(spec.omega) || !std::isfinite(spec.phase) ||
      !std::isfinite(spec.drift)) {
    throw std::invalid_argument("HamiltonianSpec: parameters must be finite");
  }
}

CMat2 hamiltonian_at(const HamiltonianSpec& spec, double t) {
  validate(spec);
  switch (spec.kind) {
    case HamiltonianKind::H1: {
      const double th = 2.0 * spec.omega * t + spec.phase;
      return spec.amp * (std::cos(th) * sigma_x() + std::sin(th) * sigma_y());
    }
    case HamiltonianKind::H2: {
      const double th = 2.0 * spec.omega * t + spec.phase;
      return (spec.amp * std::sin(th)) * sigma_z();
    }
    case HamiltonianKind::EffectiveLinearY:
      return (2.0 * spec.amp * spec.omega * t) * sigma_y();
    case HamiltonianKind::EffectiveLinearZ:
      return (4.0 / std::numbers::pi * spec.amp * spec.omega * t) * sigma_z();
    case HamiltonianKind::ZDrift:
      return spec.drift * sigma_z();
  }
  throw std::invalid_argument("hamiltonian_at: unknown kind");
}

HamiltonianFn hamiltonian_fn(const HamiltonianSpec& spec) {
  validate(spec);
  return [spec](double t) { return hamiltonian_at(spec, t); };
}

double hamiltonian_norm_bound(const HamiltonianSpec& spec, double horizon) {
  switch (spec.kind) {
    case HamiltonianKind::H1:
    case HamiltonianKind::H2:
      return spec.amp;
    case HamiltonianKind::EffectiveLinearY:
      return 2.0 * spec.amp * std::abs(spec.omega) * std::abs(horizon);
    case HamiltonianKind::EffectiveLinearZ:
      return 4.0 / std::numbers::pi * spec.amp * std::abs(spec.omega) *
             std::abs(horizon);
    case HamiltonianKind::ZDrift:
      return std::abs(spec.drift);
  }
  throw std::invalid_argument("hamiltonian_norm_bound: unknown kind");
}

void validate(const TimeGrid& grid) {
  if (!(grid.t1 > grid.t0) || !std::isfinite(grid.t0) || !std::isfinite(grid.t1)) {
    throw std::invalid_argument("TimeGrid: need finite t1 > t0");
  }
  if (grid.n_steps < 1) throw std::invalid_argument("TimeGrid: n_steps >= 1");
}

Unitary2 propagate_piecewise(const HamiltonianFn& h, const TimeGrid& grid) {
  validate(grid);
  const double dt = (grid.t1 - grid.t0) / grid.n_steps;
  Unitary2 u{identity2()};
  for (int k = 0; k < grid.n_steps; ++k) {
    const double tm = grid.t0 + (k + 0.5) * dt;
    const CMat2 hk = h(tm);
    if (step_norm(hk) * dt >= 0.1) {
      throw std::invalid_argument(
          "propagate_piecewise: step too coarse (||H||*dt >= 0.1), refine the grid");
    }
    u = compose(step_exp(hk, dt), u);
  }
  return u;
}

Unitary2 propagate_piecewise(const HamiltonianSpec& spec, const TimeGrid& grid) {
  return propagate_piecewise(hamiltonian_fn(spec), grid);
}

Unitary2 analytic_slot_unitary(double delta, double amp, double t, double dt) {
  if (!std::isfinite(delta) || !std::isfinite(t) || !std::isfinite(dt)) {
    throw std::invalid_argument("analytic_slot_unitary: non-finite input");
  }
  if (amp < 0.0) throw std::invalid_argument("analytic_slot_unitary: amp >= 0");
  const double th = 2.0 * delta * t;
  const CMat2 gen = -delta * sigma_z() + (amp * std::cos(th)) * sigma_x() +
                    (amp * std::sin(th)) * sigma_y();
  return compose(step_exp(delta * sigma_z(), dt), step_exp(gen, dt));
}

Unitary2 to_rotating_frame(const Unitary2& u_lab, double drift, double t) {
  // exp(+i drift sigma_z t) = pauli_exp(z, -drift t)
  return compose(pauli_exp({0.0, 0.0, 1.0}, -drift * t), u_lab);
}

namespace {

// Shared implementation: walk segments between pulses, splitting at sample
// times; cb(t, U) fires at each sample time.
template <typename Callback>
Unitary2 evolve_impl(const HamiltonianFn& h, double norm_bound,
                     const ControlSequence& seq, double duration,
                     int n_steps_per_segment,
                     const std::vector<double>& sample_times, Callback&& cb) {
  validate(seq);
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("evolve_with_pulses: duration must be > 0");
  }
  for (const auto& p : seq.pulses) {
    if (p.time < 0.0 || p.time > duration) {
      throw std::invalid_argument("evolve_with_pulses: pulse time out of [0, T]");
    }
  }
  for (std::size_t i = 1; i < sample_times.size(); ++i) {
    if (sample_times[i] <= sample_times[i - 1]) {
      throw std::invalid_argument("evolve_with_pulses: sample times must increase");
    }
  }
  if (!sample_times.empty() &&
      (sample_times.front() < 0.0 || sample_times.back() > duration)) {
    throw std::invalid_argument("evolve_with_pulses: sample time out of [0, T]");
  }

  Unitary2 u{identity2()};
  double t = 0.0;
  std::size_t ip = 0;  // next pulse
  std::size_t is = 0;  // next sample

  const auto run_segment = [&](double t_end) {
    if (t_end <= t) return;
    int n = n_steps_per_segment;
    if (n <= 0) n = default_segment_steps(t_end - t, norm_bound);
    u = compose(propagate_piecewise(h, {t, t_end, n}), u);
    t = t_end;
  };

  while (is < sample_times.size() && sample_times[is] <= t) {
    cb(sample_times[is], u);
    ++is;
  }
  while (ip < seq.pulses.size() || is < sample_times.size()) {
    const double tp =
        ip < seq.pulses.size() ? seq.pulses[ip].time : duration + 1.0;
    const double ts =
        is < sample_times.size() ? sample_times[is] : duration + 1.0;
    if (ts <= tp) {
      run_segment(ts);
      cb(ts, u);
      ++is;
    } else {
      run_segment(tp);
      u = compose(pulse_unitary(seq.pulses[ip]), u);
      ++ip;
    }
  }
  run_segment(duration);
  return u;
}

}  // namespace

Unitary2 evolve_with_pulses(const HamiltonianFn& h, double norm_bound,
                            const ControlSequence& seq, double duration,
                            int n_steps_per_segment) {
  return evolve_impl(h, norm_bound, seq, duration, n_steps_per_segment, {},
                     [](double, const Unitary2&) {});
}

Unitary2 evolve_with_pulses(const HamiltonianSpec& spec,
                            const ControlSequence& seq, double duration,
                            int n_steps_per_segment) {
  return evolve_with_pulses(hamiltonian_fn(spec),
                            hamiltonian_norm_bound(spec, duration), seq,
                            duration, n_steps_per_segment);
}

std::vector<Unitary2> evolve_recording(const HamiltonianFn& h,
                                       double norm_bound,
                                       const ControlSequence& seq,
                                       const std::vector<double>& sample_times,
                                       int n_steps_per_segment) {
  std::vector<Unitary2> out;
  out.reserve(sample_times.size());
  double duration = sample_times.empty() ? 1.0 : sample_times.back();
  if (!seq.pulses.empty()) duration = std::max(duration, seq.pulses.back().time);
  evolve_impl(h, norm_bound, seq, duration, n_steps_per_segment, sample_times,
              [&out](double, const Unitary2& u) { out.push_back(u); });
  return out;
}

std::vector<Unitary2> evolve_recording(const HamiltonianSpec& spec,
                                       const ControlSequence& seq,
                                       const std::vector<double>& sample_times,
                                       int n_steps_per_segment) {
  double duration = sample_times.empty() ? 1.0 : sample_times.back();
  if (!seq.pulses.empty()) duration = std::max(duration, seq.pulses.back().time);
  return evolve_recording(hamiltonian_fn(spec),
                          hamiltonian_norm_bound(spec, duration), seq,
                          sample_times, n_steps_per_segment);
}

}  // namespace qfi
