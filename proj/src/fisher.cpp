#include "qfi/fisher.hpp"

#include <cmath>
#include <numbers>

namespace qfi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double default_h(double param) { return 1e-6 * std::max(std::abs(param), 1.0); }

double sin_sq(double x) {
  const double s = std::sin(x);
  return s * s;
}

CMat2 central_generator(const std::function<Unitary2(double)>& u_of_param,
                        double param, double h) {
  const Unitary2 up = u_of_param(param + h);
  const Unitary2 um = u_of_param(param - h);
  const Unitary2 u0 = u_of_param(param);
  const CMat2 d = (1.0 / (2.0 * h)) * (up.m - um.m);
  return I * (adjoint(u0.m) * d);
}

}  // namespace

GeneratorResult qfi_generator(const std::function<Unitary2(double)>& u_of_param,
                              double param, double h) {
  if (h <= 0.0) h = default_h(param);
  const CMat2 g1 = central_generator(u_of_param, param, h);
  const CMat2 g2 = central_generator(u_of_param, param, 0.5 * h);
  const CMat2 g = (1.0 / 3.0) * (4.0 * g2 - g1);
  GeneratorResult r;
  r.hermiticity_residual = hermiticity_residual(g);
  if (r.hermiticity_residual > 1e-5) {
    throw std::runtime_error(
        "qfi_generator: numerical derivative failure (hermiticity residual > 1e-5)");
  }
  r.g = 0.5 * (g + adjoint(g));
  return r;
}

FisherResult qfi_max(const CMat2& generator) {
  const EigSpread e = eig_spread_hermitian(generator);
  FisherResult r;
  r.value = e.spread() * e.spread();
  r.source = FiSource::numeric_qfi;
  return r;
}

FisherResult qfi_state(const CMat2& generator, const QubitState& psi0) {
  const QubitState g1{generator.m00 * psi0.a0 + generator.m01 * psi0.a1,
                      generator.m10 * psi0.a0 + generator.m11 * psi0.a1};
  const double mean = std::real(inner(psi0, g1));
  const double mean_sq = std::real(inner(g1, g1));
  FisherResult r;
  r.value = std::max(0.0, 4.0 * (mean_sq - mean * mean));
  r.source = FiSource::numeric_qfi;
  return r;
}

FisherResult classical_fi(const std::function<double(double)>& p_of_param,
                          double param, double h) {
  if (h <= 0.0) h = default_h(param);
  const double p0 = p_of_param(param);
  FisherResult r;
  r.source = FiSource::numeric_classical;
  if (p0 < 1e-9 || p0 > 1.0 - 1e-9) {
    // At an extremum of a two-outcome probability the FI limit is 2|P''|.
    const double pp = p_of_param(param + h);
    const double pm = p_of_param(param - h);
    const double second = (pp - 2.0 * p0 + pm) / (h * h);
    r.value = 2.0 * std::abs(second);
    r.limit_case = true;
    return r;
  }
  const double d1 =
      (p_of_param(param + h) - p_of_param(param - h)) / (2.0 * h);
  const double d2 =
      (p_of_param(param + 0.5 * h) - p_of_param(param - 0.5 * h)) / h;
  const double dp = (4.0 * d2 - d1) / 3.0;
  r.value = dp * dp * (1.0 / p0 + 1.0 / (1.0 - p0));
  return r;
}

double FIMatrix2::smallest_eigenvalue() const {
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return mid - rad;
}

double FIMatrix2::largest_eigenvalue() const {
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return mid + rad;
}

FIMatrix2 operator+(const FIMatrix2& m1, const FIMatrix2& m2) {
  return {m1.a + m2.a, m1.b + m2.b, m1.c + m2.c};
}

FIMatrix2 operator*(double s, const FIMatrix2& m) {
  return {s * m.a, s * m.b, s * m.c};
}

FIMatrix2 fi_matrix_2(const std::function<double(double, double)>& p_of_params,
                      double delta, double phi, double h) {
  if (h <= 0.0) h = std::max(default_h(delta), default_h(phi));
  const double p0 = p_of_params(delta, phi);
  if (p0 < 1e-9 || p0 > 1.0 - 1e-9) {
    throw std::invalid_argument(
        "fi_matrix_2: P at the working point is degenerate (0 or 1)");
  }
  const auto deriv = [&](bool wrt_delta) {
    const double d1 = wrt_delta ? (p_of_params(delta + h, phi) -
                                   p_of_params(delta - h, phi)) /
                                      (2.0 * h)
                                : (p_of_params(delta, phi + h) -
                                   p_of_params(delta, phi - h)) /
                                      (2.0 * h);
    const double d2 = wrt_delta ? (p_of_params(delta + 0.5 * h, phi) -
                                   p_of_params(delta - 0.5 * h, phi)) /
                                      h
                                : (p_of_params(delta, phi + 0.5 * h) -
                                   p_of_params(delta, phi - 0.5 * h)) /
                                      h;
    return (4.0 * d2 - d1) / 3.0;
  };
  const double pd = deriv(true);
  const double pf = deriv(false);
  const double w = 1.0 / p0 + 1.0 / (1.0 - p0);
  return {pd * pd * w, pd * pf * w, pf * pf * w};
}

CrbResult crb_variance(const FIMatrix2& m, FiParam which) {
  const double lmin = std::abs(m.smallest_eigenvalue());
  const double lmax = std::abs(m.largest_eigenvalue());
  CrbResult r;
  if (!(lmin * 1e12 > lmax) || lmax == 0.0) {
    r.singular = true;
    return r;
  }
  const double det = m.a * m.c - m.b * m.b;
  r.variance = (which == FiParam::delta ? m.c : m.a) / det;
  return r;
}

int SegmentationPlan::windows() const {
  return static_cast<int>(std::floor(total / tau * (1.0 + 1e-12)));
}

void validate(const SegmentationPlan& plan) {
  if (!(plan.tau > 0.0) || !(plan.tau <= plan.total)) {
    throw std::invalid_argument("SegmentationPlan: need 0 < tau <= T");
  }
}

FisherResult segmented_total_fi(const std::function<double(double)>& per_window_fi,
                                const SegmentationPlan& plan) {
  validate(plan);
  const int n = plan.windows();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += per_window_fi(k * plan.tau);
  FisherResult r;
  r.value = sum;
  r.source = FiSource::numeric_qfi;
  r.params = {{"tau", plan.tau}, {"T", plan.total}, {"windows", double(n)}};
  return r;
}

namespace {

double h2_exact_window_term(double d, double t, double tau) {
  return 2.0 * d * t * std::sin(2.0 * d * t) -
         2.0 * d * (t + tau) * std::sin(2.0 * d * (t + tau)) +
         std::cos(2.0 * d * t) - std::cos(2.0 * d * (t + tau));
}

}  // namespace

FisherResult closed_form_fi(Formula id, const FormulaParams& p) {
  FisherResult r;
  r.source = FiSource::closed_form;
  r.params = {{"amp", p.amp},   {"delta", p.delta}, {"omega", p.omega},
              {"t", p.t},       {"tau", p.tau},     {"T", p.total},
              {"k", double(p.k)}};
  switch (id) {
    case Formula::method1_fi: {
      const double x = 2.0 * p.delta * p.t;
      const double br = std::cos(x) - 1.0 + x * std::sin(x);
      if (p.delta == 0.0) {
        r.value = 4.0 * p.amp * p.amp * std::pow(p.t, 4);  // Taylor limit
      } else {
        r.value = p.amp * p.amp / std::pow(p.delta, 4) * br * br;
      }
      return r;
    }
    case Formula::method1_large_t_fi:
      r.value = 4.0 * std::pow(p.amp / p.delta, 2) *
                sin_sq(2.0 * p.delta * p.total) * p.total * p.total;
      return r;
    case Formula::method2_fi: {
      const double pref = 2.0 / (kPi * (2 * p.k + 1));
      r.value = 4.0 * p.amp * p.amp * std::pow(p.t, 4) * pref * pref;
      return r;
    }
    case Formula::optimal_fi_h1:
      r.value = 4.0 * p.amp * p.amp * std::pow(p.t, 4);
      r.source = FiSource::upper_bound;
      return r;
    case Formula::h2_train_fi:
      r.value = std::pow(4.0 / kPi, 2) * p.amp * p.amp * std::pow(p.t, 4);
      return r;
    case Formula::seg_no_control_per_window: {
      const double s2 = p.omega * p.omega + p.amp * p.amp;
      r.value = 4.0 * p.amp * p.amp * std::pow(2.0 * p.t + p.tau, 2) / s2 *
                sin_sq(std::sqrt(s2) * p.tau);
      return r;
    }
    case Formula::seg_no_control_total: {
      const double s2 = p.omega * p.omega + p.amp * p.amp;
      r.value = 16.0 * p.amp * p.amp / s2 * sin_sq(std::sqrt(s2) * p.tau) *
                std::pow(p.total, 3) / (3.0 * p.tau);
      return r;
    }
    case Formula::seg_controlled_per_window: {
      const double d2 = std::pow(p.t + p.tau, 2) - p.t * p.t;
      r.value = 4.0 * p.amp * p.amp * d2 * d2;
      return r;
    }
    case Formula::seg_controlled_total:
      r.value = 16.0 / 3.0 * p.amp * p.amp * p.tau * std::pow(p.total, 3);
      return r;
    case Formula::seg_sum_2t_plus_tau_exact: {
      const int n = static_cast<int>(std::floor(p.total / p.tau * (1.0 + 1e-12)));
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += 4.0 * std::pow(2.0 * (k * p.tau) + p.tau, 2);
      }
      r.value = sum;
      return r;
    }
    case Formula::seg_inline_16t3_over_tau:
      // The paper's inline shorthand; kept verbatim next to the /3 variant
      // below so the factor-3 discrepancy stays visible.
      r.value = 16.0 * std::pow(p.total, 3) / p.tau;
      return r;
    case Formula::seg_16t3_over_3tau:
      r.value = 16.0 * std::pow(p.total, 3) / (3.0 * p.tau);
      return r;
    case Formula::h2_small_delta_total: {
      const double d = p.delta, T = p.total;
      r.value = 16.0 * p.amp * p.amp * p.tau *
                (std::pow(T, 3) / 6.0 + T * std::cos(4.0 * d * T) / (16.0 * d * d) +
                 (8.0 * d * d * T * T - 1.0) * std::sin(4.0 * d * T) /
                     (64.0 * std::pow(d, 3)));
      return r;
    }
    case Formula::h2_large_delta_total:
      r.value = 8.0 * std::pow(p.amp / p.delta, 2) * std::pow(p.total, 3) /
                (3.0 * p.tau) * sin_sq(p.delta * p.tau);
      return r;
    case Formula::h2_exact_window_sum: {
      const int n = static_cast<int>(std::floor(p.total / p.tau * (1.0 + 1e-12)));
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        const double term = h2_exact_window_term(p.delta, k * p.tau, p.tau);
        sum += term * term;
      }
      r.value = p.amp * p.amp / std::pow(p.delta, 4) * sum;
      return r;
    }
  }
  throw std::invalid_argument("closed_form_fi: unknown formula id");
}

std::string formula_name(Formula id) {
  switch (id) {
    case Formula::method1_fi: return "method1_fi";
    case Formula::method1_large_t_fi: return "method1_large_t_fi";
    case Formula::method2_fi: return "method2_fi";
    case Formula::optimal_fi_h1: return "optimal_fi_h1";
    case Formula::h2_train_fi: return "h2_train_fi";
    case Formula::seg_no_control_per_window: return "seg_no_control_per_window";
    case Formula::seg_no_control_total: return "seg_no_control_total";
    case Formula::seg_controlled_per_window: return "seg_controlled_per_window";
    case Formula::seg_controlled_total: return "seg_controlled_total";
    case Formula::seg_sum_2t_plus_tau_exact: return "seg_sum_2t_plus_tau_exact";
    case Formula::seg_inline_16t3_over_tau: return "seg_inline_16t3_over_tau";
    case Formula::seg_16t3_over_3tau: return "seg_16t3_over_3tau";
    case Formula::h2_small_delta_total: return "h2_small_delta_total";
    case Formula::h2_large_delta_total: return "h2_large_delta_total";
    case Formula::h2_exact_window_sum: return "h2_exact_window_sum";
  }
  return "unknown";
}

namespace {

// integral of t |cos(2 w t + phase)| over [0, T], split at the cosine zeros
// so each piece is an exact antiderivative.
double integral_t_abs_cos(double w, double phase, double total) {
  if (w == 0.0) return 0.5 * total * total * std::abs(std::cos(phase));
  const double a = 2.0 * w;
  const auto anti = [&](double t) {
    // integral of t cos(a t + phase) dt
    return t * std::sin(a * t + phase) / a +
           std::cos(a * t + phase) / (a * a);
  };
  // zeros at a t + phase = pi/2 + k pi
  const double k0 = std::ceil((phase - kPi / 2.0) / kPi);
  double acc = 0.0;
  double t_prev = 0.0;
  for (double k = k0;; k += 1.0) {
    const double tz = (kPi / 2.0 + k * kPi - phase) / a;
    if (tz >= total) break;
    if (tz > 0.0) {
      const double seg = anti(tz) - anti(t_prev);
      acc += std::abs(seg);
      t_prev = tz;
    }
  }
  acc += std::abs(anti(total) - anti(t_prev));
  return acc;
}

}  // namespace

FisherResult qfi_upper_bound(const HamiltonianSpec& spec, double total) {
  validate(spec);
  if (!(total > 0.0)) throw std::invalid_argument("qfi_upper_bound: T > 0");
  FisherResult r;
  r.source = FiSource::upper_bound;
  r.params = {{"T", total}, {"amp", spec.amp}, {"omega", spec.omega}};
  double integral = 0.0;
  switch (spec.kind) {
    case HamiltonianKind::H1:
      // dH/dw has eigenvalue spread 4 amp t
      integral = 2.0 * spec.amp * total * total;
      break;
    case HamiltonianKind::H2:
      // spread 4 amp t |cos(2 w t + phase)|
      integral = 4.0 * spec.amp *
                 integral_t_abs_cos(spec.omega, spec.phase, total);
      break;
    case HamiltonianKind::EffectiveLinearY:
      integral = 2.0 * spec.amp * total * total;
      break;
    case HamiltonianKind::EffectiveLinearZ:
      integral = 4.0 / kPi * spec.amp * total * total;
      break;
    case HamiltonianKind::ZDrift:
      // estimating the drift itself: dH/dw' = sigma_z, spread 2
      integral = 2.0 * total;
      break;
  }
  r.value = integral * integral;
  return r;
}

double optimal_sin_sq_over_x() {
  // root of 2x cos x - sin x (equivalently tan x = 2x) in (1, 1.5)
  double lo = 1.0, hi = 1.5;
  const auto f = [](double x) { return 2.0 * x * std::cos(x) - std::sin(x); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

OptimalTau optimal_tau_no_control(double amp, double omega) {
  const double s2 = amp * amp + omega * omega;
  if (!(s2 > 0.0)) {
    throw std::invalid_argument("optimal_tau_no_control: amp^2 + omega^2 > 0");
  }
  OptimalTau r;
  r.x_star = optimal_sin_sq_over_x();
  r.tau_star = r.x_star / std::sqrt(s2);
  r.coefficient = 16.0 * sin_sq(r.x_star) / (3.0 * r.x_star);
  return r;
}

OptimalTau optimal_tau_h2(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("optimal_tau_h2: delta > 0");
  OptimalTau r;
  r.x_star = optimal_sin_sq_over_x();
  r.tau_star = r.x_star / delta;
  r.coefficient = 8.0 * sin_sq(r.x_star) / (3.0 * r.x_star);
  return r;
}

}  // namespace qfi
