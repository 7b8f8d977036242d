#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qfi/fisher.hpp"

using namespace qfi;

namespace {
constexpr double kPi = std::numbers::pi;
std::mt19937_64 rng(777);

QubitState random_state() {
  std::normal_distribution<double> g;
  QubitState s{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
  return normalized(s);
}
}  // namespace

TEST_CASE("qfi_generator on a z rotation") {
  const double t = 1.3;
  const auto u_of = [t](double g) { return pauli_exp({0, 0, 1}, g * t); };
  const auto r = qfi_generator(u_of, 0.4);
  CHECK(r.hermiticity_residual < 1e-7);
  CHECK(approx_equal(r.g, t * sigma_z(), 1e-8));
  CHECK(qfi_max(r.g).value == doctest::Approx(4 * t * t).epsilon(1e-8));

  // parameter independent -> zero generator
  const auto fixed = [](double) { return Unitary2{cplx(0, -1) * sigma_x()}; };
  CHECK(max_abs_entry(qfi_generator(fixed, 0.7).g) < 1e-9);
}

TEST_CASE("finite differences converge at second order") {
  // non-commuting family: error should shrink ~4x when h halves (plain
  // central difference, no Richardson)
  const auto u_of = [](double g) {
    return compose(pauli_exp({1, 0, 0}, 0.9),
                   pauli_exp({0, 0, 1}, g + 0.3 * g * g * g));
  };
  const double g0 = 0.5;
  const auto gen_err = [&](double h) {
    const Unitary2 up = u_of(g0 + h), um = u_of(g0 - h), u0 = u_of(g0);
    CMat2 gg = cplx(0, 1) * (adjoint(u0.m) * ((1.0 / (2 * h)) * (up.m - um.m)));
    gg = 0.5 * (gg + adjoint(gg));
    const double exact = 1.0 + 0.9 * g0 * g0;  // d(angle)/dg
    return std::abs(eig_spread_hermitian(gg).spread() - 2.0 * exact);
  };
  const double e1 = gen_err(1e-3);
  const double e2 = gen_err(5e-4);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("slot-unitary generator keeps the drifting-axis spread") {
  const double amp = 1.0, w = 0.3, tau = 0.17, t = 80.0;
  const auto u_of = [&](double wv) {
    return analytic_slot_unitary(wv, amp, t, tau);
  };
  const auto r = qfi_generator(u_of, w, 1e-6 / (amp * t));
  const double s = std::sqrt(amp * amp + w * w);
  const double expect = 4.0 * amp * t * std::sin(s * tau) / s;
  CHECK(eig_spread_hermitian(r.g).spread() ==
        doctest::Approx(expect).epsilon(5e-3));
}

TEST_CASE("qfi_max against random-state variance maximization") {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const CMat2 g = u(rng) * sigma_x() + u(rng) * sigma_y() + u(rng) * sigma_z() +
                  u(rng) * identity2();
  const double qmax = qfi_max(g).value;
  double best = 0.0;
  for (int i = 0; i < 10000; ++i) {
    best = std::max(best, qfi_state(g, random_state()).value);
  }
  CHECK(best <= qmax * (1 + 1e-12));
  CHECK(best > qmax * 0.995);
  CHECK(qfi_max(zero2()).value == doctest::Approx(0.0));
}

TEST_CASE("qfi_state") {
  const double t = 0.9;
  const CMat2 g = t * sigma_z();
  CHECK(qfi_state(g, x_up()).value == doctest::Approx(4 * t * t).epsilon(1e-13));
  CHECK(qfi_state(g, z_up()).value == doctest::Approx(0.0));

  // equal superposition of the extremal eigenvectors attains the maximum
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const CMat2 h = u(rng) * sigma_x() + u(rng) * sigma_y() + u(rng) * sigma_z();
  const EigSpread e = eig_spread_hermitian(h);
  // eigenvector for lmax: (h - lmin) applied to any non-orthogonal vector
  const auto col = [&](double lam) {
    QubitState v{h.m00 - lam, h.m10};
    if (norm(v) < 1e-9) v = QubitState{h.m01, h.m11 - lam};
    return normalized(v);
  };
  const QubitState vmax = col(e.lmin);  // (h - lmin I) projects onto lmax space
  const QubitState vmin = col(e.lmax);
  const QubitState sup = normalized(
      {vmax.a0 + vmin.a0, vmax.a1 + vmin.a1});
  CHECK(qfi_state(h, sup).value ==
        doctest::Approx(qfi_max(h).value).epsilon(1e-9));
}

TEST_CASE("classical_fi") {
  const double t = 5.0, dt = kPi / 2.0;
  const double a = t * t / dt;
  const auto p_of = [a](double d) {
    const double c = std::cos(d * a);
    return c * c;
  };
  const double fi = classical_fi(p_of, 0.03, 1e-7).value;
  CHECK(fi == doctest::Approx(4 * a * a).epsilon(1e-6));

  CHECK(classical_fi([](double) { return 0.42; }, 1.0).value ==
        doctest::Approx(0.0));

  // degenerate point: fallback to the curvature limit, flagged
  const auto p_sin = [a](double d) {
    const double s = std::sin(d * a);
    return s * s;
  };
  const auto r = classical_fi(p_sin, 0.0, 1e-7);
  CHECK(r.limit_case);
  CHECK(r.value == doctest::Approx(4 * a * a).epsilon(1e-4));
}

TEST_CASE("fi_matrix_2 reproduces the rank-1 two-parameter matrix") {
  const double amp = 1.0, T = 1.0;
  const double dt = kPi / (2.0 * amp);
  const auto p = [&](double d, double f) {
    const double s = std::sin(d * T * T / dt + f * T / dt);
    return s * s;
  };
  const FIMatrix2 m = fi_matrix_2(p, 0.7, 0.3, 1e-7);
  const double c = 4.0 * amp * amp * std::pow(2.0 / kPi, 2);
  CHECK(m.a == doctest::Approx(c * std::pow(T, 4)).epsilon(1e-6));
  CHECK(m.b == doctest::Approx(c * std::pow(T, 3)).epsilon(1e-6));
  CHECK(m.c == doctest::Approx(c * std::pow(T, 2)).epsilon(1e-6));

  // exactly rank 1 up to roundoff, and PSD
  CHECK(std::abs(m.smallest_eigenvalue()) < 1e-10 * m.largest_eigenvalue());
  CHECK(m.smallest_eigenvalue() > -1e-10 * m.largest_eigenvalue());

  CHECK_THROWS_AS(fi_matrix_2(p, 0.0, 0.0, 1e-7), std::invalid_argument);
}

TEST_CASE("crb_variance") {
  CHECK(crb_variance({2.0, 0.0, 5.0}, FiParam::delta).variance ==
        doctest::Approx(0.5));
  CHECK(crb_variance({2.0, 0.0, 5.0}, FiParam::phi).variance ==
        doctest::Approx(0.2));

  // the single-time matrix is singular
  const double c = 4.0 * std::pow(2.0 / kPi, 2);
  const FIMatrix2 single{c, c, c};
  CHECK(crb_variance(single, FiParam::delta).singular);

  // two measurement times at T and 0.45T make it invertible; the variance of
  // the per-measurement matrix lands near 10 in (2/pi)^2 amp^2 T^4 units
  const double T = 1.0;
  const auto rank1 = [&](double t) {
    return FIMatrix2{c * std::pow(t, 4), c * std::pow(t, 3), c * std::pow(t, 2)};
  };
  const FIMatrix2 mean = 0.5 * (rank1(T) + rank1(0.45 * T));
  const CrbResult r = crb_variance(mean, FiParam::delta);
  REQUIRE(!r.singular);
  const double expect = 10.0 / (std::pow(2.0 / kPi, 2) * std::pow(T, 4));
  CHECK(std::abs(r.variance - expect) / expect < 5e-2);
}

TEST_CASE("segmented_total_fi") {
  const double tau = 0.5, T = 50.0;
  const SegmentationPlan plan{tau, T};
  CHECK(plan.windows() == 100);

  // single window reduces to the window FI at t = 0
  const SegmentationPlan one{T, T};
  CHECK(segmented_total_fi([](double t) { return 7.0 + t; }, one).value ==
        doctest::Approx(7.0));

  // 4 sum (2t+tau)^2 lands on 16 T^3/(3 tau) for tau << T
  const auto pw = [tau](double t) { return 4.0 * std::pow(2 * t + tau, 2); };
  const double sum = segmented_total_fi(pw, plan).value;
  const double asym =
      closed_form_fi(Formula::seg_16t3_over_3tau, {.tau = tau, .total = T}).value;
  CHECK(sum == doctest::Approx(asym).epsilon(1e-3));
  CHECK(sum == doctest::Approx(closed_form_fi(Formula::seg_sum_2t_plus_tau_exact,
                                              {.tau = tau, .total = T})
                                   .value)
                   .epsilon(1e-13));

  // the paper's inline 16 T^3/tau shorthand differs by exactly 3
  const double inline_v =
      closed_form_fi(Formula::seg_inline_16t3_over_tau, {.tau = tau, .total = T})
          .value;
  CHECK(inline_v == doctest::Approx(3.0 * asym).epsilon(1e-13));

  // controlled windows against (16/3) amp^2 tau T^3
  const double amp = 1.0;
  const auto pwc = [&](double t) {
    return closed_form_fi(Formula::seg_controlled_per_window,
                          {.amp = amp, .t = t, .tau = tau})
        .value;
  };
  const double csum = segmented_total_fi(pwc, plan).value;
  const double cform =
      closed_form_fi(Formula::seg_controlled_total,
                     {.amp = amp, .tau = tau, .total = T})
          .value;
  CHECK(std::abs(csum - cform) / cform < 3e-2);

  CHECK_THROWS_AS(segmented_total_fi([](double) { return 0.0; }, {2.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("numeric per-window QFI sums to the closed form") {
  const double amp = 1.0;
  for (double w : {0.0, 0.1, 1.0}) {
    const double s = std::sqrt(amp * amp + w * w);
    const double tau = optimal_sin_sq_over_x() / s;
    const int n = 100;
    const double T = n * tau;
    const auto per_window = [&](double t) {
      const auto u_of = [&](double wv) {
        return analytic_slot_unitary(wv, amp, t, tau);
      };
      return qfi_max(qfi_generator(u_of, w, 1e-6 / std::max(1.0, amp * t)).g)
          .value;
    };
    const double sum = segmented_total_fi(per_window, {tau, T}).value;
    const double cf =
        closed_form_fi(Formula::seg_no_control_total,
                       {.amp = amp, .omega = w, .tau = tau, .total = T})
            .value;
    CHECK(std::abs(sum - cf) / cf < 1e-2);
  }
}

TEST_CASE("closed-form registry limits") {
  const double amp = 1.0, t = 3.0;
  // small-detuning limit of the sine-integral FI is the optimal T^4 law
  const double lim =
      closed_form_fi(Formula::method1_fi, {.amp = amp, .delta = 1e-6, .t = t}).value;
  CHECK(lim == doctest::Approx(4 * amp * amp * std::pow(t, 4)).epsilon(1e-6));
  CHECK(closed_form_fi(Formula::method1_fi, {.amp = amp, .delta = 0.0, .t = t})
            .value == doctest::Approx(4 * amp * amp * std::pow(t, 4)));

  // quadratic-phase prefactors
  CHECK(closed_form_fi(Formula::method2_fi, {.amp = amp, .t = t, .k = 0}).value ==
        doctest::Approx(4 * amp * amp * std::pow(t, 4) * std::pow(2 / kPi, 2)));
  CHECK(closed_form_fi(Formula::method2_fi, {.amp = amp, .t = t, .k = 1}).value ==
        doctest::Approx(4 * amp * amp * std::pow(t, 4) * std::pow(2 / (3 * kPi), 2)));

  // sign-flipped-coupling total FI: small-dT limit is (16/3) amp^2 tau T^3
  const double tau = 1.0, T = 40.0;
  const double small = closed_form_fi(Formula::h2_small_delta_total,
                                      {.amp = amp, .delta = 1e-5, .tau = tau, .total = T})
                           .value;
  const double envelope =
      closed_form_fi(Formula::seg_controlled_total,
                     {.amp = amp, .tau = tau, .total = T})
          .value;
  CHECK(small == doctest::Approx(envelope).epsilon(1e-4));

  // and it agrees with the exact window sum in its regime
  const double ex = closed_form_fi(Formula::h2_exact_window_sum,
                                   {.amp = amp, .delta = 0.05, .tau = tau, .total = 20.0})
                        .value;
  const double fo = closed_form_fi(Formula::h2_small_delta_total,
                                   {.amp = amp, .delta = 0.05, .tau = tau, .total = 20.0})
                        .value;
  CHECK(std::abs(ex - fo) / ex < 1e-2);
}

TEST_CASE("upper bound") {
  const double amp = 1.3, T = 2.0;
  CHECK(qfi_upper_bound({HamiltonianKind::H1, amp, 0.7}, T).value ==
        doctest::Approx(4 * amp * amp * std::pow(T, 4)).epsilon(1e-13));
  CHECK(qfi_upper_bound({HamiltonianKind::H1, 0.0, 0.7}, T).value ==
        doctest::Approx(0.0));

  // |cos| average 2/pi at wT >> 1
  const double b = qfi_upper_bound({HamiltonianKind::H2, 1.0, 1.0}, 200.0).value;
  CHECK(b / std::pow(200.0, 4) ==
        doctest::Approx(std::pow(4 / kPi, 2)).epsilon(1e-2));

  // plain Ramsey limit for a static drift
  CHECK(qfi_upper_bound({HamiltonianKind::ZDrift, 0, 0, 0, 0.4}, T).value ==
        doctest::Approx(4 * T * T).epsilon(1e-13));
}

TEST_CASE("optimal measurement window") {
  CHECK(optimal_sin_sq_over_x() ==
        doctest::Approx(1.1655611852072114).epsilon(1e-10));

  const auto o = optimal_tau_no_control(1.0, 0.0);
  CHECK(o.tau_star == doctest::Approx(1.1655611852).epsilon(1e-9));
  CHECK(o.coefficient == doctest::Approx(3.864593886809).epsilon(1e-9));

  const auto o2 = optimal_tau_no_control(1.0, 0.75);
  CHECK(o2.tau_star == doctest::Approx(1.1655611852 / 1.25).epsilon(1e-9));

  const auto h = optimal_tau_h2(0.5);
  CHECK(h.tau_star == doctest::Approx(1.1655611852 / 0.5).epsilon(1e-9));
  CHECK(h.coefficient == doctest::Approx(1.932296943404).epsilon(1e-9));

  CHECK_THROWS_AS(optimal_tau_no_control(0.0, 0.0), std::invalid_argument);
}
