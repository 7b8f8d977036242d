#include "qfi/su2.hpp"

#include <algorithm>
#include <cmath>

namespace qfi {

namespace {
constexpr cplx I{0.0, 1.0};
}

CMat2 operator+(const CMat2& a, const CMat2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

CMat2 operator-(const CMat2& a, const CMat2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

CMat2 operator*(const CMat2& a, const CMat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

CMat2 operator*(cplx s, const CMat2& a) {
  return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

CMat2 operator*(double s, const CMat2& a) { return cplx(s, 0.0) * a; }

CMat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }
CMat2 zero2() { return {0.0, 0.0, 0.0, 0.0}; }
CMat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
CMat2 sigma_y() { return {0.0, -I, I, 0.0}; }
CMat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

CMat2 adjoint(const CMat2& a) {
  return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}

cplx trace(const CMat2& a) { return a.m00 + a.m11; }

double frobenius_norm(const CMat2& a) {
  return std::sqrt(std::norm(a.m00) + std::norm(a.m01) + std::norm(a.m10) +
                   std::norm(a.m11));
}

double max_abs_entry(const CMat2& a) {
  return std::max(std::max(std::abs(a.m00), std::abs(a.m01)),
                  std::max(std::abs(a.m10), std::abs(a.m11)));
}

bool approx_equal(const CMat2& a, const CMat2& b, double tol) {
  return max_abs_entry(a - b) <= tol;
}

double hermiticity_residual(const CMat2& a) {
  return frobenius_norm(a - adjoint(a));
}

bool is_hermitian(const CMat2& a, double tol) {
  return hermiticity_residual(a) <= tol;
}

bool is_unit_axis(const Axis3& n, double tol) {
  const double r = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
  return std::isfinite(r) && std::abs(r - 1.0) <= tol;
}

CMat2 axis_dot_sigma(const Axis3& n) {
  return {cplx(n.z, 0.0), cplx(n.x, -n.y), cplx(n.x, n.y), cplx(-n.z, 0.0)};
}

Unitary2 compose(const Unitary2& a, const Unitary2& b) { return {a.m * b.m}; }

Unitary2 dagger(const Unitary2& u) { return {adjoint(u.m)}; }

double unitarity_residual(const Unitary2& u) {
  return max_abs_entry(adjoint(u.m) * u.m - identity2());
}

bool is_unitary(const Unitary2& u, double tol) {
  if (unitarity_residual(u) > tol) return false;
  const cplx det = u.m.m00 * u.m.m11 - u.m.m01 * u.m.m10;
  return std::abs(std::abs(det) - 1.0) <= tol;
}

double phase_invariant_distance(const Unitary2& a, const Unitary2& b) {
  const cplx z = trace(adjoint(a.m) * b.m);
  const double az = std::abs(z);
  if (az == 0.0) return frobenius_norm(a.m - b.m);
  return frobenius_norm(a.m - (z / az) * b.m);
}

double norm(const QubitState& s) {
  return std::sqrt(std::norm(s.a0) + std::norm(s.a1));
}

QubitState normalized(const QubitState& s) {
  const double r = norm(s);
  if (r == 0.0) throw std::invalid_argument("cannot normalize zero state");
  return {s.a0 / r, s.a1 / r};
}

QubitState apply(const Unitary2& u, const QubitState& s) {
  return {u.m.m00 * s.a0 + u.m.m01 * s.a1, u.m.m10 * s.a0 + u.m.m11 * s.a1};
}

cplx inner(const QubitState& bra, const QubitState& ket) {
  return std::conj(bra.a0) * ket.a0 + std::conj(bra.a1) * ket.a1;
}

QubitState x_up() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, r};
}

QubitState x_down() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, -r};
}

QubitState z_up() { return {1.0, 0.0}; }
QubitState z_down() { return {0.0, 1.0}; }

Unitary2 pauli_exp(const Axis3& n, double angle) {
  if (!is_unit_axis(n, 1e-9)) {
    throw std::invalid_argument("pauli_exp: axis is not a unit vector");
  }
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("pauli_exp: angle must be finite");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const CMat2 ns = axis_dot_sigma(n);
  return {c * identity2() - (I * s) * ns};
}

EigSpread eig_spread_hermitian(const CMat2& h) {
  if (!is_hermitian(h, TOL_HERMITIAN)) {
    throw std::invalid_argument("eig_spread_hermitian: matrix is not Hermitian");
  }
  const double a = std::real(h.m00);
  const double d = std::real(h.m11);
  const double off = std::abs(h.m10);
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  return {mid - rad, mid + rad};
}

}  // namespace qfi
