#pragma once

#include <complex>
#include <stdexcept>

namespace qfi {

using cplx = std::complex<double>;

// Centralized tolerance policy: closed forms in double precision land near
// 1e-14; these leave headroom for long composed products.
inline constexpr double TOL_UNITARY = 1e-12;
inline constexpr double TOL_HERMITIAN = 1e-10;

// 2x2 complex matrix, row-major: [ m00 m01 ; m10 m11 ]
struct CMat2 {
  cplx m00{}, m01{}, m10{}, m11{};
};

CMat2 operator+(const CMat2& a, const CMat2& b);
CMat2 operator-(const CMat2& a, const CMat2& b);
CMat2 operator*(const CMat2& a, const CMat2& b);
CMat2 operator*(cplx s, const CMat2& a);
CMat2 operator*(double s, const CMat2& a);

CMat2 identity2();
CMat2 zero2();
CMat2 sigma_x();
CMat2 sigma_y();
CMat2 sigma_z();

CMat2 adjoint(const CMat2& a);
cplx trace(const CMat2& a);
double frobenius_norm(const CMat2& a);
double max_abs_entry(const CMat2& a);
bool approx_equal(const CMat2& a, const CMat2& b, double tol);
double hermiticity_residual(const CMat2& a);
bool is_hermitian(const CMat2& a, double tol = TOL_HERMITIAN);

// Real unit vector, a rotation axis on the Bloch sphere.
struct Axis3 {
  double x = 0.0, y = 0.0, z = 1.0;
};

bool is_unit_axis(const Axis3& n, double tol = TOL_UNITARY);
CMat2 axis_dot_sigma(const Axis3& n);

// Unitary evolution operator. Global phase is deliberately not normalized
// away; compare with phase_invariant_distance.
struct Unitary2 {
  CMat2 m;
};

Unitary2 compose(const Unitary2& a, const Unitary2& b);  // a * b
Unitary2 dagger(const Unitary2& u);
double unitarity_residual(const Unitary2& u);
bool is_unitary(const Unitary2& u, double tol = TOL_UNITARY);

// min over theta of ||A - e^{i theta} B||_F, computed without the
// catastrophic cancellation of the 4 - 2|tr| form.
double phase_invariant_distance(const Unitary2& a, const Unitary2& b);

struct QubitState {
  cplx a0{}, a1{};
};

double norm(const QubitState& s);
QubitState normalized(const QubitState& s);
QubitState apply(const Unitary2& u, const QubitState& s);
cplx inner(const QubitState& bra, const QubitState& ket);

QubitState x_up();    // +1 eigenstate of sigma_x
QubitState x_down();  // -1 eigenstate of sigma_x
QubitState z_up();
QubitState z_down();

// exp(-i angle (n.sigma)) = cos(angle) 1 - i sin(angle) (n.sigma)
Unitary2 pauli_exp(const Axis3& n, double angle);

struct EigSpread {
  double lmin = 0.0;
  double lmax = 0.0;
  double spread() const { return lmax - lmin; }
};

// Exact eigenvalues of a 2x2 Hermitian matrix via the closed-form quadratic.
EigSpread eig_spread_hermitian(const CMat2& h);

}  // namespace qfi
