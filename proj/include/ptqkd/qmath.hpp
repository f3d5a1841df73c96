#pragma once

#include <complex>

namespace ptqkd {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-12;

// Single-qubit state as an amplitude pair. Not kept normalized: the
// PT-symmetric evolution in this library is not unitary, so norms carry
// information and callers normalize explicitly where it matters.
struct StateVec {
    Complex a0{};
    Complex a1{};
};

struct Mat2 {
    Complex m00{}, m01{};
    Complex m10{}, m11{};
};

StateVec mat_apply(const Mat2& m, const StateVec& v);
Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_add(const Mat2& a, const Mat2& b);
Mat2 mat_sub(const Mat2& a, const Mat2& b);
Mat2 mat_scale(const Complex& c, const Mat2& m);
Mat2 mat_adjoint(const Mat2& m);
Mat2 mat_identity();
Complex mat_det(const Mat2& m);
Mat2 mat_inverse(const Mat2& m); // throws std::invalid_argument if singular

// <u|v>, conjugate-linear in u.
Complex herm_inner(const StateVec& u, const StateVec& v);
double herm_norm(const StateVec& v);
StateVec herm_normalize(const StateVec& v); // throws std::invalid_argument on ~zero input
Mat2 herm_projector(const StateVec& v);     // |v><v| / <v|v>

double max_abs_diff(const Mat2& a, const Mat2& b);
bool approx_eq(const Complex& a, const Complex& b, double tol = kDefaultTol);
bool approx_eq(const StateVec& a, const StateVec& b, double tol = kDefaultTol);
bool approx_eq(const Mat2& a, const Mat2& b, double tol = kDefaultTol);

} // namespace ptqkd
