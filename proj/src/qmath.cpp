#include "ptqkd/qmath.hpp"

#include <cmath>
#include <stdexcept>

namespace ptqkd {

StateVec mat_apply(const Mat2& m, const StateVec& v) {
    return {m.m00 * v.a0 + m.m01 * v.a1, m.m10 * v.a0 + m.m11 * v.a1};
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 mat_add(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

Mat2 mat_sub(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

Mat2 mat_scale(const Complex& c, const Mat2& m) {
    return {c * m.m00, c * m.m01, c * m.m10, c * m.m11};
}

Mat2 mat_adjoint(const Mat2& m) {
    return {std::conj(m.m00), std::conj(m.m10), std::conj(m.m01), std::conj(m.m11)};
}

Mat2 mat_identity() {
    return {1.0, 0.0, 0.0, 1.0};
}

Complex mat_det(const Mat2& m) {
    return m.m00 * m.m11 - m.m01 * m.m10;
}

Mat2 mat_inverse(const Mat2& m) {
    Complex d = mat_det(m);
    if (std::abs(d) < 1e-300)
        throw std::invalid_argument("mat_inverse: singular matrix");
    Complex inv = 1.0 / d;
    return {inv * m.m11, -inv * m.m01, -inv * m.m10, inv * m.m00};
}

Complex herm_inner(const StateVec& u, const StateVec& v) {
    return std::conj(u.a0) * v.a0 + std::conj(u.a1) * v.a1;
}

double herm_norm(const StateVec& v) {
    return std::sqrt(std::norm(v.a0) + std::norm(v.a1));
}

StateVec herm_normalize(const StateVec& v) {
    double n = herm_norm(v);
    if (n < 1e-150)
        throw std::invalid_argument("herm_normalize: zero vector");
    return {v.a0 / n, v.a1 / n};
}

Mat2 herm_projector(const StateVec& v) {
    double n2 = std::norm(v.a0) + std::norm(v.a1);
    if (n2 < 1e-300)
        throw std::invalid_argument("herm_projector: zero vector");
    return {v.a0 * std::conj(v.a0) / n2, v.a0 * std::conj(v.a1) / n2,
            v.a1 * std::conj(v.a0) / n2, v.a1 * std::conj(v.a1) / n2};
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double e = std::abs(a.m00 - b.m00);
    e = std::max(e, std::abs(a.m01 - b.m01));
    e = std::max(e, std::abs(a.m10 - b.m10));
    e = std::max(e, std::abs(a.m11 - b.m11));
    return e;
}

bool approx_eq(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - b) <= tol;
}

bool approx_eq(const StateVec& a, const StateVec& b, double tol) {
    return approx_eq(a.a0, b.a0, tol) && approx_eq(a.a1, b.a1, tol);
}

bool approx_eq(const Mat2& a, const Mat2& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

} // namespace ptqkd
