// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense 2x2 complex matrices and vectors. Everything the rest of the library
// needs is closed-form at this size: determinants, inverses, eigenvalues of a
// matrix product, and the principal square root of a positive definite matrix.
// No general linear algebra package is warranted for fixed 2x2 work.

#include <cmath>
#include <complex>
#include <string>

#include "gqf/errors.hpp"

namespace gqf {

using cplx = std::complex<double>;

struct Vec2 {
    cplx x{};
    cplx y{};
};

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(cplx s, const Vec2& v) { return {s * v.x, s * v.y}; }

// Row-major storage: [[a11, a12], [a21, a22]].
struct Mat2 {
    cplx a11{};
    cplx a12{};
    cplx a21{};
    cplx a22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    // Conjugate transpose.
    Mat2 adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }
};

inline Mat2 operator+(const Mat2& l, const Mat2& r) {
    return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
}

inline Mat2 operator-(const Mat2& l, const Mat2& r) {
    return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
}

inline Mat2 operator*(cplx s, const Mat2& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

inline Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
            l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}

inline cplx det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

inline cplx trace(const Mat2& m) { return m.a11 + m.a22; }

// Largest entry magnitude; the scale for all relative tolerances below.
inline double max_abs(const Mat2& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}

inline Mat2 inverse(const Mat2& m) {
    const cplx d = det(m);
    if (std::abs(d) < 1e-300 * std::max(1.0, max_abs(m)))
        throw SingularMatrixError("inverse: matrix is singular to working precision");
    const cplx s = 1.0 / d;
    return {s * m.a22, -s * m.a12, -s * m.a21, s * m.a11};
}

// (M1 + M2)^{-1} computed as (det(M1) M1^{-1} + det(M2) M2^{-1}) / det(M1 + M2).
// Valid for 2x2 because det(M) M^{-1} is the adjugate and adjugation is linear
// at this size. Used as a cross-check route for the inverse appearing in the
// characteristic function; it never needs the individual inverses to exist.
inline Mat2 sum_inverse_identity(const Mat2& m1, const Mat2& m2) {
    const Mat2 s = m1 + m2;
    const cplx ds = det(s);
    if (std::abs(ds) < 1e-300 * std::max(1.0, max_abs(s)))
        throw SingularMatrixError("sum_inverse_identity: M1 + M2 is singular");
    // adj(M) = det(M) M^{-1} without forming the inverse.
    const Mat2 adj1{m1.a22, -m1.a12, -m1.a21, m1.a11};
    const Mat2 adj2{m2.a22, -m2.a12, -m2.a21, m2.a11};
    return (1.0 / ds) * (adj1 + adj2);
}

inline bool is_hermitian(const Mat2& m, double tol = 1e-12) {
    const double scale = std::max(1.0, max_abs(m));
    return std::abs(m.a11 - std::conj(m.a11)) <= 2 * tol * scale &&
           std::abs(m.a22 - std::conj(m.a22)) <= 2 * tol * scale &&
           std::abs(m.a12 - std::conj(m.a21)) <= tol * scale;
}

// Hermitian with positive leading minors. Callers must have checked
// is_hermitian; the determinant of a Hermitian matrix is real.
inline bool is_positive_definite(const Mat2& m, double tol = 1e-12) {
    if (!is_hermitian(m, tol)) return false;
    return m.a11.real() > 0.0 && det(m).real() > 0.0;
}

// A 2x2 Hermitian matrix is indefinite exactly when its determinant is
// negative (one eigenvalue of each sign).
inline bool is_indefinite(const Mat2& m, double tol = 1e-12) {
    if (!is_hermitian(m, tol)) return false;
    return det(m).real() < 0.0;
}

// Quadratic form m^H M m. Real (up to rounding) when M is Hermitian.
inline cplx quad_form(const Vec2& m, const Mat2& M) {
    return std::conj(m.x) * (M.a11 * m.x + M.a12 * m.y) +
           std::conj(m.y) * (M.a21 * m.x + M.a22 * m.y);
}

// quad_form for Hermitian M, checked: the imaginary part must be rounding
// noise relative to the magnitude of the accumulated terms.
inline double quad_form_real(const Vec2& m, const Mat2& M) {
    const cplx q = quad_form(m, M);
    const double scale = (std::abs(m.x) + std::abs(m.y)) *
                             (std::abs(m.x) + std::abs(m.y)) * max_abs(M) +
                         std::abs(q);
    if (std::abs(q.imag()) > 1e-12 * (1.0 + scale))
        throw NumericalError("quad_form_real: non-negligible imaginary part " +
                             std::to_string(q.imag()));
    return q.real();
}

struct EigenPair {
    double delta1{}; // root taking the + sign of the square root (the larger)
    double delta2{}; // root taking the - sign (the smaller)
};

// Eigenvalues of R*Q for R Hermitian positive definite and Q Hermitian. Both
// are real: R^{1/2} Q R^{1/2} is Hermitian and similar to RQ. Solved from the
// characteristic polynomial x^2 - tr(RQ) x + det(R)det(Q); the larger-magnitude
// root is computed from the quadratic formula and the other from the product,
// which avoids cancellation when the roots are far apart.
inline EigenPair product_eigenvalues(const Mat2& R, const Mat2& Q) {
    const Mat2 P = R * Q;
    const cplx tr_c = trace(P);
    // tr(RQ) is real for Hermitian R, Q; the imaginary part is rounding noise.
    const double tr = tr_c.real();
    const double dt = det(R).real() * det(Q).real();

    double disc = tr * tr - 4.0 * dt;
    if (disc < 0.0) {
        const double scale = tr * tr + 4.0 * std::abs(dt);
        if (disc >= -1e-10 * std::max(1e-300, scale))
            disc = 0.0;
        else
            throw NumericalError(
                "product_eigenvalues: discriminant negative beyond tolerance; "
                "inputs are not a PD/Hermitian pair");
    }
    const double s = std::sqrt(disc);
    if (tr >= 0.0) {
        const double big = 0.5 * (tr + s);
        return {big, big != 0.0 ? dt / big : 0.5 * (tr - s)};
    }
    const double small = 0.5 * (tr - s); // larger magnitude when tr < 0
    return {small != 0.0 ? dt / small : 0.5 * (tr + s), small};
}

// Principal square root of a Hermitian positive definite 2x2 matrix:
//   sqrt(R) = (R + sqrt(det R) I) / sqrt(tr R + 2 sqrt(det R)).
// Follows from Cayley-Hamilton: any polynomial square root must be of the
// form (R + c I)/d, and matching det and trace fixes c and d.
inline Mat2 sqrt_pd(const Mat2& R) {
    if (!is_positive_definite(R))
        throw ValidationError("sqrt_pd: input is not Hermitian positive definite");
    const double d = std::sqrt(det(R).real());
    const double denom = std::sqrt(trace(R).real() + 2.0 * d);
    return (1.0 / denom) * (R + Mat2{d, 0.0, 0.0, d});
}

} // namespace gqf
