#pragma once
// Upper half-space model of hyperbolic 3-space: points u = (z, r) with
// z in C and r > 0, metric ds^2 = (|dz|^2 + dr^2)/r^2.  Matrices over the
// ring act by the quaternionic Moebius formula; the hyperbolic Laplacian
// is provided as a 7-point finite difference stencil for verification use.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "kleinian/numfield.hpp"

namespace kleinian {

struct H3 {
    std::complex<double> z;
    double r = 1.0;
};

struct Mat2 {
    AlgInt a, b, c, d;
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 matmul(const ImagQuadField& F, const Mat2& M, const Mat2& N) {
    return {F.mul(M.a, N.a) + F.mul(M.b, N.c), F.mul(M.a, N.b) + F.mul(M.b, N.d),
            F.mul(M.c, N.a) + F.mul(M.d, N.c), F.mul(M.c, N.b) + F.mul(M.d, N.d)};
}

inline AlgInt det(const ImagQuadField& F, const Mat2& M) {
    return F.mul(M.a, M.d) - F.mul(M.b, M.c);
}

inline bool is_unimodular(const ImagQuadField& F, const Mat2& M) {
    return det(F, M) == AlgInt{1, 0};
}

// Inverse of a determinant-one matrix.
inline Mat2 inverse(const ImagQuadField& F, const Mat2& M) {
    if (!is_unimodular(F, M)) throw std::invalid_argument("matrix must have det 1");
    return {M.d, -M.b, -M.c, M.a};
}

inline Mat2 translation(AlgInt beta) { return {{1, 0}, beta, {0, 0}, {1, 0}}; }
inline Mat2 inversion() { return {{0, 0}, {-1, 0}, {1, 0}, {0, 0}}; }

// |c z + d|^2 + |c|^2 r^2, the denominator of the isometric action.
// It equals 1/r' * r and carries the automorphy of every object here.
inline double action_denominator(const ImagQuadField& F, const Mat2& M, const H3& u) {
    std::complex<double> c = F.embed(M.c), d = F.embed(M.d);
    return std::norm(c * u.z + d) + std::norm(c) * u.r * u.r;
}

inline H3 apply(const ImagQuadField& F, const Mat2& M, const H3& u) {
    std::complex<double> a = F.embed(M.a), b = F.embed(M.b);
    std::complex<double> c = F.embed(M.c), d = F.embed(M.d);
    double den = std::norm(c * u.z + d) + std::norm(c) * u.r * u.r;
    std::complex<double> zn =
        (a * u.z + b) * std::conj(c * u.z + d) + a * std::conj(c) * u.r * u.r;
    return {zn / den, u.r / den};
}

// Hyperbolic Laplacian  D f = r^2 (f_xx + f_yy + f_rr) - r f_r  as a
// 7-point central difference stencil.  Step defaults to 1e-3 * r, which
// balances truncation against cancellation for smooth f of size O(1).
template <typename Fn>
double laplace_beltrami(Fn&& f, const H3& u, double h = 0.0) {
    if (h <= 0.0) h = 1e-3 * u.r;
    const double x = u.z.real(), y = u.z.imag(), r = u.r;
    auto at = [&](double xx, double yy, double rr) {
        return f(H3{{xx, yy}, rr});
    };
    double f0 = at(x, y, r);
    double fxx = at(x + h, y, r) + at(x - h, y, r) - 2 * f0;
    double fyy = at(x, y + h, r) + at(x, y - h, r) - 2 * f0;
    double frp = at(x, y, r + h), frm = at(x, y, r - h);
    double frr = frp + frm - 2 * f0;
    double fr = (frp - frm) / (2 * h);
    return r * r * (fxx + fyy + frr) / (h * h) - r * fr;
}

}  // namespace kleinian
