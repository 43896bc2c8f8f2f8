#pragma once
// The period lattice O embedded in C and its dual.  Enumeration order is
// part of the contract: elements come back sorted by (norm, angle), so
// every truncated lattice sum downstream is reproducible bit for bit.
//
// The dual lattice is theta * O with theta = 2i/sqrt(|disc|): for beta,
// lambda in O the pairing <theta*beta, lambda> = Re(conj(theta*beta)*lambda)
// equals the omega-coordinate of conj(beta)*lambda, an exact integer.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "kleinian/numfield.hpp"

namespace kleinian {

// All lattice points with 0 < N(a) <= floor(R^2), sorted by (norm, angle).
// Membership is decided on the exact integer norm, never on the embedding.
inline std::vector<AlgInt> disk(const ImagQuadField& F, double R,
                                bool include_zero = false) {
    int64_t nmax = int64_t(std::floor(R * R * (1.0 + 1e-12)));
    std::vector<AlgInt> pts;
    double im = F.omega().imag(), re = F.omega().real();
    int64_t ymax = int64_t(std::floor(R / im)) + 1;
    for (int64_t y = -ymax; y <= ymax; ++y) {
        double h = double(y) * im;
        double rad2 = R * R - h * h;
        if (rad2 < -1.0) continue;
        double half = std::sqrt(std::max(rad2, 0.0));
        int64_t xlo = int64_t(std::floor(-double(y) * re - half)) - 1;
        int64_t xhi = int64_t(std::ceil(-double(y) * re + half)) + 1;
        for (int64_t x = xlo; x <= xhi; ++x) {
            AlgInt a{x, y};
            int64_t n = F.norm(a);
            if (n > nmax || (n == 0 && !include_zero)) continue;
            pts.push_back(a);
        }
    }
    std::sort(pts.begin(), pts.end(), [&](AlgInt a, AlgInt b) {
        int64_t na = F.norm(a), nb = F.norm(b);
        if (na != nb) return na < nb;
        double ta = std::atan2(F.embed(a).imag(), F.embed(a).real());
        double tb = std::atan2(F.embed(b).imag(), F.embed(b).real());
        if (ta != tb) return ta < tb;
        return std::pair(a.x, a.y) < std::pair(b.x, b.y);
    });
    return pts;
}

struct Shell {
    int64_t norm = 0;
    std::vector<AlgInt> elems;
};

inline std::vector<Shell> shells_by_norm(const ImagQuadField& F, int64_t max_norm) {
    std::vector<Shell> out;
    for (AlgInt a : disk(F, std::sqrt(double(max_norm)) + 1e-9)) {
        int64_t n = F.norm(a);
        if (n > max_norm) continue;
        if (out.empty() || out.back().norm != n) out.push_back({n, {}});
        out.back().elems.push_back(a);
    }
    return out;
}

// theta = 2i/sqrt(|disc|); the dual lattice is theta * O.
inline std::complex<double> dual_scale(const ImagQuadField& F) {
    return {0.0, 2.0 / F.sqrt_abs_disc()};
}

inline std::complex<double> dual_embed(const ImagQuadField& F, AlgInt beta) {
    return dual_scale(F) * F.embed(beta);
}

// <theta*beta, z> = Re(conj(theta*beta) * z) for a general z in C.
inline double pairing(const ImagQuadField& F, AlgInt beta, std::complex<double> z) {
    return (std::conj(dual_embed(F, beta)) * z).real();
}

// Exact pairing at the cusp point z = d/c: the value is the rational
// y-coord(conj(beta)*d*conj(c)) / N(c).  Returned unreduced.
inline std::pair<int64_t, int64_t> pairing_frac(const ImagQuadField& F, AlgInt beta,
                                                AlgInt d, AlgInt c) {
    AlgInt num = F.mul(F.conj(beta), F.mul(d, F.conj(c)));
    return {num.y, F.norm(c)};
}

// Canonical choice of one frequency out of each pair {w', -w'}: in beta
// coordinates, keep y < 0, breaking ties on the real axis by x > 0.  In the
// embedding this is the right half plane Re(w') > 0 (Re(theta*beta) = -y).
inline bool in_plus_half(AlgInt beta) {
    return beta.y < 0 || (beta.y == 0 && beta.x > 0);
}

}  // namespace kleinian
