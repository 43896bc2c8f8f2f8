#pragma once
// Coset bookkeeping for the stabilizer of the cusp at infinity inside the
// modular group over O.  The translation-subgroup cosets are indexed by
// pairs +-(c,d) of coprime ring elements; this header enumerates the c
// strata, completes a coprime pair to a determinant-one matrix, and
// evaluates the Ramanujan-type character sums over coprime residues that
// appear in the Fourier expansion.  Ideal Moebius and divisor tables are
// here too since the character sums reduce to them.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kleinian/hspace.hpp"
#include "kleinian/lattice.hpp"
#include "kleinian/numfield.hpp"

namespace kleinian {

// Index of the full cusp stabilizer over its translation subgroup; equals
// half the unit count (the stabilizer adds the maps z -> u^2 z).
inline int cusp_index(const ImagQuadField& F) { return F.num_units() / 2; }

// Complete the coprime pair (c,d) to a matrix [[a,b],[c,d]] with det 1.
inline Mat2 complete_to_matrix(const ImagQuadField& F, AlgInt c, AlgInt d) {
    auto [g, u, v] = F.extended_gcd(c, d);
    if (F.norm(g) != 1) throw std::invalid_argument("pair is not coprime");
    // u c + v d = g with g a unit; multiply through by g^{-1} = conj(g)
    AlgInt gi = F.conj(g);
    return {F.mul(v, gi), -F.mul(u, gi), c, d};
}

// Moebius function of the ideal (a): 0 unless squarefree, else (-1)^k.
inline int moebius_ideal(const ImagQuadField& F, AlgInt a) {
    if (F.is_unit(a)) return 1;
    int k = 0;
    for (const IdealFactor& f : F.factor_ideal(a)) {
        if (f.exponent > 1) return 0;
        ++k;
    }
    return (k % 2) ? -1 : 1;
}

// All ideal divisors of (a), reported as (norm, moebius value) pairs in a
// deterministic order.  Conjugate prime divisors contribute separately,
// so norms can repeat.
inline std::vector<std::pair<int64_t, int>> divisor_ideals(const ImagQuadField& F,
                                                           AlgInt a) {
    auto factors = F.factor_ideal(a);
    std::vector<std::pair<int64_t, int>> out{{1, 1}};
    for (const IdealFactor& f : factors) {
        size_t base = out.size();
        int64_t pn = f.prime_norm;
        for (int e = 1; e <= f.exponent; ++e) {
            int64_t pe = 1;
            for (int i = 0; i < e; ++i) pe *= pn;
            for (size_t i = 0; i < base; ++i) {
                int mu = (e == 1) ? -out[i].second : 0;
                out.push_back({out[i].first * pe, mu});
            }
        }
    }
    return out;
}

// One representative of each pair {c, -c}, 0 < N(c) <= floor(c_max^2),
// sorted by (norm, angle).  These index the nonzero strata of the series.
inline std::vector<AlgInt> strata_c(const ImagQuadField& F, double c_max) {
    std::vector<AlgInt> out;
    for (AlgInt c : disk(F, c_max))
        if (in_plus_half(c)) out.push_back(c);
    return out;
}

// S_c(beta) = sum over residues delta coprime to c of e(<theta*beta, delta/c>).
// The phase is the exact rational y-coord(conj(beta)*delta*conj(c))/N(c),
// so every term is evaluated without rounding in the argument.  The value
// is real (delta -> -delta pairs terms conjugately); callers may assert so.
// Closed form: S_c(beta) = sum of N(t) mu((c)/t) over ideal divisors t of (c)
// whose CONJUGATE divides beta; the conjugate comes from the conj(c) in the
// phase.  Norm-level consequences (sigma factors in the Fourier modes) are
// unaffected since conjugation permutes ideals norm-preservingly.
inline std::complex<double> char_sum(const ImagQuadField& F, AlgInt c,
                                     const std::vector<AlgInt>& coprime_residues,
                                     AlgInt beta) {
    std::complex<double> acc = 0.0;
    for (AlgInt delta : coprime_residues) {
        auto [num, den] = pairing_frac(F, beta, delta, c);
        double frac = double(num % den) / double(den);
        acc += std::polar(1.0, 2.0 * M_PI * frac);
    }
    return acc;
}

}  // namespace kleinian
