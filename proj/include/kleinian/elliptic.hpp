#pragma once
// Weierstrass lattice functions and the elliptic Dedekind sums built on
// them.  A lattice is given by periods (w1, w2) with Im(w2/w1) > 0.
//
// Invariants g2, g3 come from the Eisenstein q-series at tau = w2/w1
// together with the weight -4 / -6 homogeneity.  zeta is implemented by two
// independent routes:
//   (A) the Laurent expansion about 0 with the classical coefficient
//       recursion c2 = g2/20, c3 = g3/28,
//       c_k = 3/((2k+1)(k-3)) sum_{m} c_m c_{k-m},
//       after reducing the argument to a nearest-lattice-point cell;
//   (B) the cotangent q-series
//       zeta(z) = eta1 z + pi cot(pi z)
//                 + sum_{m>=1} [-2 pi i t_m/(1-t_m) + 2 pi i s_m/(1-s_m)],
//       t_m = e(z) q^m, s_m = e(-z) q^m, on the normalized lattice Z+tauZ,
// with quasi-period bookkeeping zeta(z + m w1 + n w2) = zeta(z) + m eta1
// + n eta2, eta1 = pi^2 E2(tau)/(3 w1), eta2 via the Legendre relation
// eta1 w2 - eta2 w1 = 2 pi i.
//
// The limit value s2 = lim_{s->0} sum' w^{-2}|w|^{-2s} enters through
//   s2 = eta1/w1 - (pi/area) conj(w1)/w1,
// and the Lambda-periodic, odd Eisenstein series of weight one is
//   E1(z) = zeta(z) - s2 z - (pi/area) conj(z).
// The elliptic Dedekind sum over a denominator d is
//   D(c, d) = (1/d) sum_{k in Lambda/d Lambda} E1(ck/d) E1(k/d),
// k running over residues with k, ck both nonzero mod d.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "numfield.hpp"
#include "sums.hpp"

namespace kleinian {

struct EllipticLattice {
    std::complex<double> w1, w2, tau, q;
    double area;                      // Im(conj(w1) w2) > 0
    std::complex<double> g2, g3, delta;
    std::complex<double> eta1, eta2;  // quasi-periods for w1, w2
    std::complex<double> s2;
    std::vector<std::complex<double>> ck;  // Laurent coefficients, ck[k], k >= 2
};

namespace detail {

// normalized Eisenstein series at tau; |q| < 0.005 for every lattice used
// here, so a handful of terms reaches full precision
inline void eisenstein_q(std::complex<double> q, std::complex<double>& e2,
                         std::complex<double>& e4, std::complex<double>& e6) {
    e2 = 1.0;
    e4 = 1.0;
    e6 = 1.0;
    std::complex<double> qn = 1.0;
    for (int n = 1; n <= 40; ++n) {
        qn *= q;
        double s1 = 0, s3 = 0, s5 = 0;
        for (int t = 1; t <= n; ++t)
            if (n % t == 0) {
                double t2 = double(t) * t;
                s1 += t;
                s3 += t2 * t;
                s5 += t2 * t2 * t;
            }
        e2 -= 24.0 * s1 * qn;
        e4 += 240.0 * s3 * qn;
        e6 -= 504.0 * s5 * qn;
    }
}

}  // namespace detail

inline EllipticLattice make_lattice(std::complex<double> w1,
                                    std::complex<double> w2) {
    EllipticLattice L;
    L.w1 = w1;
    L.w2 = w2;
    L.tau = w2 / w1;
    if (L.tau.imag() <= 0.0)
        throw std::invalid_argument("make_lattice: need Im(w2/w1) > 0");
    L.area = (std::conj(w1) * w2).imag();
    L.q = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi) * L.tau);
    std::complex<double> e2, e4, e6;
    detail::eisenstein_q(L.q, e2, e4, e6);
    double pi = std::numbers::pi;
    std::complex<double> w14 = std::pow(w1, 4), w16 = std::pow(w1, 6);
    L.g2 = 4.0 * pi * pi * pi * pi / 3.0 * e4 / w14;
    L.g3 = 8.0 * std::pow(pi, 6) / 27.0 * e6 / w16;
    L.delta = L.g2 * L.g2 * L.g2 - 27.0 * L.g3 * L.g3;
    L.eta1 = pi * pi / 3.0 * e2 / w1;
    L.eta2 = (L.eta1 * w2 - std::complex<double>(0.0, 2.0 * pi)) / w1;
    L.s2 = L.eta1 / w1 - pi / L.area * std::conj(w1) / w1;
    // Laurent coefficients of wp; zeta integrates them termwise
    int kmax = 170;
    L.ck.assign(kmax + 1, 0.0);
    L.ck[2] = L.g2 / 20.0;
    L.ck[3] = L.g3 / 28.0;
    for (int k = 4; k <= kmax; ++k) {
        std::complex<double> acc = 0.0;
        for (int m = 2; m <= k - 2; ++m) acc += L.ck[m] * L.ck[k - m];
        L.ck[k] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * acc;
    }
    return L;
}

namespace detail {

// nearest-lattice-point reduction: z = z0 + m w1 + n w2 with |z0| no larger
// than the covering radius (rounding plus a 3x3 neighbor search)
inline std::complex<double> reduce_cell(const EllipticLattice& L,
                                        std::complex<double> z, long& m,
                                        long& n) {
    double v = (std::conj(L.w1) * z).imag() / L.area;
    n = std::lround(v);
    std::complex<double> t = z - double(n) * L.w2;
    double u = (std::conj(L.w2) * t).imag() / (std::conj(L.w2) * L.w1).imag();
    m = std::lround(u);
    std::complex<double> z0 = t - double(m) * L.w1;
    for (int dm = -1; dm <= 1; ++dm)
        for (int dn = -1; dn <= 1; ++dn) {
            std::complex<double> cand =
                z0 - double(dm) * L.w1 - double(dn) * L.w2;
            if (std::abs(cand) < std::abs(z0)) {
                z0 = cand;
                m += dm;
                n += dn;
            }
        }
    return z0;
}

}  // namespace detail

// route A: Laurent series after cell reduction
inline std::complex<double> zeta_laurent(const EllipticLattice& L,
                                         std::complex<double> z) {
    long m, n;
    std::complex<double> z0 = detail::reduce_cell(L, z, m, n);
    if (std::abs(z0) < 1e-12)
        throw std::invalid_argument("zeta_laurent: argument on the lattice");
    std::complex<double> acc = 1.0 / z0;
    std::complex<double> z2 = z0 * z0;
    std::complex<double> p = z0;  // z0^{2k-1} running power
    for (size_t k = 2; k < L.ck.size(); ++k) {
        p *= z2;
        acc -= L.ck[k] * p / (2.0 * k - 1.0);
    }
    return acc + double(m) * L.eta1 + double(n) * L.eta2;
}

// route B: cotangent q-series on the normalized lattice Z + tau Z, then
// scaled back by homogeneity zeta(z; w1 Lambda) = zeta(z/w1; Lambda)/w1
inline std::complex<double> zeta_qseries(const EllipticLattice& L,
                                         std::complex<double> z) {
    long m, n;
    std::complex<double> z0 = detail::reduce_cell(L, z, m, n);
    if (std::abs(z0) < 1e-12)
        throw std::invalid_argument("zeta_qseries: argument on the lattice");
    std::complex<double> u = z0 / L.w1;
    double pi = std::numbers::pi;
    std::complex<double> i2pi(0.0, 2.0 * pi);
    std::complex<double> ep = std::exp(i2pi * u), em = std::exp(-i2pi * u);
    // pi cot(pi u) = i pi (ep + 1)/(ep - 1)
    std::complex<double> acc =
        std::complex<double>(0.0, pi) * (ep + 1.0) / (ep - 1.0);
    std::complex<double> qm = 1.0;
    for (int k = 1; k <= 60; ++k) {
        qm *= L.q;
        std::complex<double> tm = ep * qm, sm = em * qm;
        acc += -i2pi * tm / (1.0 - tm) + i2pi * sm / (1.0 - sm);
        if (std::abs(qm) < 1e-18) break;
    }
    acc += (L.eta1 * L.w1) * u;  // normalized-lattice quasi-period term
    return acc / L.w1 + double(m) * L.eta1 + double(n) * L.eta2;
}

// Weierstrass wp and wp' from the same Laurent data (used to close the
// algebraic relation between g2 and g3 in the tests)
inline std::complex<double> wp_laurent(const EllipticLattice& L,
                                       std::complex<double> z) {
    long m, n;
    std::complex<double> z0 = detail::reduce_cell(L, z, m, n);
    std::complex<double> z2 = z0 * z0;
    std::complex<double> acc = 1.0 / z2;
    std::complex<double> p = 1.0;  // z0^{2k-2}
    for (size_t k = 2; k < L.ck.size(); ++k) {
        p *= z2;
        acc += L.ck[k] * p;
    }
    return acc;
}

inline std::complex<double> wp_prime_laurent(const EllipticLattice& L,
                                             std::complex<double> z) {
    long m, n;
    std::complex<double> z0 = detail::reduce_cell(L, z, m, n);
    std::complex<double> z2 = z0 * z0;
    std::complex<double> acc = -2.0 / (z2 * z0);
    std::complex<double> p = z0;  // z0^{2k-3}
    for (size_t k = 2; k < L.ck.size(); ++k) {
        acc += (2.0 * k - 2.0) * L.ck[k] * p;
        p *= z2;
    }
    return acc;
}

// Lambda-periodic odd Eisenstein series of weight one
inline std::complex<double> eisenstein_e1(const EllipticLattice& L,
                                          std::complex<double> z) {
    return zeta_qseries(L, z) - L.s2 * z
         - std::numbers::pi / L.area * std::conj(z);
}

// elliptic Dedekind sum over O_K: D(c,d) with k running over residues of
// Lambda/d Lambda, skipping k in d Lambda and ck in d Lambda
inline std::complex<double> sczech_sum(const ImagQuadField& F, AlgInt c,
                                       AlgInt d) {
    if (d.x == 0 && d.y == 0)
        throw std::invalid_argument("sczech_sum: d must be nonzero");
    EllipticLattice L = make_lattice(1.0, F.omega());
    std::complex<double> dc = F.embed(d);
    std::complex<double> acc = 0.0;
    for (AlgInt k : F.residues_mod(d)) {
        if (F.divides(d, k) || F.divides(d, F.mul(c, k))) continue;
        acc += eisenstein_e1(L, F.embed(F.mul(c, k)) / dc)
             * eisenstein_e1(L, F.embed(k) / dc);
    }
    return acc / dc;
}

}  // namespace kleinian
