#pragma once
// Behavior of E(u, s) at s = 1: Laurent data of the zero mode, the limit
// identity, the eta analogue built from the s = 1 Fourier modes, its
// transformation law, the associated real homomorphism D, and the
// alternative normalization of the limit function used by the classical
// full-lattice Eisenstein series.
//
// Writing phi0(s) = a/(s-1) + b + O(s-1), the zero mode expands as
//   a0(r, s) = alpha/(s-1) + beta(r) + O(s-1),
//   alpha   = pi a / |La|,
//   beta(r) = kappa r^2 + (pi/|La|) (b - a - a log r),
// from the Cauchy product (a/(s-1) + b)(1 - (s-1))(1 - (s-1) log r).
// With C := pi a / |La| = alpha the limit identity reads
//   lim_{s->1} (E(u,s) - alpha/(s-1))
//       = (pi/|La|)(b - a) - C log| r eta(u)^2 |,
//   C log eta(u) := -( kappa r^2 / 2
//                      + sum_{omega' in La'_+} a_{omega'}(r,1) q^{omega'} ).
// The leading minus sign makes log|r eta^2| enter with the sign that the
// identity forces; the group invariance of E controls the real part:
//   Re log eta(M u) = Re log eta(u) + (1/2) log(|cz+d|^2 + |c|^2 r^2).
// The imaginary part obeys the exact base-point cocycle
//   D(M, u) := Im(log eta(M u) - log eta(u)) / pi,
//   D(M N, u) = D(M, N u) + D(N, u),    D(M, u) = -D(M^{-1}, M u),
// but it is NOT constant in u: the measured spread across base points is of
// order 1e-2, four orders above truncation noise (see tests).  Constancy
// would make D a homomorphism Gamma -> R, which the finite abelianization
// of these groups forces to vanish; the measured D is not zero either, so
// the u-dependence is structural, not a truncation artifact.  d_gamma
// returns a median over fixed base points and callers report the sample
// spread alongside it.
//
// The full-lattice normalization: scaling the same mode sum by
//   rho = |disc| zeta_K(2) / (2 pi^2)
// yields the function g with g(M u) + log(|cz+d|^2+|c|^2 r^2) = g(u) and
// g = -2 log|eta| exactly, because rho alpha = 1.  g is assembled here from
// an independent coefficient route (element-count sigma factors) so the two
// pipelines cross-check each other.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "eisenstein.hpp"
#include "hspace.hpp"
#include "lattice.hpp"
#include "numfield.hpp"
#include "specfun.hpp"
#include "sums.hpp"

namespace kleinian {

struct LaurentData {
    double a;        // residue of phi0 at s = 1
    double b;        // constant term of phi0 at s = 1
    double alpha;    // residue of E at s = 1, pi a / |La|
    double C;        // eta normalization constant; equals alpha
    double kappa;    // units modulo +-1
    double covol;    // |La|
};

inline LaurentData laurent_data(const ImagQuadField& F) {
    double kappa = 0.5 * F.num_units();
    double l1 = dirichlet_l1(F.disc());
    double zk2 = dedekind_zeta(F, 2.0);
    double a = kappa * l1 / zk2;
    // b/a = gamma + L'(1)/L(1) - zeta_K'(2)/zeta_K(2)
    double b = a * (euler_gamma + dirichlet_l_deriv(1.0, F.disc()) / l1
                    - dedekind_zeta_deriv(F, 2.0) / zk2);
    double alpha = std::numbers::pi * a / F.lattice_covolume();
    return {a, b, alpha, alpha, kappa, F.lattice_covolume()};
}

// constant term beta(r) of the zero mode at s = 1
inline double laurent_beta(const ImagQuadField& F, double r) {
    LaurentData L = laurent_data(F);
    return L.kappa * r * r
         + std::numbers::pi / L.covol * (L.b - L.a - L.a * std::log(r));
}

// lim_{s->1}(E(u,s) - alpha/(s-1)) by Richardson extrapolation in
// eps = s - 1; the three-point rule cancels the eps and eps^2 terms.
inline double klf_limit(const ImagQuadField& F, const H3& u,
                        double eps = 5e-3, double decay = 40.0) {
    LaurentData L = laurent_data(F);
    auto f = [&](double e) {
        return eisenstein_fourier(F, u, 1.0 + e, decay) - L.alpha / e;
    };
    return (8.0 * f(eps / 4.0) - 6.0 * f(eps / 2.0) + f(eps)) / 3.0;
}

// same limit through an arbitrary strictly decreasing eps schedule:
// Lagrange extrapolation of f to eps = 0, exact for polynomials of degree
// < n in eps.  The default schedule (e, e/2, e/4) reproduces the rule above.
inline double klf_limit(const ImagQuadField& F, const H3& u,
                        const std::vector<double>& sched,
                        double decay = 40.0) {
    LaurentData L = laurent_data(F);
    std::vector<double> fv;
    for (double e : sched)
        fv.push_back(eisenstein_fourier(F, u, 1.0 + e, decay) - L.alpha / e);
    double out = 0.0;
    for (size_t i = 0; i < sched.size(); ++i) {
        double li = 1.0;
        for (size_t j = 0; j < sched.size(); ++j)
            if (j != i) li *= -sched[j] / (sched[i] - sched[j]);
        out += fv[i] * li;
    }
    return out;
}

// C log eta(u) = -(kappa r^2/2 + sum over plus-half modes); complex valued.
// The nonzero modes are regular at s = 1, so they are assembled directly
// instead of through the series factory, whose zero mode has the pole.
inline std::complex<double> log_eta(const ImagQuadField& F, const H3& u,
                                    double decay = 40.0) {
    LaurentData L = laurent_data(F);
    double beta_max =
        decay * F.sqrt_abs_disc() / (4.0 * std::numbers::pi * u.r);
    std::complex<double> acc(0.5 * L.kappa * u.r * u.r, 0.0);
    for (AlgInt b : strata_c(F, beta_max)) {
        double ph = 2.0 * std::numbers::pi * pairing(F, b, u.z);
        acc += fourier_mode(F, b, u.r, 1.0)
             * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return -acc / L.C;
}

// righthand side of the limit identity
inline double klf_rhs(const ImagQuadField& F, const H3& u,
                      double decay = 40.0) {
    LaurentData L = laurent_data(F);
    double log_abs = std::log(u.r) + 2.0 * log_eta(F, u, decay).real();
    return std::numbers::pi / L.covol * (L.b - L.a) - L.C * log_abs;
}

// D(M) = Im(log eta(Mu) - log eta(u) - (1/2) log denom) / pi at one point
inline double d_gamma_at(const ImagQuadField& F, const Mat2& M, const H3& u,
                         double decay = 40.0) {
    H3 v = apply(F, M, u);
    std::complex<double> diff = log_eta(F, v, decay) - log_eta(F, u, decay);
    return diff.imag() / std::numbers::pi;
}

// median over a small fixed sample of base points; D(M, .) varies with the
// base point (see banner), so the median is a summary, not a constant, and
// the sample spread is the honest error bar
inline double d_gamma(const ImagQuadField& F, const Mat2& M,
                      double decay = 40.0) {
    static const H3 samples[5] = {{{0.13, 0.21}, 0.9},
                                  {{-0.31, 0.17}, 1.1},
                                  {{0.05, -0.23}, 1.35},
                                  {{0.42, 0.08}, 0.8},
                                  {{-0.11, -0.37}, 1.02}};
    std::vector<double> vals;
    for (const H3& u : samples) vals.push_back(d_gamma_at(F, M, u, decay));
    std::sort(vals.begin(), vals.end());
    return vals[2];
}

// rho = |disc| zeta_K(2) / (2 pi^2); rho * alpha = 1.
inline double egm_scale(const ImagQuadField& F) {
    return std::abs(double(F.disc())) * dedekind_zeta(F, 2.0)
         / (2.0 * std::numbers::pi * std::numbers::pi);
}

// The full-lattice limit function in its own normalization, assembled from
// element-counting coefficients rather than the phi ratios:
//   g(u) = rho kappa r^2 + sum_{beta != 0} 2 u_K |beta| sigma_{-1}((beta))
//          r K_1(2 pi |theta beta| r) q^{theta beta}.
// Equals -2 log|eta(u)| identically; computed independently here.
inline double egm_g(const ImagQuadField& F, const H3& u, double decay = 40.0) {
    double rho = egm_scale(F);
    double kappa = 0.5 * F.num_units();
    double beta_max =
        decay * F.sqrt_abs_disc() / (4.0 * std::numbers::pi * u.r);
    KahanSum acc;
    for (AlgInt b : strata_c(F, beta_max)) {
        double w = std::abs(dual_embed(F, b));
        acc.add(4.0 * F.num_units() * std::abs(F.embed(b))
                * sigma_minus(F, b, 1.0) * u.r
                * bessel_k(1.0, 2.0 * std::numbers::pi * w * u.r)
                * std::cos(2.0 * std::numbers::pi * pairing(F, b, u.z)));
    }
    return rho * kappa * u.r * u.r + acc.value();
}

// B(r) as printed in the source being verified; depends on the elliptic
// discriminant of O through gtilde = (2 pi)^{-12} |Delta(O)|.  The audited
// relation g = -2 log|eta| has no such additive term; B is reported, not
// asserted.
inline double b_gamma(const ImagQuadField& F, double r, double gtilde) {
    double ad = std::abs(double(F.disc()));
    return 4.0 * std::numbers::pi * std::numbers::pi / ad
         * (2.0 * euler_gamma - 1.0 - std::log(ad) - std::log(r)
            - std::log(gtilde) / 6.0);
}

}  // namespace kleinian
