#pragma once
// Eisenstein series at the cusp infinity for the modular group over O,
//
//   E(u, s) = (1/2) sum over coprime pairs (c,d) in O^2 of
//             (r / (|c z + d|^2 + |c|^2 r^2))^{1+s},   u = (z, r),
//
// i.e. one term per pair +-(c,d).  Convergent for s > 1; continued
// everywhere through its Fourier expansion across the cusp:
//
//   E(u, s) = kappa r^{1+s} + (pi / (s |La|)) phi0(s) r^{1-s}
//           + sum_{omega' != 0 in La'} a_{omega'}(r, s) e(<omega', z>),
//
//   a_{omega'}(r, s) = (2 pi^{1+s} / (|La| Gamma(1+s))) |omega'|^s
//                      phi_{omega'}(s) r K_s(2 pi |omega'| r),
//
// where La' = theta O is the dual lattice, theta = 2i/sqrt|disc|, kappa is
// the number of units modulo +-1, and the phi's are Dirichlet series over
// the c strata that collapse to ratios of field zeta data:
//
//   phi0(s)         = kappa zeta_K(s) / zeta_K(s+1)
//   phi_{theta beta}(s) = kappa sigma_{-s}((beta)) / zeta_K(s+1).
//
// (The character sums behind phi_{theta beta} involve the divisors of
// conj(beta); only divisor norms survive into sigma, so the conjugate is
// invisible here.  See char_sum in cosets.hpp.)
//
// Three evaluators:
//  * eisenstein_fourier: convergent Fourier series with closed-form
//    coefficients, valid for every s > 0.  Used everywhere downstream.
//  * eisenstein_direct: the defining coset sum, made summable at a finite
//    stratum cutoff by a smooth window in the translation variable plus
//    the exact lattice-mean of the removed tail.
//  * eisenstein_fourier_truncated: the Fourier side rebuilt from brute
//    character sums over the same finite stratum set.  Windowing is the
//    only difference between the two, so they agree to the tiny Fourier
//    leakage of the window and the pair makes a sharp end-to-end test
//    without waiting on the slowly convergent raw sum.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cosets.hpp"
#include "hspace.hpp"
#include "lattice.hpp"
#include "numfield.hpp"
#include "specfun.hpp"
#include "sums.hpp"

namespace kleinian {

// sigma_{-s}((beta)): sum of N(t)^{-s} over the ideal divisors t of (beta).
inline double sigma_minus(const ImagQuadField& F, AlgInt beta, double s) {
    KahanSum acc;
    for (auto [n, mu] : divisor_ideals(F, beta)) {
        (void)mu;
        acc.add(std::pow(double(n), -s));
    }
    return acc.value();
}

inline double phi0(const ImagQuadField& F, double s) {
    return 0.5 * F.num_units() * dedekind_zeta(F, s) / dedekind_zeta(F, s + 1.0);
}

inline double phi_mode(const ImagQuadField& F, AlgInt beta, double s) {
    return 0.5 * F.num_units() * sigma_minus(F, beta, s)
         / dedekind_zeta(F, s + 1.0);
}

// Planar Fourier transform of the kernel g(w) = (|w|^2 + r^2)^{-1-s}:
//   g_hat(xi) = (2 pi^{1+s} / Gamma(1+s)) |xi|^s r^{-s} K_s(2 pi r |xi|),
//   g_hat(0)  = pi r^{-2s} / s.
inline double g_hat(double s, double r, double xi_abs) {
    if (xi_abs == 0.0) return std::numbers::pi * std::pow(r, -2.0 * s) / s;
    return 2.0 * std::pow(std::numbers::pi, 1.0 + s) / std::tgamma(1.0 + s)
         * std::pow(xi_abs, s) * std::pow(r, -s)
         * bessel_k(s, 2.0 * std::numbers::pi * r * xi_abs);
}

inline double fourier_zero_mode(const ImagQuadField& F, double r, double s) {
    return 0.5 * F.num_units() * std::pow(r, 1.0 + s)
         + std::numbers::pi / (s * F.lattice_covolume()) * phi0(F, s)
           * std::pow(r, 1.0 - s);
}

// a_{theta beta}(r, s); depends on beta only through |beta| and the divisor
// norms of (beta), so a_{-omega'} = a_{omega'}.
inline double fourier_mode(const ImagQuadField& F, AlgInt beta, double r,
                           double s) {
    double w = std::abs(dual_embed(F, beta));
    return g_hat(s, r, w) * std::pow(r, 1.0 + s) * phi_mode(F, beta, s)
         / F.lattice_covolume();
}

// Nonzero-mode table for fixed (r, s).  Modes are kept while
// 2 pi |omega'| r <= decay, i.e. until K_s has shrunk below ~e^{-decay}.
// Only plus-half representatives are stored; eval pairs beta with -beta.
struct FourierSeries {
    const ImagQuadField* field;
    double r, s, zero_mode;
    std::vector<AlgInt> betas;
    std::vector<double> coeffs;

    double eval(std::complex<double> z) const {
        KahanSum acc;
        for (size_t i = 0; i < betas.size(); ++i)
            acc.add(2.0 * coeffs[i]
                    * std::cos(2.0 * std::numbers::pi
                               * pairing(*field, betas[i], z)));
        return zero_mode + acc.value();
    }
};

inline FourierSeries make_fourier_series(const ImagQuadField& F, double r,
                                         double s, double decay = 40.0) {
    FourierSeries out{&F, r, s, fourier_zero_mode(F, r, s), {}, {}};
    double beta_max = decay * F.sqrt_abs_disc() / (4.0 * std::numbers::pi * r);
    for (AlgInt b : strata_c(F, beta_max)) {
        out.betas.push_back(b);
        out.coeffs.push_back(fourier_mode(F, b, r, s));
    }
    return out;
}

inline double eisenstein_fourier(const ImagQuadField& F, const H3& u, double s,
                                 double decay = 40.0) {
    return make_fourier_series(F, u.r, s, decay).eval(u.z);
}

// Partial Dirichlet series over the c strata with N(c) <= X.  Exactly kappa
// times the corresponding ideal partial sums at every matched cutoff.
inline double phi0_partial(const ImagQuadField& F, double s, double X) {
    KahanSum acc;
    for (AlgInt c : strata_c(F, std::sqrt(X)))
        acc.add(double(F.euler_phi(c))
                * std::pow(double(F.norm(c)), -(1.0 + s)));
    return acc.value();
}

inline double dirichlet_partial(const ImagQuadField& F, AlgInt beta, double s,
                                double X) {
    KahanSum acc;
    for (AlgInt c : strata_c(F, std::sqrt(X)))
        acc.add(char_sum(F, c, F.coprime_residues_mod(c), beta).real()
                * std::pow(double(F.norm(c)), -(1.0 + s)));
    return acc.value();
}

// C-infinity cutoff in t = rho/A: identically 1 on [0, 1/2], identically 0
// on [1, inf), glued by the standard exp(-1/x) mollifier ratio.
inline double smooth_step_down(double t) {
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    double x = 2.0 * t - 1.0;
    double up = std::exp(-1.0 / (1.0 - x));
    double dn = std::exp(-1.0 / x);
    return up / (up + dn);
}

// Lattice mean of the removed tail,
//   J(A, r, s) = integral over the plane of (1 - W(|w|/A)) g(w)
//              = 2 pi [ Simpson over the transition annulus
//                       + (A^2 + r^2)^{-s} / (2s) ].
// Independent of the stratum and of z, so callers compute it once.
inline double window_completion(double A, double r, double s, int n = 4096) {
    if (n % 2) ++n;
    double lo = 0.5 * A, h = 0.5 * A / n;
    auto f = [&](double rho) {
        return (1.0 - smooth_step_down(rho / A))
             * std::pow(rho * rho + r * r, -(1.0 + s)) * rho;
    };
    KahanSum acc;
    acc.add(f(lo) + f(A));
    for (int i = 1; i < n; ++i) acc.add((i % 2 ? 4.0 : 2.0) * f(lo + i * h));
    double annulus = acc.value() * h / 3.0;
    double tail = std::pow(A * A + r * r, -s) / (2.0 * s);
    return 2.0 * std::numbers::pi * (annulus + tail);
}

// sum over la in O of W(|w0 + la| / A) g(w0 + la), enumerated by exact
// integer bounds on the two lattice coordinates.
inline double windowed_lattice_sum(const ImagQuadField& F,
                                   std::complex<double> w0, double r, double s,
                                   double A) {
    std::complex<double> ew = F.embed({0, 1});
    KahanSum acc;
    int64_t blo = int64_t(std::ceil((-A - w0.imag()) / ew.imag()));
    int64_t bhi = int64_t(std::floor((A - w0.imag()) / ew.imag()));
    for (int64_t b = blo; b <= bhi; ++b) {
        double y = w0.imag() + double(b) * ew.imag();
        double half = std::sqrt(std::max(0.0, A * A - y * y));
        double x0 = w0.real() + double(b) * ew.real();
        int64_t alo = int64_t(std::ceil(-half - x0));
        int64_t ahi = int64_t(std::floor(half - x0));
        for (int64_t a = alo; a <= ahi; ++a) {
            double x = x0 + double(a);
            double rho2 = x * x + y * y;
            double W = smooth_step_down(std::sqrt(rho2) / A);
            if (W > 0.0) acc.add(W * std::pow(rho2 + r * r, -(1.0 + s)));
        }
    }
    return acc.value();
}

// Windowed direct evaluation over the strata with N(c) <= X:
//   E ~ kappa r^{1+s} + r^{1+s} sum_c N(c)^{-1-s}
//       [ sum_{delta coprime mod c} windowed lattice sum at z + delta/c
//         + phi(c) J / |La| ].
// The only error against the matched-truncation Fourier side is the nonzero
// Fourier mass of (1 - W) g, which the smooth window makes tiny.
inline double eisenstein_direct(const ImagQuadField& F, const H3& u, double s,
                                double X, double A = 12.0) {
    double J = window_completion(A, u.r, s);
    double vol = F.lattice_covolume();
    KahanSum acc;
    for (AlgInt c : strata_c(F, std::sqrt(X))) {
        std::complex<double> ec = F.embed(c);
        KahanSum stratum;
        for (AlgInt d : F.coprime_residues_mod(c))
            stratum.add(
                windowed_lattice_sum(F, u.z + F.embed(d) / ec, u.r, s, A));
        stratum.add(double(F.euler_phi(c)) * J / vol);
        acc.add(std::pow(double(F.norm(c)), -(1.0 + s)) * stratum.value());
    }
    return std::pow(u.r, 1.0 + s) * (0.5 * F.num_units() + acc.value());
}

// Fourier side assembled from brute character sums over the same strata,
// N(c) <= X.  Poisson resummation of the unwindowed coset sum, mode by mode.
inline double eisenstein_fourier_truncated(const ImagQuadField& F, const H3& u,
                                           double s, double X,
                                           double decay = 40.0) {
    double vol = F.lattice_covolume();
    double out = 0.5 * F.num_units() * std::pow(u.r, 1.0 + s)
               + std::numbers::pi / (s * vol) * phi0_partial(F, s, X)
                 * std::pow(u.r, 1.0 - s);
    double beta_max =
        decay * F.sqrt_abs_disc() / (4.0 * std::numbers::pi * u.r);
    auto betas = strata_c(F, beta_max);
    std::vector<double> dpart(betas.size(), 0.0);
    for (AlgInt c : strata_c(F, std::sqrt(X))) {
        auto res = F.coprime_residues_mod(c);
        double w = std::pow(double(F.norm(c)), -(1.0 + s));
        for (size_t i = 0; i < betas.size(); ++i)
            dpart[i] += char_sum(F, c, res, betas[i]).real() * w;
    }
    KahanSum acc;
    for (size_t i = 0; i < betas.size(); ++i) {
        double w = std::abs(dual_embed(F, betas[i]));
        acc.add(2.0 * g_hat(s, u.r, w) * std::pow(u.r, 1.0 + s) / vol
                * dpart[i]
                * std::cos(2.0 * std::numbers::pi
                           * pairing(F, betas[i], u.z)));
    }
    return out + acc.value();
}

// The full-pair series (no coprimality), summed directly with the same
// window: all residues per stratum, both signs of c, and an exact element
// sum for the c = 0 column cut at N(d) <= X.
inline double hat_eisenstein_direct(const ImagQuadField& F, const H3& u,
                                    double s, double X, double A = 12.0) {
    double J = window_completion(A, u.r, s);
    double vol = F.lattice_covolume();
    KahanSum acc;
    for (AlgInt d : strata_c(F, std::sqrt(X)))
        acc.add(2.0 * std::pow(double(F.norm(d)), -(1.0 + s)));
    for (AlgInt c : strata_c(F, std::sqrt(X))) {
        std::complex<double> ec = F.embed(c);
        KahanSum stratum;
        for (AlgInt d : F.residues_mod(c))
            stratum.add(
                windowed_lattice_sum(F, u.z + F.embed(d) / ec, u.r, s, A));
        stratum.add(double(F.norm(c)) * J / vol);
        acc.add(2.0 * std::pow(double(F.norm(c)), -(1.0 + s))
                * stratum.value());
    }
    return std::pow(u.r, 1.0 + s) * acc.value();
}

// Cutting the full-pair series at N(c) <= X and sorting pairs by their
// content ideal turns it into a zeta-weighted stack of coprime sums with
// scaled cutoffs:
//   hat(X) = 2 sum_{ideals l, N(l) <= X} N(l)^(-1-s) E_direct(u, s, X/N(l)).
// Exact at every X with identical windows on both sides; see tests.
inline double hat_eisenstein_matched(const ImagQuadField& F, const H3& u,
                                     double s, double X, double A = 12.0) {
    KahanSum acc;
    double per_ideal = 2.0 / double(F.num_units());
    for (AlgInt l : strata_c(F, std::sqrt(X))) {
        double nl = double(F.norm(l));
        acc.add(per_ideal * std::pow(nl, -(1.0 + s))
                * eisenstein_direct(F, u, s, X / nl, A));
    }
    return 2.0 * acc.value();
}

}  // namespace kleinian
