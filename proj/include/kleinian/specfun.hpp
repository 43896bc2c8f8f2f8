#pragma once
// Special functions needed by the Fourier expansions: the modified Bessel
// function K_nu for real order, Hurwitz and Riemann zeta, digamma, real
// Dirichlet L-functions, and the Dedekind zeta function of the field as
// the product zeta(s) * L(s, chi_disc).
//
// K_nu uses Temme's series for x <= 2 and Steed's continued fraction CF2
// for x > 2, with a stable upward recurrence in the order.  Relative
// accuracy is close to machine precision for nu in [0, 5], which covers
// every order this library evaluates.  The zeta functions use
// Euler-Maclaurin with 25 explicit terms and Bernoulli corrections through
// B24, giving full double accuracy for real s in (-1, 6), s != 1.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "kleinian/numfield.hpp"

namespace kleinian {

constexpr double euler_gamma = 0.57721566490153286060651209008240243;

namespace detail {

// Bernoulli numbers B_2, B_4, ..., B_24.
inline constexpr double kBernoulli[12] = {
    1.0 / 6,       -1.0 / 30,       1.0 / 42,       -1.0 / 30,
    5.0 / 66,      -691.0 / 2730,   7.0 / 6,        -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

// Taylor coefficients of 1/Gamma(1+x) around x = 0, from
// 1/Gamma(1+x) = exp(gamma*x + sum_{k>=2} (-1)^{k+1} zeta(k) x^k / k).
inline const std::array<double, 32>& inv_gamma1p_coeffs() {
    static const std::array<double, 32> table = [] {
        std::array<double, 40> s{};
        s[1] = euler_gamma;
        for (int k = 2; k < 40; ++k)
            s[k] = ((k % 2) ? 1.0 : -1.0) * std::riemann_zeta(double(k)) / k;
        std::array<double, 32> u{};
        u[0] = 1.0;
        for (int n = 1; n < 32; ++n) {
            double acc = 0.0;
            for (int k = 1; k <= n; ++k) acc += k * s[k] * u[n - k];
            u[n] = acc / n;
        }
        return u;
    }();
    return table;
}

// Temme's auxiliary functions for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)   (finite at mu = 0)
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
// computed from the even/odd parts of the coefficient table, so there is
// no cancellation as mu -> 0.
inline void temme_gammas(double mu, double& gam1, double& gam2,
                         double& gampl, double& gammi) {
    const auto& a = inv_gamma1p_coeffs();
    double odd = 0.0, even = 0.0, mu2 = mu * mu, p = 1.0;
    for (int k = 0; k < 31; k += 2) {
        even += a[k] * p;
        odd += a[k + 1] * p;
        p *= mu2;
    }
    gam1 = -odd;
    gam2 = even;
    gampl = even + mu * odd;   // 1/Gamma(1+mu)
    gammi = even - mu * odd;   // 1/Gamma(1-mu)
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, optionally scaled by e^x.
inline void bessel_k_pair(double mu, double x, bool scaled,
                          double& kmu, double& kmu1) {
    constexpr double eps = 2.22e-16;
    constexpr int maxit = 10000;
    const double mu2 = mu * mu;
    if (x <= 2.0) {
        // Temme's series
        double x2 = 0.5 * x;
        double pimu = M_PI * mu;
        double fact = (std::abs(pimu) < 1e-14) ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = mu * d;
        double fact2 = (std::abs(e) < 1e-14) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(mu, gam1, gam2, gampl, gammi);
        double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        double sum = ff;
        double ee = std::exp(e);
        double p = 0.5 * ee / gampl;
        double q = 0.5 / (ee * gammi);
        double c = 1.0;
        double dd = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= maxit; ++i) {
            ff = (i * ff + p + q) / (i * i - mu2);
            c *= dd / i;
            p /= (i - mu);
            q /= (i + mu);
            double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * eps) break;
        }
        if (i > maxit) throw std::runtime_error("bessel_k: series stalled");
        kmu = sum;
        kmu1 = sum1 * (2.0 / x);
        if (scaled) {
            double ex = std::exp(x);
            kmu *= ex;
            kmu1 *= ex;
        }
    } else {
        // Steed's continued fraction CF2, evaluated in scaled form
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d, delh = d;
        double q1 = 0.0, q2 = 1.0;
        double a1 = 0.25 - mu2;
        double q = a1, c = a1, a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i <= maxit; ++i) {
            a -= 2 * (i - 1);
            c = -a * c / i;
            double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < eps) break;
        }
        if (i > maxit) throw std::runtime_error("bessel_k: CF2 stalled");
        h = a1 * h;
        kmu = std::sqrt(M_PI / (2.0 * x)) / s;
        kmu1 = kmu * (mu + x + 0.5 - h) / x;
        if (!scaled) {
            double ex = std::exp(-x);
            kmu *= ex;
            kmu1 *= ex;
        }
    }
}

inline double bessel_k_impl(double nu, double x, bool scaled) {
    if (x <= 0.0 || nu < 0.0)
        throw std::invalid_argument("bessel_k: need x > 0 and nu >= 0");
    if (!scaled && x > 705.0) return 0.0;  // below the double underflow floor
    int nl = int(nu + 0.5);
    double mu = nu - nl;
    double kmu, kmu1;
    bessel_k_pair(mu, x, scaled, kmu, kmu1);
    double xi2 = 2.0 / x;
    for (int i = 1; i <= nl; ++i) {
        double t = (mu + i) * xi2 * kmu1 + kmu;
        kmu = kmu1;
        kmu1 = t;
    }
    return kmu;
}

}  // namespace detail

inline double bessel_k(double nu, double x) {
    return detail::bessel_k_impl(nu, x, false);
}

// e^x K_nu(x): stays representable out to arbitrary x.
inline double bessel_k_scaled(double nu, double x) {
    return detail::bessel_k_impl(nu, x, true);
}

// Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^{-s}, real s != 1, a > 0.
inline double hurwitz_zeta(double s, double a) {
    if (s == 1.0) throw std::invalid_argument("hurwitz_zeta: pole at s = 1");
    if (a <= 0.0) throw std::invalid_argument("hurwitz_zeta: need a > 0");
    constexpr int N = 25;
    double sum = 0.0;
    for (int n = N - 1; n >= 0; --n) sum += std::pow(n + a, -s);
    double na = N + a;
    double nas = std::pow(na, -s);
    double result = sum + na * nas / (s - 1.0) + 0.5 * nas;
    double t = nas / na;          // na^{-s-1}
    double poch = s;              // rising factorial (s)_{2j-1}
    double fact = 2.0;            // (2j)!
    double na2 = 1.0 / (na * na);
    for (int j = 1; j <= 12; ++j) {
        result += detail::kBernoulli[j - 1] / fact * poch * t;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        t *= na2;
    }
    return result;
}

inline double zeta(double s) { return hurwitz_zeta(s, 1.0); }

inline double digamma(double x) {
    if (x <= 0.0) throw std::invalid_argument("digamma: need x > 0");
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    double inv2 = 1.0 / (x * x);
    result += std::log(x) - 0.5 / x;
    double p = inv2;
    for (int j = 1; j <= 7; ++j) {
        result -= detail::kBernoulli[j - 1] / (2 * j) * p;
        p *= inv2;
    }
    return result;
}

// L(s, chi_D) for a fundamental discriminant D < 0, via the Hurwitz
// decomposition L(s,chi) = q^{-s} sum_{a<q} chi(a) zeta(s, a/q).
inline double dirichlet_l(double s, int64_t D) {
    if (s == 1.0) throw std::invalid_argument("dirichlet_l: use dirichlet_l1 at s = 1");
    int64_t q = -D;
    double acc = 0.0;
    for (int64_t a = 1; a < q; ++a) {
        int ch = kronecker(D, a);
        if (ch != 0) acc += ch * hurwitz_zeta(s, double(a) / double(q));
    }
    return acc * std::pow(double(q), -s);
}

// L(1, chi_D) = -(1/q) sum_{a<q} chi(a) psi(a/q).
inline double dirichlet_l1(int64_t D) {
    int64_t q = -D;
    double acc = 0.0;
    for (int64_t a = 1; a < q; ++a) {
        int ch = kronecker(D, a);
        if (ch != 0) acc -= ch * digamma(double(a) / double(q));
    }
    return acc / double(q);
}

inline double dedekind_zeta(const ImagQuadField& F, double s) {
    return zeta(s) * dirichlet_l(s, F.disc());
}

// Residue at s = 1; equals L(1, chi) since zeta has residue 1 there.
inline double dedekind_zeta_residue(const ImagQuadField& F) {
    return dirichlet_l1(F.disc());
}

namespace detail {

// Five-point central derivative, h tuned for ~1e-11 absolute accuracy on
// the mild functions this is applied to.
template <typename Fn>
double deriv5(Fn&& f, double x, double h = 1e-3) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

}  // namespace detail

inline double dirichlet_l_deriv(double s, int64_t D) {
    return detail::deriv5([D](double t) { return dirichlet_l(t, D); }, s);
}

inline double dedekind_zeta_deriv(const ImagQuadField& F, double s) {
    return detail::deriv5([&](double t) { return dedekind_zeta(F, t); }, s);
}

// Volume of the quotient of hyperbolic 3-space by the full Bianchi group:
// |disc|^{3/2} zeta_K(2) / (4 pi^2).
inline double bianchi_covolume(const ImagQuadField& F) {
    double ad = double(-F.disc());
    return ad * std::sqrt(ad) * dedekind_zeta(F, 2.0) / (4.0 * M_PI * M_PI);
}

}  // namespace kleinian
