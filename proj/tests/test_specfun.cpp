#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kleinian/lattice.hpp"
#include "kleinian/specfun.hpp"

using namespace kleinian;

namespace {

// Independent oracle: K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
// The integrand is even and analytic in a strip, so the plain trapezoid
// rule converges geometrically; h = 0.1 is far below machine precision.
double bessel_k_oracle(double nu, double x) {
    // step must shrink with x: aliasing error ~ e^{-pi^2/h} has to stay
    // below the value ~ e^{-x} by a comfortable relative margin
    const double h = std::min(0.1, 9.8 / (x + 35.0));
    double T = std::acosh(std::max(760.0 / x, 2.0)) + 1.0;
    double sum = 0.5 * std::exp(-x);  // t = 0 term, cosh(0) = 1
    for (double t = h; t <= T; t += h)
        sum += std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
    return sum * h;
}

constexpr double kCatalan = 0.91596559417721901505;

}  // namespace

TEST_CASE("bessel K matches the integral representation across the working range") {
    for (double nu : {0.0, 0.3, 0.5, 0.97, 1.0, 1.03, 1.5, 2.0, 2.5}) {
        for (double x : {0.05, 0.3, 1.0, 1.9, 2.0, 2.1, 5.0, 20.0, 100.0, 600.0}) {
            double got = bessel_k(nu, x);
            double want = bessel_k_oracle(nu, x);
            INFO("nu=" << nu << " x=" << x);
            REQUIRE(got == Catch::Approx(want).epsilon(5e-13));
        }
    }
}

TEST_CASE("bessel K reference points") {
    REQUIRE(bessel_k(0.0, 1.0) == Catch::Approx(0.42102443824070834).epsilon(1e-14));
    REQUIRE(bessel_k(1.0, 1.0) == Catch::Approx(0.60190723019723458).epsilon(1e-14));
    // half-integer orders are elementary: K_{1/2}(x) = sqrt(pi/2x) e^{-x}
    for (double x : {0.4, 1.7, 6.0}) {
        double want = std::sqrt(M_PI / (2 * x)) * std::exp(-x);
        REQUIRE(bessel_k(0.5, x) == Catch::Approx(want).epsilon(1e-13));
        // K_{3/2}(x) = K_{1/2}(x) (1 + 1/x)
        REQUIRE(bessel_k(1.5, x) == Catch::Approx(want * (1 + 1 / x)).epsilon(1e-13));
    }
}

#ifdef __cpp_lib_math_special_functions
TEST_CASE("bessel K agrees with the standard library implementation") {
    for (double nu : {0.0, 0.25, 1.0, 1.75, 2.0})
        for (double x : {0.1, 0.9, 2.5, 8.0, 25.0})
            REQUIRE(bessel_k(nu, x)
                    == Catch::Approx(std::cyl_bessel_k(nu, x)).epsilon(5e-11));
}
#endif

TEST_CASE("bessel K recurrence and derivative identities") {
    for (double nu : {0.3, 1.0, 1.3})
        for (double x : {0.7, 1.999, 2.001, 3.4, 40.0}) {
            double km = bessel_k(nu - 0.3, x);  // keep orders nonnegative
            (void)km;
            double lhs = bessel_k(nu + 1, x) - bessel_k(std::abs(nu - 1), x);
            double rhs = (2 * nu / x) * bessel_k(nu, x);
            REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
        }
    // K_0' = -K_1
    double h = 1e-6, x = 1.3;
    double d = (bessel_k(0, x + h) - bessel_k(0, x - h)) / (2 * h);
    REQUIRE(d == Catch::Approx(-bessel_k(1, x)).epsilon(1e-8));
}

TEST_CASE("scaled bessel K and the underflow floor") {
    for (double x : {0.5, 3.0, 20.0})
        REQUIRE(bessel_k_scaled(1.0, x) * std::exp(-x)
                == Catch::Approx(bessel_k(1.0, x)).epsilon(1e-13));
    REQUIRE(bessel_k(1.0, 800.0) == 0.0);
    REQUIRE(bessel_k_scaled(1.0, 800.0) > 0.0);
    REQUIRE(bessel_k_scaled(1.0, 800.0) == Catch::Approx(std::sqrt(M_PI / 1600.0)).epsilon(1e-2));
}

TEST_CASE("hurwitz zeta basics") {
    REQUIRE(hurwitz_zeta(2.0, 1.0) == Catch::Approx(M_PI * M_PI / 6).epsilon(1e-14));
    REQUIRE(hurwitz_zeta(2.0, 0.5) == Catch::Approx(M_PI * M_PI / 2).epsilon(1e-14));
    REQUIRE(zeta(3.0) == Catch::Approx(1.2020569031595943).epsilon(1e-14));
    REQUIRE(zeta(4.0) == Catch::Approx(std::pow(M_PI, 4) / 90).epsilon(1e-14));
    // shift identity zeta(s,a) - zeta(s,a+1) = a^{-s}
    for (double s : {0.6, 1.5, 2.5, 4.0})
        for (double a : {0.25, 0.8, 1.0, 2.3})
            REQUIRE(hurwitz_zeta(s, a) - hurwitz_zeta(s, a + 1)
                    == Catch::Approx(std::pow(a, -s)).epsilon(1e-13));
    // expansion around the pole: zeta(1+e) = 1/e + gamma - gamma_1 e + O(e^2)
    REQUIRE(zeta(0.99) == Catch::Approx(-100.0 + euler_gamma - 0.000728158454837).margin(2e-5).epsilon(0));
    REQUIRE(zeta(1.01) == Catch::Approx(100.0 + euler_gamma + 0.000728158454837).margin(2e-5).epsilon(0));
    // stdlib cross-check away from the pole
    for (double s : {1.5, 2.0, 3.5})
        REQUIRE(zeta(s) == Catch::Approx(std::riemann_zeta(s)).epsilon(1e-13));
}

TEST_CASE("digamma reference values and functional equations") {
    REQUIRE(digamma(1.0) == Catch::Approx(-euler_gamma).epsilon(1e-14));
    REQUIRE(digamma(0.5) == Catch::Approx(-euler_gamma - 2 * std::log(2.0)).epsilon(1e-14));
    REQUIRE(digamma(0.25)
            == Catch::Approx(-euler_gamma - 3 * std::log(2.0) - M_PI / 2).epsilon(1e-14));
    for (double x : {0.3, 1.7, 5.5})
        REQUIRE(digamma(x + 1) == Catch::Approx(digamma(x) + 1 / x).epsilon(1e-13));
    for (double x : {0.3, 0.45, 0.8})  // reflection needs both arguments positive
        REQUIRE(digamma(1 - x) - digamma(x)
                == Catch::Approx(M_PI / std::tan(M_PI * x)).epsilon(1e-12).margin(1e-12));
}

TEST_CASE("dirichlet L values at integer points") {
    REQUIRE(dirichlet_l1(-4) == Catch::Approx(M_PI / 4).epsilon(1e-14));
    REQUIRE(dirichlet_l(2.0, -4) == Catch::Approx(kCatalan).epsilon(1e-14));
    // L(1,chi) limit from both sides
    for (int64_t D : {-4, -8, -3, -7, -11}) {
        double l1 = dirichlet_l1(D);
        REQUIRE(dirichlet_l(1.0 + 1e-6, D) == Catch::Approx(l1).margin(1e-5).epsilon(0));
        REQUIRE(dirichlet_l(1.0 - 1e-6, D) == Catch::Approx(l1).margin(1e-5).epsilon(0));
    }
}

TEST_CASE("class number formula: residue of the Dedekind zeta function") {
    // For each of the five fields (all class number one) the residue at 1
    // must equal 2 pi / (u_K sqrt|disc|), u_K the number of units.
    for (int d : {-1, -2, -3, -7, -11}) {
        ImagQuadField F(d);
        double want = 2 * M_PI / (F.num_units() * F.sqrt_abs_disc());
        REQUIRE(dedekind_zeta_residue(F) == Catch::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("dedekind zeta against the element sum oracle") {
    // zeta_K(s) = (1/u_K) sum_{a != 0} N(a)^{-s}; truncate at norm X and
    // correct by the integral tail using the lattice point density.
    const double s = 2.5;
    const int64_t X = 20000;
    for (int d : {-1, -2, -3, -7, -11}) {
        ImagQuadField F(d);
        double acc = 0.0;
        for (const Shell& sh : shells_by_norm(F, X))
            acc += double(sh.elems.size()) * std::pow(double(sh.norm), -s);
        acc /= F.num_units();
        double density = 2 * M_PI / (F.num_units() * F.sqrt_abs_disc());
        double tail = density * std::pow(double(X), 1.0 - s) / (s - 1.0);
        REQUIRE(dedekind_zeta(F, s) == Catch::Approx(acc + tail).margin(5e-7).epsilon(0));
    }
    // frozen value: zeta_{Q(i)}(2) = zeta(2) * (Catalan constant)
    ImagQuadField g(-1);
    REQUIRE(dedekind_zeta(g, 2.0) == Catch::Approx(1.5067030099229850).epsilon(1e-13));
    REQUIRE(dedekind_zeta(g, 2.0)
            == Catch::Approx(M_PI * M_PI / 6 * kCatalan).epsilon(1e-13));
}

TEST_CASE("zeta derivative helpers agree with a coarse difference quotient") {
    ImagQuadField F(-7);
    double h = 1e-4;
    double want = (dedekind_zeta(F, 2 + h) - dedekind_zeta(F, 2 - h)) / (2 * h);
    REQUIRE(dedekind_zeta_deriv(F, 2.0) == Catch::Approx(want).margin(1e-7).epsilon(0));
    double wl = (dirichlet_l(1 + h, -11) - dirichlet_l(1 - h, -11)) / (2 * h);
    REQUIRE(dirichlet_l_deriv(1.0, -11) == Catch::Approx(wl).margin(1e-7).epsilon(0));
}

TEST_CASE("bianchi covolume values") {
    // covolume = |disc|^{3/2} zeta_K(2) / (4 pi^2); frozen for the Gaussian
    // field and strictly increasing in |disc| across the five fields.
    ImagQuadField g(-1);
    REQUIRE(bianchi_covolume(g) == Catch::Approx(0.30532186472573967).epsilon(1e-12));
    // strictly increasing when the fields are ordered by |disc| = 3,4,7,8,11
    double v3 = bianchi_covolume(ImagQuadField(-3));
    double v1 = bianchi_covolume(ImagQuadField(-1));
    double v7 = bianchi_covolume(ImagQuadField(-7));
    double v2 = bianchi_covolume(ImagQuadField(-2));
    double v11 = bianchi_covolume(ImagQuadField(-11));
    REQUIRE(v3 < v1);
    REQUIRE(v1 < v7);
    REQUIRE(v7 < v2);
    REQUIRE(v2 < v11);
    REQUIRE(v3 > 0.0);
}
