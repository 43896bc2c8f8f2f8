#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kleinian/hspace.hpp"

using namespace kleinian;

namespace {

// Random word in the standard generators: translations and the inversion.
Mat2 random_word(const ImagQuadField& F, std::mt19937_64& rng, int len) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int64_t> small(-2, 2);
    Mat2 M{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
    for (int i = 0; i < len; ++i) {
        Mat2 G;
        switch (pick(rng)) {
            case 0: G = translation({small(rng), 0}); break;
            case 1: G = translation({0, small(rng)}); break;
            case 2: G = translation({small(rng), small(rng)}); break;
            default: G = inversion(); break;
        }
        M = matmul(F, M, G);
    }
    return M;
}

bool close(const H3& a, const H3& b, double tol) {
    return std::abs(a.z - b.z) < tol && std::abs(a.r - b.r) < tol;
}

}  // namespace

TEST_CASE("generator words are unimodular and act compatibly") {
    std::mt19937_64 rng(101);
    for (int d : {-1, -2, -3, -7, -11}) {
        ImagQuadField F(d);
        for (int it = 0; it < 60; ++it) {
            Mat2 M = random_word(F, rng, 6), N = random_word(F, rng, 6);
            REQUIRE(is_unimodular(F, M));
            H3 u{{0.37, -0.22}, 0.81};
            H3 lhs = apply(F, matmul(F, M, N), u);
            H3 rhs = apply(F, M, apply(F, N, u));
            REQUIRE(close(lhs, rhs, 1e-12));
            // inverse really inverts
            H3 back = apply(F, inverse(F, M), apply(F, M, u));
            REQUIRE(close(back, u, 1e-11));
        }
    }
}

TEST_CASE("denominator is a cocycle for the action") {
    std::mt19937_64 rng(103);
    ImagQuadField F(-7);
    for (int it = 0; it < 40; ++it) {
        Mat2 M = random_word(F, rng, 5), N = random_word(F, rng, 5);
        H3 u{{-0.11, 0.43}, 1.37};
        double lhs = action_denominator(F, matmul(F, M, N), u);
        double rhs = action_denominator(F, M, apply(F, N, u)) * action_denominator(F, N, u);
        REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
        // r transforms by exactly this factor
        REQUIRE(apply(F, matmul(F, M, N), u).r == Catch::Approx(u.r / lhs).epsilon(1e-12));
    }
}

TEST_CASE("explicit forms of the generators") {
    ImagQuadField F(-2);
    H3 u{{0.3, 0.5}, 0.7};
    AlgInt beta{2, -1};
    H3 t = apply(F, translation(beta), u);
    REQUIRE(std::abs(t.z - (u.z + F.embed(beta))) < 1e-15);
    REQUIRE(t.r == u.r);

    // inversion: (z, r) -> (-conj(z), r) / (|z|^2 + r^2)
    H3 s = apply(F, inversion(), u);
    double q = std::norm(u.z) + u.r * u.r;
    REQUIRE(std::abs(s.z - (-std::conj(u.z) / q)) < 1e-15);
    REQUIRE(s.r == Catch::Approx(u.r / q).epsilon(1e-14));
}

TEST_CASE("finite difference Laplacian reproduces known eigenfunctions") {
    H3 pts[] = {{{0.2, 0.3}, 0.9}, {{-1.1, 0.4}, 0.35}, {{0.0, 0.0}, 2.0}};
    for (const H3& u : pts) {
        // harmonic: r^2, log r has constant value -2, coordinates are flat
        REQUIRE(std::abs(laplace_beltrami([](H3 p) { return p.r * p.r; }, u)) < 1e-7);
        REQUIRE(laplace_beltrami([](H3 p) { return std::log(p.r); }, u)
                == Catch::Approx(-2.0).margin(2e-6).epsilon(0));
        REQUIRE(std::abs(laplace_beltrami([](H3 p) { return p.z.real(); }, u)) < 1e-7);

        // r^{1+s} is an eigenfunction with eigenvalue s^2 - 1
        for (double s : {0.5, 1.0, 1.7, 2.4}) {
            double val = laplace_beltrami(
                [s](H3 p) { return std::pow(p.r, 1.0 + s); }, u);
            double expect = (s * s - 1.0) * std::pow(u.r, 1.0 + s);
            REQUIRE(val == Catch::Approx(expect).margin(2e-5 * std::abs(expect) + 1e-7).epsilon(0));
        }
    }
}
