#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "kleinian/cosets.hpp"

using namespace kleinian;

static const int kFields[] = {-1, -2, -3, -7, -11};

TEST_CASE("every coprime pair completes to a determinant-one matrix") {
    for (int d : kFields) {
        ImagQuadField F(d);
        int checked = 0;
        for (AlgInt c : disk(F, 3.2, true))
            for (AlgInt dd : disk(F, 3.2, true)) {
                if (is_zero(c) && is_zero(dd)) continue;
                if (!F.coprime(c, dd)) continue;
                Mat2 M = complete_to_matrix(F, c, dd);
                REQUIRE(is_unimodular(F, M));
                REQUIRE(M.c == c);
                REQUIRE(M.d == dd);
                ++checked;
            }
        REQUIRE(checked > 50);
    }
    ImagQuadField g(-1);
    REQUIRE_THROWS_AS(complete_to_matrix(g, {2, 0}, {0, 2}), std::invalid_argument);
}

TEST_CASE("two completions of the same bottom row differ by a translation") {
    // If M and M' share (c,d) then M' M^{-1} fixes infinity with det 1 and
    // bottom row (0, 1), i.e. it is [[1, beta], [0, 1]].
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int64_t> U(-8, 8);
    for (int d : kFields) {
        ImagQuadField F(d);
        for (int it = 0; it < 200; ++it) {
            AlgInt c{U(rng), U(rng)}, dd{U(rng), U(rng)};
            if ((is_zero(c) && is_zero(dd)) || !F.coprime(c, dd)) continue;
            Mat2 M = complete_to_matrix(F, c, dd);
            // another completion: shift the top row by a multiple of the bottom
            AlgInt beta{U(rng), U(rng)};
            Mat2 M2{M.a + F.mul(beta, c), M.b + F.mul(beta, dd), c, dd};
            REQUIRE(is_unimodular(F, M2));
            Mat2 Q = matmul(F, M2, inverse(F, M));
            REQUIRE(Q.c == AlgInt{0, 0});
            REQUIRE(Q.a == AlgInt{1, 0});
            REQUIRE(Q.d == AlgInt{1, 0});
        }
    }
}

TEST_CASE("bottom rows of group words are always coprime") {
    // words are kept short so the exact integer entries stay well inside
    // int64 range; long products grow exponentially
    ImagQuadField F(-3);
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int64_t> small(-2, 2);
    for (int w = 0; w < 40; ++w) {
        Mat2 M{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
        for (int i = 0; i < 10; ++i) {
            switch (pick(rng)) {
                case 0: M = matmul(F, M, translation({small(rng), small(rng)})); break;
                case 1: M = matmul(F, M, inversion()); break;
                default: M = matmul(F, translation({small(rng), 0}), M); break;
            }
            if (is_zero(M.c) && is_zero(M.d)) continue;
            REQUIRE(F.coprime(M.c, M.d));
        }
    }
}

TEST_CASE("ideal moebius function") {
    for (int d : kFields) {
        ImagQuadField F(d);
        for (AlgInt u : F.units()) REQUIRE(moebius_ideal(F, u) == 1);
        // a prime element has mu = -1, its square 0
        auto factors = F.factor_ideal({5, 1});
        for (const auto& f : factors) {
            REQUIRE(moebius_ideal(F, f.prime) == -1);
            REQUIRE(moebius_ideal(F, F.mul(f.prime, f.prime)) == 0);
        }
        // sum of mu over the divisors of a non-unit is zero
        std::mt19937_64 rng(47);
        std::uniform_int_distribution<int64_t> U(-12, 12);
        for (int it = 0; it < 80; ++it) {
            AlgInt a{U(rng), U(rng)};
            if (is_zero(a) || F.is_unit(a)) continue;
            int acc = 0;
            for (auto [n, mu] : divisor_ideals(F, a)) {
                (void)n;
                acc += mu;
            }
            REQUIRE(acc == 0);
        }
    }
}

TEST_CASE("divisor tables have multiplicative counts and norms") {
    ImagQuadField F(-1);
    // (5) = p * conj(p): divisors 1, p, conj(p), 5 with norms 1,5,5,25
    auto div5 = divisor_ideals(F, {5, 0});
    REQUIRE(div5.size() == 4);
    int64_t prod = 1;
    int n5 = 0;
    for (auto [n, mu] : div5) {
        (void)mu;
        prod *= n;
        if (n == 5) ++n5;
    }
    REQUIRE(n5 == 2);
    REQUIRE(prod == 625);

    // divisor count of a prime power pi^e is e+1
    auto f2 = F.factor_ideal({2, 0});  // ramified square
    REQUIRE(divisor_ideals(F, {2, 0}).size() == 3);
    REQUIRE(f2[0].exponent == 2);
}

TEST_CASE("strata enumeration covers half of each punctured disk") {
    for (int d : kFields) {
        ImagQuadField F(d);
        auto all = disk(F, 5.5);
        auto half = strata_c(F, 5.5);
        REQUIRE(all.size() == 2 * half.size());
        for (AlgInt c : half) REQUIRE(in_plus_half(c));
    }
}

TEST_CASE("character sums are real and reduce to Ramanujan form") {
    // S_c(beta) = sum over ideal divisors t | gcd((c),(beta)) of N(t) mu(c/t),
    // checked by brute force over the coprime residues.
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int64_t> U(-4, 4), V(-9, 9);
    for (int d : kFields) {
        ImagQuadField F(d);
        for (int it = 0; it < 60; ++it) {
            AlgInt c{U(rng), U(rng)};
            if (is_zero(c) || F.norm(c) > 30) continue;
            AlgInt beta{V(rng), V(rng)};
            auto res = F.coprime_residues_mod(c);
            std::complex<double> s = char_sum(F, c, res, beta);
            REQUIRE(std::abs(s.imag()) < 1e-10);

            // Ramanujan form via the prime factorization of (c): iterate the
            // divisors t = prod pi^j, keep those whose CONJUGATE divides beta
            // with (c)/t squarefree, and weight by N(t) mu((c)/t).  The
            // conjugate enters because the additive character pairs beta
            // against conj(delta * cofactor); its triviality condition on the
            // delta-subgroup is conj(t) | beta, not t | beta.
            auto factors = F.factor_ideal(c);
            double want = 0.0;
            std::vector<int> idx(factors.size(), 0);
            while (true) {
                AlgInt t{1, 0};
                bool squarefree = true;
                int mu_cofactor = 1;
                for (size_t i = 0; i < factors.size(); ++i) {
                    for (int j = 0; j < idx[i]; ++j) t = F.mul(t, factors[i].prime);
                    int cexp = factors[i].exponent - idx[i];
                    if (cexp > 1) squarefree = false;
                    if (cexp == 1) mu_cofactor = -mu_cofactor;
                }
                if (squarefree && F.divides(F.conj(t), beta))
                    want += mu_cofactor * double(F.norm(t));
                size_t k = 0;
                while (k < idx.size() && ++idx[k] > factors[k].exponent) idx[k++] = 0;
                if (k == idx.size()) break;
            }
            REQUIRE(s.real() == Catch::Approx(want).margin(1e-9).epsilon(0));
        }
    }
}

TEST_CASE("zero frequency character sum counts the coprime residues") {
    for (int d : kFields) {
        ImagQuadField F(d);
        for (AlgInt c : strata_c(F, 4.0)) {
            auto res = F.coprime_residues_mod(c);
            auto s = char_sum(F, c, res, {0, 0});
            REQUIRE(s.real() == Catch::Approx(double(F.euler_phi(c))).margin(1e-10).epsilon(0));
            REQUIRE(int64_t(res.size()) == F.euler_phi(c));
        }
    }
}

TEST_CASE("matched truncation: strata sums are exactly kappa times ideal sums") {
    // Every ideal of norm <= X has exactly u_K generators, i.e. u_K/2 strata
    // representatives, so partial coset sums and partial ideal sums agree
    // up to the factor kappa = u_K/2 at every matched cutoff.
    const double s = 1.5;
    for (int d : kFields) {
        ImagQuadField F(d);
        double kappa = F.num_units() / 2.0;
        for (double X : {10.0, 25.0, 60.0}) {
            auto cs = strata_c(F, std::sqrt(X));
            double coset = 0.0, ideal = 0.0;
            std::vector<AlgInt> seen;
            for (AlgInt c : cs) {
                double phi = double(F.euler_phi(c));
                double w = std::pow(double(F.norm(c)), -(1.0 + s));
                coset += phi * w;
                // canonical associate: smallest in enumeration order among
                // the +- unit multiples of c that lie in the plus half
                bool canonical = true;
                for (AlgInt u : F.units()) {
                    AlgInt uc = F.mul(u, c);
                    if (!in_plus_half(uc)) uc = -uc;
                    if (std::pair(uc.x, uc.y) < std::pair(c.x, c.y)) canonical = false;
                }
                if (canonical) ideal += phi * w;
            }
            REQUIRE(coset == Catch::Approx(kappa * ideal).epsilon(1e-14));
        }
    }
}

TEST_CASE("character sum Dirichlet series match their Moebius closed form") {
    // sum over strata with N(c) <= X of S_c(beta) N(c)^{-1-s}
    //   = kappa * sum over ideal divisors t of conj(beta) of N(t)^{-s} *
    //     (partial Moebius sum over ideals with norm <= X/N(t)).
    // Divisors of (conj(beta)) and (beta) have identical norm multisets, so
    // the divisor table of beta itself supplies the norms.  Exact at every
    // matched cutoff; this pins the whole Fourier pipeline.
    const double s = 1.3;
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int64_t> V(-6, 6);
    for (int d : kFields) {
        ImagQuadField F(d);
        double kappa = F.num_units() / 2.0;
        const double X = 40.0;
        auto cs = strata_c(F, std::sqrt(X));
        // canonical ideal representatives among strata
        auto is_canonical = [&](AlgInt c) {
            for (AlgInt u : F.units()) {
                AlgInt uc = F.mul(u, c);
                if (!in_plus_half(uc)) uc = -uc;
                if (std::pair(uc.x, uc.y) < std::pair(c.x, c.y)) return false;
            }
            return true;
        };
        for (int it = 0; it < 10; ++it) {
            AlgInt beta{V(rng), V(rng)};
            if (is_zero(beta)) continue;
            double lhs = 0.0;
            for (AlgInt c : cs)
                lhs += char_sum(F, c, F.coprime_residues_mod(c), beta).real()
                       * std::pow(double(F.norm(c)), -(1.0 + s));
            double rhs = 0.0;
            for (auto [nt, mu_unused] : divisor_ideals(F, beta)) {
                (void)mu_unused;
                if (double(nt) > X) continue;  // empty partial Moebius sum
                double inner = 1.0;  // the unit ideal term of the Moebius sum
                for (AlgInt m : cs) {
                    if (!is_canonical(m)) continue;
                    if (double(F.norm(m)) > X / double(nt)) continue;
                    if (F.is_unit(m)) continue;  // already counted as 1
                    inner += moebius_ideal(F, m) * std::pow(double(F.norm(m)), -(1.0 + s));
                }
                rhs += std::pow(double(nt), -s) * inner;
            }
            REQUIRE(lhs == Catch::Approx(kappa * rhs).margin(1e-11).epsilon(0));
        }
    }
}
