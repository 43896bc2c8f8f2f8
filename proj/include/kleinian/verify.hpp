#pragma once
// The shared verification suite.  Every check that the verify-all
// subcommand and the acceptance gate run lives here as a function taking
// the run configuration and a Reporter.  Gating checks compare two
// independently computed quantities; report-only findings record the
// delicate constants (residue normalization, the Bessel display, the
// zeta(2) readings, the product-formula constant) and the measured
// behavior of the transformation defect D without gating on them.
//
// Field choices: the cross-validation criteria pin their own fields (the
// Gaussian integers unless stated); the findings run on the configured
// field.  Tolerances scale with tol.scale; truncations come from the
// config so reruns at other depths stay one flag away.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "cosets.hpp"
#include "eisenstein.hpp"
#include "elliptic.hpp"
#include "hspace.hpp"
#include "lattice.hpp"
#include "limit.hpp"
#include "numfield.hpp"
#include "report.hpp"
#include "specfun.hpp"

namespace kleinian {
namespace verify {

struct Ticker {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

inline std::string str(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

inline std::string ent_str(AlgInt a) {
    if (a.y == 0) return str("%lld", (long long)a.x);
    std::string w = a.y == 1 ? "w" : a.y == -1 ? "-w"
                                               : str("%lldw", (long long)a.y);
    if (a.x == 0) return w;
    return str("%lld%s%s", (long long)a.x, a.y > 0 ? "+" : "", w.c_str());
}

inline std::string mat_str(const Mat2& M) {
    return ent_str(M.a) + "," + ent_str(M.b) + ";" + ent_str(M.c) + "," +
           ent_str(M.d);
}

inline const Mat2 kIdentity{{1, 0}, {0, 0}, {0, 0}, {1, 0}};

inline Mat2 negate(const Mat2& M) { return {-M.a, -M.b, -M.c, -M.d}; }

// Deterministic random group elements: words in the standard generators,
// rejected until every entry norm fits the bound.  PSL-normalized so the
// dedup key is well defined.
inline std::vector<Mat2> random_psl_matrices(const ImagQuadField& F,
                                             int count, int64_t max_norm,
                                             unsigned seed,
                                             bool need_c_nonzero) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> pick(0, 3), len(3, 7);
    const Mat2 gens[4] = {translation({1, 0}), translation({0, 1}),
                          inversion(), translation({-1, 1})};
    std::vector<Mat2> out;
    std::set<std::array<int64_t, 8>> seen;
    for (int tries = 0; (int)out.size() < count; ++tries) {
        if (tries > 200000)
            throw std::runtime_error("matrix sampling did not terminate");
        Mat2 M = kIdentity;
        int L = len(gen);
        for (int i = 0; i < L; ++i) M = matmul(F, M, gens[pick(gen)]);
        bool czero = M.c == AlgInt{0, 0};
        if (need_c_nonzero && czero) continue;
        if (F.norm(M.a) > max_norm || F.norm(M.b) > max_norm ||
            F.norm(M.c) > max_norm || F.norm(M.d) > max_norm)
            continue;
        if ((czero && !in_plus_half(M.a)) || (!czero && !in_plus_half(M.c)))
            M = negate(M);
        std::array<int64_t, 8> key{M.a.x, M.a.y, M.b.x, M.b.y,
                                   M.c.x, M.c.y, M.d.x, M.d.y};
        if (seen.insert(key).second) out.push_back(M);
    }
    return out;
}

template <typename Fn>
inline void parallel_for(size_t n, int threads, Fn&& fn) {
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
            fn(i);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- 1 ----
// Master cross-validation: windowed direct coset sum against the Fourier
// reconstruction at matched truncation.

inline void check_expansion(const RunConfig& cfg, Reporter& rep) {
    ImagQuadField F(-1);
    const H3 pts[2] = {{{0.3, 0.4}, 0.9}, {{0.0, 0.0}, 1.0}};
    const double svals[2] = {1.5, 2.0};
    int k = 0;
    for (const H3& u : pts) {
        for (double s : svals) {
            Ticker t;
            double dir = eisenstein_direct(F, u, s, cfg.c_max, 12.0);
            double fou = eisenstein_fourier_truncated(F, u, s, cfg.c_max,
                                                      cfg.omega_max);
            rep.check(str("expansion-match-%d", ++k), "direct-vs-fourier",
                      str("d=-1 z=%.2f%+.2fi r=%.2f s=%.2f X=%.0f",
                          u.z.real(), u.z.imag(), u.r, s, cfg.c_max),
                      dir, dir - fou, 1e-6 * cfg.tol_scale, t.ms());
        }
    }
}

// ---------------------------------------------------------------- 2 ----
// Quadrature oracle: cell integrals of the direct sum against the closed
// coefficient formulas at the same truncation.

inline void check_coefficient_quadrature(const RunConfig& cfg,
                                         Reporter& rep) {
    Ticker t;
    ImagQuadField F(-1);
    const double r = 0.8, s = 2.0, A = 20.0, X = cfg.c_max;
    const int n = cfg.grid;
    double vol = F.lattice_covolume();
    std::complex<double> omega = F.embed({0, 1});
    std::vector<std::complex<double>> zs(size_t(n) * n);
    std::vector<double> ev(size_t(n) * n);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            zs[size_t(iy) * n + ix] =
                (ix + 0.5) / n + (iy + 0.5) / n * omega;
    parallel_for(ev.size(), cfg.threads, [&](size_t i) {
        ev[i] = eisenstein_direct(F, {zs[i], r}, s, X, A);
    });
    double grid_ms = t.ms();

    struct Mode {
        const char* id;
        const char* label;
        AlgInt beta;  // ignored for the zero mode
        bool zero;
    };
    const Mode modes[3] = {{"coeff-quad-zero", "w'=0", {0, 0}, true},
                           {"coeff-quad-one", "w'=1", {0, -1}, false},
                           {"coeff-quad-onepi", "w'=1+i", {1, -1}, false}};
    for (const Mode& m : modes) {
        Ticker tm;
        KahanSum re, im;
        for (size_t i = 0; i < ev.size(); ++i) {
            double ph = m.zero ? 0.0
                               : -2.0 * std::numbers::pi *
                                     pairing(F, m.beta, zs[i]);
            re.add(ev[i] * std::cos(ph));
            im.add(ev[i] * std::sin(ph));
        }
        std::complex<double> quad{re.value() / double(ev.size()),
                                  im.value() / double(ev.size())};
        double closed;
        if (m.zero) {
            closed = 0.5 * F.num_units() * std::pow(r, 1.0 + s) +
                     std::numbers::pi / (s * vol) * phi0_partial(F, s, X) *
                         std::pow(r, 1.0 - s);
        } else {
            closed = g_hat(s, r, std::abs(dual_embed(F, m.beta))) *
                     std::pow(r, 1.0 + s) *
                     dirichlet_partial(F, m.beta, s, X) / vol;
        }
        rep.check(m.id, "coefficient-quadrature",
                  str("d=-1 %s r=%.2f s=%.2f X=%.0f grid=%d", m.label, r, s,
                      X, n),
                  closed, std::abs(quad - closed) / std::abs(closed),
                  1e-6 * cfg.tol_scale, tm.ms() + grid_ms / 3.0);
    }
}

// ---------------------------------------------------------------- 3 ----
// Group invariance of E, the full-pair normalization, the limit value,
// and the transformation law of g, over seeded random matrices.

inline void check_invariance(const RunConfig& cfg, Reporter& rep) {
    Ticker t;
    ImagQuadField F(-1);
    const H3 u{{0.2, 0.3}, 1.1};
    const double s = 1.5, decay = 25.0;
    auto mats = random_psl_matrices(F, 10, 10, 20260815u, true);
    double base_e = eisenstein_fourier(F, u, s, decay);
    double base_rhs = klf_rhs(F, u, decay);
    double base_g = egm_g(F, u, decay);
    double zf = 2.0 * dedekind_zeta(F, s + 1.0);
    double we = 0, whate = 0, wrhs = 0, wg = 0;
    for (const Mat2& M : mats) {
        H3 v = apply(F, M, u);
        double de = eisenstein_fourier(F, v, s, decay) - base_e;
        we = std::max(we, std::abs(de));
        whate = std::max(whate, std::abs(zf * de));
        wrhs = std::max(wrhs, std::abs(klf_rhs(F, v, decay) - base_rhs));
        wg = std::max(
            wg, std::abs(egm_g(F, v, decay) +
                         std::log(action_denominator(F, M, u)) - base_g));
    }
    std::string in = str("d=-1 z=0.2+0.3i r=1.1 10 seeded matrices, "
                         "entry norms <= 10, first %s",
                         mat_str(mats[0]).c_str());
    double tol = 1e-5 * cfg.tol_scale, ms = t.ms() / 4.0;
    rep.check("invariance-e", "eisenstein-invariance", in, base_e, we, tol,
              ms);
    rep.check("invariance-hat", "full-pair-invariance", in, zf * base_e,
              whate, tol, ms);
    rep.check("invariance-limit", "limit-value-invariance", in, base_rhs,
              wrhs, tol, ms);
    rep.check("invariance-g", "g-transformation-law", in, base_g, wg, tol,
              ms);
}

// ---------------------------------------------------------------- 4 ----
// Double-coset partition, exact arithmetic: every group element with
// entry norms <= 10 must land in exactly one emitted coset, reconstructed
// by an explicit translation witness.

inline void check_double_cosets(const RunConfig& cfg, Reporter& rep) {
    (void)cfg;
    Ticker t;
    ImagQuadField F(-1);
    std::vector<AlgInt> pts;
    for (int64_t x = -3; x <= 3; ++x)
        for (int64_t y = -3; y <= 3; ++y)
            if (x * x + y * y <= 10) pts.push_back({x, y});

    std::map<std::array<int64_t, 4>, int> emitted;
    long violations = 0;
    for (AlgInt c : strata_c(F, std::sqrt(10.0) + 1e-9))
        for (AlgInt d : F.coprime_residues_mod(c))
            if (!emitted.emplace(std::array<int64_t, 4>{c.x, c.y, d.x, d.y},
                                 0).second)
                ++violations;  // duplicate emission
    std::map<std::array<int64_t, 2>, int> unit_classes;
    for (AlgInt v : F.units())
        if (in_plus_half(v)) unit_classes[{v.x, v.y}] = 0;

    long total = 0;
    const AlgInt one{1, 0}, zero{0, 0};
    for (AlgInt a : pts) {
        for (AlgInt b : pts) {
            for (AlgInt c : pts) {
                AlgInt d;
                if (a == zero) {
                    // det = -bc must be 1; d is then unconstrained
                    if (!(F.mul(b, c) == AlgInt{-1, 0})) continue;
                    for (AlgInt dd : pts) {
                        Mat2 M{a, b, c, dd};
                        ++total;
                        Mat2 Mn = in_plus_half(M.c) ? M : negate(M);
                        auto rs = F.residue_system(Mn.c);
                        AlgInt del = F.reduce(Mn.d, rs);
                        auto it = emitted.find(
                            {Mn.c.x, Mn.c.y, del.x, del.y});
                        if (it == emitted.end()) {
                            ++violations;
                            continue;
                        }
                        ++it->second;
                        Mat2 W = complete_to_matrix(F, Mn.c, del);
                        auto [mu, r1] = F.divmod(Mn.a - W.a, Mn.c);
                        auto [nu, r2] = F.divmod(Mn.d - W.d, Mn.c);
                        if (!(r1 == zero) || !(r2 == zero) ||
                            !(matmul(F, translation(mu),
                                     matmul(F, W, translation(nu))) == Mn))
                            ++violations;
                    }
                    continue;
                }
                AlgInt num = one + F.mul(b, c);
                auto [q, rem] = F.divmod(num, a);
                if (!(rem == zero) || F.norm(q) > 10) continue;
                d = q;
                Mat2 M{a, b, c, d};
                ++total;
                if (M.c == zero) {
                    AlgInt un = in_plus_half(M.a) ? M.a : -M.a;
                    auto it = unit_classes.find({un.x, un.y});
                    if (it == unit_classes.end())
                        ++violations;
                    else
                        ++it->second;
                    continue;
                }
                Mat2 Mn = in_plus_half(M.c) ? M : negate(M);
                auto rs = F.residue_system(Mn.c);
                AlgInt del = F.reduce(Mn.d, rs);
                auto it = emitted.find({Mn.c.x, Mn.c.y, del.x, del.y});
                if (it == emitted.end()) {
                    ++violations;
                    continue;
                }
                ++it->second;
                Mat2 W = complete_to_matrix(F, Mn.c, del);
                auto [mu, r1] = F.divmod(Mn.a - W.a, Mn.c);
                auto [nu, r2] = F.divmod(Mn.d - W.d, Mn.c);
                if (!(r1 == zero) || !(r2 == zero) ||
                    !(matmul(F, translation(mu),
                             matmul(F, W, translation(nu))) == Mn))
                    ++violations;
            }
        }
    }
    long unhit = 0;
    for (const auto& [k, hits] : emitted) unhit += hits == 0;
    for (const auto& [k, hits] : unit_classes) unhit += hits == 0;
    violations += unhit;
    rep.check("double-coset-partition", "coset-partition",
              str("d=-1 all det-1 matrices with entry norms <= 10: %ld "
                  "matrices vs %zu cosets + %zu unit classes, %ld unhit",
                  total, emitted.size(), unit_classes.size(), unhit),
              double(total), double(violations), 0.0, t.ms());
}

// ---------------------------------------------------------------- 5 ----
// The phi ratio: the strata Dirichlet series against the zeta ratio, as a
// one-constant fit (matched truncation on both sides) plus a convergent
// anchor point.

inline void check_phi_ratio(const RunConfig& cfg, Reporter& rep) {
    for (long long d : {-1LL, -3LL}) {
        Ticker t;
        ImagQuadField F(d);
        const double X = 200.0;
        const double sg[4] = {1.5, 2.0, 2.5, 3.0};
        double per_ideal = 2.0 / double(F.num_units());
        auto z_part = [&](double s, double Y) {
            KahanSum acc;
            for (AlgInt nn : strata_c(F, std::sqrt(Y)))
                acc.add(per_ideal *
                        std::pow(double(F.norm(nn)), -s));
            return acc.value();
        };
        double P[4], R[4], num = 0, den = 0;
        auto ms = strata_c(F, std::sqrt(X));
        for (int j = 0; j < 4; ++j) {
            P[j] = phi0_partial(F, sg[j], X);
            KahanSum acc;
            for (AlgInt m : ms) {
                int mu = moebius_ideal(F, m);
                if (mu == 0) continue;
                double nm = double(F.norm(m));
                acc.add(per_ideal * mu * std::pow(nm, -(1.0 + sg[j])) *
                        z_part(sg[j], X / nm));
            }
            R[j] = acc.value();
            num += P[j] * R[j];
            den += R[j] * R[j];
        }
        double khat = num / den;
        double fitres = 0;
        for (int j = 0; j < 4; ++j)
            fitres = std::max(fitres, std::abs(P[j] - khat * R[j]));
        double kappa = 0.5 * F.num_units();
        std::string in = str("d=%lld s in {1.5,2,2.5,3} X=%.0f", d, X);
        rep.check(str("phi-fit-%lld", -d), "phi-ratio-fit", in, khat,
                  fitres, 1e-6 * cfg.tol_scale, t.ms());
        rep.check(str("phi-constant-%lld", -d), "phi-ratio-constant", in,
                  khat, khat - kappa, 1e-9, 0.0);
        Ticker t2;
        double part = phi0_partial(F, 3.0, 2000.0);
        rep.check(str("phi-limit-%lld", -d), "phi-ratio-limit",
                  str("d=%lld s=3 X=2000 vs zeta ratio", d), part,
                  part - phi0(F, 3.0), 1e-6 * cfg.tol_scale, t2.ms());
    }
}

// ---------------------------------------------------------------- 6 ----
// The limit identity: extrapolated pole-subtracted values against the
// closed right side.

inline void check_klf(const RunConfig& cfg, Reporter& rep) {
    const H3 pts[3] = {{{0.23, 0.31}, 0.8},
                       {{-0.4, 0.12}, 1.3},
                       {{0.1, -0.2}, 1.0}};
    for (long long d : {-1LL, -3LL}) {
        ImagQuadField F(d);
        int k = 0;
        for (const H3& u : pts) {
            Ticker t;
            double lhs = klf_limit(F, u, cfg.eps, cfg.omega_max);
            double rhs = klf_rhs(F, u, cfg.omega_max);
            rep.check(str("limit-identity-%lld-%d", -d, ++k),
                      "limit-identity",
                      str("d=%lld z=%.2f%+.2fi r=%.2f", d, u.z.real(),
                          u.z.imag(), u.r),
                      lhs, lhs - rhs, 1e-3 * cfg.tol_scale, t.ms());
        }
    }
}

// ---------------------------------------------------------------- 7 ----
// The transformation defect.  Gating checks pin what is actually true
// (identity value, the base-point cocycle algebra, translation
// vanishing).  The constancy package is measured and reported without
// gating; the acceptance gate applies the stated thresholds to the same
// records and fails honestly.

inline void check_defect(const RunConfig& cfg, Reporter& rep) {
    (void)cfg;
    ImagQuadField F(-1);
    const double decay = 35.0;
    const H3 u0{{0.13, 0.21}, 0.9};
    Mat2 S = inversion();
    Mat2 M2 = matmul(F, S, translation({1, -1}));
    Mat2 M3 = matmul(F, translation({0, 1}), S);

    {
        Ticker t;
        double v = d_gamma(F, kIdentity, decay);
        rep.check("defect-identity", "defect-at-identity", "d=-1 D(I)", v,
                  v, 0.0, t.ms());
    }
    {
        Ticker t;
        const std::pair<Mat2, Mat2> prs[3] = {{S, M2}, {M2, M3}, {M3, S}};
        int k = 0;
        for (const auto& [A, B] : prs) {
            double res = d_gamma_at(F, matmul(F, A, B), u0, decay) -
                         d_gamma_at(F, A, apply(F, B, u0), decay) -
                         d_gamma_at(F, B, u0, decay);
            ++k;
            rep.check(str("defect-cocycle-%d", k), "defect-cocycle",
                      str("d=-1 D(AB,u)-D(A,Bu)-D(B,u), A=%s B=%s",
                          mat_str(A).c_str(), mat_str(B).c_str()),
                      res, res, 1e-12, k == 3 ? t.ms() : 0.0);
        }
    }
    {
        Ticker t;
        double res = 0;
        for (const Mat2& M : {S, M2})
            res = std::max(
                res, std::abs(d_gamma_at(F, M, u0, decay) +
                              d_gamma_at(F, inverse(F, M),
                                         apply(F, M, u0), decay)));
        rep.check("defect-inverse", "defect-cocycle-inverse",
                  "d=-1 D(M,u)+D(M^-1,Mu) for 2 matrices", res, res, 1e-12,
                  t.ms());
    }
    {
        Ticker t;
        double res = 0;
        for (AlgInt b : {AlgInt{1, 0}, AlgInt{0, 1}})
            res = std::max(
                res, std::abs(d_gamma_at(F, translation(b), u0, decay)));
        rep.check("defect-translation", "defect-on-translations",
                  "d=-1 D(T,u) for both generators", res, res, 1e-14,
                  t.ms());
    }

    // measured constancy package, report-only
    static const H3 samples[5] = {{{0.13, 0.21}, 0.9},
                                  {{-0.31, 0.17}, 1.1},
                                  {{0.05, -0.23}, 1.35},
                                  {{0.42, 0.08}, 0.8},
                                  {{-0.11, -0.37}, 1.02}};
    {
        Ticker t;
        double worst_sd = 0, med = 0;
        for (const Mat2& M : {S, M2}) {
            std::vector<double> vals;
            for (const H3& u : samples)
                vals.push_back(d_gamma_at(F, M, u, decay));
            double mean = 0;
            for (double v : vals) mean += v / vals.size();
            double var = 0;
            for (double v : vals)
                var += (v - mean) * (v - mean) / (vals.size() - 1);
            if (std::sqrt(var) > worst_sd) {
                worst_sd = std::sqrt(var);
                std::sort(vals.begin(), vals.end());
                med = vals[2];
            }
        }
        rep.finding("defect-constancy", "defect-base-point-dependence",
                    str("d=-1 sd of D(M,u) over 5 base points, 2 matrices; "
                        "median %.6f; constancy would make D a "
                        "homomorphism, forced to 0 by the finite "
                        "abelianization, contradicting the nonzero median",
                        med),
                    worst_sd, worst_sd, 0.0, t.ms());
    }
    {
        Ticker t;
        double v1 = d_gamma(F, M2, decay);
        double v2 = d_gamma(F, inverse(F, M2), decay);
        rep.finding("defect-antisymmetry", "defect-median-antisymmetry",
                    str("d=-1 D(M)=%.6f D(M^-1)=%.6f as medians; the gap "
                        "is the base-point spread, not noise",
                        v1, v2),
                    v1, v1 + v2, 0.0, t.ms());
    }
    {
        Ticker t;
        auto ms = random_psl_matrices(F, 5, 3, 777u, true);
        std::vector<double> dv;
        for (const Mat2& M : ms) dv.push_back(d_gamma_at(F, M, u0, decay));
        double worst = 0;
        int pairs = 0;
        for (size_t i = 0; i < ms.size(); ++i)
            for (size_t j = i + 1; j < ms.size(); ++j) {
                double res =
                    d_gamma_at(F, matmul(F, ms[i], ms[j]), u0, decay) -
                    dv[i] - dv[j];
                worst = std::max(worst, std::abs(res));
                ++pairs;
            }
        rep.finding("defect-homomorphism", "defect-homomorphism-gap",
                    str("d=-1 |D(MN,u)-D(M,u)-D(N,u)| over %d seeded "
                        "pairs at one base point; equals "
                        "|D(M,Nu)-D(M,u)| by the cocycle rule",
                        pairs),
                    worst, worst, 0.0, t.ms());
    }
    {
        Ticker t;
        auto ms = random_psl_matrices(F, 5, 3, 778u, true);
        double worst = 0;
        for (int k = 0; k < 5; ++k) {
            const Mat2& M = ms[k];
            const Mat2& N = ms[(k + 1) % 5];
            Mat2 C = matmul(F, N, matmul(F, M, inverse(F, N)));
            worst = std::max(worst,
                             std::abs(d_gamma_at(F, C, u0, decay) -
                                      d_gamma_at(F, M, u0, decay)));
        }
        rep.finding("defect-conjugacy", "defect-conjugacy-gap",
                    "d=-1 |D(NMN^-1,u)-D(M,u)| over 5 seeded triples at "
                    "one base point",
                    worst, worst, 0.0, t.ms());
    }
}

// ---------------------------------------------------------------- 8 ----
// Harmonicity of both parts of log eta and of g under the hyperbolic
// Laplacian, with the observed stencil order.

inline void check_harmonicity(const RunConfig& cfg, Reporter& rep) {
    ImagQuadField F(-1);
    const H3 pts[3] = {{{0.13, 0.21}, 0.9},
                       {{-0.31, 0.17}, 1.1},
                       {{0.42, 0.08}, 0.8}};
    struct Fun {
        const char* id;
        std::function<double(const H3&)> f;
    };
    const double decay = cfg.omega_max;
    const Fun funs[3] = {
        {"re-logeta",
         [&](const H3& u) { return log_eta(F, u, decay).real(); }},
        {"im-logeta",
         [&](const H3& u) { return log_eta(F, u, decay).imag(); }},
        {"g", [&](const H3& u) { return egm_g(F, u, decay); }}};
    for (const Fun& fn : funs) {
        Ticker t;
        double worst_mag = 0, worst_dev = 0, order_at_worst = 2.0;
        for (const H3& u : pts) {
            double h = 1e-3 * u.r;
            double d1 = laplace_beltrami(fn.f, u, h);
            double d2 = laplace_beltrami(fn.f, u, 2.0 * h);
            double order = std::log2(std::abs(d2) / std::abs(d1));
            worst_mag = std::max(worst_mag, std::abs(d1));
            if (std::abs(order - 2.0) > worst_dev) {
                worst_dev = std::abs(order - 2.0);
                order_at_worst = order;
            }
        }
        rep.check(str("harmonic-%s", fn.id), "harmonicity",
                  str("d=-1 3 points, h=1e-3*r"), worst_mag, worst_mag,
                  1e-4 * cfg.tol_scale, t.ms());
        rep.check(str("harmonic-%s-order", fn.id), "harmonicity-order",
                  str("d=-1 observed order %.3f vs stencil order 2",
                      order_at_worst),
                  order_at_worst, order_at_worst - 2.0, 0.3, 0.0);
    }
}

// ---------------------------------------------------------------- 9 ----
// Coefficient symmetries at s = 1 over all frequencies up to the stated
// radius: conjugate frequency, negated frequency, and realness of the
// residue character sums.

inline void check_coeff_symmetry(const RunConfig& cfg, Reporter& rep) {
    for (long long d : {-1LL, -7LL}) {
        Ticker t;
        ImagQuadField F(d);
        const double r = 0.8, s = 1.0;
        double bmax = 5.0 * F.sqrt_abs_disc() / 2.0;  // |theta beta| <= 5
        double wconj = 0, wneg = 0;
        int count = 0;
        for (AlgInt b : strata_c(F, bmax + 1e-9)) {
            double a = fourier_mode(F, b, r, s);
            double ac = fourier_mode(F, -F.conj(b), r, s);
            double an = fourier_mode(F, AlgInt{-b.x, -b.y}, r, s);
            wconj = std::max(wconj, std::abs(ac - a));
            wneg = std::max(wneg, std::abs(an - a));
            ++count;
        }
        std::string in = str("d=%lld r=%.2f s=1, %d frequencies with "
                             "|w'| <= 5",
                             d, r, count);
        rep.check(str("coeff-sym-conj-%lld", -d),
                  "coefficient-conjugate-symmetry", in, double(count),
                  wconj, 1e-8 * cfg.tol_scale, t.ms());
        rep.check(str("coeff-sym-neg-%lld", -d),
                  "coefficient-negation-symmetry", in, double(count), wneg,
                  1e-8 * cfg.tol_scale, 0.0);
    }
    {
        Ticker t;
        ImagQuadField F(-1);
        double worst = 0;
        AlgInt beta{2, -1};
        for (AlgInt c : strata_c(F, std::sqrt(40.0)))
            worst = std::max(
                worst,
                std::abs(char_sum(F, c, F.coprime_residues_mod(c), beta)
                             .imag()));
        rep.check("coeff-sym-real", "character-sum-realness",
                  "d=-1 residue sums for N(c) <= 40 at one frequency",
                  worst, worst, 1e-10, t.ms());
    }
}

// --------------------------------------------------------------- 10 ----
// Elliptic Dedekind sums and the Eisenstein-Kronecker E1 routes.

inline void check_elliptic(const RunConfig& cfg, Reporter& rep) {
    {
        Ticker t;
        ImagQuadField F(-1);
        const std::pair<AlgInt, AlgInt> prs[10] = {
            {{1, 0}, {1, 2}}, {{2, 1}, {3, 2}}, {{1, 1}, {4, 1}},
            {{3, 0}, {1, 3}}, {{0, 1}, {2, 3}}, {{2, 1}, {4, 3}},
            {{1, 2}, {3, 0}}, {{3, 2}, {1, 1}}, {{4, 1}, {2, 1}},
            {{1, 1}, {0, 3}}};
        double wre = 0, wconj = 0;
        for (const auto& [c, dd] : prs) {
            if (!F.coprime(c, dd) || F.norm(dd) > 25)
                throw std::logic_error("bad fixed pair in check_elliptic");
            std::complex<double> D = sczech_sum(F, c, dd);
            std::complex<double> Dc =
                sczech_sum(F, F.conj(c), F.conj(dd));
            wre = std::max(wre, std::abs(D.real()));
            wconj = std::max(wconj, std::abs(D + Dc));
        }
        rep.check("elliptic-dedekind-imaginary", "dedekind-sum-imaginary",
                  "d=-1 10 coprime pairs, N(d) <= 25", wre, wre,
                  1e-10 * cfg.tol_scale, t.ms());
        rep.check("elliptic-dedekind-conjugation",
                  "dedekind-sum-conjugation",
                  "d=-1 D(c,d) + D(conj c, conj d) over the same pairs",
                  wconj, wconj, 1e-10 * cfg.tol_scale, 0.0);
    }
    {
        Ticker t;
        ImagQuadField F(-7);
        const std::pair<AlgInt, AlgInt> prs[3] = {
            {{2, 1}, {3, 1}}, {{1, 1}, {2, -1}}, {{3, 0}, {1, 2}}};
        double wre = 0, wconj = 0, minabs = 1e9;
        for (const auto& [c, dd] : prs) {
            if (!F.coprime(c, dd) || F.norm(dd) > 25)
                throw std::logic_error("bad fixed pair in check_elliptic");
            std::complex<double> D = sczech_sum(F, c, dd);
            std::complex<double> Dc =
                sczech_sum(F, F.conj(c), F.conj(dd));
            wre = std::max(wre, std::abs(D.real()));
            wconj = std::max(wconj, std::abs(D + Dc));
            minabs = std::min(minabs, std::abs(D));
        }
        rep.check("elliptic-dedekind-imaginary-7",
                  "dedekind-sum-imaginary",
                  "d=-7 3 coprime pairs with nonvanishing sums", wre, wre,
                  1e-10 * cfg.tol_scale, t.ms());
        rep.check("elliptic-dedekind-conjugation-7",
                  "dedekind-sum-conjugation",
                  "d=-7 conjugated pairs", wconj, wconj,
                  1e-10 * cfg.tol_scale, 0.0);
        rep.check("elliptic-dedekind-nonzero-7", "dedekind-sum-nonzero",
                  str("d=-7 smallest |D| = %.6f, must exceed 1e-3",
                      minabs),
                  minabs, minabs >= 1e-3 ? 0.0 : 1e-3 - minabs, 0.0, 0.0);
    }
    {
        Ticker t;
        double worst = 0;
        for (long long d : {-1LL, -7LL}) {
            ImagQuadField F(d);
            EllipticLattice L = make_lattice(1.0, F.embed({0, 1}));
            const std::complex<double> zs[3] = {{0.23, 0.11},
                                                {0.57, -0.31},
                                                {-0.42, 0.37}};
            for (std::complex<double> z : zs) {
                std::complex<double> a = eisenstein_e1(L, z);
                std::complex<double> b =
                    zeta_laurent(L, z) - L.s2 * z -
                    std::numbers::pi / L.area * std::conj(z);
                worst = std::max(worst, std::abs(a - b));
            }
        }
        rep.check("elliptic-e1-routes", "e1-two-routes",
                  "d in {-1,-7}, 3 points each, q-series vs Laurent",
                  worst, worst, 1e-8 * cfg.tol_scale, t.ms());
    }
}

// --------------------------------------------------------------- 11 ----
// Report-only verification experiments for the delicate constants.

inline void finding_residue(const RunConfig& cfg, Reporter& rep) {
    Ticker t;
    ImagQuadField F(cfg.d);
    const H3 u{{0.2, 0.1}, 1.0};
    std::vector<double> fv;
    for (double e : cfg.eps)
        fv.push_back(e * eisenstein_fourier(F, u, 1.0 + e, cfg.omega_max));
    double numeric = 0;
    for (size_t i = 0; i < cfg.eps.size(); ++i) {
        double li = 1.0;
        for (size_t j = 0; j < cfg.eps.size(); ++j)
            if (j != i) li *= -cfg.eps[j] / (cfg.eps[i] - cfg.eps[j]);
        numeric += fv[i] * li;
    }
    LaurentData L = laurent_data(F);
    // the displayed residue reads 4 pi^2 |La'| / (|dK|^{3/2} zeta_K(2));
    // three readings of |La'|: unit norm 1, the dual cell 2/sqrt|dK|,
    // the primal cell sqrt|dK|/2
    auto readings = [](const ImagQuadField& G) {
        double dk = std::abs(double(G.disc()));
        double base = 4.0 * std::numbers::pi * std::numbers::pi /
                      (std::pow(dk, 1.5) * dedekind_zeta(G, 2.0));
        return std::array<double, 3>{base, base * 2.0 / std::sqrt(dk),
                                     base * G.lattice_covolume()};
    };
    auto rr = readings(F);
    // all readings coincide at d=-1; a second field separates them
    ImagQuadField F2(cfg.d == -11 ? -7 : -11);
    auto rr2 = readings(F2);
    double aud2 = laurent_data(F2).alpha;
    rep.finding(
        "residue-normalization", "eisenstein-residue",
        str("d=%lld numeric=%.9e audited pi*a/|La|=%.9e displayed-residue "
            "readings: unit-norm %.9e dual-cell %.9e primal-cell %.9e; at "
            "d=%lld audited %.6e vs %.6e / %.6e / %.6e, only the "
            "primal-cell reading survives, so the displayed dual lattice "
            "must be the primal one",
            cfg.d, numeric, L.alpha, rr[0], rr[1], rr[2], (long long)F2.d(), aud2,
            rr2[0], rr2[1], rr2[2]),
        numeric, numeric - L.alpha, 0.0, t.ms());
}

inline void finding_kernel_step(const RunConfig& cfg, Reporter& rep) {
    (void)cfg;
    Ticker t;
    double worst = 0;
    std::string detail;
    for (double x : {0.5, 1.0, 2.0}) {
        double lhs = bessel_k(1.0, x);
        double rhs = x * bessel_k(0.0, x);
        worst = std::max(worst, std::abs(lhs - rhs));
        detail += str(" x=%.1f: K1=%.6f xK0=%.6f", x, lhs, rhs);
    }
    rep.finding("kernel-order-step", "k-bessel-order-step",
                "claimed K1(x) = x K0(x); both sides:" + detail +
                    "; the s=1 coefficients use the r K1 form, which the "
                    "harmonicity and quadrature checks confirm",
                bessel_k(1.0, 1.0), worst, 0.0, t.ms());
}

inline void finding_zeta2(const RunConfig& cfg, Reporter& rep) {
    Ticker t;
    ImagQuadField F(cfg.d);
    ImagQuadField F2(cfg.d == -11 ? -7 : -11);
    double z2 = dedekind_zeta(F, 2.0);
    double z2b = dedekind_zeta(F2, 2.0);
    double dk = std::abs(double(F.disc()));
    double dkb = std::abs(double(F2.disc()));
    double r_norm = 1.0 / std::sqrt(dk);  // |La'| = N(u)^2 = 1
    double r_dual = 2.0 / dk;             // |La'| = dual cell area
    // the primal-cell reading is 0.5 for every field
    rep.finding(
        "zeta-two-readings", "zeta-two-from-cells",
        str("d=%lld zeta_K(2)=%.9f vs |dK|^-1/2 * |La'| readings: "
            "unit-norm %.6f, dual-cell %.6f, primal-cell 0.5; at d=%lld "
            "zeta_K(2)=%.6f vs %.6f / %.6f / 0.5; no reading matches, "
            "the claimed closed evaluation fails",
            cfg.d, z2, r_norm, r_dual, (long long)F2.d(), z2b, 1.0 / std::sqrt(dkb),
            2.0 / dkb),
        z2, z2 - r_norm, 0.0, t.ms());
}

inline void finding_product_constant(const RunConfig& cfg, Reporter& rep) {
    Ticker t;
    ImagQuadField F(cfg.d);
    EllipticLattice L = make_lattice(1.0, F.embed({0, 1}));
    double gtilde = std::pow(2.0 * std::numbers::pi, -12.0) *
                    std::abs(L.delta);
    const H3 us[2] = {{{0.23, 0.31}, 0.8}, {{0.1, -0.2}, 1.3}};
    double B[2], drift = 0;
    for (int i = 0; i < 2; ++i) {
        B[i] = b_gamma(F, us[i].r, gtilde);
        double lit = -2.0 * log_eta(F, us[i], cfg.omega_max).real() + B[i];
        drift = std::max(
            drift, std::abs(lit - egm_g(F, us[i], cfg.omega_max) - B[i]));
    }
    rep.finding(
        "product-formula-constant", "g-product-constant",
        str("d=%lld B(0.8)=%.6f B(1.3)=%.6f; the displayed product "
            "formula exceeds g by exactly B(r) (after subtracting the "
            "declared B the drift is %.1e); with the audited residue "
            "constant, g = -2 log|eta| holds with no extra constant",
            cfg.d, B[0], B[1], drift),
        B[0], drift, 0.0, t.ms());
}

// ------------------------------------------------------------- all ----

inline void run_all(const RunConfig& cfg, Reporter& rep) {
    check_expansion(cfg, rep);
    check_coefficient_quadrature(cfg, rep);
    check_invariance(cfg, rep);
    check_double_cosets(cfg, rep);
    check_phi_ratio(cfg, rep);
    check_klf(cfg, rep);
    check_defect(cfg, rep);
    check_harmonicity(cfg, rep);
    check_coeff_symmetry(cfg, rep);
    check_elliptic(cfg, rep);
    finding_residue(cfg, rep);
    finding_kernel_step(cfg, rep);
    finding_zeta2(cfg, rep);
    finding_product_constant(cfg, rep);
}

}  // namespace verify
}  // namespace kleinian
