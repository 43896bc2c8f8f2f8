// Acceptance gate.  Runs the shared verification suite at default
// configuration and prints one line per acceptance criterion, applying
// each criterion's literal thresholds to the recorded residuals.  The
// transformation-defect criterion states thresholds that presuppose base
// point independence; the measured refutation is printed in full and the
// criterion fails honestly rather than being reinterpreted.

#include <cstdio>
#include <string>
#include <vector>

#include "kleinian/verify.hpp"

using namespace kleinian;

namespace {

const CheckRecord& rec(const Reporter& rep, const std::string& id) {
    for (const auto& r : rep.records())
        if (r.id == id) return r;
    throw std::logic_error("missing record " + id);
}

// worst |residual| among records whose id starts with the prefix
double worst(const Reporter& rep, const std::string& prefix, int* n = nullptr) {
    double w = 0;
    int count = 0;
    for (const auto& r : rep.records())
        if (r.id.rfind(prefix, 0) == 0) {
            w = std::max(w, std::abs(r.residual));
            ++count;
        }
    if (n) *n = count;
    return w;
}

int failures = 0;

void line(int num, bool pass, const char* name, const std::string& detail) {
    std::printf("[%2d] %s  %-34s %s\n", num, pass ? "PASS" : "FAIL", name,
                detail.c_str());
    if (!pass) ++failures;
}

void note(const std::string& text) {
    std::printf("      %s\n", text.c_str());
}

}  // namespace

int main() {
    RunConfig cfg;
    Reporter rep;
    using verify::str;

    verify::Ticker t1;
    verify::check_expansion(cfg, rep);
    double s1 = t1.ms() / 1e3;
    double w1 = worst(rep, "expansion-match");
    line(1, w1 < 1e-6 && s1 <= 120, "master cross-validation",
         str("d=-1, 2 points x s in {1.5,2}: max |direct - fourier| = "
             "%.2e (gate 1e-6), %.1fs (budget 120s)",
             w1, s1));

    verify::Ticker t2;
    verify::check_coefficient_quadrature(cfg, rep);
    double s2 = t2.ms() / 1e3;
    double w2 = worst(rep, "coeff-quad");
    line(2, w2 < 1e-6 && s2 <= 120, "coefficient quadrature oracle",
         str("w' in {0,1,1+i} at (r,s)=(0.8,2): max relative residual = "
             "%.2e (gate 1e-6), %.1fs (budget 120s)",
             w2, s2));

    verify::check_invariance(cfg, rep);
    double w3 = worst(rep, "invariance");
    line(3, w3 < 1e-5, "group invariance",
         str("E, full-pair E, limit value, g under 10 matrices of entry "
             "norm <= 10: max residual = %.2e (gate 1e-5)",
             w3));

    verify::check_double_cosets(cfg, rep);
    const auto& r4 = rec(rep, "double-coset-partition");
    line(4, r4.residual == 0, "double-coset partition",
         str("%.0f matrices with entry norms <= 10: %.0f violations "
             "(disjointness + completeness, exact arithmetic)",
             r4.value, r4.residual));

    verify::check_phi_ratio(cfg, rep);
    double w5f = std::max(worst(rep, "phi-fit"), worst(rep, "phi-limit"));
    double w5c = worst(rep, "phi-constant");
    line(5, w5f < 1e-6 && w5c < 1e-9, "phi zero-mode closed form",
         str("d in {-1,-3}: fit residual %.2e (gate 1e-6), audited "
             "constant off by %.2e from units/2 (gate 1e-9)",
             w5f, w5c));

    verify::Ticker t6;
    verify::check_klf(cfg, rep);
    double s6 = t6.ms() / 1e3;
    double w6 = worst(rep, "limit-identity");
    line(6, w6 < 1e-3 && s6 <= 300, "limit identity",
         str("3 points x d in {-1,-3}: max |lhs - rhs| = %.2e "
             "(gate 1e-3), %.1fs (budget 300s)",
             w6, s6));

    verify::check_defect(cfg, rep);
    double sd = rec(rep, "defect-constancy").residual;
    double di = rec(rep, "defect-identity").value;
    double anti = rec(rep, "defect-antisymmetry").residual;
    double hom = rec(rep, "defect-homomorphism").residual;
    double conj = rec(rep, "defect-conjugacy").residual;
    bool c7 = sd < 1e-6 && di == 0 && std::abs(anti) < 1e-8 &&
              hom < 1e-6 && conj < 1e-6;
    line(7, c7, "transformation-defect properties",
         str("D(I)=%.1e; sd over base points %.2e (gate 1e-6); "
             "|D(M)+D(M^-1)| %.2e (gate 1e-8); homomorphism %.2e, "
             "conjugacy %.2e (gates 1e-6)",
             di, sd, std::abs(anti), hom, conj));
    if (!c7) {
        note("the invariance identity controls only Re log eta; for the "
             "imaginary part the defect D(M,u) is base-point dependent "
             "with spread ~1e-2, four orders above truncation noise");
        note(str("what does hold, verified here to machine precision: "
                 "D(I)=0, the exact cocycle rule D(AB,u)=D(A,Bu)+D(B,u) "
                 "(max residual %.1e), D(M,u)=-D(M^-1,Mu) (%.1e), and "
                 "D=0 on translations (%.1e)",
                 worst(rep, "defect-cocycle"),
                 rec(rep, "defect-inverse").residual,
                 rec(rep, "defect-translation").residual));
        note("a base-point independent D would be a group homomorphism "
             "to R; the group's abelianization is finite, forcing D = 0, "
             "which contradicts the measured median D ~ 0.106; the "
             "stated thresholds are therefore unattainable as written");
    }

    verify::check_harmonicity(cfg, rep);
    double w8m = 0, w8o = 0;
    for (const char* nm : {"re-logeta", "im-logeta", "g"}) {
        w8m = std::max(w8m,
                       std::abs(rec(rep, str("harmonic-%s", nm)).residual));
        w8o = std::max(
            w8o,
            std::abs(rec(rep, str("harmonic-%s-order", nm)).residual));
    }
    line(8, w8m < 1e-4 && w8o <= 0.3, "harmonicity",
         str("Re log eta, Im log eta, g at 3 points: max |Laplacian| = "
             "%.2e (gate 1e-4), order within %.2f of 2 (gate 0.3)",
             w8m, w8o));

    verify::check_coeff_symmetry(cfg, rep);
    double w9 = worst(rep, "coeff-sym-conj");
    w9 = std::max(w9, worst(rep, "coeff-sym-neg"));
    double w9r = rec(rep, "coeff-sym-real").residual;
    line(9, w9 < 1e-8 && w9r < 1e-10, "coefficient symmetries at s=1",
         str("conjugate/negated frequencies |w'| <= 5, d in {-1,-7}: max "
             "residual %.2e (gate 1e-8), realness %.2e (gate 1e-10)",
             w9, w9r));

    verify::check_elliptic(cfg, rep);
    double w10 = std::max(worst(rep, "elliptic-dedekind-imaginary"),
                          worst(rep, "elliptic-dedekind-conjugation"));
    double w10e = rec(rep, "elliptic-e1-routes").residual;
    line(10, w10 < 1e-10 && w10e < 1e-8, "elliptic Dedekind sums",
         str("10 Gaussian pairs + 3 at d=-7: max Re/conjugation residual "
             "%.2e (gate 1e-10), E1 two-route %.2e (gate 1e-8)",
             w10, w10e));

    verify::finding_residue(cfg, rep);
    verify::finding_kernel_step(cfg, rep);
    verify::finding_zeta2(cfg, rep);
    verify::finding_product_constant(cfg, rep);
    std::printf("[11] REPORT-ONLY verification experiments (executed, "
                "never gate):\n");
    for (const char* id :
         {"residue-normalization", "kernel-order-step",
          "zeta-two-readings", "product-formula-constant"}) {
        const auto& r = rec(rep, id);
        note(str("%s [%s]: value %.9e, deviation %.2e", id,
                 r.anchor.c_str(), r.value, r.residual));
    }

    std::printf("\n%d of 10 gating criteria pass; %d fail; 4 report-only "
                "experiments executed\n",
                10 - failures, failures);
    return failures ? 1 : 0;
}
