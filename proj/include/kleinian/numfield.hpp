#pragma once
// Exact arithmetic in the ring of integers O = Z + Z*omega of an imaginary
// quadratic field Q(sqrt(d)) for the five norm-Euclidean cases
// d in {-1,-2,-3,-7,-11}.  An element is an integer coordinate pair (x,y)
// meaning x + y*omega, where omega = sqrt(d) for d = 2,3 mod 4 and
// omega = (1+sqrt(d))/2 for d = 1 mod 4.  Everything here is integer exact:
// ring operations, nearest-point division, gcd, residue systems modulo an
// element, ideal factorization, and the quadratic character of the field.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kleinian {

struct AlgInt {
    int64_t x = 0;  // coefficient of 1
    int64_t y = 0;  // coefficient of omega
    friend bool operator==(const AlgInt&, const AlgInt&) = default;
};

inline AlgInt operator+(AlgInt a, AlgInt b) { return {a.x + b.x, a.y + b.y}; }
inline AlgInt operator-(AlgInt a, AlgInt b) { return {a.x - b.x, a.y - b.y}; }
inline AlgInt operator-(AlgInt a) { return {-a.x, -a.y}; }
inline AlgInt operator*(int64_t s, AlgInt a) { return {s * a.x, s * a.y}; }
inline bool is_zero(AlgInt a) { return a.x == 0 && a.y == 0; }

namespace detail {

// Floored quotient, defined for any b != 0.
inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline int64_t powmod(int64_t b, int64_t e, int64_t m) {
    __int128 r = 1, bb = b % m;
    if (bb < 0) bb += m;
    while (e > 0) {
        if (e & 1) r = r * bb % m;
        bb = bb * bb % m;
        e >>= 1;
    }
    return int64_t(r);
}

// Square root mod an odd prime (Tonelli-Shanks); -1 if a is a non-residue.
inline int64_t sqrt_mod(int64_t a, int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1) return -1;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    int64_t q = p - 1;
    int64_t s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    int64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    int64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p);
    int64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        int64_t i = 0, tt = t;
        while (tt != 1) { tt = int64_t((__int128)tt * tt % p); ++i; }
        int64_t b = c;
        for (int64_t j = 0; j < m - i - 1; ++j) b = int64_t((__int128)b * b % p);
        m = i;
        c = int64_t((__int128)b * b % p);
        t = int64_t((__int128)t * c % p);
        r = int64_t((__int128)r * b % p);
    }
    return r;
}

// Extended gcd over Z: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
inline int64_t xgcd64(int64_t a, int64_t b, int64_t& s, int64_t& t) {
    int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        int64_t q = a / b;
        int64_t tmp = a - q * b; a = b; b = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
    s = s0; t = t0;
    return a;
}

}  // namespace detail

// Kronecker symbol (a|n), the fully extended quadratic character.
inline int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    if (v & 1) {
        int64_t am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) sign = -sign;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int64_t nm = n % 8;
            if (nm == 3 || nm == 5) sign = -sign;
        }
        std::swap(a, n);
        if ((a % 4) == 3 && (n % 4) == 3) sign = -sign;
        a %= n;
    }
    return (n == 1) ? sign : 0;
}

// A residue system modulo c, stored as a column Hermite basis of the ideal
// lattice cO inside Z^2:  cO = Z*(k,0) + Z*(m,g)  with k,g > 0, k*g = N(c).
struct ResidueSystem {
    AlgInt modulus;
    int64_t k = 1;
    int64_t g = 1;
    int64_t m = 0;
};

struct IdealFactor {
    AlgInt prime;        // generator of the prime ideal, defined up to units
    int exponent = 0;
    int64_t prime_norm = 0;  // residue field size N(prime)
};

class ImagQuadField {
public:
    explicit ImagQuadField(int d) : d_(d) {
        switch (d) {
            case -1: case -2:
                tr_ = 0; n0_ = -d; disc_ = 4 * d;
                break;
            case -3: case -7: case -11:
                tr_ = 1; n0_ = (1 - d) / 4; disc_ = d;
                break;
            default:
                throw std::invalid_argument(
                    "only the Euclidean fields d = -1,-2,-3,-7,-11 are supported");
        }
        double root = std::sqrt(double(-d));
        omega_ = (tr_ == 0) ? std::complex<double>(0.0, root)
                            : std::complex<double>(0.5, 0.5 * root);
        if (d == -1)
            units_ = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        else if (d == -3)
            units_ = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
        else
            units_ = {{1, 0}, {-1, 0}};
    }

    int d() const { return d_; }
    int64_t disc() const { return disc_; }
    int64_t tr_omega() const { return tr_; }
    int64_t norm_omega() const { return n0_; }
    std::complex<double> omega() const { return omega_; }
    double sqrt_abs_disc() const { return std::sqrt(double(-disc_)); }
    // Covolume of the translation lattice O inside C (area of a cell).
    double lattice_covolume() const { return 0.5 * sqrt_abs_disc(); }
    const std::vector<AlgInt>& units() const { return units_; }
    int num_units() const { return int(units_.size()); }

    // Dirichlet character attached to the field, chi(n) = (disc|n).
    int chi(int64_t n) const { return kronecker(disc_, n); }

    AlgInt mul(AlgInt a, AlgInt b) const {
        // (x1 + y1 w)(x2 + y2 w) with w^2 = tr*w - n0.
        __int128 x = (__int128)a.x * b.x - (__int128)n0_ * a.y * b.y;
        __int128 y = (__int128)a.x * b.y + (__int128)a.y * b.x + (__int128)tr_ * a.y * b.y;
        return {int64_t(x), int64_t(y)};
    }

    AlgInt conj(AlgInt a) const { return {a.x + tr_ * a.y, -a.y}; }

    int64_t norm(AlgInt a) const {
        __int128 n = (__int128)a.x * a.x + (__int128)tr_ * a.x * a.y
                   + (__int128)n0_ * a.y * a.y;
        return int64_t(n);
    }

    bool is_unit(AlgInt a) const { return norm(a) == 1; }

    std::complex<double> embed(AlgInt a) const {
        return {double(a.x) + omega_.real() * double(a.y),
                omega_.imag() * double(a.y)};
    }

    // Nearest-point division: a = q*b + r with N(r) minimal over q in the
    // 3x3 coordinate neighborhood of the rounded quotient.  For these five
    // fields the covering radius of O is < 1 (worst case 9/11 at d = -11),
    // so N(r) < N(b) always holds and the Euclidean algorithm terminates.
    std::pair<AlgInt, AlgInt> divmod(AlgInt a, AlgInt b) const {
        int64_t nb = norm(b);
        if (nb == 0) throw std::invalid_argument("division by zero");
        AlgInt t = mul(a, conj(b));
        int64_t qx = llround(double(t.x) / double(nb));
        int64_t qy = llround(double(t.y) / double(nb));
        AlgInt best_q{qx, qy};
        AlgInt best_r = a - mul(best_q, b);
        int64_t best_n = norm(best_r);
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                AlgInt q{qx + di, qy + dj};
                AlgInt r = a - mul(q, b);
                int64_t n = norm(r);
                if (n < best_n) { best_n = n; best_q = q; best_r = r; }
            }
        return {best_q, best_r};
    }

    bool divides(AlgInt b, AlgInt a) const { return is_zero(divmod(a, b).second); }

    // g = gcd(a,b) with u*a + v*b = g.  g is defined up to units.
    struct Xgcd { AlgInt g, u, v; };
    Xgcd extended_gcd(AlgInt a, AlgInt b) const {
        AlgInt r0 = a, r1 = b;
        AlgInt u0{1, 0}, u1{0, 0}, v0{0, 0}, v1{1, 0};
        while (!is_zero(r1)) {
            auto [q, r2] = divmod(r0, r1);
            r0 = r1; r1 = r2;
            AlgInt u2 = u0 - mul(q, u1); u0 = u1; u1 = u2;
            AlgInt v2 = v0 - mul(q, v1); v0 = v1; v1 = v2;
        }
        return {r0, u0, v0};
    }

    bool coprime(AlgInt a, AlgInt b) const {
        return norm(extended_gcd(a, b).g) == 1;
    }

    ResidueSystem residue_system(AlgInt c) const {
        if (is_zero(c)) throw std::invalid_argument("zero modulus");
        // Ideal lattice columns: c*1 = (c.x, c.y), c*omega = (-n0*c.y, c.x + tr*c.y).
        int64_t v1x = c.x, v1y = c.y;
        int64_t v2x = -n0_ * c.y, v2y = c.x + tr_ * c.y;
        int64_t s, t;
        int64_t g = detail::xgcd64(v1y, v2y, s, t);
        ResidueSystem rs;
        rs.modulus = c;
        if (g == 0) {
            // c is a rational integer: cO has the square basis (|c|,0), (0,|c|).
            rs.k = std::abs(c.x);
            rs.g = std::abs(c.x);
            rs.m = 0;
            return rs;
        }
        rs.g = g;
        rs.m = s * v1x + t * v2x;
        rs.k = norm(c) / g;  // = |det| / g, positive
        return rs;
    }

    // Canonical representative, coordinates in [0,k) x [0,g).
    AlgInt reduce(AlgInt a, const ResidueSystem& rs) const {
        int64_t j = detail::floor_div(a.y, rs.g);
        a.x -= j * rs.m;
        a.y -= j * rs.g;
        int64_t i = detail::floor_div(a.x, rs.k);
        a.x -= i * rs.k;
        return a;
    }

    bool congruent(AlgInt a, AlgInt b, const ResidueSystem& rs) const {
        return reduce(a - b, rs) == AlgInt{0, 0};
    }

    // All N(c) residues modulo c, in canonical coordinates.
    std::vector<AlgInt> residues_mod(AlgInt c) const {
        ResidueSystem rs = residue_system(c);
        std::vector<AlgInt> out;
        out.reserve(size_t(rs.k * rs.g));
        for (int64_t j = 0; j < rs.g; ++j)
            for (int64_t i = 0; i < rs.k; ++i)
                out.push_back({i, j});
        return out;
    }

    std::vector<AlgInt> coprime_residues_mod(AlgInt c) const {
        std::vector<AlgInt> out;
        for (AlgInt r : residues_mod(c))
            if (coprime(r, c)) out.push_back(r);
        return out;
    }

    // Prime ideal factorization of (c), via the splitting of rational primes.
    std::vector<IdealFactor> factor_ideal(AlgInt c) const {
        if (is_zero(c)) throw std::invalid_argument("zero ideal");
        std::vector<IdealFactor> out;
        int64_t n = norm(c);
        for (int64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                append_prime_factors(c, p, out);
                while (n % p == 0) n /= p;
            }
        }
        if (n > 1) append_prime_factors(c, n, out);
        return out;
    }

    int64_t euler_phi(AlgInt c) const {
        int64_t phi = 1;
        int64_t rest = norm(c);
        for (const IdealFactor& f : factor_ideal(c)) {
            int64_t pk = 1;
            for (int i = 1; i < f.exponent; ++i) pk *= f.prime_norm;
            phi *= pk * (f.prime_norm - 1);
            for (int i = 0; i < f.exponent; ++i) rest /= f.prime_norm;
        }
        return phi * rest;  // rest == 1 once every prime divisor is covered
    }

private:
    void append_prime_factors(AlgInt c, int64_t p,
                              std::vector<IdealFactor>& out) const {
        int ch = chi(p);
        if (ch == -1) {
            // p stays prime; residue field has p^2 elements.
            int e = 0;
            AlgInt w = c, pp{p, 0};
            while (divides(pp, w)) { w = divmod(w, pp).first; ++e; }
            if (e > 0) out.push_back({pp, e, p * p});
            return;
        }
        // Split or ramified: omega's minimal polynomial X^2 - tr X + n0 has a
        // root t mod p, and gcd(p, omega - t) generates a prime of norm p.
        int64_t t;
        if (p == 2) {
            t = (n0_ % 2 == 0) ? 0 : 1;  // chi(2) >= 0 guarantees a root exists
        } else {
            int64_t s = detail::sqrt_mod(disc_, p);
            t = int64_t((__int128)(((tr_ + s) % p + p) % p) * ((p + 1) / 2) % p);
        }
        AlgInt pi = extended_gcd({p, 0}, {-t, 1}).g;
        std::vector<AlgInt> primes{pi};
        if (ch == 1) primes.push_back(conj(pi));
        for (AlgInt q : primes) {
            int e = 0;
            AlgInt w = c;
            while (divides(q, w)) { w = divmod(w, q).first; ++e; }
            if (e > 0) out.push_back({q, e, p});
        }
    }

    int d_;
    int64_t tr_, n0_, disc_;
    std::complex<double> omega_;
    std::vector<AlgInt> units_;
};

}  // namespace kleinian
