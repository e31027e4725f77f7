#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace mtk {

using BigInt = mpz_class;
using Rat = mpq_class;
using i64 = std::int64_t;
using u64 = std::uint64_t;

// Canonicalised a / b.
inline Rat frac(i64 a, i64 b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

i64 mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
// Returns g and sets x, y with a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);
i64 invmod(i64 a, i64 m);
i64 ipow(i64 b, unsigned e);

bool is_prime(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
i64 euler_phi(i64 n);
int vp(i64 n, i64 p);
int vp(const BigInt& n, i64 p);
// Valuation of a nonzero rational; throws ZeroInput on zero.
int vp(const Rat& r, i64 p);
i64 primitive_root(i64 p);
// Multiplicative order of a modulo m (a must be a unit).
i64 mult_order(i64 a, i64 m);
// Legendre symbol for odd prime p.
int legendre(i64 a, i64 p);
i64 sqrt_mod(i64 a, i64 p);

// a = omega(a) * <a> modulo p^{n+1}; omega(a) is the Teichmuller lift and
// <a> is congruent to 1 mod p.
std::pair<i64, i64> teichmuller_decompose(i64 a, i64 p, int n);

// Discrete logarithms t_n(a) of <a> to base gamma modulo p^{n+1}, for all
// a modulo p^{n+1} M.  Entries for non-units are -1.
class TnTable {
public:
    TnTable(i64 p, int n, i64 M, i64 gamma = 0);

    i64 p() const { return p_; }
    int n() const { return n_; }
    i64 M() const { return M_; }
    i64 modulus() const { return modulus_; }
    i64 gamma() const { return gamma_; }
    i64 pn() const { return pn_; }
    i64 operator()(i64 a) const;
    bool is_unit(i64 a) const { return (*this)(a) >= 0; }

private:
    i64 p_;
    int n_;
    i64 M_;
    i64 gamma_;
    i64 pn_;
    i64 modulus_;
    std::vector<i64> table_;
};

// Integer coefficients of the cyclotomic polynomial Phi_m, low degree first.
std::vector<i64> cyclotomic_poly(i64 m);

}  // namespace mtk
