#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mtk/arith.hpp"

namespace mtk {

class LocalElem;

// O = Z_p[x]/(g(x)) [pi]/(E(pi)) truncated modulo p^B, where g is a Hensel
// lift of an irreducible factor of Phi_d mod p and E(pi) = Phi_{p^s}(1 + pi).
// zeta_d maps to x and zeta_{p^s} to 1 + pi.  Coordinates are stored as
// residues modulo p^B in the basis x^i pi^j, index i * e + j.
class LocalRing : public std::enable_shared_from_this<LocalRing> {
public:
    static std::shared_ptr<const LocalRing> make(i64 p, i64 d, int s, int B);

    i64 p() const { return p_; }
    i64 d() const { return d_; }
    int s() const { return s_; }
    int B() const { return B_; }
    int f() const { return f_; }
    int e() const { return e_; }
    int rank() const { return f_ * e_; }
    u64 modulus() const { return P_; }
    // Monic lift g of degree f, low degree first (f + 1 entries).
    const std::vector<u64>& unram_modulus() const { return g_; }
    const std::vector<u64>& eisenstein() const { return E_; }

    LocalElem zero() const;
    LocalElem one() const;
    LocalElem from_int(i64 v) const;
    LocalElem from_int(const BigInt& v) const;
    // Rationals with denominator prime to p; NotIntegral otherwise.
    LocalElem from_rat(const Rat& v) const;
    LocalElem x_pow(i64 k) const;
    LocalElem zeta_p_pow(i64 k) const;
    // zeta_order^k, order dividing d p^s.
    LocalElem root_of_unity(i64 k, i64 order) const;

    // Raw coordinate arithmetic on arrays of length rank().
    void add(const u64* a, const u64* b, u64* out) const;
    void sub(const u64* a, const u64* b, u64* out) const;
    void mul(const u64* a, const u64* b, u64* out) const;
    void scale(const u64* a, u64 k, u64* out) const;
    // Valuation normalised so that v(p) = 1; PrecisionExhausted if the
    // element vanishes modulo p^B.
    Rat valuation(const u64* a) const;
    bool is_zero(const u64* a) const;

    u64 addm(u64 a, u64 b) const { u64 r = a + b; return r >= P_ ? r - P_ : r; }
    u64 subm(u64 a, u64 b) const { return a >= b ? a - b : a + P_ - b; }
    u64 mulm(u64 a, u64 b) const { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % P_); }
    u64 reduce(i64 v) const;
    u64 reduce(const BigInt& v) const;

private:
    LocalRing(i64 p, i64 d, int s, int B);
    i64 p_, d_;
    int s_, B_;
    int f_, e_;
    u64 P_;
    std::vector<u64> g_;
    std::vector<u64> E_;
    std::vector<std::vector<u64>> xpow_;     // x^k, 0 <= k < d
    std::vector<std::vector<u64>> zppow_;    // (1 + pi)^k, 0 <= k < p^s
    i64 u_, v_;                              // 1 = u p^s + v d
    int vp_res(u64 c) const;
};

using LocalRingPtr = std::shared_ptr<const LocalRing>;

class LocalElem {
public:
    LocalElem() = default;
    LocalElem(LocalRingPtr ring, std::vector<u64> c) : ring_(std::move(ring)), c_(std::move(c)) {}

    const LocalRingPtr& ring() const { return ring_; }
    const std::vector<u64>& coords() const { return c_; }
    std::vector<u64>& coords() { return c_; }

    LocalElem& operator+=(const LocalElem& o);
    LocalElem& operator-=(const LocalElem& o);
    friend LocalElem operator+(LocalElem a, const LocalElem& b) { return a += b; }
    friend LocalElem operator-(LocalElem a, const LocalElem& b) { return a -= b; }
    friend LocalElem operator*(const LocalElem& a, const LocalElem& b);
    LocalElem operator-() const;
    bool operator==(const LocalElem& o) const { return c_ == o.c_; }
    bool operator!=(const LocalElem& o) const { return c_ != o.c_; }

    bool is_zero() const;
    Rat valuation() const;
    // True if the element lies in Z_p (only the constant coordinate is nonzero).
    bool in_base() const;
    // Reduction modulo the maximal ideal, as a polynomial in x over F_p.
    std::vector<i64> residue() const;
    std::string str() const;

private:
    LocalRingPtr ring_;
    std::vector<u64> c_;
};

// Least monic irreducible factor of Phi_d modulo p (ordered by the integer
// sum c_i p^i of its coefficients), lifted to Z/p^B.  Low degree first.
std::vector<u64> hensel_factor(i64 d, i64 p, int B);

}  // namespace mtk
