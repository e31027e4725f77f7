#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "mtk/arith.hpp"

namespace mtk {

class LocalRing;
class LocalElem;

// Z[zeta_d, zeta_{p^s}] with p prime not dividing d, in the tensor power
// basis zeta_d^i zeta_{p^s}^j, 0 <= i < phi(d), 0 <= j < phi(p^s).
class CycRing {
public:
    static std::shared_ptr<const CycRing> make(i64 d, i64 p, int s);
    // Smallest ring of this shape containing the order-th roots of unity for
    // every order in the list, with p as the distinguished prime.
    static std::shared_ptr<const CycRing> for_orders(i64 p, const std::vector<i64>& orders);

    i64 d() const { return d_; }
    i64 p() const { return p_; }
    int s() const { return s_; }
    i64 ps() const { return ps_; }
    i64 order() const { return d_ * ps_; }
    int fd() const { return fd_; }
    int fp() const { return fp_; }
    int rank() const { return fd_ * fp_; }

    // Basis expansion of zeta_d^i (resp. zeta_{p^s}^j), any integer exponent.
    const std::vector<i64>& dpow(i64 i) const { return dpow_[mod(i, d_)]; }
    const std::vector<i64>& ppow(i64 j) const { return ppow_[mod(j, ps_)]; }
    // Split an exponent of zeta_{d p^s} into (zeta_d, zeta_{p^s}) exponents.
    std::pair<i64, i64> split_exponent(i64 k) const;

private:
    CycRing(i64 d, i64 p, int s);
    i64 d_, p_;
    int s_;
    i64 ps_;
    int fd_, fp_;
    i64 u_, v_;  // 1 = u p^s + v d
    std::vector<std::vector<i64>> dpow_, ppow_;
};

using CycRingPtr = std::shared_ptr<const CycRing>;

class CycInt {
public:
    CycInt() = default;
    explicit CycInt(CycRingPtr ring);
    CycInt(CycRingPtr ring, const BigInt& c);

    // zeta_order^k; order must divide d p^s.
    static CycInt root(CycRingPtr ring, i64 k, i64 order);

    const CycRingPtr& ring() const { return ring_; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt& at(int i, int j) { return c_[i * ring_->fp() + j]; }
    const BigInt& at(int i, int j) const { return c_[i * ring_->fp() + j]; }

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt& operator*=(const BigInt& k);
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(CycInt a, const BigInt& k) { return a *= k; }
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    CycInt operator-() const;
    bool operator==(const CycInt& o) const;
    bool operator!=(const CycInt& o) const { return !(*this == o); }
    bool is_zero() const;

    // Apply zeta -> zeta^a for a coprime to the order of the ring.
    CycInt galois(i64 a) const;
    CycInt conj() const { return galois(-1); }
    // Exact division by an integer; throws InvalidInput if not divisible.
    CycInt divexact(const BigInt& k) const;
    bool divisible_by(const BigInt& k) const;
    // Add k * zeta_order^e.
    void add_root(const BigInt& k, i64 e, i64 order);

    std::complex<double> to_complex() const;
    // Image in a local ring whose (d, s) dominate this ring's.
    LocalElem to_local(const std::shared_ptr<const LocalRing>& R) const;
    std::string str() const;

private:
    CycRingPtr ring_;
    std::vector<BigInt> c_;
};

}  // namespace mtk
