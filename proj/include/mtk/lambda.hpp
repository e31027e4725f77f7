#pragma once

#include <vector>

#include "mtk/arith.hpp"
#include "mtk/cyclotomic.hpp"
#include "mtk/local_ring.hpp"

namespace mtk {

class LambdaNPoly;

// Exact element of K[Z/p^n] written as (sum_t c_t Y^t) / den, with Y the
// generator 1 + T and c_t cyclotomic integers.
class GroupElem {
public:
    GroupElem(CycRingPtr R, i64 p, int n);

    const CycRingPtr& ring() const { return R_; }
    i64 p() const { return p_; }
    int n() const { return n_; }
    i64 size() const { return static_cast<i64>(c_.size()); }
    CycInt& at(i64 t) { return c_[mod(t, size())]; }
    const CycInt& at(i64 t) const { return c_[mod(t, size())]; }
    const BigInt& den() const { return den_; }
    void set_den(const BigInt& d) { den_ = d; }

    GroupElem& operator+=(const GroupElem& o);
    GroupElem& operator-=(const GroupElem& o);
    friend GroupElem operator+(GroupElem a, const GroupElem& b) { return a += b; }
    friend GroupElem operator-(GroupElem a, const GroupElem& b) { return a -= b; }
    friend GroupElem operator*(const GroupElem& a, const GroupElem& b);
    GroupElem scaled(const CycInt& k) const;
    GroupElem scaled(const Rat& k) const;
    bool operator==(const GroupElem& o) const;
    bool is_zero() const;

    // Reduction to level m <= n: Y^t -> Y^{t mod p^m}.
    GroupElem project(int m) const;
    // Trace to level m >= n: Y^t -> sum of the Y^s with s = t mod p^n.
    GroupElem trace_up(int m) const;
    // Value at Y = zeta_{p^i}, as numerator over den(); the ring needs s >= i.
    CycInt eval_root_num(int i) const;
    // Image in Lambda_n over a local ring; den must be prime to p.
    LambdaNPoly to_lambda(const LocalRingPtr& L) const;

private:
    CycRingPtr R_;
    i64 p_;
    int n_;
    std::vector<CycInt> c_;
    BigInt den_ = 1;
};

// Element of Lambda_n = O[T]/((1+T)^{p^n} - 1) in the basis T^j, 0 <= j < p^n.
class LambdaNPoly {
public:
    LambdaNPoly(LocalRingPtr R, i64 p, int n);
    // From coefficients of Y^t = (1+T)^t.
    static LambdaNPoly from_group(LocalRingPtr R, i64 p, int n, const std::vector<LocalElem>& y);

    const LocalRingPtr& ring() const { return R_; }
    i64 p() const { return p_; }
    int n() const { return n_; }
    i64 size() const { return N_; }
    LocalElem coeff(i64 j) const;
    void set_coeff(i64 j, const LocalElem& v);
    const u64* raw(i64 j) const { return c_.data() + j * R_->rank(); }
    std::vector<LocalElem> to_group() const;

    LambdaNPoly& operator+=(const LambdaNPoly& o);
    LambdaNPoly& operator-=(const LambdaNPoly& o);
    friend LambdaNPoly operator+(LambdaNPoly a, const LambdaNPoly& b) { return a += b; }
    friend LambdaNPoly operator-(LambdaNPoly a, const LambdaNPoly& b) { return a -= b; }
    friend LambdaNPoly operator*(const LambdaNPoly& a, const LambdaNPoly& b);
    LambdaNPoly scaled(const LocalElem& k) const;
    bool operator==(const LambdaNPoly& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const LambdaNPoly& o) const { return !(*this == o); }
    bool is_zero() const;

    LambdaNPoly project(int m) const;
    LambdaNPoly trace_up(int m) const;
    // g(zeta (1 + T) - 1) with zeta = zeta_{p^i}^k.
    LambdaNPoly substitute_root(int i, i64 k = 1) const;

private:
    LocalRingPtr R_;
    i64 p_;
    int n_;
    i64 N_;
    std::vector<u64> c_;
};

// Binomial coefficients C(t, j) mod p^B for 0 <= j <= t < n.
std::vector<std::vector<u64>> binomial_table(const LocalRing& R, i64 n);

}  // namespace mtk
