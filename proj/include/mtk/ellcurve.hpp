#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtk/arith.hpp"

namespace mtk {

enum class Reduction { Good, Split, Nonsplit, Additive };

const char* reduction_name(Reduction r);
Reduction parse_reduction(const std::string& s);

struct ReductionInfo {
    Reduction kind;
    i64 a_ell;
};

class EllipticCurve {
public:
    // Validates the model: nonsingular, minimal at primes >= 5 dividing the
    // discriminant, conductor consistent with the discriminant, and every
    // bad prime 2 or 3 described in small_prime_reduction.
    EllipticCurve(std::vector<i64> a, i64 N, std::map<i64, Reduction> small_prime_reduction = {},
                  std::string label = "");

    const std::string& label() const { return label_; }
    i64 a1() const { return a_[0]; }
    i64 a2() const { return a_[1]; }
    i64 a3() const { return a_[2]; }
    i64 a4() const { return a_[3]; }
    i64 a6() const { return a_[4]; }
    const std::vector<i64>& ainvs() const { return a_; }
    i64 conductor() const { return N_; }
    const std::map<i64, Reduction>& small_prime_reduction() const { return small_; }

    const BigInt& b2() const { return b2_; }
    const BigInt& b4() const { return b4_; }
    const BigInt& b6() const { return b6_; }
    const BigInt& b8() const { return b8_; }
    const BigInt& c4() const { return c4_; }
    const BigInt& c6() const { return c6_; }
    const BigInt& discriminant() const { return disc_; }

    // #E(F_ell) by direct enumeration; ell must be a prime of good or
    // multiplicative reduction below the bound.
    i64 count_points(i64 ell, i64 bound = 1000000) const;
    // a_ell = ell + 1 - #E(F_ell) for good ell, +-1 / 0 at bad ell.
    i64 a_ell(i64 ell, i64 bound = 1000000) const;
    ReductionInfo classify(i64 ell) const;
    // Brute-force #E(F_q) for q = ell^f <= 10^5 (good ell).
    i64 count_points_ext(i64 ell, int f) const;

    // Number of connected components of E(R) (sign of the discriminant).
    int real_components() const { return disc_ > 0 ? 2 : 1; }

private:
    std::string label_;
    std::vector<i64> a_;
    i64 N_;
    std::map<i64, Reduction> small_;
    BigInt b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

// Element of F_p or F_{p^2} = F_p[sqrt(r)], r the least non-residue.
struct Fp2 {
    i64 p, r, a, b;
    Fp2 operator*(const Fp2& o) const;
    Fp2 operator+(const Fp2& o) const;
    Fp2 operator-(const Fp2& o) const;
    bool operator==(const Fp2& o) const { return a == o.a && b == o.b; }
    Fp2 pow(i64 e) const;
    bool is_one() const { return a == 1 % p && b == 0; }
};

// A root of x^2 - a_ell x + ell * chi(ell) in F_p or F_{p^2}.
Fp2 frobenius_root(i64 a_ell, i64 ell, i64 p, i64 nebentypus_value = 1);
i64 fp2_order(const Fp2& x);
// p | #E(F_{ell^f}) for ell of good reduction: (1 - alpha^f)(1 - beta^f) = 0 mod p.
bool local_p_torsion(const EllipticCurve& E, i64 ell, i64 f, i64 p);

// Curves used throughout the tests and the command line, by Cremona label.
std::optional<EllipticCurve> builtin_curve(const std::string& label);
std::vector<std::string> builtin_curve_labels();

}  // namespace mtk
