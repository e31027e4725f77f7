#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtk/arith.hpp"
#include "mtk/cyclotomic.hpp"
#include "mtk/local_ring.hpp"

namespace mtk {

// (Z/m)^x as a product of cyclic groups with fixed generators (CRT lifts of
// primitive roots, and -1, 5 at 2^e for e >= 3).
class UnitGroup {
public:
    explicit UnitGroup(i64 m);
    i64 modulus() const { return m_; }
    const std::vector<i64>& gens() const { return gens_; }
    const std::vector<i64>& orders() const { return orders_; }
    // Exponents of a on the generators; a must be a unit.
    std::vector<i64> dlog(i64 a) const;

private:
    i64 m_;
    std::vector<i64> gens_, orders_;
    std::vector<i64> prime_powers_;
    std::vector<std::vector<i64>> comp_dlog_;  // per generator: residue mod q^e -> exponent
    std::vector<int> comp_of_gen_;
};

// chi(a) = exp(2 pi i k(a) / order) for units a; values stored as k(a).
class DirichletChar {
public:
    DirichletChar() : DirichletChar(1, 1, {0}) {}
    DirichletChar(i64 modulus, i64 order, std::vector<i64> exps);
    static DirichletChar trivial() { return DirichletChar(); }
    // chi(g_i) = e(x_i / o_i) on the generators of UnitGroup(modulus).
    static DirichletChar from_exponents(i64 modulus, const std::vector<i64>& x);
    // chi_m(a) = zeta_{p^m}^{t_m(a)}, conductor p^{m+1} (trivial for m = 0).
    static DirichletChar canonical(i64 p, int m);

    i64 modulus() const { return m_; }
    i64 order() const { return order_; }
    // Exponent k with chi(a) = zeta_order^k, or nullopt when gcd(a, modulus) > 1.
    std::optional<i64> value(i64 a) const;
    int parity() const;  // chi(-1)
    i64 conductor() const;
    bool is_primitive() const { return conductor() == m_; }
    DirichletChar primitive() const;
    // Same character viewed modulo a multiple of the modulus.
    DirichletChar lift(i64 modulus) const;
    DirichletChar pow(i64 k) const;
    DirichletChar inverse() const { return pow(-1); }
    friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b);
    bool operator==(const DirichletChar& o) const { return m_ == o.m_ && order_ == o.order_ && val_ == o.val_; }
    bool operator<(const DirichletChar& o) const;
    // Exponents on the generators of UnitGroup(modulus).
    std::vector<i64> exponents() const;

    CycInt value_cyc(i64 a, const CycRingPtr& R) const;
    LocalElem value_local(i64 a, const LocalRingPtr& R) const;
    std::string str() const;

private:
    i64 m_, order_;
    std::vector<i64> val_;
};

// chi = chi_1 chi_2 with chi_1 of order prime to p and chi_2 of p-power order.
std::pair<DirichletChar, DirichletChar> decompose_char(const DirichletChar& chi, i64 p);

struct Splitting {
    i64 e, f, g;
};

// Finite group of primitive Dirichlet characters, i.e. an abelian number field.
class CharGroup {
public:
    // Characters are reduced to primitive form; NotSubgroup if not closed.
    explicit CharGroup(std::vector<DirichletChar> chars);
    static CharGroup generated_by(const std::vector<DirichletChar>& gens);
    // Characters modulo f trivial on the subgroup generated by H.
    static CharGroup from_subgroup(i64 f, const std::vector<i64>& H);
    // Subfield of degree deg of Q(mu_ell), ell prime.
    static CharGroup cyclic_subfield(i64 ell, i64 deg);
    // The layer Q_(n) of the cyclotomic Z_p-extension.
    static CharGroup cyclotomic_layer(i64 p, int n);
    static CharGroup trivial_group() { return CharGroup({DirichletChar()}); }

    const std::vector<DirichletChar>& chars() const { return chars_; }
    i64 degree() const { return static_cast<i64>(chars_.size()); }
    i64 conductor() const;
    bool contains(const DirichletChar& chi) const;
    bool contains(const CharGroup& other) const;
    // Largest m with chi_m in the group (K cap Q_infinity = Q_(m)).
    int n_K(i64 p) const;
    Splitting splitting(i64 ell) const;
    i64 count_vanishing(i64 ell) const;
    // X_{K(n)} = <X, chi_{n + n_X}>.
    CharGroup layer(i64 p, int n) const;
    std::vector<i64> orders() const;
    std::string str() const;

private:
    std::vector<DirichletChar> chars_;
};

}  // namespace mtk
