#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mtk/arith.hpp"
#include "mtk/ellcurve.hpp"
#include "mtk/linalg.hpp"

namespace mtk {

// Cusp num/den in lowest terms with den >= 0; infinity is 1/0.
struct Cusp {
    i64 num = 1, den = 0;
    static Cusp make(i64 num, i64 den);
    bool is_infinity() const { return den == 0; }
    bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
};

// P^1(Z/N), each class represented by its lexicographically least (c, d)
// under scaling by units; classes are ordered by representative.
class P1List {
public:
    explicit P1List(i64 N);
    i64 N() const { return N_; }
    int size() const { return static_cast<int>(reps_.size()); }
    const std::pair<i64, i64>& rep(int i) const { return reps_[i]; }
    // Index of the class of (c : d); gcd(c, d, N) must be 1.
    int index(i64 c, i64 d) const;

private:
    i64 N_;
    std::vector<std::pair<i64, i64>> reps_;
    std::vector<int> lookup_;  // (c mod N) * N + (d mod N) -> class
};

// Manin-symbol terms (P^1 indices) of the path {0, c}, from the
// continued-fraction convergents of c.
std::vector<int> manin_terms(const P1List& p1, const Cusp& c);

// Weight-2 modular symbols for Gamma_0(N) over Q presented by Manin symbols.
class ManinSpace {
public:
    explicit ManinSpace(i64 N);

    i64 N() const { return p1_.N(); }
    const P1List& p1() const { return p1_; }
    int dim() const { return dim_; }
    // Free Manin symbols used as the basis of the quotient.
    const std::vector<int>& basis() const { return basis_; }
    // Coordinates of every Manin symbol in that basis.
    const RatVec& coords(int i) const { return coords_[i]; }

    // Manin-symbol terms (P^1 indices) of the path {0, c}.
    std::vector<int> path_from_zero(const Cusp& c) const;
    RatVec path_coords(const Cusp& a, const Cusp& b) const;

    // Matrices acting on coordinate columns.
    RatMatrix hecke(i64 ell) const;
    RatMatrix star() const;
    RatMatrix boundary() const;
    std::vector<RatVec> cuspidal_basis() const;
    int num_cusps() const { return static_cast<int>(cusp_reps_.size()); }
    int cusp_class(const Cusp& c) const;

    // SL_2(Z) matrix [a b; c d] whose bottom row reduces to Manin symbol i.
    std::array<i64, 4> lift(int i) const;

private:
    int find_cusp(const Cusp& c) const;
    P1List p1_;
    int dim_ = 0;
    std::vector<int> basis_;
    std::vector<RatVec> coords_;
    mutable std::vector<Cusp> cusp_reps_;
};

i64 gamma0_index(i64 N);
i64 sturm_bound(i64 N);

// The +/- eigen-symbols of a rational newform, normalised to be p-integral
// with a p-adic unit among their values (cohomological periods).
class EigenSymbol {
public:
    // a(ell) gives the Hecke eigenvalue at each prime ell <= bound.
    EigenSymbol(const ManinSpace& space, const std::map<i64, i64>& a, i64 p, std::optional<i64> sturm_override = {});
    static EigenSymbol from_curve(const EllipticCurve& E, i64 p, std::optional<i64> sturm_override = {});
    // Rebuild from stored values (cache files).
    EigenSymbol(i64 N, i64 p, std::vector<Rat> plus, std::vector<Rat> minus, Rat plus_scale, Rat minus_scale,
                i64 sturm);

    i64 N() const { return N_; }
    i64 p() const { return p_; }
    i64 sturm() const { return sturm_; }
    const std::vector<Rat>& plus_values() const { return plus_; }
    const std::vector<Rat>& minus_values() const { return minus_; }
    // Factor applied to the rational eigen-functional to reach the stored
    // normalisation (first nonzero generator value positive).
    const Rat& plus_scale() const { return plus_scale_; }
    const Rat& minus_scale() const { return minus_scale_; }

    // phi^sign({r, infinity}); sign is +1, -1, or 0 for phi^+ + phi^-.
    Rat eval(i64 num, i64 den, int sign = 0) const;
    Rat eval_path(const Cusp& a, const Cusp& b, int sign) const;

private:
    Rat value_from_zero(const Cusp& c, int sign) const;
    i64 N_, p_, sturm_;
    P1List p1_;
    std::vector<Rat> plus_, minus_;
    Rat plus_scale_, minus_scale_;
};

}  // namespace mtk
