#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtk/characters.hpp"
#include "mtk/lambda.hpp"
#include "mtk/modsym.hpp"

namespace mtk {

// Theta^M_n = sum_a [a / p^{n+1} M] sigma_a in Q[(Z/p^{n+1}M)^x], where
// [r] = phi^+({r, oo}) + phi^-({r, oo}) (or one sign only).
struct ThetaElem {
    i64 p = 0;
    int n = 0;
    i64 M = 1;
    i64 Q = 1;              // p^{n+1} M
    std::vector<Rat> coeff;  // indexed by a mod Q; zero at non-units
};

ThetaElem theta_raw(const EigenSymbol& sym, i64 p, int n, i64 M, int sign = 0);

// Coefficient ring holding the values of psi and the p^s-th roots of unity.
CycRingPtr twist_ring(i64 p, const std::vector<i64>& orders, int s_min = 0);
LocalRingPtr twist_local_ring(i64 p, const std::vector<i64>& orders, int B, int s_min = 0);

// Theta^M_n(f, psi, T) = sum_a [a / p^{n+1} M] psi(a) (1 + T)^{t_n(a)}.
// ConductorMismatch unless cond(psi) | p^{n+1} M.
// gamma = 0 selects the topological generator 1 + p.
GroupElem twist_exact(const ThetaElem& theta, const DirichletChar& psi, const CycRingPtr& R, i64 gamma = 0);
LambdaNPoly twist(const ThetaElem& theta, const DirichletChar& psi, const LocalRingPtr& L, i64 gamma = 0);

// h_ell = a - psi(ell) Y^t - eps ell^{k-2} psi(ell)^{-1} Y^{-t}, Y = 1 + T.
LambdaNPoly euler_h(const LocalElem& a_ell, const LocalElem& psi_ell, const LocalElem& eps_psi_inv, i64 t, i64 p,
                    int n);
LambdaNPoly euler_h(i64 a_ell, const DirichletChar& psi, i64 ell, i64 p, int n, const LocalRingPtr& L, i64 eps = 1,
                    int k = 2);
GroupElem euler_h_exact(i64 a_ell, const DirichletChar& psi, i64 ell, i64 p, int n, const CycRingPtr& R, i64 eps = 1,
                        int k = 2);

// c_0 = 0, c_1 = 1, c_m = a_p p^{-1} c_{m-1} - eps p^{k-3} c_{m-2}.
std::vector<Rat> c_values(i64 a_p, i64 eps, int k, i64 p, int m);

struct TameCompatReport {
    bool equal = false;
    i64 first_mismatch = -1;  // exponent t of the first differing coefficient
    std::string detail;
};

// Exact comparison of Theta^{M ell}_n(psi) with h_ell(psi) Theta^M_n(psi).
TameCompatReport check_tame_compat(const EigenSymbol& sym, i64 a_ell, i64 p, int n, i64 M, i64 ell,
                                   const DirichletChar& psi);

struct VerticalReport {
    // pi_{n,n-1}(Theta_n) = a_p Theta_{n-1} - eps nu_{n-2,n-1}(Theta_{n-2})
    bool lowered_holds = false;
    // pi_{n,n-1}(Theta_n) = pi_{n,n-1}(a_p Theta_n - eps nu_{n-1,n}(Theta_{n-1}))
    bool projected_holds = false;
    std::string convention() const;
};

// Requires n >= 2 and cond(psi) | p^{n-1} M.
// NoConventionMatches if neither form holds.
VerticalReport check_vertical(const EigenSymbol& sym, i64 a_p, i64 p, int n, i64 M, const DirichletChar& psi,
                              i64 eps = 1, int k = 2);

// Theta_n(zeta_{p^i} - 1) == p^{n-i} c_{n-i+1} Theta_i(zeta_{p^i} - 1), 0 < i < n.
bool check_eval_compat(const EigenSymbol& sym, i64 a_p, i64 p, int n, int i, i64 M, const DirichletChar& psi,
                       i64 eps = 1, int k = 2);

struct DescentResult {
    LambdaNPoly h;            // Theta_n(f/K) over Z_p, degree < p^n
    LambdaNPoly g;            // product of the twisted elements at level n + n_K
    int n_K = 0;
    int level = 0;            // n + n_K
    bool symmetric = false;   // g(zeta^i (1 + T) - 1) = g(T) for all i
};

// Theta_n(f/K) from the character group X of K by the product-and-substitute
// construction with iterated division by (1 + T)^{p^{n_K}} - 1.
DescentResult descend_to_field(const EigenSymbol& sym, const CharGroup& X, i64 p, int n, int B);

// Exact test whether the product of the twisted elements at level n + n_K is
// zero (then Theta_n(f/K) = 0).
bool descent_product_vanishes(const EigenSymbol& sym, const CharGroup& X, i64 p, int n);

}  // namespace mtk
