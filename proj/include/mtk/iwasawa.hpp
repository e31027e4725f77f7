#pragma once

#include <optional>
#include <string>

#include "mtk/lambda.hpp"
#include "mtk/mazur_tate.hpp"

namespace mtk {

struct InvariantPair {
    Rat mu = 0;
    i64 lambda = 0;
    bool infinite = false;     // F = 0 exactly
    Rat precision_margin = 0;  // B - mu
    bool level_bound = false;  // lambda >= p^n - p^{n-1}
    std::string str() const;
};

// mu = min valuation of the T-coefficients (v(p) = 1), lambda = first index
// attaining it.  PrecisionExhausted if F vanishes modulo p^B.
InvariantPair invariants(const LambdaNPoly& F);
// Exact input: zero gives the infinity marker; otherwise the precision is
// raised from B until some coefficient survives.
InvariantPair invariants(const GroupElem& F, int B = 20);

bool is_nonunit(const LocalElem& x);

// p^a with p^a || t_n(ell); p^n when t_n(ell) = 0.
i64 g_Q_layer(i64 ell, i64 p, int n);

// g_{psi,n}(ell) from residues.  psi_ell is empty when psi(ell) = 0;
// ell_k2 is ell^{k-2} in the same ring.
i64 g_psi_n(const LocalElem& a_ell, const std::optional<LocalElem>& psi_ell, const LocalElem& ell_k2,
            bool divides_N, i64 g_Q);
i64 g_psi_n(i64 ell, const DirichletChar& psi, int n, i64 a_ell, bool divides_N, int k, i64 p,
            const LocalRingPtr& L);

// Alternating count p^{n-1} - p^{n-2} + ... ending at p - 1 (n even) or
// p^2 - p (n odd); q_1 = 0.
i64 q_n(i64 p, int n);

struct SignedOmega {
    LambdaNPoly matching;    // prod Phi_{p^j}(1 + T), 1 <= j <= n - 1, j = n - 1 mod 2; lambda = q_n
    LambdaNPoly complement;  // the other j in 1..n-1
};
SignedOmega omega_pm(i64 p, int n, const LocalRingPtr& L);

enum class TransitionStatus { Holds, Fails, SkippedMuPositive, SkippedDegenerate, SkippedLevelBound };
const char* transition_status_name(TransitionStatus s);

struct TransitionReport {
    InvariantPair at_M, at_Ml;
    i64 g = 0;
    i64 t = 0;  // t_n(ell)
    bool mu_equal = false;
    bool lambda_equal = false;
    TransitionStatus status = TransitionStatus::Fails;
};

// Compares lambda/mu of Theta^{M ell}_n(psi) and Theta^M_n(psi) against
// g_{psi,n}(ell).  Skipped when mu^M > 0, or when t_n(ell) = 0 and h_ell is a
// non-unit constant (the jump p^n is not visible in Lambda_n), or when
// lambda^M + g >= p^n so that the product wraps around in Lambda_n.
TransitionReport check_transition(const EigenSymbol& sym, i64 a_ell, i64 p, int n, i64 M, i64 ell,
                                  const DirichletChar& psi, int B = 20);

}  // namespace mtk
