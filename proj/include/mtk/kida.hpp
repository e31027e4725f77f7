#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtk/characters.hpp"
#include "mtk/ellcurve.hpp"
#include "mtk/iwasawa.hpp"
#include "mtk/modsym.hpp"

namespace mtk {

// How primes of L_(n) are sorted into P1 and P2.
//   Curve:     reduction type of E at w (split multiplicative / good with
//              p-torsion over the residue field of w).
//   Derived:   eigenform sets from the character sum: ell | N with
//              alpha^f = 1 (alpha = a_ell mod p) in P1, ell prime to N with
//              alpha^f = 1 in P2.
//   Displayed: as printed for eigenforms: ell | N with alpha^f != 1 in P1,
//              ell prime to N with alpha^f = 1 in P2.
enum class PrimeConvention { Curve, Derived, Displayed };
const char* convention_name(PrimeConvention c);
PrimeConvention parse_convention(const std::string& s);

struct KidaInstance {
    std::shared_ptr<const EigenSymbol> sym;
    std::optional<EllipticCurve> curve;  // required for the Curve convention
    i64 N = 0;
    std::map<i64, i64> a;                // eigenform path: a_ell at the ramified ell
    i64 p = 3;
    CharGroup K = CharGroup::trivial_group();
    CharGroup L = CharGroup::trivial_group();
    int n = 1;
    int B = 20;
    PrimeConvention convention = PrimeConvention::Curve;
};

struct PrimeData {
    i64 ell = 0;
    std::string reduction;  // good / split / nonsplit / additive, or "bad" for eigenforms
    Splitting in_L{1, 1, 1};  // ell in L_(n)
    Splitting in_K{1, 1, 1};  // ell in K_(n + n_L - n_K)
    i64 e_rel = 1, f_rel = 1;
    int delta = 0;  // 1 for P1, 2 for P2
    i64 count = 0;  // number of primes w of L_(n) above ell
    i64 contribution = 0;
};

enum class KidaVerdict { Equal, Unequal, SkippedMuPositive };
const char* verdict_name(KidaVerdict v);

struct KidaReport {
    int n = 0, level_K = 0, n_K = 0, n_L = 0;
    InvariantPair inv_L, inv_K;
    i64 degree_inf = 1;  // [L_infinity : K_infinity]
    i64 rhs_base = 0;
    std::vector<PrimeData> primes;  // ramified ell != p with e_rel > 1
    i64 p1_total = 0, p2_total = 0;
    i64 rhs = 0;
    bool all_f_rel_one = true;
    KidaVerdict verdict = KidaVerdict::Unequal;
};

// Structural checks: X_K inside X_L, [L:K] a power of p, (K-p), and (Add)
// for elliptic-curve instances.  Throws KpViolated / AddViolated /
// InvalidInput.
void validate_instance(const KidaInstance& inst);

std::vector<PrimeData> build_p1_p2(const KidaInstance& inst);

KidaReport verify_kida(const KidaInstance& inst);

struct TowerReport {
    KidaReport LM, KM, LK;
    i64 corr_LM = 0, corr_KM = 0, corr_LK = 0;
    i64 degree_LK = 1;
    bool corrections_consistent = false;  // C_{L/M} = [L_inf:K_inf] C_{K/M} + C_{L/K}
    bool lambda_consistent = false;       // the three reports share their lambda values
};

// M subset K subset L with p not dividing [M:Q] and n >= ord_p([L:Q]).
TowerReport verify_tower_consistency(const KidaInstance& base, const CharGroup& M, const CharGroup& K,
                                     const CharGroup& L);

struct SignedGrowthReport {
    std::vector<int> levels;
    std::vector<InvariantPair> inv;
    std::vector<i64> q;
    std::vector<i64> diff;  // lambda - q_n
    bool mu_zero = false;
    bool constant = false;
};

// lambda(Theta_n(psi)) - q_n over the given levels for a form with a_p = 0.
SignedGrowthReport signed_growth_check(const EigenSymbol& sym, i64 a_p, i64 p, const DirichletChar& psi,
                                       const std::vector<int>& levels, int B = 20);

}  // namespace mtk
