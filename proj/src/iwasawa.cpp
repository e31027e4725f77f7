#include "mtk/iwasawa.hpp"
#include <cmath>

#include <sstream>

#include "mtk/error.hpp"

namespace mtk {

std::string InvariantPair::str() const {
    if (infinite) return "(inf, inf)";
    std::ostringstream os;
    os << "(" << mu.get_str() << ", " << lambda << ")";
    return os.str();
}

InvariantPair invariants(const LambdaNPoly& F) {
    const LocalRing& R = *F.ring();
    InvariantPair out;
    bool found = false;
    for (i64 j = 0; j < F.size(); ++j) {
        const u64* c = F.raw(j);
        if (R.is_zero(c)) continue;
        Rat v = R.valuation(c);
        if (!found || v < out.mu) {
            out.mu = v;
            out.lambda = j;
            found = true;
        }
    }
    if (!found) fail(ErrorKind::PrecisionExhausted, "element vanishes modulo p^B");
    out.precision_margin = Rat(R.B()) - out.mu;
    i64 pn = ipow(F.p(), F.n());
    out.level_bound = F.n() >= 1 && out.lambda >= pn - pn / F.p();
    return out;
}

InvariantPair invariants(const GroupElem& F, int B) {
    if (F.is_zero()) {
        InvariantPair z;
        z.infinite = true;
        return z;
    }
    const auto& C = *F.ring();
    i64 p = F.p();
    int cap = static_cast<int>(61.0 / std::log2(static_cast<double>(p)));
    for (int b : {std::min(B, cap), cap}) {
        try {
            return invariants(F.to_lambda(LocalRing::make(p, C.d(), C.s(), b)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted || b == cap) throw;
        }
    }
    fail(ErrorKind::PrecisionExhausted, "element vanishes at the largest supported precision");
}

bool is_nonunit(const LocalElem& x) {
    for (i64 r : x.residue())
        if (r) return false;
    return true;
}

i64 g_Q_layer(i64 ell, i64 p, int n) {
    if (ell % p == 0) fail(ErrorKind::InvalidInput, "g_Q_layer: ell must be prime to p");
    TnTable tn(p, n, 1);
    i64 t = tn(mod(ell, ipow(p, n + 1)));
    if (t == 0) return ipow(p, n);
    return ipow(p, vp(t, p));
}

i64 g_psi_n(const LocalElem& a_ell, const std::optional<LocalElem>& psi_ell, const LocalElem& ell_k2, bool divides_N,
            i64 g_Q) {
    if (!psi_ell) return 0;
    const LocalRingPtr& L = a_ell.ring();
    const LocalElem& u = *psi_ell;
    // psi(ell)^{-1} is a root of unity: u^{-1} = u^{ord - 1}
    LocalElem uinv = L->one();
    {
        LocalElem x = u;
        i64 ord = 1;
        while (!(x == L->one())) {
            x = x * u;
            ++ord;
            if (ord > 1000000) fail(ErrorKind::InvalidInput, "g_psi_n: psi(ell) is not a root of unity");
        }
        for (i64 i = 0; i + 1 < ord; ++i) uinv = uinv * u;
    }
    if (divides_N) return is_nonunit(a_ell - u) ? g_Q : 0;
    if (!is_nonunit(a_ell - u - ell_k2 * uinv)) return 0;
    if (!is_nonunit(a_ell * a_ell - L->from_int(4) * ell_k2)) return g_Q;
    return 2 * g_Q;
}

i64 g_psi_n(i64 ell, const DirichletChar& psi, int n, i64 a_ell, bool divides_N, int k, i64 p,
            const LocalRingPtr& L) {
    auto prim = psi.primitive();
    auto e = prim.value(ell);
    std::optional<LocalElem> u;
    if (e) u = L->root_of_unity(*e, prim.order());
    return g_psi_n(L->from_int(a_ell), u, L->from_int(BigInt(ipow(ell, k - 2))), divides_N, g_Q_layer(ell, p, n));
}

i64 q_n(i64 p, int n) {
    if (n < 1) fail(ErrorKind::InvalidInput, "q_n: need n >= 1");
    i64 q = 0;
    for (int j = n - 1; j >= 1; j -= 2) q += ipow(p, j) - ipow(p, j - 1);
    return q;
}

SignedOmega omega_pm(i64 p, int n, const LocalRingPtr& L) {
    if (n < 1) fail(ErrorKind::InvalidInput, "omega_pm: need n >= 1");
    LambdaNPoly a(L, p, n), b(L, p, n);
    a.set_coeff(0, L->one());
    b.set_coeff(0, L->one());
    i64 N = ipow(p, n);
    for (int j = 1; j <= n - 1; ++j) {
        // Phi_{p^j}(1 + T) = sum_{i<p} Y^{i p^{j-1}}
        std::vector<LocalElem> y(N, L->zero());
        for (i64 i = 0; i < p; ++i) y[i * ipow(p, j - 1)] = L->one();
        auto phi = LambdaNPoly::from_group(L, p, n, y);
        if ((n - 1 - j) % 2 == 0) a = a * phi;
        else b = b * phi;
    }
    return {a, b};
}

const char* transition_status_name(TransitionStatus s) {
    switch (s) {
        case TransitionStatus::Holds: return "holds";
        case TransitionStatus::Fails: return "fails";
        case TransitionStatus::SkippedMuPositive: return "skipped_mu_positive";
        case TransitionStatus::SkippedDegenerate: return "skipped_degenerate";
        case TransitionStatus::SkippedLevelBound: return "skipped_level_bound";
    }
    return "?";
}

TransitionReport check_transition(const EigenSymbol& sym, i64 a_ell, i64 p, int n, i64 M, i64 ell,
                                  const DirichletChar& psi, int B) {
    if (!is_prime(ell) || ell == p || M % ell == 0)
        fail(ErrorKind::InvalidInput, "check_transition: ell must be a prime not dividing pM");
    auto L = twist_local_ring(p, {psi.primitive().order()}, B);
    bool bad = sym.N() % ell == 0;
    TransitionReport rep;
    rep.t = TnTable(p, n, 1)(mod(ell, ipow(p, n + 1)));
    rep.g = g_psi_n(ell, psi, n, a_ell, bad, 2, p, L);
    rep.at_M = invariants(twist(theta_raw(sym, p, n, M), psi, L));
    if (rep.at_M.mu > 0) {
        rep.status = TransitionStatus::SkippedMuPositive;
        return rep;
    }
    if (rep.t == 0 && rep.g > 0) {
        rep.status = TransitionStatus::SkippedDegenerate;
        return rep;
    }
    if (rep.at_M.lambda + rep.g >= ipow(p, n)) {
        rep.status = TransitionStatus::SkippedLevelBound;
        return rep;
    }
    rep.at_Ml = invariants(twist(theta_raw(sym, p, n, M * ell), psi, L));
    rep.mu_equal = rep.at_Ml.mu == rep.at_M.mu;
    rep.lambda_equal = rep.at_Ml.lambda == rep.at_M.lambda + rep.g;
    rep.status = rep.mu_equal && rep.lambda_equal ? TransitionStatus::Holds : TransitionStatus::Fails;
    return rep;
}

}  // namespace mtk
