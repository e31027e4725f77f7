#include "mtk/kida.hpp"

#include <future>
#include <set>

#include "mtk/error.hpp"
#include "mtk/mazur_tate.hpp"

namespace mtk {

const char* convention_name(PrimeConvention c) {
    switch (c) {
        case PrimeConvention::Curve: return "curve";
        case PrimeConvention::Derived: return "derived";
        case PrimeConvention::Displayed: return "displayed";
    }
    return "?";
}

PrimeConvention parse_convention(const std::string& s) {
    if (s == "curve") return PrimeConvention::Curve;
    if (s == "derived") return PrimeConvention::Derived;
    if (s == "displayed") return PrimeConvention::Displayed;
    fail(ErrorKind::InvalidInput, "unknown P1/P2 convention: " + s);
}

const char* verdict_name(KidaVerdict v) {
    switch (v) {
        case KidaVerdict::Equal: return "equal";
        case KidaVerdict::Unequal: return "unequal";
        case KidaVerdict::SkippedMuPositive: return "skipped_mu_positive";
    }
    return "?";
}

namespace {

i64 p_part(i64 d, i64 p) { return ipow(p, vp(d, p)); }

bool is_p_power(i64 d, i64 p) { return d == p_part(d, p); }

std::vector<i64> prime_divisors(i64 m) {
    std::vector<i64> out;
    for (auto [q, e] : factorize(m)) out.push_back(q);
    return out;
}

i64 form_conductor(const KidaInstance& inst) { return inst.curve ? inst.curve->conductor() : inst.N; }

i64 form_a(const KidaInstance& inst, i64 ell) {
    if (inst.curve) return inst.curve->a_ell(ell);
    auto it = inst.a.find(ell);
    if (it == inst.a.end()) fail(ErrorKind::InvalidInput, "missing a_ell for ell = " + std::to_string(ell));
    return it->second;
}

// (Add) at an additive prime ell for a field whose ramification index at ell is e.
void check_add(const EllipticCurve& E, i64 ell, i64 e) {
    if (e == 1) return;
    if (ell < 5)
        fail(ErrorKind::AddViolated, "additive reduction at " + std::to_string(ell) + " in a ramified extension");
    int vd = vp(E.discriminant(), ell);
    int vc4 = E.c4() == 0 ? 1 << 20 : vp(E.c4(), ell);
    bool potentially_good = 3 * vc4 >= vd;
    if (potentially_good) {
        i64 need = 12 / gcd(12, vd);
        if (e % need == 0)
            fail(ErrorKind::AddViolated, "E acquires good reduction above " + std::to_string(ell));
    } else if (e % 2 == 0) {
        fail(ErrorKind::AddViolated, "E acquires multiplicative reduction above " + std::to_string(ell));
    }
}

}  // namespace

void validate_instance(const KidaInstance& inst) {
    if (!inst.sym) fail(ErrorKind::InvalidInput, "kida: missing eigen-symbol");
    if (inst.n < 1) fail(ErrorKind::InvalidInput, "kida: need n >= 1");
    if (!inst.L.contains(inst.K)) fail(ErrorKind::InvalidInput, "kida: K is not contained in L");
    i64 rel = inst.L.degree() / inst.K.degree();
    if (!is_p_power(rel, inst.p)) fail(ErrorKind::InvalidInput, "kida: [L:K] is not a power of p");
    if (inst.convention == PrimeConvention::Curve && !inst.curve)
        fail(ErrorKind::InvalidInput, "kida: the curve convention needs an elliptic curve");
    if (inst.K.degree() % inst.p == 0 && inst.n < vp(inst.L.degree(), inst.p))
        fail(ErrorKind::KpViolated, "p divides [K:Q] and n < ord_p([L:Q])");
    if (inst.curve) {
        CharGroup XL = inst.L.layer(inst.p, inst.n);
        for (i64 ell : prime_divisors(inst.curve->conductor())) {
            if (inst.curve->classify(ell).kind != Reduction::Additive) continue;
            check_add(*inst.curve, ell, XL.splitting(ell).e);
        }
    }
}

std::vector<PrimeData> build_p1_p2(const KidaInstance& inst) {
    const i64 p = inst.p;
    const int nL = inst.L.n_K(p), nK = inst.K.n_K(p);
    CharGroup XL = inst.L.layer(p, inst.n);
    CharGroup XK = inst.K.layer(p, inst.n + nL - nK);
    const i64 N = form_conductor(inst);
    std::vector<PrimeData> out;
    for (i64 ell : prime_divisors(XL.conductor())) {
        if (ell == p) continue;
        PrimeData d;
        d.ell = ell;
        d.in_L = XL.splitting(ell);
        d.in_K = XK.splitting(ell);
        d.e_rel = d.in_L.e / d.in_K.e;
        d.f_rel = d.in_L.f / d.in_K.f;
        d.count = d.in_L.g;
        if (d.e_rel == 1) continue;
        const i64 f = d.in_L.f;  // residue degree of w over ell
        if (inst.convention == PrimeConvention::Curve) {
            auto info = inst.curve->classify(ell);
            d.reduction = reduction_name(info.kind);
            switch (info.kind) {
                case Reduction::Split: d.delta = 1; break;
                case Reduction::Nonsplit: d.delta = f % 2 == 0 ? 1 : 0; break;
                case Reduction::Good: d.delta = local_p_torsion(*inst.curve, ell, f, p) ? 2 : 0; break;
                case Reduction::Additive: d.delta = 0; break;
            }
        } else {
            i64 a = form_a(inst, ell);
            bool bad = N % ell == 0;
            d.reduction = bad ? "bad" : "good";
            bool alpha_f_one;
            if (bad) {
                alpha_f_one = mod(a, p) != 0 && powmod(mod(a, p), f, p) == 1;
            } else {
                alpha_f_one = frobenius_root(a, ell, p).pow(f).is_one();
            }
            if (inst.convention == PrimeConvention::Derived) d.delta = alpha_f_one ? (bad ? 1 : 2) : 0;
            else d.delta = bad ? (alpha_f_one ? 0 : 1) : (alpha_f_one ? 2 : 0);
        }
        d.contribution = static_cast<i64>(d.delta) * d.count * d.f_rel * (d.e_rel - 1);
        out.push_back(d);
    }
    return out;
}

KidaReport verify_kida(const KidaInstance& inst) {
    validate_instance(inst);
    const i64 p = inst.p;
    KidaReport rep;
    rep.n = inst.n;
    rep.n_L = inst.L.n_K(p);
    rep.n_K = inst.K.n_K(p);
    rep.level_K = inst.n + rep.n_L - rep.n_K;
    rep.degree_inf = (inst.L.degree() / ipow(p, rep.n_L)) / (inst.K.degree() / ipow(p, rep.n_K));

    auto side = [&](const CharGroup& X, int level) {
        try {
            return invariants(descend_to_field(*inst.sym, X, p, level, inst.B).h);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted || !descent_product_vanishes(*inst.sym, X, p, level)) throw;
            InvariantPair z;
            z.infinite = true;
            return z;
        }
    };
    auto left = std::async(std::launch::async, side, std::cref(inst.L), inst.n);
    auto right = std::async(std::launch::async, side, std::cref(inst.K), rep.level_K);
    rep.primes = build_p1_p2(inst);
    rep.inv_K = right.get();
    rep.inv_L = left.get();

    rep.rhs_base = rep.degree_inf * rep.inv_K.lambda;
    for (const auto& d : rep.primes) {
        if (d.f_rel != 1) rep.all_f_rel_one = false;
        if (d.delta == 1) rep.p1_total += d.contribution;
        if (d.delta == 2) rep.p2_total += d.contribution;
    }
    rep.rhs = rep.rhs_base + rep.p1_total + rep.p2_total;
    if (rep.inv_K.infinite || rep.inv_K.mu > 0) rep.verdict = KidaVerdict::SkippedMuPositive;
    else if (!rep.inv_L.infinite && rep.inv_L.mu == 0 && rep.inv_L.lambda == rep.rhs) rep.verdict = KidaVerdict::Equal;
    else rep.verdict = KidaVerdict::Unequal;
    return rep;
}

TowerReport verify_tower_consistency(const KidaInstance& base, const CharGroup& M, const CharGroup& K,
                                     const CharGroup& L) {
    const i64 p = base.p;
    if (M.degree() % p == 0) fail(ErrorKind::InvalidInput, "tower: p divides [M:Q]");
    if (base.n < vp(L.degree(), p)) fail(ErrorKind::InvalidInput, "tower: n < ord_p([L:Q])");
    const int nL = L.n_K(p), nK = K.n_K(p);
    KidaInstance lm = base, km = base, lk = base;
    lm.K = M;
    lm.L = L;
    km.K = M;
    km.L = K;
    km.n = base.n + nL - nK;
    lk.K = K;
    lk.L = L;
    TowerReport t;
    t.LM = verify_kida(lm);
    t.KM = verify_kida(km);
    t.LK = verify_kida(lk);
    auto corr = [](const KidaReport& r) { return r.p1_total + r.p2_total; };
    t.corr_LM = corr(t.LM);
    t.corr_KM = corr(t.KM);
    t.corr_LK = corr(t.LK);
    t.degree_LK = t.LK.degree_inf;
    t.corrections_consistent = t.corr_LM == t.degree_LK * t.corr_KM + t.corr_LK &&
                               t.LM.degree_inf == t.degree_LK * t.KM.degree_inf;
    t.lambda_consistent = t.LM.inv_L.lambda == t.LK.inv_L.lambda && t.KM.inv_L.lambda == t.LK.inv_K.lambda &&
                          t.LM.inv_K.lambda == t.KM.inv_K.lambda;
    return t;
}

SignedGrowthReport signed_growth_check(const EigenSymbol& sym, i64 a_p, i64 p, const DirichletChar& psi,
                                       const std::vector<int>& levels, int B) {
    if (a_p != 0) fail(ErrorKind::InvalidInput, "signed growth needs a_p = 0");
    SignedGrowthReport rep;
    rep.levels = levels;
    i64 f = psi.conductor();
    i64 M = f / ipow(p, vp(f, p));
    auto L = twist_local_ring(p, {psi.primitive().order()}, B);
    rep.mu_zero = true;
    for (int n : levels) {
        auto inv = invariants(twist(theta_raw(sym, p, n, M), psi, L));
        rep.inv.push_back(inv);
        rep.q.push_back(q_n(p, n));
        rep.diff.push_back(inv.lambda - q_n(p, n));
        if (inv.mu != 0) rep.mu_zero = false;
    }
    rep.constant = true;
    for (std::size_t i = 1; i < rep.diff.size(); ++i)
        if (rep.diff[i] != rep.diff[0]) rep.constant = false;
    return rep;
}

}  // namespace mtk
