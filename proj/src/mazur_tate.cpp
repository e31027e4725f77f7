#include "mtk/mazur_tate.hpp"

#include <future>
#include <map>
#include <sstream>

#include "mtk/error.hpp"

namespace mtk {

ThetaElem theta_raw(const EigenSymbol& sym, i64 p, int n, i64 M, int sign) {
    if (n < 0 || M < 1 || M % p == 0) fail(ErrorKind::InvalidInput, "theta_raw: need n >= 0 and p not dividing M");
    ThetaElem th;
    th.p = p;
    th.n = n;
    th.M = M;
    th.Q = ipow(p, n + 1) * M;
    th.coeff.assign(th.Q, Rat(0));
    for (i64 a = 1; a < th.Q; ++a)
        if (gcd(a, th.Q) == 1) th.coeff[a] = sym.eval(a, th.Q, sign);
    return th;
}

namespace {

std::pair<i64, int> split_order(i64 o, i64 p) {
    int v = 0;
    while (o % p == 0) {
        o /= p;
        ++v;
    }
    return {o, v};
}

DirichletChar char_at_level(const DirichletChar& psi, i64 Q) {
    DirichletChar prim = psi.primitive();
    if (Q % prim.modulus() != 0) {
        std::ostringstream os;
        os << "character of conductor " << prim.modulus() << " does not divide " << Q;
        fail(ErrorKind::ConductorMismatch, os.str());
    }
    return prim.lift(Q);
}

// For each exponent t of Y, the sums of theta coefficients grouped by the
// exponent of psi(a).
std::vector<std::map<i64, Rat>> grouped_sums(const ThetaElem& theta, const DirichletChar& psi, i64 gamma) {
    DirichletChar chi = char_at_level(psi, theta.Q);
    TnTable tn(theta.p, theta.n, theta.M, gamma);
    std::vector<std::map<i64, Rat>> out(tn.pn());
    for (i64 a = 1; a < theta.Q; ++a) {
        i64 t = tn(a);
        if (t < 0 || theta.coeff[a] == 0) continue;
        out[t][*chi.value(a)] += theta.coeff[a];
    }
    return out;
}

i64 chi_value_or_throw(const DirichletChar& psi, i64 ell) {
    auto k = psi.primitive().value(ell);
    if (!k) fail(ErrorKind::ConductorError, "psi vanishes at ell");
    return *k;
}

i64 tn_of(i64 ell, i64 p, int n) {
    TnTable tn(p, n, 1);
    return tn(mod(ell, ipow(p, n + 1)));
}

}  // namespace

CycRingPtr twist_ring(i64 p, const std::vector<i64>& orders, int s_min) {
    std::vector<i64> all = orders;
    all.push_back(ipow(p, s_min));
    return CycRing::for_orders(p, all);
}

LocalRingPtr twist_local_ring(i64 p, const std::vector<i64>& orders, int B, int s_min) {
    i64 d = 1;
    int s = s_min;
    for (i64 o : orders) {
        auto [q, v] = split_order(o, p);
        d = lcm(d, q);
        s = std::max(s, v);
    }
    return LocalRing::make(p, d, s, B);
}

GroupElem twist_exact(const ThetaElem& theta, const DirichletChar& psi, const CycRingPtr& R, i64 gamma) {
    auto sums = grouped_sums(theta, psi, gamma);
    BigInt den = 1;
    for (const auto& m : sums)
        for (const auto& [k, v] : m) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    GroupElem g(R, theta.p, theta.n);
    i64 order = psi.primitive().order();
    for (i64 t = 0; t < static_cast<i64>(sums.size()); ++t)
        for (const auto& [k, v] : sums[t]) {
            BigInt num = v.get_num() * (den / v.get_den());
            g.at(t).add_root(num, k, order);
        }
    g.set_den(den);
    return g;
}

LambdaNPoly twist(const ThetaElem& theta, const DirichletChar& psi, const LocalRingPtr& L, i64 gamma) {
    auto sums = grouped_sums(theta, psi, gamma);
    i64 order = psi.primitive().order();
    std::vector<LocalElem> y(sums.size(), L->zero());
    for (std::size_t t = 0; t < sums.size(); ++t)
        for (const auto& [k, v] : sums[t]) y[t] += L->from_rat(v) * L->root_of_unity(k, order);
    return LambdaNPoly::from_group(L, theta.p, theta.n, y);
}

LambdaNPoly euler_h(const LocalElem& a_ell, const LocalElem& psi_ell, const LocalElem& eps_psi_inv, i64 t, i64 p,
                    int n) {
    const LocalRingPtr& L = a_ell.ring();
    i64 N = ipow(p, n);
    std::vector<LocalElem> y(N, L->zero());
    y[0] += a_ell;
    y[mod(t, N)] -= psi_ell;
    y[mod(-t, N)] -= eps_psi_inv;
    return LambdaNPoly::from_group(L, p, n, y);
}

LambdaNPoly euler_h(i64 a_ell, const DirichletChar& psi, i64 ell, i64 p, int n, const LocalRingPtr& L, i64 eps,
                    int k) {
    i64 e = chi_value_or_throw(psi, ell);
    i64 order = psi.primitive().order();
    LocalElem third = L->from_int(BigInt(eps) * BigInt(ipow(ell, k - 2))) * L->root_of_unity(-e, order);
    return euler_h(L->from_int(a_ell), L->root_of_unity(e, order), third, tn_of(ell, p, n), p, n);
}

GroupElem euler_h_exact(i64 a_ell, const DirichletChar& psi, i64 ell, i64 p, int n, const CycRingPtr& R, i64 eps,
                        int k) {
    i64 e = chi_value_or_throw(psi, ell);
    i64 order = psi.primitive().order();
    i64 t = tn_of(ell, p, n);
    GroupElem h(R, p, n);
    h.at(0) += CycInt(R, BigInt(a_ell));
    h.at(t).add_root(BigInt(-1), e, order);
    h.at(-t).add_root(BigInt(-eps) * BigInt(ipow(ell, k - 2)), -e, order);
    return h;
}

std::vector<Rat> c_values(i64 a_p, i64 eps, int k, i64 p, int m) {
    if (m < 0) fail(ErrorKind::InvalidInput, "c_values: m must be nonnegative");
    std::vector<Rat> c(m + 1, Rat(0));
    if (m >= 1) c[1] = 1;
    Rat pk3 = k >= 3 ? Rat(ipow(p, k - 3)) : frac(1, ipow(p, 3 - k));
    for (int j = 2; j <= m; ++j) c[j] = frac(a_p, p) * c[j - 1] - Rat(eps) * pk3 * c[j - 2];
    return c;
}

TameCompatReport check_tame_compat(const EigenSymbol& sym, i64 a_ell, i64 p, int n, i64 M, i64 ell,
                                   const DirichletChar& psi) {
    if (!is_prime(ell) || ell == p || M % ell == 0)
        fail(ErrorKind::InvalidInput, "check_tame_compat: ell must be a prime not dividing pM");
    CycRingPtr R = twist_ring(p, {psi.primitive().order()});
    i64 eps = sym.N() % ell == 0 ? 0 : 1;
    GroupElem h = euler_h_exact(a_ell, psi, ell, p, n, R, eps);
    GroupElem lhs = twist_exact(theta_raw(sym, p, n, M * ell), psi, R);
    GroupElem rhs = h * twist_exact(theta_raw(sym, p, n, M), psi, R);
    TameCompatReport rep;
    rep.equal = lhs == rhs;
    if (!rep.equal) {
        for (i64 t = 0; t < lhs.size(); ++t)
            if (lhs.at(t) * rhs.den() != rhs.at(t) * lhs.den()) {
                rep.first_mismatch = t;
                std::ostringstream os;
                os << "Y^" << t << ": " << lhs.at(t).str() << " / " << lhs.den() << " vs " << rhs.at(t).str() << " / "
                   << rhs.den();
                rep.detail = os.str();
                break;
            }
    }
    return rep;
}

std::string VerticalReport::convention() const {
    if (lowered_holds && projected_holds) return "both";
    if (lowered_holds) return "lowered";
    if (projected_holds) return "projected";
    return "none";
}

VerticalReport check_vertical(const EigenSymbol& sym, i64 a_p, i64 p, int n, i64 M, const DirichletChar& psi,
                              i64 eps, int k) {
    if (n < 2) fail(ErrorKind::InvalidInput, "check_vertical: need n >= 2");
    char_at_level(psi, ipow(p, n - 1) * M);
    CycRingPtr R = twist_ring(p, {psi.primitive().order()});
    GroupElem t0 = twist_exact(theta_raw(sym, p, n, M), psi, R);
    GroupElem t1 = twist_exact(theta_raw(sym, p, n - 1, M), psi, R);
    GroupElem t2 = twist_exact(theta_raw(sym, p, n - 2, M), psi, R);
    Rat c = Rat(eps) * Rat(ipow(p, k - 2));
    GroupElem lhs = t0.project(n - 1);
    VerticalReport rep;
    rep.lowered_holds = lhs == t1.scaled(Rat(a_p)) - t2.trace_up(n - 1).scaled(c);
    rep.projected_holds = lhs == (t0.scaled(Rat(a_p)) - t1.trace_up(n).scaled(c)).project(n - 1);
    if (!rep.lowered_holds && !rep.projected_holds)
        fail(ErrorKind::NoConventionMatches, "vertical relation fails in both index conventions");
    return rep;
}

bool check_eval_compat(const EigenSymbol& sym, i64 a_p, i64 p, int n, int i, i64 M, const DirichletChar& psi,
                       i64 eps, int k) {
    if (i <= 0 || i >= n) fail(ErrorKind::InvalidInput, "check_eval_compat: need 0 < i < n");
    CycRingPtr R = twist_ring(p, {psi.primitive().order()}, n);
    GroupElem tn = twist_exact(theta_raw(sym, p, n, M), psi, R);
    GroupElem ti = twist_exact(theta_raw(sym, p, i, M), psi, R);
    Rat c = Rat(ipow(p, n - i)) * c_values(a_p, eps, k, p, n - i + 1)[n - i + 1];
    CycInt lhs = tn.eval_root_num(i) * (ti.den() * BigInt(c.get_den()));
    CycInt rhs = ti.eval_root_num(i) * (tn.den() * BigInt(c.get_num()));
    return lhs == rhs;
}

DescentResult descend_to_field(const EigenSymbol& sym, const CharGroup& X, i64 p, int n, int B) {
    if (n < 0) fail(ErrorKind::InvalidInput, "descend_to_field: n must be nonnegative");
    DescentResult res{LambdaNPoly(LocalRing::make(p, 1, 0, B), p, n), LambdaNPoly(LocalRing::make(p, 1, 0, B), p, 0),
                      0, 0, false};
    const int nK = X.n_K(p);
    const int level = n + nK;
    res.n_K = nK;
    res.level = level;
    LocalRingPtr L = twist_local_ring(p, X.orders(), B, nK);

    std::map<i64, ThetaElem> thetas;
    std::vector<std::pair<const DirichletChar*, i64>> jobs;
    for (const auto& psi : X.chars()) {
        i64 f = psi.conductor();
        int v = vp(f, p);
        if (v > level + 1) fail(ErrorKind::ConductorMismatch, "character conductor exceeds the descent level");
        i64 Mpsi = f / ipow(p, v);
        if (!thetas.count(Mpsi)) thetas.emplace(Mpsi, theta_raw(sym, p, level, Mpsi));
        jobs.emplace_back(&psi, Mpsi);
    }
    std::vector<std::future<LambdaNPoly>> parts;
    for (const auto& [psi, Mpsi] : jobs) {
        const ThetaElem* th = &thetas.at(Mpsi);
        const DirichletChar* ch = psi;
        parts.push_back(std::async(std::launch::async, [th, ch, L] { return twist(*th, *ch, L); }));
    }
    std::vector<LambdaNPoly> factors;
    for (auto& f : parts) factors.push_back(f.get());
    // Pairwise tree product, fixed order.
    while (factors.size() > 1) {
        std::vector<LambdaNPoly> next;
        for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(factors[i] * factors[i + 1]);
        if (factors.size() % 2) next.push_back(factors.back());
        factors = std::move(next);
    }
    LambdaNPoly g = factors.front();

    const i64 D = ipow(p, nK);
    res.symmetric = true;
    for (i64 i = 1; i < D; ++i)
        if (g.substitute_root(nK, i) != g) {
            res.symmetric = false;
            break;
        }
    res.g = g;
    if (!res.symmetric) fail(ErrorKind::DescentResidual, "product is not invariant under T -> zeta (1 + T) - 1");

    // Iterated division by S = (1 + T)^D - 1, monic of degree D.
    auto C = binomial_table(*L, D + 1);
    std::vector<LocalElem> S(D + 1, L->zero());
    for (i64 j = 1; j <= D; ++j) S[j] = L->from_int(static_cast<i64>(C[D][j]));
    std::vector<LocalElem> cur(g.size(), L->zero());
    for (i64 j = 0; j < g.size(); ++j) cur[j] = g.coeff(j);
    const i64 H = ipow(p, n);
    LocalRingPtr base = LocalRing::make(p, 1, 0, B);
    LambdaNPoly h(base, p, n);
    for (i64 step = 0; step < H; ++step) {
        std::vector<LocalElem> q(cur.size() >= static_cast<std::size_t>(D) ? cur.size() - D + 1 : 1, L->zero());
        for (i64 j = static_cast<i64>(cur.size()) - 1; j >= D; --j) {
            LocalElem lead = cur[j];
            if (lead.is_zero()) continue;
            q[j - D] = lead;
            for (i64 m = 0; m <= D; ++m) cur[j - D + m] -= lead * S[m];
        }
        for (i64 j = 1; j < std::min<i64>(D, cur.size()); ++j)
            if (!cur[j].is_zero()) fail(ErrorKind::DescentResidual, "division leaves a non-constant remainder");
        const LocalElem& a = cur[0];
        if (!a.in_base()) fail(ErrorKind::CoefficientDrift, "descended coefficient leaves Z_p");
        h.set_coeff(step, base->from_int(static_cast<i64>(a.coords()[0])));
        cur = std::move(q);
    }
    for (const auto& x : cur)
        if (!x.is_zero()) fail(ErrorKind::DescentResidual, "quotient does not vanish after p^n steps");
    res.h = h;
    return res;
}

bool descent_product_vanishes(const EigenSymbol& sym, const CharGroup& X, i64 p, int n) {
    const int level = n + X.n_K(p);
    CycRingPtr R = twist_ring(p, X.orders());
    std::optional<GroupElem> g;
    for (const auto& psi : X.chars()) {
        i64 f = psi.conductor();
        i64 Mpsi = f / ipow(p, vp(f, p));
        GroupElem t = twist_exact(theta_raw(sym, p, level, Mpsi), psi, R);
        g = g ? *g * t : t;
        if (g->is_zero()) return true;
    }
    return false;
}

}  // namespace mtk
