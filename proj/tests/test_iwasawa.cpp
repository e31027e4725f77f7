#include <doctest.h>

#include <random>

#include "mtk/error.hpp"
#include "mtk/iwasawa.hpp"

using namespace mtk;

namespace {

LambdaNPoly poly(const LocalRingPtr& L, i64 p, int n, const std::vector<i64>& c) {
    LambdaNPoly F(L, p, n);
    for (std::size_t j = 0; j < c.size(); ++j) F.set_coeff(static_cast<i64>(j), L->from_int(c[j]));
    return F;
}

}  // namespace

TEST_CASE("mu and lambda from coefficients") {
    auto L = LocalRing::make(3, 1, 0, 12);
    auto a = invariants(poly(L, 3, 1, {3, 9}));
    CHECK(a.mu == 1);
    CHECK(a.lambda == 0);
    auto b = invariants(poly(L, 3, 1, {3, 0, 1}));
    CHECK(b.mu == 0);
    CHECK(b.lambda == 2);
    CHECK(b.level_bound);
    CHECK_THROWS_AS(invariants(LambdaNPoly(L, 3, 1)), Error);
    auto R = CycRing::make(1, 3, 0);
    GroupElem z(R, 3, 1);
    CHECK(invariants(z).infinite);
    // ramified coefficients: pi = zeta_3 - 1 has valuation 1/2
    auto L2 = LocalRing::make(3, 1, 1, 12);
    LambdaNPoly F(L2, 3, 2);
    F.set_coeff(1, L2->zeta_p_pow(1) - L2->one());
    F.set_coeff(4, L2->from_int(3));
    auto c = invariants(F);
    CHECK(c.mu == frac(1, 2));
    CHECK(c.lambda == 1);
    // an exact element that needs more than the default precision
    GroupElem big(R, 3, 1);
    big.at(0) = CycInt(R, BigInt(ipow(3, 25)));
    auto d = invariants(big, 10);
    CHECK(d.mu == 25);
    CHECK(d.lambda == 0);
}

TEST_CASE("splitting in the cyclotomic layers") {
    CHECK(g_Q_layer(7, 3, 1) == 1);
    CHECK(g_Q_layer(17, 3, 1) == 3);
    CHECK(g_Q_layer(2, 3, 3) == 1);
    CHECK(g_Q_layer(2, 5, 2) == 1);
    // 10 = 1 + 9: <10> = gamma^3 modulo 27, so t_2(10) = 3
    CHECK(g_Q_layer(10, 3, 2) == 3);
    CHECK(g_Q_layer(28, 3, 2) == 9);
}

TEST_CASE("signed counts and cyclotomic products") {
    CHECK(q_n(3, 1) == 0);
    CHECK(q_n(3, 2) == 2);
    CHECK(q_n(3, 3) == 6);
    CHECK(q_n(5, 4) == 125 - 25 + 5 - 1);
    auto L = LocalRing::make(3, 1, 0, 12);
    for (int n = 1; n <= 4; ++n) {
        auto w = omega_pm(3, n, L);
        auto a = invariants(w.matching);
        auto b = invariants(w.complement);
        CHECK(a.mu == 0);
        CHECK(a.lambda == q_n(3, n));
        CHECK(b.mu == 0);
        CHECK(a.lambda + b.lambda == ipow(3, n - 1) - 1);
    }
}

TEST_CASE("g_psi_n case table") {
    auto L = LocalRing::make(5, 1, 0, 10);
    i64 gQ = 5;
    auto one = L->one();
    // case (iii)
    CHECK(g_psi_n(L->from_int(3), std::nullopt, one, false, gQ) == 0);
    // case (ii)
    CHECK(g_psi_n(L->from_int(1), one, one, true, gQ) == gQ);
    CHECK(g_psi_n(L->from_int(-1), one, one, true, gQ) == 0);
    // case (i): a = 2 + 5 is congruent to 1 + 1 and to 2 sqrt(1)
    CHECK(g_psi_n(L->from_int(7), one, one, false, gQ) == 2 * gQ);
    CHECK(g_psi_n(L->from_int(3), one, one, false, gQ) == 0);
    // psi(ell) = -1, ell^{k-2} = 4: a = -1 - 4 = -5 = 0 mod 5, a^2 = 0 != 16
    CHECK(g_psi_n(L->from_int(0), L->from_int(-1), L->from_int(4), false, gQ) == gQ);
    // With integers: 11a1 has a_7 = -2, a_7 = 1 + 1 mod p only for p = 2
    CHECK(g_psi_n(7, DirichletChar(), 1, -2, false, 2, 3, LocalRing::make(3, 1, 0, 10)) == 0);
}

TEST_CASE("Euler factor invariants match g_psi_n") {
    std::mt19937_64 rng(31337);
    for (i64 p : {3, 5}) {
        auto L = LocalRing::make(p, 1, 0, 10);
        for (int n : {1, 2}) {
            for (i64 ell = 2; ell < 200; ++ell) {
                if (!is_prime(ell) || ell == p) continue;
                i64 t = TnTable(p, n, 1)(mod(ell, ipow(p, n + 1)));
                if (t == 0) continue;
                for (bool bad : {false, true}) {
                    i64 a = static_cast<i64>(rng() % 7) - 3;
                    if (rng() % 2) a = bad ? 1 : 2;
                    auto h = euler_h(L->from_int(a), L->one(), bad ? L->zero() : L->one(), t, p, n);
                    auto inv = invariants(h);
                    i64 g = g_psi_n(L->from_int(a), L->one(), L->one(), bad, g_Q_layer(ell, p, n));
                    INFO("p=" << p << " n=" << n << " ell=" << ell << " a=" << a << " bad=" << bad);
                    CHECK(inv.mu == 0);
                    CHECK(inv.lambda == g);
                }
            }
        }
    }
}

TEST_CASE("transition formula on small instances") {
    auto E = *builtin_curve("11a1");
    auto phi3 = EigenSymbol::from_curve(E, 3);
    auto r = check_transition(phi3, E.a_ell(7), 3, 1, 1, 7, DirichletChar());
    CHECK(r.status == TransitionStatus::Holds);
    auto phi5 = EigenSymbol::from_curve(E, 5);
    auto s = check_transition(phi5, E.a_ell(11), 5, 1, 1, 11, DirichletChar());
    INFO(s.at_M.str() << " " << s.at_Ml.str() << " g=" << s.g);
    CHECK(s.g == g_Q_layer(11, 5, 1));
    CHECK(s.status == TransitionStatus::SkippedLevelBound);
    auto s2 = check_transition(phi5, E.a_ell(11), 5, 2, 1, 11, DirichletChar());
    INFO(s2.at_M.str() << " " << s2.at_Ml.str() << " g=" << s2.g);
    CHECK(s2.status == TransitionStatus::SkippedLevelBound);
    auto F = *builtin_curve("14a1");
    auto phi14 = EigenSymbol::from_curve(F, 5);
    for (i64 ell : {7, 37}) {
        auto u = check_transition(phi14, F.a_ell(ell), 5, 2, 1, ell, DirichletChar());
        CHECK(u.g > 0);
        CHECK(u.status == TransitionStatus::Holds);
    }
}
