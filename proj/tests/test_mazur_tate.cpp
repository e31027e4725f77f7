#include <doctest.h>

#include <algorithm>

#include "mtk/error.hpp"
#include "mtk/mazur_tate.hpp"

using namespace mtk;

namespace {

const EigenSymbol& symbol(const std::string& label, i64 p) {
    static std::map<std::pair<std::string, i64>, EigenSymbol> cache;
    auto key = std::make_pair(label, p);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, EigenSymbol::from_curve(*builtin_curve(label), p)).first;
    return it->second;
}

i64 brute_tn(i64 a, i64 p, int n) {
    i64 q = ipow(p, n + 1);
    i64 w = 0;
    for (i64 x = 1; x < q; ++x)
        if (x % p == mod(a, p) && powmod(x, p - 1, q) == 1) w = x;
    i64 u = mulmod(mod(a, q), invmod(w, q), q);
    i64 g = 1;
    for (i64 t = 0;; ++t) {
        if (g == u) return t;
        g = mulmod(g, 1 + p, q);
    }
}

// Coefficients of (1 + T)^t truncated modulo (1 + T)^N - 1 via schoolbook
// multiplication with explicit wraparound.
std::vector<LocalElem> power_poly(const LocalRingPtr& L, i64 N, i64 t) {
    std::vector<LocalElem> c(N, L->zero());
    c[0] = L->one();
    for (i64 s = 0; s < t; ++s) {
        std::vector<LocalElem> d(N + 1, L->zero());
        for (i64 j = 0; j < N; ++j) {
            d[j] += c[j];
            d[j + 1] += c[j];
        }
        for (i64 j = 1; j < N; ++j) {
            BigInt b;
            mpz_bin_uiui(b.get_mpz_t(), N, j);
            d[j] -= d[N] * L->from_int(b);
        }
        d.pop_back();
        c = d;
    }
    return c;
}

DirichletChar quadratic_char(i64 q) {
    std::vector<i64> x = {1};
    return DirichletChar::from_exponents(q, x).pow((q - 1) / 2);
}

}  // namespace

TEST_CASE("theta_raw support and parity") {
    const auto& phi = symbol("11a1", 3);
    auto th = theta_raw(phi, 3, 0, 1);
    int support = 0;
    for (i64 a = 0; a < th.Q; ++a)
        if (gcd(a, th.Q) == 1) ++support;
    CHECK(support == 2);
    auto plus = theta_raw(phi, 5, 1, 2, +1);
    auto minus = theta_raw(phi, 5, 1, 2, -1);
    auto full = theta_raw(phi, 5, 1, 2);
    for (i64 a = 1; a < plus.Q; ++a) {
        if (gcd(a, plus.Q) != 1) {
            CHECK(full.coeff[a] == 0);
            continue;
        }
        CHECK(plus.coeff[a] == plus.coeff[plus.Q - a]);
        CHECK(minus.coeff[a] == -minus.coeff[minus.Q - a]);
        CHECK(full.coeff[a] == plus.coeff[a] + minus.coeff[a]);
    }
    auto th1 = theta_raw(phi, 3, 1, 1);
    int units = 0;
    for (i64 a = 0; a < th1.Q; ++a) units += gcd(a, th1.Q) == 1;
    CHECK(units == 6);
}

TEST_CASE("twist of constant theta stacks the fibres of t_n") {
    ThetaElem th;
    th.p = 5;
    th.n = 1;
    th.M = 1;
    th.Q = 25;
    th.coeff.assign(25, Rat(0));
    for (i64 a = 1; a < 25; ++a)
        if (a % 5) th.coeff[a] = 1;
    auto L = LocalRing::make(5, 1, 0, 8);
    auto y = twist(th, DirichletChar(), L).to_group();
    for (const auto& v : y) CHECK(v == L->from_int(4));
}

TEST_CASE("twist agrees with a brute-force sum") {
    const auto& phi = symbol("11a1", 3);
    for (int n : {1, 2}) {
        auto th = theta_raw(phi, 3, n, 1);
        i64 N = ipow(3, n);
        auto chi = DirichletChar::canonical(3, 1);
        std::vector<DirichletChar> chars = {DirichletChar(), quadratic_char(3)};
        if (n >= 1) chars.push_back(chi);
        for (const auto& psi : chars) {
            auto L = twist_local_ring(3, {psi.order()}, 10);
            auto P = twist(th, psi, L);
            std::vector<LocalElem> expect(N, L->zero());
            LocalElem at0 = L->zero();
            for (i64 a = 1; a < th.Q; ++a) {
                if (a % 3 == 0) continue;
                LocalElem c = L->from_rat(th.coeff[a]) * psi.value_local(a, L);
                auto pw = power_poly(L, N, brute_tn(a, 3, n));
                for (i64 j = 0; j < N; ++j) expect[j] += c * pw[j];
                at0 += c;
            }
            for (i64 j = 0; j < N; ++j) CHECK(P.coeff(j) == expect[j]);
            CHECK(P.coeff(0) == at0);
        }
    }
}

TEST_CASE("changing the generator of 1 + pZ_p permutes the group coefficients") {
    const auto& phi = symbol("11a1", 3);
    auto th = theta_raw(phi, 3, 1, 1);
    int nonzero = 0;
    for (const auto& c : th.coeff) nonzero += c != 0;
    CHECK(th.coeff.size() == 9);
    CHECK(nonzero == 6);
    auto R = twist_ring(3, {1});
    auto g1 = twist_exact(th, DirichletChar(), R);
    auto g2 = twist_exact(th, DirichletChar(), R, 16);
    std::vector<std::string> s1, s2;
    for (i64 t = 0; t < 3; ++t) {
        s1.push_back(g1.at(t).str());
        s2.push_back(g2.at(t).str());
    }
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    CHECK(s1 == s2);
    CHECK(g1.den() == g2.den());
}

TEST_CASE("twist rejects characters of the wrong conductor") {
    const auto& phi = symbol("11a1", 3);
    auto th = theta_raw(phi, 3, 1, 1);
    auto L = LocalRing::make(3, 1, 0, 8);
    auto psi = DirichletChar::canonical(3, 2);
    auto L2 = twist_local_ring(3, {psi.order()}, 8);
    CHECK_THROWS_AS(twist(th, psi, L2), Error);
    auto q7 = quadratic_char(7);
    try {
        twist(th, q7, L);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConductorMismatch);
    }
}

TEST_CASE("Euler factor") {
    auto L = LocalRing::make(3, 1, 0, 10);
    i64 a7 = builtin_curve("11a1")->a_ell(7);
    auto h = euler_h(a7, DirichletChar(), 7, 3, 1, L);
    auto y = h.to_group();
    // t_1(7) = 2 and ell^{k-2} = 1: h = a_7 - Y^2 - Y^{-2} = a_7 - Y^2 - Y
    CHECK(y[0] == L->from_int(a7));
    CHECK(y[2] == L->from_int(-1));
    CHECK(y[1] == L->from_int(-1));
    CHECK(h.coeff(0) == L->from_int(a7 - 1 - 1));
    auto y4 = euler_h(a7, DirichletChar(), 7, 3, 1, L, 1, 4).to_group();
    CHECK(y4[1] == L->from_int(-49));
    // bad prime: binomial
    auto hb = euler_h(1, DirichletChar(), 11, 3, 1, L, 0).to_group();
    int nz = 0;
    for (const auto& v : hb) nz += !v.is_zero();
    CHECK(nz == 2);
    try {
        euler_h(a7, quadratic_char(7), 7, 3, 1, twist_local_ring(3, {2}, 8));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConductorError);
    }
}

TEST_CASE("c_m recursion") {
    auto c = c_values(0, 1, 2, 3, 4);
    CHECK(c[0] == 0);
    CHECK(c[1] == 1);
    CHECK(c[2] == 0);
    CHECK(c[3] == frac(-1, 3));
    auto d = c_values(2, 0, 2, 5, 5);
    for (int m = 1; m <= 5; ++m) CHECK(d[m] == Rat(ipow(2, m - 1), ipow(5, m - 1)));
    auto e = c_values(-1, 1, 2, 3, 6);
    for (int m = 2; m <= 6; ++m) CHECK(e[m] == frac(-1, 3) * e[m - 1] - frac(1, 3) * e[m - 2]);
}

TEST_CASE("tame compatibility") {
    struct Case {
        const char* label;
        i64 p;
        int n;
        i64 M;
        i64 ell;
        DirichletChar psi;
    };
    std::vector<Case> cases = {
        {"11a1", 3, 1, 1, 7, DirichletChar()},
        {"11a1", 5, 1, 1, 3, quadratic_char(5)},
        {"11a1", 3, 2, 1, 5, DirichletChar::canonical(3, 1)},
        {"11a1", 3, 1, 7, 2, quadratic_char(7)},
        {"14a1", 5, 1, 1, 3, DirichletChar()},
        {"37a1", 3, 1, 1, 5, quadratic_char(3)},
        {"11a1", 3, 1, 1, 11, DirichletChar()},
    };
    for (const auto& c : cases) {
        const auto& phi = symbol(c.label, c.p);
        i64 a = builtin_curve(c.label)->a_ell(c.ell);
        auto rep = check_tame_compat(phi, a, c.p, c.n, c.M, c.ell, c.psi);
        INFO(c.label << " p=" << c.p << " ell=" << c.ell << " " << rep.detail);
        CHECK(rep.equal);
    }
    // A wrong eigenvalue is detected.
    const auto& phi = symbol("11a1", 3);
    auto bad = check_tame_compat(phi, builtin_curve("11a1")->a_ell(7) + 3, 3, 1, 1, 7, DirichletChar());
    CHECK_FALSE(bad.equal);
    CHECK(bad.first_mismatch >= 0);
    CHECK_THROWS_AS(check_tame_compat(phi, 0, 3, 1, 1, 7, quadratic_char(7)), Error);
}

TEST_CASE("vertical relation selects the lowered index convention") {
    for (auto [label, p] : {std::pair<const char*, i64>{"11a1", 3}, {"17a1", 3}, {"11a1", 5}, {"37a1", 3}}) {
        const auto& phi = symbol(label, p);
        auto E = *builtin_curve(label);
        i64 ap = E.a_ell(p);
        i64 eps = E.conductor() % p == 0 ? 0 : 1;
        for (int n : {2, 3}) {
            if (p == 5 && n == 3) continue;
            auto rep = check_vertical(phi, ap, p, n, 1, DirichletChar(), eps);
            INFO(label << " p=" << p << " n=" << n);
            CHECK(rep.convention() == "lowered");
        }
    }
    const auto& phi = symbol("11a1", 3);
    auto rep = check_vertical(phi, builtin_curve("11a1")->a_ell(3), 3, 2, 4, quadratic_char(4), 1);
    CHECK(rep.lowered_holds);
    CHECK_THROWS_AS(check_vertical(phi, 0, 3, 2, 1, DirichletChar()), Error);
}

TEST_CASE("evaluation at p-power roots of unity") {
    for (auto [label, p] : {std::pair<const char*, i64>{"11a1", 3}, {"17a1", 3}, {"14a1", 3}}) {
        const auto& phi = symbol(label, p);
        auto E = *builtin_curve(label);
        i64 ap = E.a_ell(p);
        i64 eps = E.conductor() % p == 0 ? 0 : 1;
        for (auto psi : {DirichletChar(), quadratic_char(3)})
            for (int n : {2, 3})
                for (int i = 1; i < n; ++i) CHECK(check_eval_compat(phi, ap, p, n, i, 1, psi, eps));
        CHECK_FALSE(check_eval_compat(phi, ap + 1, p, 3, 1, 1, DirichletChar(), eps));
    }
}

TEST_CASE("descent to abelian fields") {
    const auto& phi = symbol("11a1", 3);
    const int B = 12;
    SUBCASE("trivial field") {
        auto r = descend_to_field(phi, CharGroup::trivial_group(), 3, 2, B);
        CHECK(r.n_K == 0);
        auto base = LocalRing::make(3, 1, 0, B);
        auto direct = twist(theta_raw(phi, 3, 2, 1), DirichletChar(), base);
        CHECK(r.h == direct);
    }
    SUBCASE("degree prime to p") {
        auto X = CharGroup::generated_by({quadratic_char(5)});
        auto r = descend_to_field(phi, X, 3, 1, B);
        CHECK(r.n_K == 0);
        auto L = twist_local_ring(3, {2}, B);
        auto expect = twist(theta_raw(phi, 3, 1, 1), DirichletChar(), L) *
                      twist(theta_raw(phi, 3, 1, 5), quadratic_char(5), L);
        for (i64 j = 0; j < expect.size(); ++j) {
            CHECK(expect.coeff(j).in_base());
            CHECK(expect.coeff(j).coords()[0] == r.h.coeff(j).coords()[0]);
        }
    }
    SUBCASE("first layer of the cyclotomic Z_3-extension") {
        auto X = CharGroup::cyclotomic_layer(3, 1);
        auto r = descend_to_field(phi, X, 3, 1, B);
        CHECK(r.n_K == 1);
        CHECK(r.level == 2);
        CHECK(r.symmetric);
        // Recompose: h((1 + T)^3 - 1) must reproduce g.
        auto L = r.g.ring();
        i64 N = r.g.size();
        auto S = power_poly(L, N, 3);
        S[0] -= L->one();
        LambdaNPoly Sp(L, 3, 2);
        for (i64 j = 0; j < N; ++j) Sp.set_coeff(j, S[j]);
        LambdaNPoly acc(L, 3, 2);
        for (i64 j = r.h.size() - 1; j >= 0; --j) {
            acc = acc * Sp;
            LambdaNPoly c(L, 3, 2);
            c.set_coeff(0, L->from_int(static_cast<i64>(r.h.coeff(j).coords()[0])));
            acc += c;
        }
        CHECK(acc == r.g);
    }
    SUBCASE("cubic field with a tame character") {
        auto X = CharGroup::cyclic_subfield(7, 3);
        auto r = descend_to_field(phi, X, 3, 1, B);
        CHECK(r.n_K == 0);
        for (i64 j = 0; j < r.h.size(); ++j) CHECK(r.h.coeff(j).in_base());
    }
}
