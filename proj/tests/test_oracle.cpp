#include <doctest.h>

#include <map>
#include <random>

#include "mtk/error.hpp"
#include "mtk/iwasawa.hpp"
#include "mtk/mazur_tate.hpp"
#include "mtk/oracle.hpp"

using namespace mtk;

namespace {

const QExpansion& qexp(const std::string& label) {
    static std::map<std::string, QExpansion> cache;
    auto it = cache.find(label);
    if (it == cache.end()) it = cache.emplace(label, QExpansion::from_curve(*builtin_curve(label), 10000)).first;
    return it->second;
}

const EigenSymbol& symbol(const std::string& label, i64 p) {
    static std::map<std::pair<std::string, i64>, EigenSymbol> cache;
    auto key = std::make_pair(label, p);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, EigenSymbol::from_curve(*builtin_curve(label), p)).first;
    return it->second;
}

}  // namespace

TEST_CASE("q-expansion of 11a1") {
    const auto& f = qexp("11a1");
    std::vector<i64> expect = {0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1, -4};
    for (std::size_t n = 1; n < expect.size(); ++n) CHECK(f.a(n) == expect[n]);
    std::mt19937_64 rng(4242);
    for (int k = 0; k < 200; ++k) {
        i64 m = 1 + rng() % 99, n = 1 + rng() % 99;
        if (gcd(m, n) == 1) CHECK(f.a(m * n) == f.a(m) * f.a(n));
    }
    for (i64 n = 1; n <= f.bound(); ++n)
        CHECK(static_cast<double>(std::abs(f.a(n))) <= static_cast<double>(divisors(n).size()) * std::sqrt(n) + 1e-9);
}

TEST_CASE("Eichler integrals") {
    const auto& f = qexp("11a1");
    CHECK(fricke_sign(f) == -1);
    CHECK(fricke_sign(qexp("37a1")) == 1);
    CHECK(std::abs(eichler_integral(f, 1, 0, -1).z) == 0);
    // L(11a1, 1) = 0.2538418608559106843...
    auto L = eichler_integral(f, 0, 1, -1);
    CHECK(std::abs(-L.z - Complex(0.2538418608559107, 0)) < 1e-12);
    CHECK(std::abs(-L.z.real() / real_period(*builtin_curve("11a1")) - 0.2) < 1e-8);
    CHECK(std::abs(real_period(*builtin_curve("37a1")) - 5.986917292463919) < 1e-10);

    for (i64 m : {7, 9, 33, 25}) {
        auto x = eichler_integral(f, 2, m, -1).z;
        auto y = eichler_integral(f, -2, m, -1).z;
        CHECK(std::abs((x + y).imag()) < 1e-10);
        CHECK(std::abs((x - y).real()) < 1e-10);
    }
    CHECK_THROWS_AS(eichler_integral(qexp("14a1"), 1, 2, -1), Error);
    try {
        eichler_integral(qexp("14a1"), 1, 2, -1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedCusp);
    }
    try {
        eichler_integral(f.truncated(20), 1, 25, -1);
        FAIL("expected ToleranceUnreachable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ToleranceUnreachable);
    }
}

TEST_CASE("error bounds and splitting height") {
    const auto& f = qexp("37a1");
    auto half = f.truncated(5000);
    for (i64 m : {1, 5, 25, 27}) {
        auto a = eichler_integral(f, 1, m, 1, 1e-6);
        auto b = eichler_integral(half, 1, m, 1, 1e-6);
        CHECK(std::abs(a.z - b.z) <= a.err + b.err);
        auto c = eichler_integral(f, 1, m, 1, 1e-6, 2.0);
        CHECK(std::abs(a.z - c.z) <= a.err + c.err);
    }
}

TEST_CASE("exact modular symbols against the integrals") {
    for (std::string lab : {"11a1", "37a1"}) {
        const auto& f = qexp(lab);
        const auto& sym = symbol(lab, 3);
        auto cal = calibrate_periods(sym, f);
        for (i64 m : {1, 2, 3, 5, 9, 13, 27, 37 * 2, 11 * 3}) {
            if (gcd(m, f.N()) != 1 && m % f.N() != 0) continue;
            for (i64 a = 1; a < m; ++a) {
                if (gcd(a, m) != 1) continue;
                Complex v = -eichler_integral(f, a, m, cal.eps).z;
                Complex e = cal.omega_plus * sym.eval(a, m, 1).get_d() + cal.omega_minus * sym.eval(a, m, -1).get_d();
                CHECK(std::abs(v - e) <= 1e-6 * std::max(1.0, std::abs(v)));
            }
        }
    }
}

TEST_CASE("Gauss sums") {
    auto q5 = DirichletChar::from_exponents(5, {2});
    CycInt t = gauss_sum_exact(q5);
    CHECK(t * t == CycInt(t.ring(), BigInt(5)));
    CHECK(std::abs(gauss_sum(q5) * gauss_sum(q5) - Complex(5, 0)) < 1e-12);

    std::mt19937_64 rng(2718);
    int tested = 0;
    while (tested < 20) {
        i64 m = 3 + rng() % 60;
        UnitGroup U(m);
        std::vector<i64> x;
        for (i64 o : U.orders()) x.push_back(static_cast<i64>(rng() % o));
        auto chi = DirichletChar::from_exponents(m, x);
        if (!chi.is_primitive()) continue;
        ++tested;
        CycInt tau = gauss_sum_exact(chi);
        CHECK(tau * tau.conj() == CycInt(tau.ring(), BigInt(m)));
        CHECK(std::abs(std::norm(gauss_sum(chi)) - m) < 1e-9);
        i64 n = 1 + rng() % 200;
        if (gcd(n, m) != 1) continue;
        CycInt lhs = gauss_sum_exact(chi, n);
        CycInt rhs = CycInt::root(tau.ring(), -*chi.value(n), chi.order()) * tau;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("twisted L-values") {
    const auto& f = qexp("11a1");
    auto triv = lvalue_twisted(f, DirichletChar::trivial(), -1);
    CHECK(std::abs(triv.z - Complex(0.2538418608559107, 0)) < 1e-12);
    auto chi = DirichletChar::from_exponents(7, {1});  // order 6, odd
    auto a = lvalue_twisted(f, chi, -1);
    auto b = lvalue_twisted(f, chi.inverse(), -1);
    CHECK(std::abs(a.z - std::conj(b.z)) < 1e-9);
    // For an even character the odd part of the integrals cancels.
    auto even = DirichletChar::from_exponents(7, {2});
    Complex s = 0;
    for (i64 x = 1; x < 7; ++x)
        s += std::polar(1.0, 2 * M_PI * *even.value(x) / even.order()) * eichler_integral(f, x, 7, -1).z.imag();
    CHECK(std::abs(s) < 1e-10);
}

TEST_CASE("interpolation at the trivial twist") {
    for (auto [lab, p] : std::vector<std::pair<std::string, i64>>{{"11a1", 3}, {"37a1", 3}, {"11a1", 5}}) {
        const auto& f = qexp(lab);
        const auto& sym = symbol(lab, p);
        auto cal = calibrate_periods(sym, f);
        i64 ap = builtin_curve(lab)->a_ell(p);
        for (int n : {1, 2})
            for (int i = 1; i <= n; ++i) {
                auto r = check_interpolation(sym, f, cal, DirichletChar::trivial(), ap, n, i, 1);
                CHECK_MESSAGE(r.agree, lab, " p=", p, " n=", n, " i=", i, " ", r.detail);
            }
    }
}

TEST_CASE("interpolation with tame and odd twists") {
    const auto& f = qexp("11a1");
    const auto& sym = symbol("11a1", 3);
    auto cal = calibrate_periods(sym, f);
    auto q4 = DirichletChar::from_exponents(4, {1});
    auto r = check_interpolation(sym, f, cal, q4, -1, 1, 1, 4);
    CHECK_MESSAGE(r.agree, r.detail);
    auto q5 = DirichletChar::from_exponents(5, {2});
    auto s = check_interpolation(sym, f, cal, q5, -1, 2, 1, 5);
    CHECK_MESSAGE(s.agree, s.detail);
    CHECK_THROWS_AS(check_interpolation(sym, f, cal, DirichletChar::trivial(), -1, 1, 1, 4), Error);
}

TEST_CASE("lambda zero forces a nonvanishing L-value") {
    const auto& f = qexp("11a1");
    const auto& sym = symbol("11a1", 3);
    auto cal = calibrate_periods(sym, f);
    int zero_lambda = 0;
    std::vector<std::pair<DirichletChar, i64>> twists = {{DirichletChar::trivial(), 1},
                                                         {DirichletChar::from_exponents(4, {1}), 4},
                                                         {DirichletChar::from_exponents(5, {2}), 5},
                                                         {DirichletChar::from_exponents(7, {3}), 7}};
    for (const auto& [psi, M] : twists)
        for (int n : {1, 2}) {
            auto R = twist_ring(3, {psi.order()}, n);
            auto inv = invariants(twist_exact(theta_raw(sym, 3, n, M), psi, R));
            auto r = check_interpolation(sym, f, cal, psi, -1, n, n, M);
            CHECK_MESSAGE(r.agree, r.detail);
            if (!inv.infinite && inv.mu == 0 && inv.lambda == 0) {
                ++zero_lambda;
                CHECK(std::abs(r.oracle) > 1e-6);
            }
        }
    CHECK(zero_lambda > 0);
}
