#include <doctest.h>

#include <random>

#include "mtk/characters.hpp"
#include "mtk/error.hpp"

using namespace mtk;

namespace {

i64 count_primitive(i64 m) {
    // number of primitive characters modulo m by Moebius inversion of phi
    i64 s = 0;
    for (i64 d : divisors(m)) {
        i64 k = m / d;
        int mu = 1;
        for (auto [q, e] : factorize(k)) mu = e > 1 ? 0 : -mu;
        s += mu * euler_phi(d);
    }
    return s;
}

}  // namespace

TEST_CASE("unit group generators") {
    for (i64 m : {1, 2, 4, 8, 16, 9, 27, 12, 35, 72, 100}) {
        UnitGroup U(m);
        i64 prod = 1;
        for (i64 o : U.orders()) prod *= o;
        CHECK(prod == euler_phi(m));
        for (i64 a = 1; a < m; ++a) {
            if (gcd(a, m) != 1) continue;
            auto d = U.dlog(a);
            i64 x = 1 % m;
            for (std::size_t i = 0; i < d.size(); ++i) x = mulmod(x, powmod(U.gens()[i], d[i], m), m);
            CHECK(x == a % m);
        }
    }
}

TEST_CASE("characters modulo m") {
    for (i64 m : {5, 8, 12, 21, 27, 36, 49}) {
        auto all = CharGroup::from_subgroup(m, {});
        CHECK(all.degree() == euler_phi(m));
        i64 prim = 0;
        for (const auto& c : all.chars())
            if (c.modulus() == m) ++prim;
        CHECK(prim == count_primitive(m));
        auto R = CycRing::for_orders(3, all.orders());
        for (const auto& c : all.chars()) {
            // orthogonality on the full modulus
            auto lifted = c.lift(m);
            CycInt s(R);
            for (i64 a = 0; a < m; ++a) s += lifted.value_cyc(a, R);
            if (c == DirichletChar()) CHECK(s == CycInt(R, euler_phi(m)));
            else CHECK(s.is_zero());
            CHECK(c.is_primitive());
            CHECK(DirichletChar::from_exponents(c.modulus(), c.exponents()) == c);
        }
    }
}

TEST_CASE("products, powers and decomposition") {
    std::mt19937_64 rng(9);
    auto all = CharGroup::from_subgroup(63, {});
    for (int it = 0; it < 40; ++it) {
        const auto& a = all.chars()[rng() % all.chars().size()];
        const auto& b = all.chars()[rng() % all.chars().size()];
        auto c = a * b;
        for (i64 x = 1; x < 63; ++x) {
            if (gcd(x, 63) != 1) continue;
            Rat lhs = frac(*c.value(x), c.order());
            Rat rhs = frac(*a.value(x), a.order()) + frac(*b.value(x), b.order());
            CHECK(Rat(lhs - rhs).get_den() == 1);
        }
        auto [c1, c2] = decompose_char(a, 3);
        CHECK(c1 * c2 == a);
        CHECK(c1.order() % 3 != 0);
        i64 o2 = c2.order();
        while (o2 % 3 == 0) o2 /= 3;
        CHECK(o2 == 1);
    }
}

TEST_CASE("canonical characters of the cyclotomic Z_p-extension") {
    for (i64 p : {3, 5}) {
        for (int m = 1; m <= 3; ++m) {
            auto c = DirichletChar::canonical(p, m);
            CHECK(c.conductor() == ipow(p, m + 1));
            CHECK(c.order() == ipow(p, m));
            CHECK(c.pow(p).primitive() == DirichletChar::canonical(p, m - 1).lift(ipow(p, m + 1)).primitive());
            CHECK(c.parity() == 1);
            auto L = CharGroup::cyclotomic_layer(p, m);
            CHECK(L.degree() == ipow(p, m));
            CHECK(L.n_K(p) == m);
        }
    }
    CHECK(CharGroup::cyclic_subfield(7, 3).n_K(3) == 0);
}

TEST_CASE("subgroup validation") {
    auto a = DirichletChar::from_exponents(7, {1});
    CHECK_THROWS_AS(CharGroup({DirichletChar(), a}), Error);
    CHECK_THROWS_AS(CharGroup::from_subgroup(9, {3}), Error);
    auto g = CharGroup::generated_by({a});
    CHECK(g.degree() == 6);
}

TEST_CASE("splitting data in abelian fields") {
    // subfields of Q(mu_ell): residue degree of q is the order of q modulo H
    for (i64 ell : {7, 13, 31}) {
        for (i64 deg : divisors(ell - 1)) {
            auto X = CharGroup::cyclic_subfield(ell, deg);
            CHECK(X.degree() == deg);
            for (i64 q : {2, 3, 5, 11}) {
                if (q == ell) continue;
                auto s = X.splitting(q);
                CHECK(s.e == 1);
                i64 g = primitive_root(ell);
                i64 H = powmod(g, deg, ell);
                i64 f = 1;
                i64 x = q % ell;
                // smallest f with q^f in <H>
                auto inH = [&](i64 y) {
                    i64 h = 1;
                    for (i64 k = 0; k < (ell - 1) / deg; ++k) {
                        if (h == y) return true;
                        h = mulmod(h, H, ell);
                    }
                    return false;
                };
                while (!inH(x)) {
                    x = mulmod(x, q, ell);
                    ++f;
                }
                CHECK(s.f == f);
                CHECK(s.e * s.f * s.g == deg);
            }
            auto s = X.splitting(ell);
            CHECK(s.e == deg);
            CHECK(X.count_vanishing(ell) == deg - 1);
        }
    }
}
