#include <doctest.h>

#include "mtk/error.hpp"
#include "mtk/kida.hpp"

using namespace mtk;

namespace {

KidaInstance curve_instance(const std::string& label, i64 p, const CharGroup& K, const CharGroup& L, int n) {
    auto E = *builtin_curve(label);
    KidaInstance I;
    I.sym = std::make_shared<const EigenSymbol>(EigenSymbol::from_curve(E, p));
    I.curve = E;
    I.p = p;
    I.K = K;
    I.L = L;
    I.n = n;
    return I;
}

DirichletChar cubic_mod7() { return CharGroup::cyclic_subfield(7, 3).chars().back(); }

}  // namespace

TEST_CASE("Kida with K = L is the identity") {
    auto X = CharGroup::cyclic_subfield(7, 3);
    auto r = verify_kida(curve_instance("11a1", 3, X, X, 1));
    CHECK(r.degree_inf == 1);
    CHECK(r.primes.empty());
    CHECK(r.inv_L.lambda == r.inv_K.lambda);
    CHECK(r.verdict == KidaVerdict::Equal);
}

TEST_CASE("Kida over a cubic field without corrections") {
    for (int n : {1, 2}) {
        auto r = verify_kida(curve_instance("11a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(7, 3), n));
        CHECK(r.degree_inf == 3);
        CHECK(r.p1_total == 0);
        CHECK(r.p2_total == 0);
        CHECK(r.inv_K.mu == 0);
        CHECK(r.inv_L.mu == 0);
        CHECK(r.inv_L.lambda == 3 * r.inv_K.lambda);
        CHECK(r.all_f_rel_one);
        CHECK(r.verdict == KidaVerdict::Equal);
    }
}

TEST_CASE("Kida with a good prime carrying p-torsion") {
    auto E = *builtin_curve("11a1");
    CHECK(local_p_torsion(E, 67, 1, 3));
    auto r = verify_kida(curve_instance("11a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(67, 3), 2));
    REQUIRE(r.primes.size() == 1);
    CHECK(r.primes[0].ell == 67);
    CHECK(r.primes[0].delta == 2);
    CHECK(r.primes[0].e_rel == 3);
    CHECK(r.primes[0].f_rel == 1);
    CHECK(r.p2_total == 4);
    CHECK(r.p1_total == 0);
    CHECK(r.inv_L.lambda == 4);
    CHECK(r.rhs == 4);
    CHECK(r.verdict == KidaVerdict::Equal);
}

TEST_CASE("Kida inside the cyclotomic tower needs n large enough") {
    auto K = CharGroup::cyclotomic_layer(3, 1);
    auto L = CharGroup::cyclotomic_layer(3, 2);
    try {
        verify_kida(curve_instance("11a1", 3, K, L, 1));
        FAIL("expected KpViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::KpViolated);
    }
    auto r = verify_kida(curve_instance("11a1", 3, K, L, 2));
    CHECK(r.degree_inf == 1);
    CHECK(r.primes.empty());
    CHECK(r.verdict == KidaVerdict::Equal);
}

TEST_CASE("additive reduction that becomes good is rejected") {
    // y^2 = x^3 + 49: potentially good at 7 with v_7(disc) = 4, so good
    // reduction appears after a cubic ramified extension.
    EllipticCurve E({0, 0, 0, 0, 49}, 4 * 27 * 49, {{2, Reduction::Additive}, {3, Reduction::Additive}});
    CHECK(vp(E.discriminant(), 7) == 4);
    auto I = curve_instance("11a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(7, 3), 1);
    I.curve = E;
    try {
        validate_instance(I);
        FAIL("expected AddViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AddViolated);
    }
    // 49a1 has v_7(disc) = 3 and needs e divisible by 4.
    I.curve = EllipticCurve({1, -1, 0, -2, -1}, 49);
    CHECK_NOTHROW(validate_instance(I));
}

TEST_CASE("multiplicative primes in P1 and the wrap of Lambda_n") {
    // 14a1 at p = 3 is Eisenstein: lambda_n = p^n - 1, so the right-hand side
    // exceeds the rank of Lambda_n and the product over L wraps.
    auto r = verify_kida(curve_instance("14a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(7, 3), 2));
    REQUIRE(r.primes.size() == 1);
    CHECK(r.primes[0].reduction == "split");
    CHECK(r.primes[0].delta == 1);
    CHECK(r.p1_total == 2);
    CHECK(r.inv_K.lambda == 8);
    CHECK(r.rhs >= 9);
    CHECK(r.inv_L.mu > 0);
    CHECK(r.verdict == KidaVerdict::Unequal);
}

TEST_CASE("vanishing descent gives infinite invariants") {
    auto r = verify_kida(curve_instance("37a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(37, 3), 1));
    CHECK(r.inv_L.infinite);
    CHECK(r.inv_K.lambda == 1);
    CHECK(r.verdict == KidaVerdict::Unequal);
}

TEST_CASE("eigenform conventions against the curve") {
    auto I = curve_instance("14a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(7, 3), 2);
    auto curve = build_p1_p2(I);
    I.curve.reset();
    I.N = 14;
    I.a = {{7, 1}};
    I.convention = PrimeConvention::Derived;
    auto derived = build_p1_p2(I);
    I.convention = PrimeConvention::Displayed;
    auto displayed = build_p1_p2(I);
    REQUIRE(curve.size() == 1);
    REQUIRE(derived.size() == 1);
    REQUIRE(displayed.size() == 1);
    CHECK(derived[0].delta == curve[0].delta);
    CHECK(displayed[0].delta != curve[0].delta);

    auto J = curve_instance("11a1", 3, CharGroup::trivial_group(), CharGroup::cyclic_subfield(67, 3), 2);
    auto c2 = build_p1_p2(J);
    J.curve.reset();
    J.N = 11;
    J.a = {{67, builtin_curve("11a1")->a_ell(67)}};
    J.convention = PrimeConvention::Derived;
    auto d2 = build_p1_p2(J);
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].delta == c2[0].delta);
    CHECK(parse_convention("derived") == PrimeConvention::Derived);
    CHECK_THROWS_AS(parse_convention("other"), Error);
}

TEST_CASE("tower consistency") {
    SUBCASE("cyclotomic layers") {
        auto base = curve_instance("11a1", 3, CharGroup::trivial_group(), CharGroup::trivial_group(), 2);
        auto t = verify_tower_consistency(base, CharGroup::trivial_group(), CharGroup::cyclotomic_layer(3, 1),
                                          CharGroup::cyclotomic_layer(3, 2));
        CHECK(t.corrections_consistent);
        CHECK(t.lambda_consistent);
    }
    SUBCASE("cubic field times Q_(1)") {
        auto base = curve_instance("11a1", 3, CharGroup::trivial_group(), CharGroup::trivial_group(), 2);
        auto K = CharGroup::cyclic_subfield(7, 3);
        auto L = CharGroup::generated_by({cubic_mod7(), DirichletChar::canonical(3, 1)});
        auto t = verify_tower_consistency(base, CharGroup::trivial_group(), K, L);
        CHECK(t.degree_LK == 1);
        CHECK(t.corrections_consistent);
        CHECK(t.lambda_consistent);
    }
}

TEST_CASE("signed growth for a supersingular curve") {
    auto E = *builtin_curve("17a1");
    REQUIRE(E.a_ell(3) == 0);
    auto sym = EigenSymbol::from_curve(E, 3);
    auto r = signed_growth_check(sym, 0, 3, DirichletChar::trivial(), {1, 2, 3});
    CHECK(r.mu_zero);
    CHECK(r.q == std::vector<i64>{q_n(3, 1), q_n(3, 2), q_n(3, 3)});
    CHECK(r.constant);
}
