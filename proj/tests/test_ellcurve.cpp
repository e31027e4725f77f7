#include <doctest.h>

#include <cmath>

#include "mtk/ellcurve.hpp"
#include "mtk/error.hpp"

using namespace mtk;

namespace {

// Coefficients of q * prod (1 - q^n)^2 (1 - q^{11 n})^2, the weight two
// newform of level 11, computed directly from the product.
std::vector<i64> eta_product_11(int bound) {
    std::vector<i64> c(bound + 1, 0);
    c[0] = 1;
    auto mul_factor = [&](int step) {
        for (int k = bound; k >= step; --k) c[k] -= c[k - step];
    };
    for (int n = 1; n <= bound; ++n) {
        mul_factor(n);
        mul_factor(n);
        if (11 * n <= bound) {
            mul_factor(11 * n);
            mul_factor(11 * n);
        }
    }
    std::vector<i64> a(bound + 2, 0);
    for (int k = 0; k <= bound; ++k) a[k + 1] = c[k];
    return a;
}

}  // namespace

TEST_CASE("invariants of 11a1") {
    auto E = *builtin_curve("11a1");
    CHECK(E.discriminant() == -161051);
    CHECK(E.c4() == 496);
    CHECK(E.c6() == 20008);
    CHECK(E.b2() == -4);
}

TEST_CASE("a_ell of 11a1 matches the eta product") {
    auto E = *builtin_curve("11a1");
    auto a = eta_product_11(400);
    for (i64 l = 2; l < 400; ++l) {
        if (!is_prime(l)) continue;
        CHECK(E.a_ell(l) == a[l]);
    }
}

TEST_CASE("Hasse bound and multiplicative types") {
    for (const auto& lab : builtin_curve_labels()) {
        auto E = *builtin_curve(lab);
        for (i64 l = 2; l < 500; ++l) {
            if (!is_prime(l)) continue;
            auto info = E.classify(l);
            if (info.kind == Reduction::Good) {
                CHECK(static_cast<double>(info.a_ell * info.a_ell) <= 4.0 * l);
            } else if (info.kind != Reduction::Additive) {
                // counting points on the nodal cubic gives the same sign
                CHECK(l + 1 - E.count_points(l) == info.a_ell);
            }
        }
    }
    CHECK(builtin_curve("11a1")->classify(11).kind == Reduction::Split);
    CHECK(builtin_curve("37a1")->classify(37).kind == Reduction::Nonsplit);
    CHECK(builtin_curve("14a1")->classify(2).kind == Reduction::Nonsplit);
    CHECK(builtin_curve("17a1")->a_ell(3) == 0);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(EllipticCurve({0, 0, 0, 0, 0}, 1), Error);
    CHECK_THROWS_AS(EllipticCurve({0, -1, 1, -10, -20}, 13), Error);
    // 14a1 without the reduction type at 2
    try {
        EllipticCurve({1, 0, 1, 4, -6}, 14);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SmallPrimeUnsupported);
    }
    // wrong multiplicative type at 2
    CHECK_THROWS_AS(EllipticCurve({1, 0, 1, 4, -6}, 14, {{2, Reduction::Split}}), Error);
}

TEST_CASE("point counts over extensions") {
    auto E = *builtin_curve("37a1");
    for (i64 l : {2, 3, 5, 7}) {
        i64 a = E.a_ell(l);
        CHECK(E.count_points_ext(l, 1) == E.count_points(l));
        // s_f = alpha^f + beta^f
        i64 s0 = 2, s1 = a;
        i64 q = l;
        for (int f = 2; f <= 4 && q * l <= 100000; ++f) {
            i64 s2 = a * s1 - l * s0;
            q *= l;
            CHECK(E.count_points_ext(l, f) == q + 1 - s2);
            s0 = s1;
            s1 = s2;
        }
    }
}

TEST_CASE("local p-torsion agrees with brute-force counts") {
    for (const auto& lab : {"11a1", "37a1", "19a1"}) {
        auto E = *builtin_curve(lab);
        for (i64 p : {3, 5, 7}) {
            for (i64 l : {2, 3, 5, 7, 13}) {
                if (l == p || E.conductor() % l == 0) continue;
                for (int f = 1; f <= 4; ++f) {
                    if (std::pow(static_cast<double>(l), f) > 100000) break;
                    bool brute = E.count_points_ext(l, f) % p == 0;
                    CHECK(local_p_torsion(E, l, f, p) == brute);
                }
            }
        }
    }
}

TEST_CASE("frobenius root order") {
    Fp2 a = frobenius_root(2, 67, 3);
    CHECK(((a * a) - Fp2{3, a.r, 2, 0} * a + Fp2{3, a.r, 67 % 3, 0}) == Fp2{3, a.r, 0, 0});
    CHECK((a.pow(fp2_order(a))).is_one());
}
