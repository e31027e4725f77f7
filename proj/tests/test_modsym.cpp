#include <doctest.h>

#include <random>

#include "mtk/error.hpp"
#include "mtk/modsym.hpp"

using namespace mtk;

namespace {

// Genus of X_0(N) from the classical formula with elliptic points and cusps.
i64 genus_x0(i64 N) {
    i64 m = gamma0_index(N);
    i64 nu2 = 0, nu3 = 0;
    if (N % 4 != 0) {
        nu2 = 1;
        for (auto [q, e] : factorize(N)) nu2 *= (q == 2) ? 1 : 1 + (q % 4 == 1 ? 1 : -1);
    }
    if (N % 9 != 0) {
        nu3 = 1;
        for (auto [q, e] : factorize(N)) nu3 *= (q == 3) ? 1 : 1 + (q % 3 == 1 ? 1 : (q % 3 == 2 ? -1 : 0));
    }
    i64 cusps = 0;
    for (i64 d : divisors(N)) cusps += euler_phi(gcd(d, N / d));
    // 12 g = 12 + m - 3 nu2 - 4 nu3 - 6 c
    return (12 + m - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
}

i64 num_cusps_x0(i64 N) {
    i64 c = 0;
    for (i64 d : divisors(N)) c += euler_phi(gcd(d, N / d));
    return c;
}

}  // namespace

TEST_CASE("P1 list") {
    P1List p(11);
    CHECK(p.size() == 12);
    P1List q(14);
    CHECK(q.size() == 24);
    CHECK(q.index(3, 5) == q.index(9, 1));
    CHECK(q.index(1, 0) == q.index(3, 0));
}

TEST_CASE("dimensions match genus and cusp counts") {
    for (i64 N : {1, 2, 11, 14, 15, 17, 19, 20, 24, 27, 36, 37, 43, 49, 54}) {
        ManinSpace M(N);
        i64 g = genus_x0(N);
        i64 c = num_cusps_x0(N);
        CHECK(M.dim() == 2 * g + c - 1);
        auto S = M.cuspidal_basis();
        CHECK(static_cast<i64>(S.size()) == 2 * g);
        if (M.dim() > 0) CHECK(M.num_cusps() == c);
    }
}

TEST_CASE("Hecke operators commute with each other and with the star involution") {
    for (i64 N : {11, 37, 14}) {
        ManinSpace M(N);
        auto T2 = M.hecke(2), T3 = M.hecke(3), T5 = M.hecke(5), I = M.star();
        for (auto* A : {&T2, &T3, &T5}) {
            for (auto* B : {&T2, &T3, &T5, &I}) {
                RatMatrix x = (*A) * (*B), y = (*B) * (*A);
                for (int i = 0; i < M.dim(); ++i)
                    for (int j = 0; j < M.dim(); ++j) CHECK(x(i, j) == y(i, j));
            }
        }
        // Eisenstein eigenvalue 1 + ell on the boundary image
        RatMatrix B = M.boundary();
        RatMatrix BT = B * T3;
        for (int i = 0; i < B.rows(); ++i)
            for (int j = 0; j < M.dim(); ++j) {
                if (N % 3 != 0) CHECK(BT(i, j) == 4 * B(i, j));
            }
    }
}

TEST_CASE("eigen-symbol identities") {
    std::mt19937_64 rng(2024);
    for (const char* lab : {"11a1", "14a1", "37a1", "17a1"}) {
        auto E = *builtin_curve(lab);
        i64 N = E.conductor();
        for (i64 p : {3, 5}) {
            auto phi = EigenSymbol::from_curve(E, p);
            // p-integral with a unit value
            bool has_unit = false;
            for (const auto* vals : {&phi.plus_values(), &phi.minus_values()}) {
                has_unit = false;
                for (const auto& v : *vals) {
                    CHECK(v.get_den() == 1);
                    if (v != 0 && vp(v, p) == 0) has_unit = true;
                }
                CHECK(has_unit);
            }
            for (int it = 0; it < 60; ++it) {
                i64 den = 1 + static_cast<i64>(rng() % 200);
                i64 num = static_cast<i64>(rng() % 400) - 200;
                if (gcd(num, den) != 1) continue;
                for (int s : {1, -1}) {
                    Rat v = phi.eval(num, den, s);
                    CHECK(phi.eval(num + den, den, s) == v);
                    CHECK(phi.eval(-num, den, s) == s * v);
                    // Hecke relation at small primes
                    for (i64 ell : {2, 3, 5, 7}) {
                        Rat t = 0;
                        for (i64 j = 0; j < ell; ++j) t += phi.eval(num + j * den, den * ell, s);
                        if (N % ell != 0) t += phi.eval(num * ell, den, s);
                        CHECK(t == E.a_ell(ell) * v);
                    }
                }
                // Gamma_0(N) invariance of paths
                i64 c = N * (1 + static_cast<i64>(rng() % 5)), d = 1 + static_cast<i64>(rng() % 50);
                if (gcd(c, d) != 1) continue;
                i64 x, y;
                ext_gcd(d, c, x, y);
                i64 a = x, b = -y;  // a d - b c = 1
                Cusp r0 = Cusp::make(num, den);
                Cusp g0 = Cusp::make(a * num + b * den, c * num + d * den);
                Cusp ginf = Cusp::make(a, c);
                for (int s : {1, -1}) CHECK(phi.eval_path(g0, ginf, s) == phi.eval_path(r0, Cusp{1, 0}, s));
            }
        }
    }
}

TEST_CASE("non-newform eigen-systems are rejected") {
    ManinSpace M(11);
    std::map<i64, i64> a{{2, 3}};
    CHECK_THROWS_AS(EigenSymbol(M, a, 3), Error);
}
