#include "mtk/ellcurve.hpp"

#include "mtk/error.hpp"

namespace mtk {

const char* reduction_name(Reduction r) {
    switch (r) {
        case Reduction::Good: return "good";
        case Reduction::Split: return "split";
        case Reduction::Nonsplit: return "nonsplit";
        case Reduction::Additive: return "additive";
    }
    return "?";
}

Reduction parse_reduction(const std::string& s) {
    if (s == "good") return Reduction::Good;
    if (s == "split") return Reduction::Split;
    if (s == "nonsplit") return Reduction::Nonsplit;
    if (s == "additive") return Reduction::Additive;
    fail(ErrorKind::InvalidInput, "unknown reduction type '" + s + "'");
}

namespace {

bool divides(i64 l, const BigInt& x) { return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(l)) != 0; }

i64 mod_big(const BigInt& x, i64 l) { return static_cast<i64>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(l))); }

// Small prime field extension F_{l^f}; elements encoded as base-l digit
// strings, multiplication through discrete log tables.
class SmallField {
public:
    SmallField(i64 l, int f) : l_(l), f_(f), q_(ipow(l, f)) {
        if (q_ > 100000) fail(ErrorKind::BoundExceeded, "SmallField: field too large");
        std::vector<i64> mpoly = find_irreducible();
        // find a generator
        for (i64 g = 1; g < q_; ++g) {
            exp_.assign(q_ - 1, 0);
            log_.assign(q_, -1);
            i64 x = 1;
            bool ok = true;
            for (i64 k = 0; k < q_ - 1; ++k) {
                if (log_[x] >= 0) {
                    ok = false;
                    break;
                }
                exp_[k] = x;
                log_[x] = k;
                x = polymul(x, g, mpoly);
            }
            if (ok && x == 1) return;
        }
        fail(ErrorKind::InvalidInput, "SmallField: no generator");
    }

    i64 size() const { return q_; }
    i64 add(i64 a, i64 b) const {
        i64 r = 0, pw = 1;
        for (int i = 0; i < f_; ++i) {
            r += ((a % l_ + b % l_) % l_) * pw;
            a /= l_;
            b /= l_;
            pw *= l_;
        }
        return r;
    }
    i64 neg(i64 a) const {
        i64 r = 0, pw = 1;
        for (int i = 0; i < f_; ++i) {
            r += ((l_ - a % l_) % l_) * pw;
            a /= l_;
            pw *= l_;
        }
        return r;
    }
    i64 mul(i64 a, i64 b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    i64 inv(i64 a) const { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }
    i64 from_int(i64 v) const { return mod(v, l_); }
    bool is_square(i64 a) const { return a == 0 || log_[a] % 2 == 0; }
    i64 trace2(i64 a) const {
        // absolute trace for characteristic 2
        i64 t = 0, x = a;
        for (int i = 0; i < f_; ++i) {
            t = add(t, x);
            x = mul(x, x);
        }
        return t;
    }

private:
    i64 polymul(i64 a, i64 b, const std::vector<i64>& m) const {
        std::vector<i64> da(f_), db(f_), prod(2 * f_, 0);
        for (int i = 0; i < f_; ++i) {
            da[i] = a % l_;
            a /= l_;
            db[i] = b % l_;
            b /= l_;
        }
        for (int i = 0; i < f_; ++i)
            for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % l_;
        for (int i = 2 * f_ - 1; i >= f_; --i) {
            i64 c = prod[i];
            if (!c) continue;
            prod[i] = 0;
            for (int k = 0; k < f_; ++k) prod[i - f_ + k] = mod(prod[i - f_ + k] - c * m[k], l_);
        }
        i64 r = 0, pw = 1;
        for (int i = 0; i < f_; ++i) {
            r += prod[i] * pw;
            pw *= l_;
        }
        return r;
    }

    std::vector<i64> find_irreducible() const {
        // monic degree f with no roots in any proper subfield: test by
        // checking it has no factor of degree <= f/2 via brute force.
        for (i64 idx = 0; idx < q_; ++idx) {
            std::vector<i64> m(f_ + 1);
            i64 v = idx;
            for (int i = 0; i < f_; ++i) {
                m[i] = v % l_;
                v /= l_;
            }
            m[f_] = 1;
            if (irreducible(m)) return m;
        }
        fail(ErrorKind::InvalidInput, "SmallField: no irreducible polynomial");
    }

    bool irreducible(const std::vector<i64>& m) const {
        int deg = static_cast<int>(m.size()) - 1;
        for (int dd = 1; dd <= deg / 2; ++dd) {
            i64 cnt = ipow(l_, dd);
            for (i64 idx = 0; idx < cnt; ++idx) {
                std::vector<i64> d(dd + 1);
                i64 v = idx;
                for (int i = 0; i < dd; ++i) {
                    d[i] = v % l_;
                    v /= l_;
                }
                d[dd] = 1;
                std::vector<i64> r = m;
                for (int i = deg; i >= dd; --i) {
                    i64 c = mod(r[i], l_);
                    if (!c) continue;
                    for (int k = 0; k <= dd; ++k) r[i - dd + k] = mod(r[i - dd + k] - c * d[k], l_);
                }
                bool zero = true;
                for (int i = 0; i < dd; ++i)
                    if (mod(r[i], l_) != 0) zero = false;
                if (zero) return false;
            }
        }
        return true;
    }

    i64 l_;
    int f_;
    i64 q_;
    std::vector<i64> exp_, log_;
};

}  // namespace

EllipticCurve::EllipticCurve(std::vector<i64> a, i64 N, std::map<i64, Reduction> small, std::string label)
    : label_(std::move(label)), a_(std::move(a)), N_(N), small_(std::move(small)) {
    if (a_.size() != 5) fail(ErrorKind::InvalidInput, "curve needs five a-invariants");
    if (N_ < 1) fail(ErrorKind::InvalidInput, "conductor must be positive");
    BigInt a1 = a_[0], a2 = a_[1], a3 = a_[2], a4 = a_[3], a6 = a_[4];
    b2_ = a1 * a1 + 4 * a2;
    b4_ = 2 * a4 + a1 * a3;
    b6_ = a3 * a3 + 4 * a6;
    b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0) fail(ErrorKind::InvalidInput, "singular Weierstrass model");

    BigInt rest = disc_;
    for (auto [l, eN] : factorize(N_)) {
        if (!divides(l, disc_)) fail(ErrorKind::BadReduction, "conductor prime " + std::to_string(l) + " does not divide the discriminant");
        int vd = vp(disc_, l);
        for (int i = 0; i < vd; ++i) rest /= static_cast<unsigned long>(l);
        if (l >= 5) {
            bool nonminimal = vd >= 12 && (c4_ == 0 || vp(c4_, l) >= 4) && (c6_ == 0 || vp(c6_, l) >= 6);
            if (nonminimal) fail(ErrorKind::BadReduction, "model not minimal at " + std::to_string(l));
            int expect = divides(l, c4_) ? 2 : 1;
            if (eN != expect) fail(ErrorKind::BadReduction, "conductor exponent mismatch at " + std::to_string(l));
        } else {
            auto it = small_.find(l);
            if (it == small_.end())
                fail(ErrorKind::SmallPrimeUnsupported, "reduction type at " + std::to_string(l) + " must be supplied");
            Reduction r = it->second;
            if (r == Reduction::Good) fail(ErrorKind::BadReduction, "prime dividing the conductor marked good");
            if ((r == Reduction::Additive) != (eN >= 2))
                fail(ErrorKind::BadReduction, "conductor exponent inconsistent with reduction type at " + std::to_string(l));
        }
    }
    if (rest != 1 && rest != -1) fail(ErrorKind::BadReduction, "discriminant has primes outside the conductor");
    for (auto& [l, r] : small_) {
        if (l != 2 && l != 3) fail(ErrorKind::InvalidInput, "small_prime_reduction only describes 2 and 3");
        if (N_ % l != 0 && r != Reduction::Good) fail(ErrorKind::BadReduction, "bad reduction claimed at a good prime");
        if (r == Reduction::Split || r == Reduction::Nonsplit) {
            i64 ap = l + 1 - count_points(l);
            if (ap != (r == Reduction::Split ? 1 : -1))
                fail(ErrorKind::BadReduction, "multiplicative reduction type contradicts the point count");
        }
    }
}

i64 EllipticCurve::count_points(i64 l, i64 bound) const {
    if (l > bound) fail(ErrorKind::BoundExceeded, "point counting bound exceeded");
    if (!is_prime(l)) fail(ErrorKind::InvalidInput, "count_points: ell must be prime");
    if (l == 2) {
        i64 cnt = 1;
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y) {
                i64 lhs = y * y + a_[0] * x * y + a_[2] * y;
                i64 rhs = x * x * x + a_[1] * x * x + a_[3] * x + a_[4];
                if (mod(lhs - rhs, 2) == 0) ++cnt;
            }
        return cnt;
    }
    std::vector<signed char> chi(l, -1);
    chi[0] = 0;
    for (i64 y = 1; y < l; ++y) chi[mulmod(y, y, l)] = 1;
    i64 B2 = mod_big(b2_, l), B4 = mod_big(b4_, l), B6 = mod_big(b6_, l);
    i64 cnt = 1;
    for (i64 x = 0; x < l; ++x) {
        i64 v = (4 * mulmod(mulmod(x, x, l), x, l) + mulmod(B2, mulmod(x, x, l), l) + 2 * mulmod(B4, x, l) + B6) % l;
        cnt += 1 + chi[v];
    }
    return cnt;
}

ReductionInfo EllipticCurve::classify(i64 l) const {
    if (!is_prime(l)) fail(ErrorKind::InvalidInput, "classify: ell must be prime");
    if (N_ % l != 0) return {Reduction::Good, l + 1 - count_points(l)};
    if (l < 5) {
        auto it = small_.find(l);
        if (it == small_.end()) fail(ErrorKind::SmallPrimeUnsupported, "no reduction data at " + std::to_string(l));
        Reduction r = it->second;
        return {r, r == Reduction::Split ? 1 : r == Reduction::Nonsplit ? -1 : 0};
    }
    if (divides(l, c4_)) return {Reduction::Additive, 0};
    BigInt m = -c6_;
    bool split = legendre(mod_big(m, l), l) == 1;
    return {split ? Reduction::Split : Reduction::Nonsplit, split ? 1 : -1};
}

i64 EllipticCurve::a_ell(i64 l, i64 bound) const {
    if (l > bound) fail(ErrorKind::BoundExceeded, "a_ell bound exceeded");
    return classify(l).a_ell;
}

i64 EllipticCurve::count_points_ext(i64 l, int f) const {
    if (N_ % l == 0) fail(ErrorKind::BadReduction, "count_points_ext needs good reduction");
    SmallField F(l, f);
    i64 cnt = 1;
    auto el = [&](i64 v) { return F.from_int(v); };
    for (i64 x = 0; x < F.size(); ++x) {
        i64 x2 = F.mul(x, x), x3 = F.mul(x2, x);
        if (l == 2) {
            i64 u = F.add(F.mul(el(a_[0]), x), el(a_[2]));
            i64 w = F.add(F.add(x3, F.mul(el(a_[1]), x2)), F.add(F.mul(el(a_[3]), x), el(a_[4])));
            if (u == 0) cnt += 1;
            else {
                i64 uu = F.inv(F.mul(u, u));
                if (F.trace2(F.mul(w, uu)) == 0) cnt += 2;
            }
        } else {
            i64 D = F.add(F.add(F.mul(el(4), x3), F.mul(el(mod_big(b2_, l)), x2)),
                          F.add(F.mul(el(2 * mod_big(b4_, l)), x), el(mod_big(b6_, l))));
            cnt += D == 0 ? 1 : (F.is_square(D) ? 2 : 0);
        }
    }
    return cnt;
}

Fp2 Fp2::operator*(const Fp2& o) const {
    i64 na = mod(mulmod(a, o.a, p) + mulmod(mulmod(b, o.b, p), r, p), p);
    i64 nb = mod(mulmod(a, o.b, p) + mulmod(b, o.a, p), p);
    return {p, r, na, nb};
}

Fp2 Fp2::operator+(const Fp2& o) const { return {p, r, mod(a + o.a, p), mod(b + o.b, p)}; }
Fp2 Fp2::operator-(const Fp2& o) const { return {p, r, mod(a - o.a, p), mod(b - o.b, p)}; }

Fp2 Fp2::pow(i64 e) const {
    Fp2 res{p, r, 1 % p, 0}, base = *this;
    while (e > 0) {
        if (e & 1) res = res * base;
        base = base * base;
        e >>= 1;
    }
    return res;
}

i64 fp2_order(const Fp2& x) {
    if (x.a == 0 && x.b == 0) fail(ErrorKind::ZeroInput, "order of zero");
    i64 ord = x.p * x.p - 1;
    for (auto [q, e] : factorize(ord)) {
        for (int i = 0; i < e; ++i) {
            if (x.pow(ord / q).is_one()) ord /= q;
            else break;
        }
    }
    return ord;
}

Fp2 frobenius_root(i64 a_ell, i64 ell, i64 p, i64 chi) {
    i64 r = 2;
    while (legendre(r, p) != -1) ++r;
    i64 c = mulmod(mod(ell, p), mod(chi, p), p);
    i64 disc = mod(mulmod(a_ell, a_ell, p) - 4 * c, p);
    i64 inv2 = invmod(2, p);
    if (legendre(disc, p) >= 0) {
        i64 s = sqrt_mod(disc, p);
        return {p, r, mulmod(mod(a_ell + s, p), inv2, p), 0};
    }
    // disc = r * t^2
    i64 t2 = mulmod(disc, invmod(r, p), p);
    i64 t = sqrt_mod(t2, p);
    return {p, r, mulmod(mod(a_ell, p), inv2, p), mulmod(t, inv2, p)};
}

bool local_p_torsion(const EllipticCurve& E, i64 ell, i64 f, i64 p) {
    if (E.conductor() % ell == 0) fail(ErrorKind::BadReduction, "local_p_torsion needs good reduction");
    i64 a = E.a_ell(ell);
    Fp2 alpha = frobenius_root(a, ell, p);
    Fp2 beta = Fp2{p, alpha.r, mod(a, p), 0} - alpha;
    Fp2 one{p, alpha.r, 1, 0};
    Fp2 prod = (one - alpha.pow(f)) * (one - beta.pow(f));
    return prod.a == 0 && prod.b == 0;
}

std::optional<EllipticCurve> builtin_curve(const std::string& label) {
    using R = Reduction;
    if (label == "11a1") return EllipticCurve({0, -1, 1, -10, -20}, 11, {}, label);
    if (label == "14a1") return EllipticCurve({1, 0, 1, 4, -6}, 14, {{2, R::Nonsplit}}, label);
    if (label == "17a1") return EllipticCurve({1, -1, 1, -1, -14}, 17, {}, label);
    if (label == "19a1") return EllipticCurve({0, 1, 1, -9, -15}, 19, {}, label);
    if (label == "37a1") return EllipticCurve({0, 0, 1, -1, 0}, 37, {}, label);
    if (label == "43a1") return EllipticCurve({0, 1, 1, 0, 0}, 43, {}, label);
    if (label == "53a1") return EllipticCurve({1, -1, 1, 0, 0}, 53, {}, label);
    return std::nullopt;
}

std::vector<std::string> builtin_curve_labels() { return {"11a1", "14a1", "17a1", "19a1", "37a1", "43a1", "53a1"}; }

}  // namespace mtk
