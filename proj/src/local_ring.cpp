#include "mtk/local_ring.hpp"

#include <sstream>

#include "mtk/error.hpp"

namespace mtk {

namespace {

using Poly = std::vector<i64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod_coeffs(Poly a, i64 m) {
    for (auto& x : a) x = mod(x, m);
    trim(a);
    return a;
}

Poly pmul(const Poly& a, const Poly& b, i64 m) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + mulmod(a[i], b[j], m), m);
    trim(r);
    return r;
}

Poly psub(const Poly& a, const Poly& b, i64 m) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], m);
    trim(r);
    return r;
}

// Division with remainder; leading coefficient of b must be a unit mod m.
void pdivmod(Poly a, const Poly& b, i64 m, Poly& q, Poly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    i64 inv = invmod(b.back(), m);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        i64 c = mulmod(a[i], inv, m);
        if (c == 0) continue;
        q[i - b.size() + 1] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[i - b.size() + 1 + j] = mod(a[i - b.size() + 1 + j] - mulmod(c, b[j], m), m);
    }
    trim(a);
    r = a;
    trim(q);
}

Poly prem(const Poly& a, const Poly& b, i64 m) {
    Poly q, r;
    pdivmod(a, b, m, q, r);
    return r;
}

// s a + t b = 1 over F_p for coprime a, b.
void bezout(const Poly& a, const Poly& b, i64 p, Poly& s, Poly& t) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        Poly q, r;
        pdivmod(r0, r1, p, q, r);
        Poly s2 = psub(s0, pmul(q, s1, p), p);
        Poly t2 = psub(t0, pmul(q, t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.size() != 1) fail(ErrorKind::InvalidInput, "bezout: polynomials not coprime");
    i64 inv = invmod(r0[0], p);
    s = pmul(s0, Poly{inv}, p);
    t = pmul(t0, Poly{inv}, p);
}

}  // namespace

std::vector<u64> hensel_factor(i64 d, i64 p, int B) {
    if (d % p == 0) fail(ErrorKind::InvalidInput, "hensel_factor: p divides d");
    Poly phi = pmod_coeffs(cyclotomic_poly(d), p);
    int f = static_cast<int>(mult_order(mod(p, d), d));
    i64 count = 1;
    for (int i = 0; i < f; ++i) {
        count *= p;
        if (count > 5000000) fail(ErrorKind::BoundExceeded, "hensel_factor: residue field too large");
    }
    Poly g0;
    for (i64 idx = 0; idx < count; ++idx) {
        Poly cand(f + 1, 0);
        i64 v = idx;
        for (int i = 0; i < f; ++i) {
            cand[i] = v % p;
            v /= p;
        }
        cand[f] = 1;
        if (prem(phi, cand, p).empty()) {
            g0 = cand;
            break;
        }
    }
    if (g0.empty()) fail(ErrorKind::InvalidInput, "hensel_factor: no factor found");
    Poly h0, r;
    pdivmod(phi, g0, p, h0, r);
    Poly s, t;
    bezout(g0, h0, p, s, t);

    i64 P = ipow(p, B);
    Poly F = pmod_coeffs(cyclotomic_poly(d), P);
    Poly g = g0, h = h0;
    i64 pk = 1;
    for (int k = 1; k < B; ++k) {
        pk *= p;
        Poly e = psub(F, pmul(g, h, P), P);
        for (auto& c : e) {
            if (c % pk != 0) fail(ErrorKind::InvalidInput, "hensel_factor: lifting failed");
            c = mod(c / pk, p);
        }
        trim(e);
        Poly dg = prem(pmul(t, e, p), g0, p);
        Poly dh = prem(pmul(s, e, p), h0, p);
        g.resize(std::max(g.size(), dg.size()), 0);
        h.resize(std::max(h.size(), dh.size()), 0);
        for (std::size_t i = 0; i < dg.size(); ++i) g[i] = mod(g[i] + mulmod(pk, dg[i], P), P);
        for (std::size_t i = 0; i < dh.size(); ++i) h[i] = mod(h[i] + mulmod(pk, dh[i], P), P);
    }
    std::vector<u64> out(f + 1, 0);
    for (int i = 0; i <= f && i < static_cast<int>(g.size()); ++i) out[i] = static_cast<u64>(g[i]);
    out[f] = 1;
    return out;
}

LocalRing::LocalRing(i64 p, i64 d, int s, int B) : p_(p), d_(d), s_(s), B_(B) {
    if (p < 3 || !is_prime(p)) fail(ErrorKind::InvalidInput, "LocalRing: p must be an odd prime");
    if (d < 1 || d % p == 0 || s < 0) fail(ErrorKind::InvalidInput, "LocalRing: bad (d, s)");
    if (B < 1) fail(ErrorKind::InvalidInput, "LocalRing: precision must be positive");
    unsigned __int128 P = 1;
    for (int i = 0; i < B; ++i) {
        P *= static_cast<unsigned>(p);
        if (P >= (static_cast<unsigned __int128>(1) << 62))
            fail(ErrorKind::InvalidInput, "LocalRing: p^B must stay below 2^62");
    }
    P_ = static_cast<u64>(P);
    g_ = hensel_factor(d, p, B);
    f_ = static_cast<int>(g_.size()) - 1;
    i64 ps = ipow(p, s);
    e_ = static_cast<int>(euler_phi(ps));

    // E(pi) = Phi_{p^s}(1 + pi)
    std::vector<i64> phi = cyclotomic_poly(ps);
    int deg = static_cast<int>(phi.size()) - 1;
    std::vector<std::vector<u64>> binom(deg + 1, std::vector<u64>(deg + 1, 0));
    for (int m = 0; m <= deg; ++m) {
        binom[m][0] = 1;
        for (int j = 1; j <= m; ++j) binom[m][j] = addm(binom[m - 1][j - 1], j <= m - 1 ? binom[m - 1][j] : 0);
    }
    E_.assign(deg + 1, 0);
    for (int m = 0; m <= deg; ++m)
        for (int j = 0; j <= m; ++j) E_[j] = addm(E_[j], mulm(reduce(phi[m]), binom[m][j]));

    i64 x, y;
    ext_gcd(ps, d, x, y);
    u_ = x;
    v_ = y;

    int n = rank();
    std::vector<u64> cur(n, 0), nxt(n, 0), gen(n, 0);
    cur[0] = 1;
    if (f_ > 1) gen[1 * e_] = 1;
    else gen[0] = subm(0, g_[0]);  // x = -g_0 when f = 1
    xpow_.reserve(d);
    for (i64 k = 0; k < d; ++k) {
        xpow_.push_back(cur);
        mul(cur.data(), gen.data(), nxt.data());
        cur = nxt;
    }
    std::fill(cur.begin(), cur.end(), 0);
    std::fill(gen.begin(), gen.end(), 0);
    cur[0] = 1;
    gen[0] = 1;
    if (e_ > 1) gen[1] = 1;  // pi = 0 when e = 1
    zppow_.reserve(ps);
    for (i64 k = 0; k < ps; ++k) {
        zppow_.push_back(cur);
        mul(cur.data(), gen.data(), nxt.data());
        cur = nxt;
    }
}

std::shared_ptr<const LocalRing> LocalRing::make(i64 p, i64 d, int s, int B) {
    return std::shared_ptr<const LocalRing>(new LocalRing(p, d, s, B));
}

u64 LocalRing::reduce(i64 v) const {
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(P_);
    if (r < 0) r += P_;
    return static_cast<u64>(r);
}

u64 LocalRing::reduce(const BigInt& v) const {
    BigInt P;
    mpz_import(P.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &P_);
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
    u64 out = 0;
    std::size_t cnt = 0;
    mpz_export(&out, &cnt, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return out;
}

void LocalRing::add(const u64* a, const u64* b, u64* out) const {
    for (int i = 0; i < rank(); ++i) out[i] = addm(a[i], b[i]);
}

void LocalRing::sub(const u64* a, const u64* b, u64* out) const {
    for (int i = 0; i < rank(); ++i) out[i] = subm(a[i], b[i]);
}

void LocalRing::scale(const u64* a, u64 k, u64* out) const {
    for (int i = 0; i < rank(); ++i) out[i] = mulm(a[i], k);
}

void LocalRing::mul(const u64* a, const u64* b, u64* out) const {
    const int f = f_, e = e_;
    if (f == 1 && e == 1) {
        out[0] = mulm(a[0], b[0]);
        return;
    }
    const int gf = 2 * f - 1, ge = 2 * e - 1;
    std::vector<u64> grid(static_cast<std::size_t>(gf) * ge, 0);
    for (int i1 = 0; i1 < f; ++i1)
        for (int j1 = 0; j1 < e; ++j1) {
            u64 x = a[i1 * e + j1];
            if (!x) continue;
            for (int i2 = 0; i2 < f; ++i2)
                for (int j2 = 0; j2 < e; ++j2) {
                    u64 y = b[i2 * e + j2];
                    if (!y) continue;
                    u64& c = grid[(i1 + i2) * ge + (j1 + j2)];
                    c = addm(c, mulm(x, y));
                }
        }
    for (int i = 0; i < gf; ++i)
        for (int j = ge - 1; j >= e; --j) {
            u64 c = grid[i * ge + j];
            if (!c) continue;
            grid[i * ge + j] = 0;
            for (int k = 0; k < e; ++k) {
                u64& t = grid[i * ge + j - e + k];
                t = subm(t, mulm(E_[k], c));
            }
        }
    for (int i = gf - 1; i >= f; --i)
        for (int j = 0; j < e; ++j) {
            u64 c = grid[i * ge + j];
            if (!c) continue;
            grid[i * ge + j] = 0;
            for (int k = 0; k < f; ++k) {
                u64& t = grid[(i - f + k) * ge + j];
                t = subm(t, mulm(g_[k], c));
            }
        }
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < e; ++j) out[i * e + j] = grid[i * ge + j];
}

int LocalRing::vp_res(u64 c) const {
    if (c == 0) return B_;
    int v = 0;
    u64 p = static_cast<u64>(p_);
    while (c % p == 0) {
        c /= p;
        ++v;
    }
    return v;
}

bool LocalRing::is_zero(const u64* a) const {
    for (int i = 0; i < rank(); ++i)
        if (a[i]) return false;
    return true;
}

Rat LocalRing::valuation(const u64* a) const {
    if (is_zero(a)) fail(ErrorKind::PrecisionExhausted, "valuation: element vanishes at the working precision");
    Rat best = B_ + 1;
    for (int j = 0; j < e_; ++j) {
        int v = B_;
        for (int i = 0; i < f_; ++i) v = std::min(v, vp_res(a[i * e_ + j]));
        if (v == B_) continue;
        Rat cand(v * e_ + j, e_);
        cand.canonicalize();
        if (cand < best) best = cand;
    }
    return best;
}

LocalElem LocalRing::zero() const { return LocalElem(shared_from_this(), std::vector<u64>(rank(), 0)); }

LocalElem LocalRing::one() const { return from_int(1); }

LocalElem LocalRing::from_int(i64 v) const {
    std::vector<u64> c(rank(), 0);
    c[0] = reduce(v);
    return LocalElem(shared_from_this(), std::move(c));
}

LocalElem LocalRing::from_int(const BigInt& v) const {
    std::vector<u64> c(rank(), 0);
    c[0] = reduce(v);
    return LocalElem(shared_from_this(), std::move(c));
}

LocalElem LocalRing::from_rat(const Rat& v) const {
    BigInt den = v.get_den();
    BigInt pp = static_cast<unsigned long>(p_);
    if (mpz_divisible_p(den.get_mpz_t(), pp.get_mpz_t()))
        fail(ErrorKind::NotIntegral, "from_rat: denominator divisible by p");
    BigInt P;
    mpz_import(P.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &P_);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    BigInt num = v.get_num();
    return from_int(BigInt(num * inv));
}

LocalElem LocalRing::x_pow(i64 k) const { return LocalElem(shared_from_this(), xpow_[mod(k, d_)]); }

LocalElem LocalRing::zeta_p_pow(i64 k) const {
    return LocalElem(shared_from_this(), zppow_[mod(k, static_cast<i64>(zppow_.size()))]);
}

LocalElem LocalRing::root_of_unity(i64 k, i64 order) const {
    i64 ps = static_cast<i64>(zppow_.size());
    i64 L = d_ * ps;
    if (L % order != 0) fail(ErrorKind::InvalidInput, "root_of_unity: order does not divide d p^s");
    i64 K = mod(k, order) * (L / order);
    i64 a = mod(mulmod(K, u_, d_), d_);
    i64 b = mod(mulmod(K, v_, ps), ps);
    return x_pow(a) * zeta_p_pow(b);
}

LocalElem& LocalElem::operator+=(const LocalElem& o) {
    ring_->add(c_.data(), o.c_.data(), c_.data());
    return *this;
}

LocalElem& LocalElem::operator-=(const LocalElem& o) {
    ring_->sub(c_.data(), o.c_.data(), c_.data());
    return *this;
}

LocalElem operator*(const LocalElem& a, const LocalElem& b) {
    std::vector<u64> out(a.c_.size());
    a.ring_->mul(a.c_.data(), b.c_.data(), out.data());
    return LocalElem(a.ring_, std::move(out));
}

LocalElem LocalElem::operator-() const {
    LocalElem r = ring_->zero();
    ring_->sub(r.c_.data(), c_.data(), r.c_.data());
    return r;
}

bool LocalElem::is_zero() const { return ring_->is_zero(c_.data()); }

Rat LocalElem::valuation() const { return ring_->valuation(c_.data()); }

bool LocalElem::in_base() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

std::vector<i64> LocalElem::residue() const {
    std::vector<i64> r(ring_->f());
    for (int i = 0; i < ring_->f(); ++i) r[i] = static_cast<i64>(c_[i * ring_->e()] % static_cast<u64>(ring_->p()));
    return r;
}

std::string LocalElem::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
}

}  // namespace mtk
