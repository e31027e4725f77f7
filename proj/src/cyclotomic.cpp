#include "mtk/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mtk/error.hpp"
#include "mtk/local_ring.hpp"

namespace mtk {

namespace {

// Basis expansions of z^0 .. z^{m-1} modulo Phi_m.
std::vector<std::vector<i64>> power_table(i64 m) {
    std::vector<i64> phi = cyclotomic_poly(m);
    int deg = static_cast<int>(phi.size()) - 1;
    std::vector<std::vector<i64>> t(m, std::vector<i64>(deg, 0));
    std::vector<i64> cur(deg, 0);
    if (deg > 0) cur[0] = 1;
    for (i64 e = 0; e < m; ++e) {
        t[e] = cur;
        // multiply by z and reduce using the monic Phi_m
        std::vector<i64> nxt(deg, 0);
        i64 top = deg > 0 ? cur[deg - 1] : 0;
        for (int i = deg - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        for (int i = 0; i < deg; ++i) nxt[i] -= top * phi[i];
        cur = nxt;
    }
    return t;
}

}  // namespace

CycRing::CycRing(i64 d, i64 p, int s) : d_(d), p_(p), s_(s) {
    if (d < 1 || s < 0 || !is_prime(p) || d % p == 0)
        fail(ErrorKind::InvalidInput, "CycRing: need d >= 1 prime to p and s >= 0");
    ps_ = ipow(p, s);
    fd_ = static_cast<int>(euler_phi(d));
    fp_ = static_cast<int>(euler_phi(ps_));
    dpow_ = power_table(d);
    ppow_ = power_table(ps_);
    i64 x, y;
    ext_gcd(ps_, d, x, y);
    u_ = x;
    v_ = y;
}

std::shared_ptr<const CycRing> CycRing::make(i64 d, i64 p, int s) {
    return std::shared_ptr<const CycRing>(new CycRing(d, p, s));
}

std::shared_ptr<const CycRing> CycRing::for_orders(i64 p, const std::vector<i64>& orders) {
    i64 d = 1;
    int s = 0;
    for (i64 o : orders) {
        int v = 0;
        while (o % p == 0) {
            o /= p;
            ++v;
        }
        d = lcm(d, o);
        s = std::max(s, v);
    }
    return make(d, p, s);
}

std::pair<i64, i64> CycRing::split_exponent(i64 k) const {
    return {mod(mulmod(k, u_, d_), d_), mod(mulmod(k, v_, ps_), ps_)};
}

CycInt::CycInt(CycRingPtr ring) : ring_(std::move(ring)), c_(ring_->rank()) {}

CycInt::CycInt(CycRingPtr ring, const BigInt& c) : CycInt(std::move(ring)) { c_[0] = c; }

void CycInt::add_root(const BigInt& k, i64 e, i64 order) {
    i64 L = ring_->order();
    if (L % order != 0) fail(ErrorKind::InvalidInput, "CycInt: root order does not divide ring order");
    auto [i, j] = ring_->split_exponent(mod(e, order) * (L / order));
    const auto& a = ring_->dpow(i);
    const auto& b = ring_->ppow(j);
    int fp = ring_->fp();
    for (int x = 0; x < ring_->fd(); ++x) {
        if (a[x] == 0) continue;
        for (int y = 0; y < fp; ++y) {
            if (b[y] == 0) continue;
            c_[x * fp + y] += k * (a[x] * b[y]);
        }
    }
}

CycInt CycInt::root(CycRingPtr ring, i64 k, i64 order) {
    CycInt r(std::move(ring));
    r.add_root(1, k, order);
    return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycInt& CycInt::operator*=(const BigInt& k) {
    for (auto& x : c_) x *= k;
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    const CycRing& R = *a.ring_;
    int fd = R.fd(), fp = R.fp();
    int gd = 2 * fd - 1, gp = 2 * fp - 1;
    std::vector<BigInt> grid(static_cast<std::size_t>(gd) * gp);
    for (int i1 = 0; i1 < fd; ++i1)
        for (int j1 = 0; j1 < fp; ++j1) {
            const BigInt& x = a.c_[i1 * fp + j1];
            if (x == 0) continue;
            for (int i2 = 0; i2 < fd; ++i2)
                for (int j2 = 0; j2 < fp; ++j2) {
                    const BigInt& y = b.c_[i2 * fp + j2];
                    if (y == 0) continue;
                    grid[(i1 + i2) * gp + (j1 + j2)] += x * y;
                }
        }
    // reduce the p-direction, then the d-direction
    std::vector<BigInt> mid(static_cast<std::size_t>(gd) * fp);
    for (int i = 0; i < gd; ++i)
        for (int j = 0; j < gp; ++j) {
            const BigInt& v = grid[i * gp + j];
            if (v == 0) continue;
            const auto& pj = R.ppow(j);
            for (int y = 0; y < fp; ++y)
                if (pj[y] != 0) mid[i * fp + y] += v * pj[y];
        }
    CycInt r(a.ring_);
    for (int i = 0; i < gd; ++i) {
        const auto& di = R.dpow(i);
        for (int x = 0; x < fd; ++x) {
            if (di[x] == 0) continue;
            for (int y = 0; y < fp; ++y) {
                const BigInt& v = mid[i * fp + y];
                if (v != 0) r.c_[x * fp + y] += v * di[x];
            }
        }
    }
    return r;
}

bool CycInt::operator==(const CycInt& o) const { return c_ == o.c_; }

bool CycInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

CycInt CycInt::galois(i64 a) const {
    const CycRing& R = *ring_;
    if (gcd(a, R.order()) != 1) fail(ErrorKind::InvalidInput, "galois: exponent not coprime to ring order");
    CycInt r(ring_);
    int fp = R.fp();
    for (int i = 0; i < R.fd(); ++i)
        for (int j = 0; j < fp; ++j) {
            const BigInt& v = c_[i * fp + j];
            if (v == 0) continue;
            const auto& di = R.dpow(i * a);
            const auto& pj = R.ppow(j * a);
            for (int x = 0; x < R.fd(); ++x) {
                if (di[x] == 0) continue;
                for (int y = 0; y < fp; ++y)
                    if (pj[y] != 0) r.c_[x * fp + y] += v * (di[x] * pj[y]);
            }
        }
    return r;
}

bool CycInt::divisible_by(const BigInt& k) const {
    for (const auto& x : c_)
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) return false;
    return true;
}

CycInt CycInt::divexact(const BigInt& k) const {
    if (!divisible_by(k)) fail(ErrorKind::InvalidInput, "divexact: not divisible");
    CycInt r(ring_);
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(r.c_[i].get_mpz_t(), c_[i].get_mpz_t(), k.get_mpz_t());
    return r;
}

std::complex<double> CycInt::to_complex() const {
    const CycRing& R = *ring_;
    const double tau = 2.0 * std::numbers::pi;
    std::complex<double> sum = 0;
    for (int i = 0; i < R.fd(); ++i)
        for (int j = 0; j < R.fp(); ++j) {
            const BigInt& v = c_[i * R.fp() + j];
            if (v == 0) continue;
            double ang = tau * (static_cast<double>(i) / R.d() + static_cast<double>(j) / R.ps());
            sum += v.get_d() * std::polar(1.0, ang);
        }
    return sum;
}

LocalElem CycInt::to_local(const std::shared_ptr<const LocalRing>& L) const {
    const CycRing& R = *ring_;
    if (L->p() != R.p() || L->d() % R.d() != 0 || L->s() < R.s())
        fail(ErrorKind::InvalidInput, "to_local: local ring does not contain this cyclotomic ring");
    i64 dstep = L->d() / R.d();
    i64 pstep = ipow(R.p(), L->s() - R.s());
    LocalElem acc = L->zero();
    for (int i = 0; i < R.fd(); ++i)
        for (int j = 0; j < R.fp(); ++j) {
            const BigInt& v = c_[i * R.fp() + j];
            if (v == 0) continue;
            acc += L->from_int(v) * L->x_pow(i * dstep) * L->zeta_p_pow(j * pstep);
        }
    return acc;
}

std::string CycInt::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
    os << "]";
    return os.str();
}

}  // namespace mtk
