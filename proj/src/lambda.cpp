#include "mtk/lambda.hpp"

#include "mtk/error.hpp"

namespace mtk {

std::vector<std::vector<u64>> binomial_table(const LocalRing& R, i64 n) {
    std::vector<std::vector<u64>> C(n, std::vector<u64>(n, 0));
    for (i64 t = 0; t < n; ++t) {
        C[t][0] = 1 % R.modulus();
        for (i64 j = 1; j <= t; ++j) C[t][j] = R.addm(C[t - 1][j - 1], C[t - 1][j]);
    }
    return C;
}

GroupElem::GroupElem(CycRingPtr R, i64 p, int n) : R_(std::move(R)), p_(p), n_(n) {
    c_.assign(ipow(p, n), CycInt(R_));
}

namespace {

void normalize(std::vector<CycInt>& c, BigInt& den) {
    if (den < 0) {
        den = -den;
        for (auto& x : c) x = -x;
    }
    BigInt g = den;
    for (const auto& x : c)
        for (const auto& v : x.coeffs()) {
            if (g == 1) return;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    if (g == 1 || g == 0) return;
    for (auto& x : c) x = x.divexact(g);
    den /= g;
}

}  // namespace

GroupElem& GroupElem::operator+=(const GroupElem& o) {
    if (o.n_ != n_) fail(ErrorKind::InvalidInput, "GroupElem: level mismatch");
    if (den_ == o.den_) {
        for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    } else {
        for (std::size_t t = 0; t < c_.size(); ++t) c_[t] = c_[t] * o.den_ + o.c_[t] * den_;
        den_ *= o.den_;
    }
    normalize(c_, den_);
    return *this;
}

GroupElem& GroupElem::operator-=(const GroupElem& o) {
    GroupElem neg = o;
    for (auto& x : neg.c_) x = -x;
    return *this += neg;
}

GroupElem operator*(const GroupElem& a, const GroupElem& b) {
    if (a.n_ != b.n_) fail(ErrorKind::InvalidInput, "GroupElem: level mismatch");
    GroupElem r(a.R_, a.p_, a.n_);
    i64 N = a.size();
    for (i64 s = 0; s < N; ++s) {
        if (a.c_[s].is_zero()) continue;
        for (i64 t = 0; t < N; ++t) {
            if (b.c_[t].is_zero()) continue;
            r.c_[(s + t) % N] += a.c_[s] * b.c_[t];
        }
    }
    r.den_ = a.den_ * b.den_;
    normalize(r.c_, r.den_);
    return r;
}

GroupElem GroupElem::scaled(const CycInt& k) const {
    GroupElem r = *this;
    for (auto& x : r.c_) x = x * k;
    normalize(r.c_, r.den_);
    return r;
}

GroupElem GroupElem::scaled(const Rat& k) const {
    GroupElem r = *this;
    for (auto& x : r.c_) x *= BigInt(k.get_num());
    r.den_ *= BigInt(k.get_den());
    normalize(r.c_, r.den_);
    return r;
}

bool GroupElem::operator==(const GroupElem& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t t = 0; t < c_.size(); ++t)
        if (c_[t] * o.den_ != o.c_[t] * den_) return false;
    return true;
}

bool GroupElem::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

GroupElem GroupElem::project(int m) const {
    if (m > n_) fail(ErrorKind::InvalidInput, "project: target level too high");
    GroupElem r(R_, p_, m);
    for (i64 t = 0; t < size(); ++t) r.c_[t % r.size()] += c_[t];
    r.den_ = den_;
    normalize(r.c_, r.den_);
    return r;
}

GroupElem GroupElem::trace_up(int m) const {
    if (m < n_) fail(ErrorKind::InvalidInput, "trace_up: target level too low");
    GroupElem r(R_, p_, m);
    for (i64 s = 0; s < r.size(); ++s) r.c_[s] = c_[s % size()];
    r.den_ = den_;
    return r;
}

CycInt GroupElem::eval_root_num(int i) const {
    i64 q = ipow(p_, i);
    CycInt acc(R_);
    for (i64 t = 0; t < size(); ++t) {
        if (c_[t].is_zero()) continue;
        acc += c_[t] * CycInt::root(R_, t % q, q);
    }
    return acc;
}

LambdaNPoly GroupElem::to_lambda(const LocalRingPtr& L) const {
    LocalElem inv = L->from_rat(Rat(BigInt(1), den_));
    std::vector<LocalElem> y;
    y.reserve(c_.size());
    for (const auto& x : c_) y.push_back(x.to_local(L) * inv);
    return LambdaNPoly::from_group(L, p_, n_, y);
}

LambdaNPoly::LambdaNPoly(LocalRingPtr R, i64 p, int n) : R_(std::move(R)), p_(p), n_(n), N_(ipow(p, n)) {
    c_.assign(static_cast<std::size_t>(N_) * R_->rank(), 0);
}

LambdaNPoly LambdaNPoly::from_group(LocalRingPtr R, i64 p, int n, const std::vector<LocalElem>& y) {
    LambdaNPoly out(R, p, n);
    if (static_cast<i64>(y.size()) != out.N_) fail(ErrorKind::InvalidInput, "from_group: wrong length");
    const int r = R->rank();
    auto C = binomial_table(*R, out.N_);
    std::vector<u64> tmp(r);
    for (i64 t = 0; t < out.N_; ++t) {
        const u64* yt = y[t].coords().data();
        if (R->is_zero(yt)) continue;
        for (i64 j = 0; j <= t; ++j) {
            R->scale(yt, C[t][j], tmp.data());
            R->add(out.c_.data() + j * r, tmp.data(), out.c_.data() + j * r);
        }
    }
    return out;
}

std::vector<LocalElem> LambdaNPoly::to_group() const {
    const int r = R_->rank();
    auto C = binomial_table(*R_, N_);
    std::vector<LocalElem> y(N_, R_->zero());
    std::vector<u64> tmp(r);
    for (i64 j = 0; j < N_; ++j) {
        const u64* cj = raw(j);
        if (R_->is_zero(cj)) continue;
        for (i64 t = 0; t <= j; ++t) {
            R_->scale(cj, C[j][t], tmp.data());
            u64* dst = y[t].coords().data();
            if ((j - t) % 2 == 0) R_->add(dst, tmp.data(), dst);
            else R_->sub(dst, tmp.data(), dst);
        }
    }
    return y;
}

LocalElem LambdaNPoly::coeff(i64 j) const {
    const int r = R_->rank();
    return LocalElem(R_, std::vector<u64>(c_.begin() + j * r, c_.begin() + (j + 1) * r));
}

void LambdaNPoly::set_coeff(i64 j, const LocalElem& v) {
    const int r = R_->rank();
    std::copy(v.coords().begin(), v.coords().end(), c_.begin() + j * r);
}

LambdaNPoly& LambdaNPoly::operator+=(const LambdaNPoly& o) {
    if (o.n_ != n_) fail(ErrorKind::InvalidInput, "LambdaNPoly: level mismatch");
    for (i64 j = 0; j < N_; ++j) R_->add(c_.data() + j * R_->rank(), o.raw(j), c_.data() + j * R_->rank());
    return *this;
}

LambdaNPoly& LambdaNPoly::operator-=(const LambdaNPoly& o) {
    if (o.n_ != n_) fail(ErrorKind::InvalidInput, "LambdaNPoly: level mismatch");
    for (i64 j = 0; j < N_; ++j) R_->sub(c_.data() + j * R_->rank(), o.raw(j), c_.data() + j * R_->rank());
    return *this;
}

LambdaNPoly operator*(const LambdaNPoly& a, const LambdaNPoly& b) {
    if (a.n_ != b.n_) fail(ErrorKind::InvalidInput, "LambdaNPoly: level mismatch");
    const LocalRing& R = *a.R_;
    const int r = R.rank();
    auto ya = a.to_group(), yb = b.to_group();
    std::vector<LocalElem> yc(a.N_, R.zero());
    std::vector<u64> tmp(r);
    for (i64 s = 0; s < a.N_; ++s) {
        const u64* x = ya[s].coords().data();
        if (R.is_zero(x)) continue;
        for (i64 t = 0; t < a.N_; ++t) {
            const u64* y = yb[t].coords().data();
            if (R.is_zero(y)) continue;
            R.mul(x, y, tmp.data());
            u64* dst = yc[(s + t) % a.N_].coords().data();
            R.add(dst, tmp.data(), dst);
        }
    }
    return LambdaNPoly::from_group(a.R_, a.p_, a.n_, yc);
}

LambdaNPoly LambdaNPoly::scaled(const LocalElem& k) const {
    LambdaNPoly out(R_, p_, n_);
    for (i64 j = 0; j < N_; ++j) R_->mul(raw(j), k.coords().data(), out.c_.data() + j * R_->rank());
    return out;
}

bool LambdaNPoly::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

LambdaNPoly LambdaNPoly::project(int m) const {
    if (m > n_) fail(ErrorKind::InvalidInput, "project: target level too high");
    auto y = to_group();
    i64 M = ipow(p_, m);
    std::vector<LocalElem> z(M, R_->zero());
    for (i64 t = 0; t < N_; ++t) z[t % M] += y[t];
    return from_group(R_, p_, m, z);
}

LambdaNPoly LambdaNPoly::trace_up(int m) const {
    if (m < n_) fail(ErrorKind::InvalidInput, "trace_up: target level too low");
    auto y = to_group();
    i64 M = ipow(p_, m);
    std::vector<LocalElem> z;
    z.reserve(M);
    for (i64 s = 0; s < M; ++s) z.push_back(y[s % N_]);
    return from_group(R_, p_, m, z);
}

LambdaNPoly LambdaNPoly::substitute_root(int i, i64 k) const {
    auto y = to_group();
    i64 q = ipow(p_, i);
    for (i64 t = 0; t < N_; ++t) y[t] = y[t] * R_->root_of_unity(mod(k * t, q), q);
    return from_group(R_, p_, n_, y);
}

}  // namespace mtk
