#include "mtk/linalg.hpp"

#include "mtk/error.hpp"

namespace mtk {

RatVec RatMatrix::row(int i) const {
    return RatVec(a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                  a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

void RatMatrix::append_row(const RatVec& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_) fail(ErrorKind::InvalidInput, "append_row: width mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::InvalidInput, "matrix product: shape mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rat& x = a(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

RatVec RatMatrix::apply(const RatVec& v) const {
    RatVec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

RatVec RatMatrix::apply_left(const RatVec& v) const {
    RatVec r(cols_);
    for (int i = 0; i < rows_; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < cols_; ++j) r[j] += v[i] * (*this)(i, j);
    }
    return r;
}

Echelon row_reduce(const RatMatrix& m) {
    const int R = m.rows(), C = m.cols();
    std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C));
    for (int i = 0; i < R; ++i) {
        BigInt den = 1;
        for (int j = 0; j < C; ++j) {
            const BigInt& d = m(i, j).get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
        for (int j = 0; j < C; ++j) a[i][j] = BigInt(m(i, j).get_num() * (den / m(i, j).get_den()));
    }
    // Bareiss forward elimination
    std::vector<int> pivots;
    BigInt prev = 1;
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int piv = -1;
        for (int i = r; i < R; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        for (int i = r + 1; i < R; ++i) {
            for (int j = c + 1; j < C; ++j) {
                BigInt t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    Echelon out;
    out.pivots = pivots;
    out.rref = RatMatrix(r, C);
    for (int i = 0; i < r; ++i) {
        Rat lead(a[i][pivots[i]]);
        for (int j = 0; j < C; ++j) out.rref(i, j) = Rat(a[i][j]) / lead;
    }
    for (int i = r - 1; i >= 0; --i) {
        int pc = pivots[i];
        for (int k = 0; k < i; ++k) {
            Rat f = out.rref(k, pc);
            if (f == 0) continue;
            for (int j = pc; j < C; ++j) out.rref(k, j) -= f * out.rref(i, j);
        }
    }
    return out;
}

std::vector<RatVec> kernel(const RatMatrix& m) {
    Echelon e = row_reduce(m);
    const int C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (int c : e.pivots) is_piv[c] = true;
    std::vector<RatVec> basis;
    for (int fc = 0; fc < C; ++fc) {
        if (is_piv[fc]) continue;
        RatVec v(C);
        v[fc] = 1;
        for (int i = 0; i < static_cast<int>(e.pivots.size()); ++i) v[e.pivots[i]] = -e.rref(i, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve_in_span(const std::vector<RatVec>& basis, const RatVec& v, RatVec& x) {
    const int k = static_cast<int>(basis.size());
    const int n = static_cast<int>(v.size());
    RatMatrix a(n, k + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) a(i, j) = basis[j][i];
        a(i, k) = v[i];
    }
    Echelon e = row_reduce(a);
    x.assign(k, Rat(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == k) return false;
        x[e.pivots[i]] = e.rref(static_cast<int>(i), k);
    }
    return true;
}

Rat make_primitive(RatVec& v) {
    BigInt den = 1, g = 0;
    for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    for (const auto& x : v) {
        BigInt t = x.get_num() * (den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    }
    if (g == 0) fail(ErrorKind::ZeroInput, "make_primitive: zero vector");
    Rat scale(den, g);
    scale.canonicalize();
    for (const auto& x : v)
        if (x != 0) {
            if (x < 0) scale = -scale;
            break;
        }
    for (auto& x : v) x *= scale;
    return scale;
}

}  // namespace mtk
