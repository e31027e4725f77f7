#include "mtk/modsym.hpp"

#include <algorithm>

#include "mtk/error.hpp"

namespace mtk {

Cusp Cusp::make(i64 num, i64 den) {
    if (den == 0) {
        if (num == 0) fail(ErrorKind::InvalidInput, "cusp 0/0");
        return Cusp{1, 0};
    }
    i64 g = gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Cusp{num, den};
}

P1List::P1List(i64 N) : N_(N) {
    if (N < 1) fail(ErrorKind::InvalidInput, "P1List: N must be positive");
    if (N == 1) {
        reps_.push_back({0, 0});
        lookup_.assign(1, 0);
        return;
    }
    std::vector<i64> units;
    for (i64 u = 1; u < N; ++u)
        if (gcd(u, N) == 1) units.push_back(u);
    std::vector<std::pair<i64, i64>> canon(N * N, {-1, -1});
    for (i64 c = 0; c < N; ++c)
        for (i64 d = 0; d < N; ++d) {
            if (gcd(gcd(c, d), N) != 1) continue;
            std::pair<i64, i64> best{N, N};
            for (i64 u : units) best = std::min(best, std::pair<i64, i64>{u * c % N, u * d % N});
            canon[c * N + d] = best;
            if (best == std::pair<i64, i64>{c, d}) reps_.push_back(best);
        }
    std::sort(reps_.begin(), reps_.end());
    lookup_.assign(N * N, -1);
    for (i64 k = 0; k < N * N; ++k) {
        if (canon[k].first < 0) continue;
        auto it = std::lower_bound(reps_.begin(), reps_.end(), canon[k]);
        lookup_[k] = static_cast<int>(it - reps_.begin());
    }
}

int P1List::index(i64 c, i64 d) const {
    if (N_ == 1) return 0;
    int r = lookup_[mod(c, N_) * N_ + mod(d, N_)];
    if (r < 0) fail(ErrorKind::InvalidInput, "P1List: (c : d) is not a point of P^1(Z/N)");
    return r;
}

std::vector<int> manin_terms(const P1List& p1, const Cusp& c) {
    std::vector<int> out;
    out.push_back(p1.index(0, 1));  // {0, infinity}
    if (c.is_infinity()) return out;
    // floor continued fraction convergents p_k / q_k of c
    i64 u = c.num, v = c.den;
    i64 pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    int k = 0;
    while (v != 0) {
        i64 a = u / v;
        if ((u % v != 0) && ((u < 0) != (v < 0))) --a;
        i64 r = u - a * v;
        i64 pk = a * pm1 + pm2, qk = a * qm1 + qm2;
        // {p_{k-1}/q_{k-1}, p_k/q_k} = [q_k : (-1)^{k-1} q_{k-1}]
        i64 sgn = (k % 2 == 0) ? -1 : 1;
        out.push_back(p1.index(qk, sgn * qm1));
        pm2 = pm1;
        qm2 = qm1;
        pm1 = pk;
        qm1 = qk;
        u = v;
        v = r;
        ++k;
    }
    return out;
}

i64 gamma0_index(i64 N) {
    i64 m = N;
    for (auto [q, e] : factorize(N)) m = m / q * (q + 1);
    return m;
}

i64 sturm_bound(i64 N) { return (gamma0_index(N) + 5) / 6; }

ManinSpace::ManinSpace(i64 N) : p1_(N) {
    const int n = p1_.size();
    RatMatrix rel(0, n);
    for (int i = 0; i < n; ++i) {
        auto [c, d] = p1_.rep(i);
        RatVec r(n);
        r[i] += 1;
        r[p1_.index(d, -c)] += 1;
        rel.append_row(r);
        RatVec t(n);
        t[i] += 1;
        t[p1_.index(d, -c - d)] += 1;
        t[p1_.index(-c - d, c)] += 1;
        rel.append_row(t);
    }
    Echelon e = row_reduce(rel);
    std::vector<int> piv_row(n, -1);
    for (int r = 0; r < static_cast<int>(e.pivots.size()); ++r) piv_row[e.pivots[r]] = r;
    std::vector<int> free_pos(n, -1);
    for (int j = 0; j < n; ++j)
        if (piv_row[j] < 0) {
            free_pos[j] = static_cast<int>(basis_.size());
            basis_.push_back(j);
        }
    dim_ = static_cast<int>(basis_.size());
    coords_.assign(n, RatVec(dim_));
    for (int j = 0; j < n; ++j) {
        if (free_pos[j] >= 0) {
            coords_[j][free_pos[j]] = 1;
        } else {
            int r = piv_row[j];
            for (int b = 0; b < dim_; ++b) coords_[j][b] = -e.rref(r, basis_[b]);
        }
    }
}

std::array<i64, 4> ManinSpace::lift(int i) const {
    i64 N = p1_.N();
    auto [c, d] = p1_.rep(i);
    if (N == 1) return {1, 0, 0, 1};
    i64 cc = c, dd = d;
    if (cc == 0) cc = N;
    else {
        while (gcd(cc, dd) != 1) dd += N;
    }
    i64 x, y;
    ext_gcd(dd, cc, x, y);  // dd x + cc y = 1
    return {x, -y, cc, dd};
}

std::vector<int> ManinSpace::path_from_zero(const Cusp& c) const { return manin_terms(p1_, c); }

RatVec ManinSpace::path_coords(const Cusp& a, const Cusp& b) const {
    RatVec v(dim_);
    for (int i : manin_terms(p1_, b))
        for (int k = 0; k < dim_; ++k) v[k] += coords_[i][k];
    for (int i : manin_terms(p1_, a))
        for (int k = 0; k < dim_; ++k) v[k] -= coords_[i][k];
    return v;
}

RatMatrix ManinSpace::hecke(i64 ell) const {
    if (!is_prime(ell)) fail(ErrorKind::InvalidInput, "hecke: ell must be prime");
    std::vector<std::array<i64, 4>> mats;
    for (i64 j = 0; j < ell; ++j) mats.push_back({1, j, 0, ell});
    if (N() % ell != 0) mats.push_back({ell, 0, 0, 1});
    RatMatrix H(dim_, dim_);
    for (int col = 0; col < dim_; ++col) {
        auto g = lift(basis_[col]);
        // g{0, infinity} = {b/d, a/c}
        i64 x_num = g[1], x_den = g[3], y_num = g[0], y_den = g[2];
        RatVec acc(dim_);
        for (auto& m : mats) {
            Cusp x = Cusp::make(m[0] * x_num + m[1] * x_den, m[3] * x_den);
            Cusp y = Cusp::make(m[0] * y_num + m[1] * y_den, m[3] * y_den);
            RatVec v = path_coords(x, y);
            for (int k = 0; k < dim_; ++k) acc[k] += v[k];
        }
        for (int k = 0; k < dim_; ++k) H(k, col) = acc[k];
    }
    return H;
}

RatMatrix ManinSpace::star() const {
    RatMatrix S(dim_, dim_);
    for (int col = 0; col < dim_; ++col) {
        auto [c, d] = p1_.rep(basis_[col]);
        const RatVec& v = coords_[p1_.index(-c, d)];
        for (int k = 0; k < dim_; ++k) S(k, col) = v[k];
    }
    return S;
}

namespace {

// Gamma_0(N)-equivalence of cusps p1/q1 and p2/q2.
bool cusps_equivalent(const Cusp& a, const Cusp& b, i64 N) {
    auto sval = [](const Cusp& c) -> i64 {
        if (c.den == 0) return 1;
        if (c.den == 1) return 0;
        return invmod(mod(c.num, c.den), c.den);
    };
    i64 g = gcd(a.den * b.den, N);
    if (g == 0) g = N;
    return mod(sval(a) * b.den - sval(b) * a.den, g) == 0;
}

}  // namespace

int ManinSpace::find_cusp(const Cusp& c) const {
    for (std::size_t i = 0; i < cusp_reps_.size(); ++i)
        if (cusps_equivalent(cusp_reps_[i], c, N())) return static_cast<int>(i);
    cusp_reps_.push_back(c);
    return static_cast<int>(cusp_reps_.size()) - 1;
}

int ManinSpace::cusp_class(const Cusp& c) const { return find_cusp(c); }

RatMatrix ManinSpace::boundary() const {
    std::vector<std::pair<int, int>> ends(dim_);
    for (int col = 0; col < dim_; ++col) {
        auto g = lift(basis_[col]);
        int to = find_cusp(Cusp::make(g[0], g[2]));
        int from = find_cusp(Cusp::make(g[1], g[3]));
        ends[col] = {to, from};
    }
    RatMatrix B(num_cusps(), dim_);
    for (int col = 0; col < dim_; ++col) {
        B(ends[col].first, col) += 1;
        B(ends[col].second, col) -= 1;
    }
    return B;
}

std::vector<RatVec> ManinSpace::cuspidal_basis() const { return kernel(boundary()); }

EigenSymbol::EigenSymbol(const ManinSpace& space, const std::map<i64, i64>& a, i64 p, std::optional<i64> sturm_override)
    : N_(space.N()), p_(p), sturm_(sturm_override.value_or(sturm_bound(space.N()))), p1_(space.N()) {
    const int dim = space.dim();
    if (dim == 0) fail(ErrorKind::NotRationalNewform, "modular symbol space is zero");
    RatMatrix stack(0, dim);
    for (i64 ell = 2; ell <= sturm_; ++ell) {
        if (!is_prime(ell)) continue;
        auto it = a.find(ell);
        if (it == a.end()) fail(ErrorKind::InvalidInput, "missing eigenvalue at " + std::to_string(ell));
        RatMatrix H = space.hecke(ell).transpose();
        for (int i = 0; i < dim; ++i) H(i, i) -= it->second;
        for (int i = 0; i < dim; ++i) stack.append_row(H.row(i));
    }
    RatMatrix S = space.star().transpose();
    for (int sign : {1, -1}) {
        RatMatrix full = stack;
        for (int i = 0; i < dim; ++i) {
            RatVec r = S.row(i);
            r[i] -= sign;
            full.append_row(r);
        }
        auto ker = kernel(full);
        if (ker.size() != 1)
            fail(ErrorKind::NotRationalNewform, "eigenspace of sign " + std::to_string(sign) + " has dimension " +
                                                    std::to_string(ker.size()));
        std::vector<Rat> vals(space.p1().size());
        for (int i = 0; i < space.p1().size(); ++i)
            for (int k = 0; k < dim; ++k) vals[i] += ker[0][k] * space.coords(i)[k];
        Rat scale = make_primitive(vals);
        int c = -1;
        for (const auto& v : vals)
            if (v != 0) c = c < 0 ? vp(v, p) : std::min(c, vp(v, p));
        BigInt pc;
        mpz_ui_pow_ui(pc.get_mpz_t(), p, c);
        for (auto& v : vals) v /= pc;
        scale /= pc;
        (sign == 1 ? plus_ : minus_) = std::move(vals);
        (sign == 1 ? plus_scale_ : minus_scale_) = scale;
    }
    // the full eigenspace must be two-dimensional
    if (kernel(stack).size() != 2) fail(ErrorKind::NotRationalNewform, "Hecke eigenspace is not two-dimensional");
}

EigenSymbol EigenSymbol::from_curve(const EllipticCurve& E, i64 p, std::optional<i64> sturm_override) {
    ManinSpace space(E.conductor());
    i64 bound = sturm_override.value_or(sturm_bound(E.conductor()));
    std::map<i64, i64> a;
    for (i64 ell = 2; ell <= bound; ++ell)
        if (is_prime(ell)) a[ell] = E.a_ell(ell);
    return EigenSymbol(space, a, p, sturm_override);
}

EigenSymbol::EigenSymbol(i64 N, i64 p, std::vector<Rat> plus, std::vector<Rat> minus, Rat plus_scale,
                         Rat minus_scale, i64 sturm)
    : N_(N), p_(p), sturm_(sturm), p1_(N), plus_(std::move(plus)), minus_(std::move(minus)),
      plus_scale_(std::move(plus_scale)), minus_scale_(std::move(minus_scale)) {
    if (static_cast<int>(plus_.size()) != p1_.size() || static_cast<int>(minus_.size()) != p1_.size())
        fail(ErrorKind::InvalidInput, "stored eigen-symbol has the wrong length");
}

Rat EigenSymbol::value_from_zero(const Cusp& c, int sign) const {
    Rat r = 0;
    for (int i : manin_terms(p1_, c)) {
        if (sign >= 0) r += plus_[i];
        if (sign <= 0) r += minus_[i];
    }
    return r;
}

Rat EigenSymbol::eval_path(const Cusp& a, const Cusp& b, int sign) const {
    return value_from_zero(b, sign) - value_from_zero(a, sign);
}

Rat EigenSymbol::eval(i64 num, i64 den, int sign) const {
    return eval_path(Cusp::make(num, den), Cusp{1, 0}, sign);
}

}  // namespace mtk
