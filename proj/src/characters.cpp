#include "mtk/characters.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "mtk/error.hpp"

namespace mtk {

UnitGroup::UnitGroup(i64 m) : m_(m) {
    if (m < 1) fail(ErrorKind::InvalidInput, "UnitGroup: modulus must be positive");
    auto lift_crt = [&](i64 g, i64 qe) {
        i64 rest = m / qe;
        // x = g mod qe, x = 1 mod rest
        i64 x = g;
        while (rest > 1 && mod(x, rest) != 1 % rest) x += qe;
        return mod(x, m);
    };
    int comp = 0;
    for (auto [q, e] : factorize(m)) {
        i64 qe = ipow(q, e);
        prime_powers_.push_back(qe);
        if (q == 2) {
            if (e >= 2) {
                gens_.push_back(lift_crt(qe - 1, qe));
                orders_.push_back(2);
                comp_of_gen_.push_back(comp);
                std::vector<i64> t(qe, -1);
                for (i64 r = 1; r < qe; r += 2) t[r] = (r % 4 == 3) ? 1 : 0;
                comp_dlog_.push_back(t);
            }
            if (e >= 3) {
                i64 ord = qe / 4;
                gens_.push_back(lift_crt(5, qe));
                orders_.push_back(ord);
                comp_of_gen_.push_back(comp);
                std::vector<i64> pw(qe, -1);
                i64 x = 1;
                for (i64 k = 0; k < ord; ++k) {
                    pw[x] = k;
                    x = x * 5 % qe;
                }
                std::vector<i64> t(qe, -1);
                for (i64 r = 1; r < qe; r += 2) {
                    i64 s = (r % 4 == 3) ? qe - r : r;
                    t[r] = pw[s];
                }
                comp_dlog_.push_back(t);
            }
        } else {
            i64 g = primitive_root(q);
            if (e >= 2 && powmod(g, q - 1, q * q) == 1) g += q;
            i64 ord = qe / q * (q - 1);
            gens_.push_back(lift_crt(g, qe));
            orders_.push_back(ord);
            comp_of_gen_.push_back(comp);
            std::vector<i64> t(qe, -1);
            i64 x = 1;
            for (i64 k = 0; k < ord; ++k) {
                t[x] = k;
                x = mulmod(x, g, qe);
            }
            comp_dlog_.push_back(t);
        }
        ++comp;
    }
}

std::vector<i64> UnitGroup::dlog(i64 a) const {
    if (gcd(a, m_) != 1) fail(ErrorKind::NotAUnit, "dlog: not a unit");
    std::vector<i64> out(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        i64 qe = prime_powers_[comp_of_gen_[i]];
        out[i] = comp_dlog_[i][mod(a, qe)];
    }
    return out;
}

DirichletChar::DirichletChar(i64 modulus, i64 order, std::vector<i64> exps)
    : m_(modulus), order_(order), val_(std::move(exps)) {
    if (m_ < 1 || order_ < 1 || static_cast<i64>(val_.size()) != m_)
        fail(ErrorKind::InvalidInput, "DirichletChar: malformed value table");
    i64 g = order_;
    for (i64 a = 0; a < m_; ++a) {
        bool unit = gcd(a, m_) == 1;
        if (!unit) {
            val_[a] = -1;
            continue;
        }
        val_[a] = mod(val_[a], order_);
        g = gcd(g, val_[a]);
    }
    if (g > 1) {
        order_ /= g;
        for (auto& v : val_)
            if (v >= 0) v /= g;
    }
}

DirichletChar DirichletChar::from_exponents(i64 modulus, const std::vector<i64>& x) {
    UnitGroup U(modulus);
    if (x.size() != U.gens().size()) fail(ErrorKind::InvalidInput, "from_exponents: wrong number of exponents");
    i64 O = 1;
    for (i64 o : U.orders()) O = lcm(O, o);
    std::vector<i64> v(modulus, -1);
    for (i64 a = 0; a < modulus; ++a) {
        if (gcd(a, modulus) != 1) continue;
        auto d = U.dlog(a);
        i64 k = 0;
        for (std::size_t i = 0; i < d.size(); ++i) k += mulmod(mod(x[i], U.orders()[i]) * (O / U.orders()[i]), d[i], O);
        v[a] = mod(k, O);
    }
    return DirichletChar(modulus, O, std::move(v));
}

DirichletChar DirichletChar::canonical(i64 p, int m) {
    if (m == 0) return DirichletChar();
    TnTable t(p, m, 1);
    std::vector<i64> v(t.modulus());
    for (i64 a = 0; a < t.modulus(); ++a) v[a] = t(a);
    return DirichletChar(t.modulus(), t.pn(), std::move(v));
}

std::optional<i64> DirichletChar::value(i64 a) const {
    i64 k = val_[mod(a, m_)];
    if (k < 0) return std::nullopt;
    return k;
}

int DirichletChar::parity() const {
    i64 k = *value(-1);
    return k == 0 ? 1 : -1;
}

i64 DirichletChar::conductor() const {
    for (i64 f : divisors(m_)) {
        bool ok = true;
        for (i64 a = 1; a < m_ && ok; a += f)
            if (val_[a] > 0) ok = false;
        if (ok) return f;
    }
    return m_;
}

DirichletChar DirichletChar::primitive() const {
    i64 f = conductor();
    if (f == m_) return *this;
    std::vector<i64> v(f, -1);
    for (i64 b = 0; b < f; ++b) {
        if (gcd(b, f) != 1) continue;
        i64 a = b;
        while (gcd(a, m_) != 1) a += f;
        v[b] = val_[a];
    }
    if (f == 1) v[0] = 0;
    return DirichletChar(f, order_, std::move(v));
}

DirichletChar DirichletChar::lift(i64 M) const {
    if (M % m_ != 0) fail(ErrorKind::InvalidInput, "lift: modulus must be a multiple");
    std::vector<i64> v(M, -1);
    for (i64 a = 0; a < M; ++a)
        if (gcd(a, M) == 1) v[a] = val_[a % m_];
    return DirichletChar(M, order_, std::move(v));
}

DirichletChar DirichletChar::pow(i64 k) const {
    std::vector<i64> v = val_;
    for (auto& x : v)
        if (x >= 0) x = mulmod(x, mod(k, order_), order_);
    return DirichletChar(m_, order_, std::move(v));
}

DirichletChar operator*(const DirichletChar& a, const DirichletChar& b) {
    i64 M = lcm(a.m_, b.m_);
    i64 O = lcm(a.order_, b.order_);
    std::vector<i64> v(M, -1);
    for (i64 x = 0; x < M; ++x) {
        if (gcd(x, M) != 1) continue;
        v[x] = mod(a.val_[x % a.m_] * (O / a.order_) + b.val_[x % b.m_] * (O / b.order_), O);
    }
    return DirichletChar(M, O, std::move(v)).primitive();
}

bool DirichletChar::operator<(const DirichletChar& o) const {
    if (m_ != o.m_) return m_ < o.m_;
    if (order_ != o.order_) return order_ < o.order_;
    return val_ < o.val_;
}

std::vector<i64> DirichletChar::exponents() const {
    UnitGroup U(m_);
    std::vector<i64> x;
    for (std::size_t i = 0; i < U.gens().size(); ++i) {
        i64 k = val_[U.gens()[i]];
        x.push_back(k * U.orders()[i] / order_);
    }
    return x;
}

CycInt DirichletChar::value_cyc(i64 a, const CycRingPtr& R) const {
    auto k = value(a);
    if (!k) return CycInt(R);
    return CycInt::root(R, *k, order_);
}

LocalElem DirichletChar::value_local(i64 a, const LocalRingPtr& R) const {
    auto k = value(a);
    if (!k) return R->zero();
    return R->root_of_unity(*k, order_);
}

std::string DirichletChar::str() const {
    std::ostringstream os;
    os << "chi mod " << m_ << " order " << order_ << " [";
    auto x = exponents();
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "]";
    return os.str();
}

std::pair<DirichletChar, DirichletChar> decompose_char(const DirichletChar& chi, i64 p) {
    i64 o = chi.order();
    i64 pk = 1;
    while (o % p == 0) {
        o /= p;
        pk *= p;
    }
    // a = 1 mod o, a = 0 mod p^k and b = 0 mod o, b = 1 mod p^k
    i64 a = 0, b = 0;
    for (i64 t = 0; t < o * pk; ++t) {
        if (t % o == 1 % o && t % pk == 0) a = t;
        if (t % o == 0 && t % pk == 1 % pk) b = t;
    }
    return {chi.pow(a).primitive(), chi.pow(b).primitive()};
}

CharGroup::CharGroup(std::vector<DirichletChar> chars) {
    for (auto& c : chars) chars_.push_back(c.primitive());
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
    if (chars_.empty() || !contains(DirichletChar())) fail(ErrorKind::NotSubgroup, "character set lacks the trivial character");
    // H is closed iff H s is inside H for each s of a generating set of H.
    std::set<DirichletChar> span{DirichletChar()};
    std::vector<DirichletChar> gens;
    for (const auto& c : chars_) {
        if (span.count(c)) continue;
        gens.push_back(c);
        std::vector<DirichletChar> cur(span.begin(), span.end());
        for (DirichletChar pw = c; !(pw == DirichletChar()); pw = pw * c) {
            for (const auto& x : cur) span.insert(x * pw);
            if (span.size() > chars_.size())
                fail(ErrorKind::NotSubgroup, "character set is not closed under products");
        }
    }
    for (const auto& s : gens)
        for (const auto& a : chars_)
            if (!contains(a * s)) fail(ErrorKind::NotSubgroup, "character set is not closed under products");
}

CharGroup CharGroup::generated_by(const std::vector<DirichletChar>& gens) {
    std::set<DirichletChar> have{DirichletChar()};
    for (const auto& g0 : gens) {
        DirichletChar g = g0.primitive();
        std::vector<DirichletChar> cur(have.begin(), have.end());
        DirichletChar pw = g;
        while (!(pw == DirichletChar())) {
            for (const auto& x : cur) have.insert(x * pw);
            pw = pw * g;
        }
    }
    return CharGroup(std::vector<DirichletChar>(have.begin(), have.end()));
}

CharGroup CharGroup::from_subgroup(i64 f, const std::vector<i64>& H) {
    for (i64 h : H)
        if (gcd(h, f) != 1) fail(ErrorKind::NotSubgroup, "subgroup generator is not a unit modulo the conductor");
    UnitGroup U(f);
    std::vector<DirichletChar> out;
    std::vector<i64> x(U.gens().size(), 0);
    std::vector<std::vector<i64>> hl;
    for (i64 h : H) hl.push_back(U.dlog(h));
    while (true) {
        bool ok = true;
        for (const auto& d : hl) {
            // sum x_i d_i / o_i must be an integer
            i64 O = 1;
            for (i64 o : U.orders()) O = lcm(O, o);
            i64 s = 0;
            for (std::size_t i = 0; i < d.size(); ++i) s += mulmod(x[i] * (O / U.orders()[i]), d[i], O);
            if (s % O != 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(DirichletChar::from_exponents(f, x));
        std::size_t i = 0;
        for (; i < x.size(); ++i) {
            if (++x[i] < U.orders()[i]) break;
            x[i] = 0;
        }
        if (i == x.size()) break;
    }
    return CharGroup(out);
}

CharGroup CharGroup::cyclic_subfield(i64 ell, i64 deg) {
    if (!is_prime(ell) || (ell - 1) % deg != 0) fail(ErrorKind::InvalidInput, "cyclic_subfield: degree must divide ell - 1");
    i64 g = primitive_root(ell);
    return from_subgroup(ell, {powmod(g, deg, ell)});
}

CharGroup CharGroup::cyclotomic_layer(i64 p, int n) { return generated_by({DirichletChar::canonical(p, n)}); }

i64 CharGroup::conductor() const {
    i64 f = 1;
    for (const auto& c : chars_) f = lcm(f, c.modulus());
    return f;
}

bool CharGroup::contains(const DirichletChar& chi) const {
    DirichletChar c = chi.primitive();
    return std::binary_search(chars_.begin(), chars_.end(), c);
}

bool CharGroup::contains(const CharGroup& other) const {
    for (const auto& c : other.chars_)
        if (!contains(c)) return false;
    return true;
}

int CharGroup::n_K(i64 p) const {
    int m = 0;
    while (contains(DirichletChar::canonical(p, m + 1))) ++m;
    return m;
}

Splitting CharGroup::splitting(i64 ell) const {
    i64 unram = 0, f = 1;
    for (const auto& c : chars_) {
        auto k = c.value(ell);
        if (!k) continue;
        ++unram;
        f = lcm(f, c.order() / gcd(*k, c.order()));
    }
    i64 e = degree() / unram;
    return {e, f, degree() / (e * f)};
}

i64 CharGroup::count_vanishing(i64 ell) const {
    i64 n = 0;
    for (const auto& c : chars_)
        if (!c.value(ell)) ++n;
    return n;
}

CharGroup CharGroup::layer(i64 p, int n) const {
    DirichletChar c = DirichletChar::canonical(p, n + n_K(p));
    std::set<DirichletChar> have(chars_.begin(), chars_.end());
    DirichletChar pw = c;
    while (!(pw == DirichletChar())) {
        for (const auto& x : chars_) have.insert(x * pw);
        pw = pw * c;
    }
    return CharGroup(std::vector<DirichletChar>(have.begin(), have.end()));
}

std::vector<i64> CharGroup::orders() const {
    std::vector<i64> o;
    for (const auto& c : chars_) o.push_back(c.order());
    return o;
}

std::string CharGroup::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < chars_.size(); ++i) os << (i ? "; " : "") << chars_[i].str();
    os << "}";
    return os.str();
}

}  // namespace mtk
