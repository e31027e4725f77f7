#include "mtk/arith.hpp"

#include <algorithm>
#include <cstdlib>

#include "mtk/error.hpp"

namespace mtk {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::NotIntegral: return "NotIntegral";
        case ErrorKind::BadReduction: return "BadReduction";
        case ErrorKind::BoundExceeded: return "BoundExceeded";
        case ErrorKind::SmallPrimeUnsupported: return "SmallPrimeUnsupported";
        case ErrorKind::NotRationalNewform: return "NotRationalNewform";
        case ErrorKind::NotSubgroup: return "NotSubgroup";
        case ErrorKind::ConductorMismatch: return "ConductorMismatch";
        case ErrorKind::ConductorError: return "ConductorError";
        case ErrorKind::DescentResidual: return "DescentResidual";
        case ErrorKind::CoefficientDrift: return "CoefficientDrift";
        case ErrorKind::NoConventionMatches: return "NoConventionMatches";
        case ErrorKind::AddViolated: return "AddViolated";
        case ErrorKind::KpViolated: return "KpViolated";
        case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
        case ErrorKind::UnsupportedCusp: return "UnsupportedCusp";
    }
    return "Unknown";
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1;
    a = mod(a, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 gcd(i64 a, i64 b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return std::llabs(a / gcd(a, b) * b);
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

i64 invmod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 x, y;
    if (ext_gcd(mod(a, m), m, x, y) != 1) fail(ErrorKind::NotAUnit, "invmod: not a unit");
    return mod(x, m);
}

i64 ipow(i64 b, unsigned e) {
    i64 r = 1;
    while (e--) r *= b;
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    n = std::llabs(n);
    for (i64 q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto [q, e] : factorize(n)) {
        std::size_t k = ds.size();
        i64 pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < k; ++j) ds.push_back(ds[j] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

int vp(i64 n, i64 p) {
    if (n == 0) fail(ErrorKind::ZeroInput, "valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int vp(const BigInt& n, i64 p) {
    if (n == 0) fail(ErrorKind::ZeroInput, "valuation of zero");
    BigInt pp = static_cast<unsigned long>(p);
    BigInt m = n;
    return static_cast<int>(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

int vp(const Rat& r, i64 p) {
    if (r == 0) fail(ErrorKind::ZeroInput, "valuation of zero");
    return vp(BigInt(r.get_num()), p) - vp(BigInt(r.get_den()), p);
}

i64 mult_order(i64 a, i64 m) {
    if (gcd(a, m) != 1) fail(ErrorKind::NotAUnit, "mult_order: not a unit");
    i64 ord = euler_phi(m);
    for (auto [q, e] : factorize(ord)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(a, ord / q, m) == 1 % m) ord /= q;
            else break;
        }
    }
    return ord;
}

i64 primitive_root(i64 p) {
    i64 phi = euler_phi(p);
    auto fs = factorize(phi);
    for (i64 g = 2;; ++g) {
        if (gcd(g, p) != 1) continue;
        bool ok = true;
        for (auto [q, e] : fs) {
            if (powmod(g, phi / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

int legendre(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

i64 sqrt_mod(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (mulmod(x, x, p) == a) return x;
    fail(ErrorKind::InvalidInput, "sqrt_mod: not a square");
}

std::pair<i64, i64> teichmuller_decompose(i64 a, i64 p, int n) {
    i64 q = ipow(p, n + 1);
    if (a % p == 0) fail(ErrorKind::NotAUnit, "teichmuller_decompose: p divides a");
    i64 w = powmod(a, ipow(p, n), q);
    i64 u = mulmod(mod(a, q), invmod(w, q), q);
    return {w, u};
}

TnTable::TnTable(i64 p, int n, i64 M, i64 gamma)
    : p_(p), n_(n), M_(M), gamma_(gamma == 0 ? 1 + p : gamma) {
    if (p < 3 || !is_prime(p)) fail(ErrorKind::InvalidInput, "TnTable: p must be an odd prime");
    if (n < 0 || M < 1 || M % p == 0) fail(ErrorKind::InvalidInput, "TnTable: bad level");
    pn_ = ipow(p, n);
    i64 q = pn_ * p;
    modulus_ = q * M;
    if (mod(gamma_, p) != 1 || (n >= 1 && mod(gamma_, p * p) == 1))
        fail(ErrorKind::InvalidInput, "TnTable: gamma must generate 1 + pZ_p");
    std::vector<i64> dlog(q, -1);
    i64 g = 1;
    for (i64 t = 0; t < pn_; ++t) {
        dlog[g] = t;
        g = mulmod(g, gamma_, q);
    }
    table_.assign(modulus_, -1);
    for (i64 a = 0; a < modulus_; ++a) {
        if (gcd(a, modulus_) != 1) continue;
        auto [w, u] = teichmuller_decompose(a % q, p, n);
        table_[a] = dlog[u];
    }
}

i64 TnTable::operator()(i64 a) const { return table_[mod(a, modulus_)]; }

std::vector<i64> cyclotomic_poly(i64 m) {
    // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}, computed by exact division.
    std::vector<i64> num{1};
    std::vector<i64> den{1};
    auto mul = [](const std::vector<i64>& a, i64 d) {
        std::vector<i64> r(a.size() + d, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i + d] += a[i];
            r[i] -= a[i];
        }
        return r;
    };
    for (i64 d : divisors(m)) {
        i64 k = m / d;
        int mu = 1;
        for (auto [q, e] : factorize(k)) {
            if (e > 1) mu = 0;
            else mu = -mu;
        }
        if (mu == 1) num = mul(num, d);
        else if (mu == -1) den = mul(den, d);
    }
    // num / den, den monic up to sign of constant term.
    std::size_t dn = den.size() - 1;
    std::vector<i64> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        i64 c = num[i] / den[dn];
        q[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

}  // namespace mtk
