#include "mtk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mtk/error.hpp"
#include "mtk/mazur_tate.hpp"

namespace mtk {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kRound = 1e-15;

Complex e_frac(i64 num, i64 den) { return std::polar(1.0, kTwoPi * static_cast<double>(mod(num, den)) / den); }

Complex chi_value(const DirichletChar& chi, i64 a) {
    auto k = chi.value(a);
    if (!k) return 0;
    return e_frac(*k, chi.order());
}

}  // namespace

QExpansion::QExpansion(i64 N, std::vector<i64> a) : N_(N), a_(std::move(a)) {
    if (N < 1 || a_.size() < 2 || a_[1] != 1) fail(ErrorKind::InvalidInput, "q-expansion needs a_1 = 1");
}

QExpansion QExpansion::from_curve(const EllipticCurve& E, i64 bound) {
    if (bound < 1) fail(ErrorKind::InvalidInput, "q-expansion bound must be positive");
    std::vector<i64> spf(bound + 1, 0);
    for (i64 i = 2; i <= bound; ++i)
        if (spf[i] == 0)
            for (i64 j = i; j <= bound; j += i)
                if (spf[j] == 0) spf[j] = i;
    std::vector<i64> a(bound + 1, 0);
    a[1] = 1;
    const i64 N = E.conductor();
    for (i64 n = 2; n <= bound; ++n) {
        i64 l = spf[n], m = n, pk = 1;
        while (m % l == 0) {
            m /= l;
            pk *= l;
        }
        if (m > 1) {
            a[n] = a[pk] * a[m];
            continue;
        }
        // n is a prime power l^k
        if (n == l) {
            a[n] = E.a_ell(l);
        } else if (N % l == 0) {
            a[n] = a[n / l] * a[l];
        } else {
            a[n] = a[l] * a[n / l] - l * a[n / (l * l)];
        }
    }
    return QExpansion(N, std::move(a));
}

QExpansion QExpansion::truncated(i64 bound) const {
    if (bound < 1 || bound > this->bound()) fail(ErrorKind::InvalidInput, "truncation beyond the stored bound");
    return QExpansion(N_, std::vector<i64>(a_.begin(), a_.begin() + bound + 1));
}

ComplexVal q_integral(const QExpansion& f, i64 num, i64 den, double y) {
    if (y <= 0) fail(ErrorKind::InvalidInput, "q_integral: need a point in the upper half plane");
    const i64 B = f.bound();
    const double r = std::exp(-kTwoPi * y);
    Complex s = 0;
    double mag = 0, rn = 1;
    for (i64 n = 1; n <= B; ++n) {
        rn *= r;
        if (rn == 0) break;
        if (f.a(n) == 0) continue;
        double c = static_cast<double>(f.a(n)) / n * rn;
        s += c * e_frac(mulmod(mod(num, den), n % den, den), den);
        mag += std::abs(c);
    }
    double tail = 2 * std::pow(r, static_cast<double>(B + 1)) / (1 - r);
    return {s, tail + kRound * (mag + 1) * std::sqrt(static_cast<double>(B))};
}

ComplexVal eichler_integral(const QExpansion& f, i64 a, i64 m, int eps, double tol, double scale) {
    if (m == 0) return {0, 0};
    if (m < 0) {
        a = -a;
        m = -m;
    }
    if (gcd(a, m) != 1) fail(ErrorKind::InvalidInput, "eichler_integral: need gcd(a, m) = 1");
    if (eps != 1 && eps != -1) fail(ErrorKind::InvalidInput, "Fricke sign must be +1 or -1");
    const i64 N = f.N();
    ComplexVal lam;  // -2 pi i int_r^{i infinity} f
    if (m % N == 0) {
        // gamma = (a b; m d) in Gamma_0(N): int_r^inf = int_inf^z + int_{gamma z}^inf, z = (-d + i) / m
        i64 d = invmod(mod(a, m), m);
        ComplexVal up = q_integral(f, a, m, 1.0 / m);
        ComplexVal low = q_integral(f, -d, m, 1.0 / m);
        lam = {up.z - low.z, up.err + low.err};
    } else if (gcd(m, N) == 1) {
        // gamma = (b a; d m), N | d, gamma(0) = r; sigma = W_N gamma^{-1} sends r to infinity
        i64 d = m == 1 ? 0 : N * mod(-invmod(mulmod(mod(a, m), N % m, m), m), m);
        double h = scale / (m * std::sqrt(static_cast<double>(N)));
        ComplexVal upper = q_integral(f, a, m, h);
        ComplexVal lower = q_integral(f, d, N * m, 1.0 / (static_cast<double>(N) * m * m * h));
        lam = {upper.z - static_cast<double>(eps) * lower.z, upper.err + lower.err};
    } else {
        std::ostringstream os;
        os << "cusp " << a << "/" << m << " is neither equivalent to infinity nor coprime to the level " << N;
        fail(ErrorKind::UnsupportedCusp, os.str());
    }
    if (lam.err > tol) {
        std::ostringstream os;
        os << "error bound " << lam.err << " above tolerance " << tol << " at q-expansion bound " << f.bound();
        fail(ErrorKind::ToleranceUnreachable, os.str());
    }
    return {-lam.z, lam.err};
}

int fricke_sign(const QExpansion& f, double tol) {
    double best = 0;
    int sign = 0;
    double gap[2];
    for (int k = 0; k < 2; ++k) {
        int eps = k == 0 ? 1 : -1;
        ComplexVal x = eichler_integral(f, 0, 1, eps, tol, 1.0);
        ComplexVal y = eichler_integral(f, 0, 1, eps, tol, 1.5);
        gap[k] = std::abs(x.z - y.z) - x.err - y.err;
        if (gap[k] <= tol && (sign == 0 || gap[k] < best)) {
            best = gap[k];
            sign = eps;
        }
    }
    if (sign == 0 || (gap[0] <= tol && gap[1] <= tol))
        fail(ErrorKind::ToleranceUnreachable, "Fricke sign not determined at this q-expansion bound");
    return sign;
}

CycInt gauss_sum_exact(const DirichletChar& chi, i64 n) {
    if (!chi.is_primitive()) fail(ErrorKind::InvalidInput, "gauss_sum: character must be primitive");
    const i64 m = chi.modulus(), O = lcm(m, chi.order());
    i64 p = 2;
    for (auto [q, e] : factorize(O)) p = q;
    CycRingPtr R = CycRing::for_orders(p, {O});
    CycInt t(R);
    for (i64 a = 0; a < m; ++a) {
        auto k = chi.value(a);
        if (!k) continue;
        t.add_root(BigInt(1), *k * (O / chi.order()) + mulmod(a, mod(n, m), m) * (O / m), O);
    }
    return t;
}

Complex gauss_sum(const DirichletChar& chi, i64 n) {
    if (!chi.is_primitive()) fail(ErrorKind::InvalidInput, "gauss_sum: character must be primitive");
    const i64 m = chi.modulus();
    Complex t = 0;
    for (i64 a = 0; a < m; ++a) t += chi_value(chi, a) * e_frac(mulmod(a, mod(n, m), m), m);
    return t;
}

ComplexVal birch_sum(const QExpansion& f, const DirichletChar& chi, int eps, double tol) {
    if (!chi.is_primitive()) fail(ErrorKind::InvalidInput, "birch_sum: character must be primitive");
    const i64 m = chi.modulus();
    ComplexVal s{0, 0};
    for (i64 a = 0; a < m; ++a) {
        if (gcd(a, m) != 1) continue;
        ComplexVal v = eichler_integral(f, a, m, eps, tol);
        s.z -= chi_value(chi, a) * v.z;
        s.err += v.err;
    }
    return s;
}

ComplexVal lvalue_twisted(const QExpansion& f, const DirichletChar& chi, int eps, double tol) {
    ComplexVal s = birch_sum(f, chi, eps, tol);
    Complex tau = gauss_sum(chi);
    return {s.z / tau, s.err / std::abs(tau)};
}

namespace {

long double agm(long double a, long double b) {
    for (int i = 0; i < 100 && std::fabs(a - b) > 1e-19L * std::fabs(a); ++i) {
        long double c = (a + b) / 2;
        b = std::sqrt(a * b);
        a = c;
    }
    return a;
}

}  // namespace

double real_period(const EllipticCurve& E) {
    // roots of 4x^3 + b2 x^2 + 2 b4 x + b6
    const long double b2 = E.b2().get_d(), b4 = E.b4().get_d(), b6 = E.b6().get_d();
    const long double A = b2 / 4, Bc = b4 / 2, C = b6 / 4;  // x^3 + A x^2 + B x + C
    std::complex<long double> r[3] = {{0.4L, 0.9L}, {-0.6L, 0.3L}, {0.2L, -0.7L}};
    auto poly = [&](std::complex<long double> x) { return ((x + A) * x + Bc) * x + C; };
    for (int it = 0; it < 500; ++it)
        for (int i = 0; i < 3; ++i) {
            std::complex<long double> den = 1;
            for (int j = 0; j < 3; ++j)
                if (j != i) den *= r[i] - r[j];
            r[i] -= poly(r[i]) / den;
        }
    const long double pi = std::numbers::pi_v<long double>;
    if (E.discriminant() > 0) {
        long double e[3] = {r[0].real(), r[1].real(), r[2].real()};
        std::sort(e, e + 3, std::greater<>());
        return static_cast<double>(2 * pi / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[0] - e[1])));
    }
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(r[i].imag()) < std::fabs(r[k].imag())) k = i;
    long double e1 = r[k].real();
    long double z = std::sqrt(3 * e1 * e1 + 2 * A * e1 + Bc);
    return static_cast<double>(2 * pi / agm(2 * std::sqrt(z), std::sqrt(2 * z + 3 * e1 + A)));
}

PeriodCalibration calibrate_periods(const EigenSymbol& sym, const QExpansion& f, double tol) {
    if (sym.N() != f.N()) fail(ErrorKind::InvalidInput, "calibrate_periods: level mismatch");
    PeriodCalibration cal;
    cal.eps = fricke_sign(f, tol);
    bool plus = false, minus = false;
    for (i64 m = 1; m <= 200 && !(plus && minus); ++m) {
        if (gcd(m, f.N()) != 1 && m % f.N() != 0) continue;
        for (i64 a = 1; a <= m && !(plus && minus); ++a) {
            if (gcd(a, m) != 1) continue;
            Rat pv = sym.eval(a, m, 1), mv = sym.eval(a, m, -1);
            if ((plus || pv == 0) && (minus || mv == 0)) continue;
            Complex v = -eichler_integral(f, a, m, cal.eps, tol).z;
            if (!plus && pv != 0) {
                cal.omega_plus = v.real() / pv.get_d();
                cal.plus_num = a;
                cal.plus_den = m;
                plus = true;
            }
            if (!minus && mv != 0) {
                cal.omega_minus = Complex(0, v.imag() / mv.get_d());
                cal.minus_num = a;
                cal.minus_den = m;
                minus = true;
            }
        }
    }
    if (!plus || !minus) fail(ErrorKind::ToleranceUnreachable, "no cusp with nonzero symbol values found");
    return cal;
}

InterpolationReport check_interpolation(const EigenSymbol& sym, const QExpansion& f, const PeriodCalibration& cal,
                                        const DirichletChar& psi, i64 a_p, int n, int i, i64 M, double tol) {
    const i64 p = sym.p();
    if (i < 1 || i > n) fail(ErrorKind::InvalidInput, "check_interpolation: need 1 <= i <= n");
    DirichletChar chi = psi.primitive() * DirichletChar::canonical(p, i);
    const i64 Qi = ipow(p, i + 1) * M;
    if (chi.modulus() != Qi) fail(ErrorKind::InvalidInput, "psi chi_i is not primitive of conductor p^{i+1} M");

    CycRingPtr R = twist_ring(p, {psi.primitive().order()}, n);
    GroupElem G = twist_exact(theta_raw(sym, p, n, M), psi, R);
    InterpolationReport rep;
    rep.exact = G.eval_root_num(i).to_complex() / G.den().get_d();

    ComplexVal b = birch_sum(f, chi, cal.eps, tol * 1e-3);
    Complex omega = chi.parity() == 1 ? cal.omega_plus : cal.omega_minus;
    Rat factor = Rat(ipow(p, n - i)) * c_values(a_p, 1, 2, p, n - i + 1)[n - i + 1];
    rep.oracle = factor.get_d() * b.z / omega;
    rep.oracle_err = std::abs(factor.get_d()) * b.err / std::abs(omega);
    double scale = std::max(std::abs(rep.exact), std::abs(rep.oracle));
    rep.rel_err = scale == 0 ? 0 : std::abs(rep.exact - rep.oracle) / scale;
    rep.agree = scale < tol ? true : rep.rel_err < tol;
    std::ostringstream os;
    os << "exact " << rep.exact << " oracle " << rep.oracle << " rel " << rep.rel_err;
    rep.detail = os.str();
    return rep;
}

}  // namespace mtk
