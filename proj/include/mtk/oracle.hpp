#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mtk/characters.hpp"
#include "mtk/cyclotomic.hpp"
#include "mtk/ellcurve.hpp"
#include "mtk/modsym.hpp"

namespace mtk {

using Complex = std::complex<double>;

struct ComplexVal {
    Complex z;
    double err = 0;  // absolute error bound (tail plus rounding)
};

// f = sum a_n q^n truncated at n <= bound.
class QExpansion {
public:
    QExpansion(i64 N, std::vector<i64> a);  // a[0] unused, a[1] = 1
    static QExpansion from_curve(const EllipticCurve& E, i64 bound);

    i64 N() const { return N_; }
    i64 bound() const { return static_cast<i64>(a_.size()) - 1; }
    i64 a(i64 n) const { return a_.at(n); }
    QExpansion truncated(i64 bound) const;

private:
    i64 N_;
    std::vector<i64> a_;
};

// Partial sum sum_{n <= B} a_n / n e(n w) for w = num/den + i y, with the
// Hasse tail bound |a_n| <= d(n) sqrt(n) <= 2n.
ComplexVal q_integral(const QExpansion& f, i64 num, i64 den, double y);

// 2 pi i int_{a/m}^{i infinity} f(z) dz.  Cusps with N | m use a matrix in
// Gamma_0(N) fixing infinity; cusps with gcd(m, N) = 1 split the path at
// height h = scale / (m sqrt N) and move the lower piece with the Fricke
// involution.  m = 0 denotes the cusp infinity.
ComplexVal eichler_integral(const QExpansion& f, i64 a, i64 m, int fricke_sign, double tol = 1e-9,
                            double scale = 1.0);

// Eigenvalue of f under W_N, from the agreement of L(f, 1) at two splitting
// heights.  Throws ToleranceUnreachable if neither sign is consistent.
int fricke_sign(const QExpansion& f, double tol = 1e-9);

// Gauss sum tau(n, chi) = sum_a chi(a) e(n a / m), chi primitive.
CycInt gauss_sum_exact(const DirichletChar& chi, i64 n = 1);
Complex gauss_sum(const DirichletChar& chi, i64 n = 1);

// sum_a chi(a) L(a/m) with L(r) = -2 pi i int_r^{i infinity} f, which equals
// tau(chi) L(f, conj chi, 1).
ComplexVal birch_sum(const QExpansion& f, const DirichletChar& chi, int eps, double tol = 1e-9);
// L(f, conj chi, 1) = birch_sum / tau(chi).
ComplexVal lvalue_twisted(const QExpansion& f, const DirichletChar& chi, int eps, double tol = 1e-9);

// Least positive real period times the number of real components.
double real_period(const EllipticCurve& E);

// L(r) = omega_plus phi^+(r) + omega_minus phi^-(r); omega_minus is purely
// imaginary.
struct PeriodCalibration {
    int eps = 1;
    Complex omega_plus, omega_minus;
    i64 plus_num = 0, plus_den = 1, minus_num = 0, minus_den = 1;  // cusps used
};
PeriodCalibration calibrate_periods(const EigenSymbol& sym, const QExpansion& f, double tol = 1e-9);

struct InterpolationReport {
    Complex exact;   // Theta_n(f, psi, zeta_{p^i} - 1) via the complex embedding
    Complex oracle;  // p^{n-i} c_{n-i+1} tau(psi chi_i) L(f, conj(psi chi_i), 1) / Omega
    double oracle_err = 0;
    double rel_err = 0;
    bool agree = false;
    std::string detail;
};

// Requires psi chi_i primitive of conductor p^{i+1} M, 1 <= i <= n.
InterpolationReport check_interpolation(const EigenSymbol& sym, const QExpansion& f, const PeriodCalibration& cal,
                                        const DirichletChar& psi, i64 a_p, int n, int i, i64 M, double tol = 1e-6);

}  // namespace mtk
