#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtk/error.hpp"
#include "mtk/iwasawa.hpp"
#include "mtk/kida.hpp"
#include "mtk/mazur_tate.hpp"
#include "mtk/oracle.hpp"
#include "mtk/specs.hpp"

namespace py = pybind11;
using namespace mtk;

namespace {

using SymPtr = std::shared_ptr<EigenSymbol>;

py::dict inv_dict(const InvariantPair& v) {
    py::dict d;
    d["infinite"] = v.infinite;
    if (!v.infinite) {
        d["mu"] = v.mu.get_str();
        d["lambda"] = v.lambda;
        d["level_bound"] = v.level_bound;
    }
    return d;
}

py::dict kida_dict(const KidaReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["lhs"] = inv_dict(r.inv_L);
    d["base"] = inv_dict(r.inv_K);
    d["degree_inf"] = r.degree_inf;
    d["p1_total"] = r.p1_total;
    d["p2_total"] = r.p2_total;
    d["rhs"] = r.rhs;
    d["verdict"] = verdict_name(r.verdict);
    py::list primes;
    for (const auto& q : r.primes) {
        py::dict e;
        e["ell"] = q.ell;
        e["reduction"] = q.reduction;
        e["e_rel"] = q.e_rel;
        e["f_rel"] = q.f_rel;
        e["delta"] = q.delta;
        e["count"] = q.count;
        e["contribution"] = q.contribution;
        primes.append(e);
    }
    d["primes"] = primes;
    return d;
}

SymPtr symbol_for(const EllipticCurve& E, i64 p, std::optional<i64> sturm, const std::string& cache) {
    return std::make_shared<EigenSymbol>(cached_symbol(E, p, sturm, cache));
}

KidaInstance instance(const std::string& curve, i64 p, const std::string& K, const std::string& L, int n, int B,
                      const std::string& convention) {
    EllipticCurve E = parse_curve(curve);
    KidaInstance I;
    I.sym = symbol_for(E, p, std::nullopt, "");
    I.curve = E;
    I.N = E.conductor();
    I.p = p;
    I.K = parse_field(K);
    I.L = parse_field(L);
    I.n = n;
    I.B = B;
    I.convention = parse_convention(convention);
    if (I.convention != PrimeConvention::Curve)
        for (auto [ell, e] : factorize(I.L.conductor())) I.a[ell] = E.a_ell(ell);
    return I;
}

}  // namespace

PYBIND11_MODULE(_mtk, m) {
    m.doc() = "Mazur-Tate elements, Iwasawa invariants and Kida's formula";
    m.attr("__version__") = MTK_VERSION;

    static PyObject* error_type = py::exception<Error>(m, "MtkError", PyExc_ValueError).release().ptr();
    py::register_exception_translator([](std::exception_ptr ptr) {
        try {
            if (ptr) std::rethrow_exception(ptr);
        } catch (const Error& e) {
            PyErr_SetString(error_type, (std::string(kind_name(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.def("curve_labels", &builtin_curve_labels);

    py::class_<EllipticCurve>(m, "Curve")
        .def(py::init(&parse_curve), py::arg("spec"))
        .def_property_readonly("label", &EllipticCurve::label)
        .def_property_readonly("conductor", &EllipticCurve::conductor)
        .def_property_readonly("ainvs", &EllipticCurve::ainvs)
        .def_property_readonly("discriminant", [](const EllipticCurve& E) { return E.discriminant().get_str(); })
        .def("a_ell", [](const EllipticCurve& E, i64 ell) { return E.a_ell(ell); })
        .def("count_points", [](const EllipticCurve& E, i64 ell) { return E.count_points(ell); })
        .def("reduction", [](const EllipticCurve& E, i64 ell) { return std::string(reduction_name(E.classify(ell).kind)); })
        .def("real_period", &real_period);

    py::class_<EigenSymbol, SymPtr>(m, "EigenSymbol")
        .def(py::init([](const EllipticCurve& E, i64 p, std::optional<i64> sturm, const std::string& cache) {
                 return symbol_for(E, p, sturm, cache);
             }),
             py::arg("curve"), py::arg("p"), py::arg("sturm_override") = py::none(), py::arg("cache_dir") = "")
        .def_property_readonly("N", &EigenSymbol::N)
        .def_property_readonly("p", &EigenSymbol::p)
        .def_property_readonly("sturm", &EigenSymbol::sturm)
        .def("eval", [](const EigenSymbol& s, i64 a, i64 m, int sign) { return s.eval(a, m, sign).get_str(); },
             py::arg("a"), py::arg("m"), py::arg("sign") = 0);

    m.def(
        "theta",
        [](const EigenSymbol& sym, int n, i64 M, const std::string& psi_spec) {
            DirichletChar psi = parse_char(psi_spec);
            auto R = twist_ring(sym.p(), {psi.primitive().order()});
            GroupElem G = twist_exact(theta_raw(sym, sym.p(), n, M), psi, R);
            py::dict d;
            d["den"] = G.den().get_str();
            std::vector<std::string> c;
            for (i64 t = 0; t < G.size(); ++t) c.push_back(G.at(t).str());
            d["coefficients"] = c;
            return d;
        },
        py::arg("sym"), py::arg("n"), py::arg("M") = 1, py::arg("psi") = "trivial");

    m.def(
        "invariants",
        [](const EigenSymbol& sym, int n, i64 M, const std::string& psi_spec, int B) {
            DirichletChar psi = parse_char(psi_spec);
            auto R = twist_ring(sym.p(), {psi.primitive().order()});
            return inv_dict(invariants(twist_exact(theta_raw(sym, sym.p(), n, M), psi, R), B));
        },
        py::arg("sym"), py::arg("n"), py::arg("M") = 1, py::arg("psi") = "trivial", py::arg("B") = 20);

    m.def(
        "tame_compat",
        [](const EigenSymbol& sym, i64 a_ell, int n, i64 M, i64 ell, const std::string& psi) {
            auto r = check_tame_compat(sym, a_ell, sym.p(), n, M, ell, parse_char(psi));
            return r.equal;
        },
        py::arg("sym"), py::arg("a_ell"), py::arg("n"), py::arg("M"), py::arg("ell"), py::arg("psi") = "trivial");

    m.def(
        "transition",
        [](const EigenSymbol& sym, i64 a_ell, int n, i64 M, i64 ell, const std::string& psi, int B) {
            auto r = check_transition(sym, a_ell, sym.p(), n, M, ell, parse_char(psi), B);
            py::dict d;
            d["at_M"] = inv_dict(r.at_M);
            d["at_Ml"] = inv_dict(r.at_Ml);
            d["g"] = r.g;
            d["status"] = transition_status_name(r.status);
            return d;
        },
        py::arg("sym"), py::arg("a_ell"), py::arg("n"), py::arg("M"), py::arg("ell"), py::arg("psi") = "trivial",
        py::arg("B") = 20);

    m.def(
        "kida",
        [](const std::string& curve, i64 p, const std::string& K, const std::string& L, int n, int B,
           const std::string& convention) { return kida_dict(verify_kida(instance(curve, p, K, L, n, B, convention))); },
        py::arg("curve"), py::arg("p"), py::arg("K") = "Q", py::arg("L") = "Q", py::arg("n") = 1, py::arg("B") = 20,
        py::arg("convention") = "curve");

    m.def(
        "tower",
        [](const std::string& curve, i64 p, const std::string& M, const std::string& K, const std::string& L, int n,
           int B) {
            auto I = instance(curve, p, "Q", "Q", n, B, "curve");
            auto t = verify_tower_consistency(I, parse_field(M), parse_field(K), parse_field(L));
            py::dict d;
            d["corrections"] = std::vector<i64>{t.corr_LM, t.corr_KM, t.corr_LK};
            d["degree_LK"] = t.degree_LK;
            d["corrections_consistent"] = t.corrections_consistent;
            d["lambda_consistent"] = t.lambda_consistent;
            return d;
        },
        py::arg("curve"), py::arg("p"), py::arg("M"), py::arg("K"), py::arg("L"), py::arg("n"), py::arg("B") = 20);

    m.def(
        "signed_growth",
        [](const std::string& curve, i64 p, const std::vector<int>& levels, const std::string& psi, int B) {
            EllipticCurve E = parse_curve(curve);
            auto sym = symbol_for(E, p, std::nullopt, "");
            auto r = signed_growth_check(*sym, E.a_ell(p), p, parse_char(psi), levels, B);
            py::dict d;
            d["lambda_minus_q"] = r.diff;
            d["q"] = r.q;
            d["mu_zero"] = r.mu_zero;
            d["constant"] = r.constant;
            return d;
        },
        py::arg("curve"), py::arg("p"), py::arg("levels"), py::arg("psi") = "trivial", py::arg("B") = 20);

    m.def(
        "gauss_sum", [](const std::string& chi) { return gauss_sum(parse_char(chi)); }, py::arg("chi"));

    m.def(
        "lvalue",
        [](const std::string& curve, const std::string& chi, i64 bound, double tol) {
            auto f = QExpansion::from_curve(parse_curve(curve), bound);
            return lvalue_twisted(f, parse_char(chi), fricke_sign(f, tol), tol).z;
        },
        py::arg("curve"), py::arg("chi") = "trivial", py::arg("qexp_bound") = 10000, py::arg("tol") = 1e-9,
        "L(f, conj chi, 1) from Birch's formula");

    m.def(
        "check_interpolation",
        [](const std::string& curve, i64 p, int n, int i, i64 M, const std::string& psi, i64 bound, double tol) {
            EllipticCurve E = parse_curve(curve);
            auto sym = symbol_for(E, p, std::nullopt, "");
            auto f = QExpansion::from_curve(E, bound);
            auto cal = calibrate_periods(*sym, f, tol * 1e-3);
            auto r = check_interpolation(*sym, f, cal, parse_char(psi), E.a_ell(p), n, i > 0 ? i : n, M, tol);
            py::dict d;
            d["exact"] = r.exact;
            d["oracle"] = r.oracle;
            d["rel_err"] = r.rel_err;
            d["agree"] = r.agree;
            return d;
        },
        py::arg("curve"), py::arg("p"), py::arg("n"), py::arg("i") = 0, py::arg("M") = 1, py::arg("psi") = "trivial",
        py::arg("qexp_bound") = 10000, py::arg("tol") = 1e-6);
}
