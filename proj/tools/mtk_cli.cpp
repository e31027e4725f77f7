// mtk: command line front end.  Exit status 0 = success or equal verdict,
// 1 = mathematical verdict failure, 2 = configuration error, 3 = precision
// or tolerance exhausted.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtk/error.hpp"
#include "mtk/iwasawa.hpp"
#include "mtk/kida.hpp"
#include "mtk/mazur_tate.hpp"
#include "mtk/oracle.hpp"
#include "mtk/specs.hpp"

using json = nlohmann::json;
using namespace mtk;

namespace {

struct Config {
    std::string command;
    std::string curve = "11a1";
    i64 level = 0;             // eigenform input instead of a curve
    std::string hecke;         // "ell:a,ell:a,..."
    i64 p = 3;
    std::string K = "Q", L = "Q", M_field = "Q";
    std::string n = "1";
    int i = 0;
    i64 tame = 1;
    std::string psi = "trivial";
    int precision = 20;
    i64 qexp_bound = 10000;
    double tol = 1e-6;
    u64 seed = 1;
    std::string format = "json";
    i64 sturm_override = 0;
    std::string convention = "curve";
    bool scan = false;

    json to_json() const {
        json j;
        j["command"] = command;
        if (level > 0) {
            j["level"] = level;
            j["hecke"] = hecke;
        } else {
            j["curve"] = curve;
        }
        j["p"] = p;
        if (command == "kida" || command == "tower") {
            j["K"] = K;
            j["L"] = L;
            j["p1p2_convention"] = convention;
        }
        if (command == "tower") j["M"] = M_field;
        j["n"] = n;
        if (command == "theta" || command == "invariants" || command == "signed" || command == "oracle-check") {
            j["psi"] = psi;
            j["tame_level"] = tame;
        }
        if (command == "oracle-check") j["i"] = i;
        if (command == "signed") j["scan"] = scan;
        j["precision"] = precision;
        j["qexp_bound"] = qexp_bound;
        j["tol"] = tol;
        j["seed"] = seed;
        j["format"] = format;
        j["sturm_override"] = sturm_override > 0 ? json(sturm_override) : json(nullptr);
        return j;
    }
};

struct Verdict {
    json result;
    int status = 0;
};

std::string cache_dir() {
    const char* d = std::getenv("MTK_CACHE_DIR");
    return d ? d : "";
}

std::optional<i64> sturm(const Config& c) {
    if (c.sturm_override > 0) return c.sturm_override;
    return std::nullopt;
}

std::map<i64, i64> parse_hecke(const std::string& s) {
    std::map<i64, i64> a;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) fail(ErrorKind::InvalidInput, "hecke entry '" + item + "' needs 'ell:a'");
        try {
            a[std::stoll(item.substr(0, colon))] = std::stoll(item.substr(colon + 1));
        } catch (const std::logic_error&) {
            fail(ErrorKind::InvalidInput, "hecke entry '" + item + "' is not 'ell:a'");
        }
    }
    return a;
}

struct Form {
    std::optional<EllipticCurve> curve;
    i64 N = 0;
    std::map<i64, i64> a;
    std::shared_ptr<const EigenSymbol> sym;

    i64 a_ell(i64 ell) const {
        if (curve) return curve->a_ell(ell);
        auto it = a.find(ell);
        if (it == a.end()) fail(ErrorKind::InvalidInput, "no Hecke eigenvalue given at " + std::to_string(ell));
        return it->second;
    }
};

Form load_form(const Config& c) {
    Form f;
    if (c.level > 0) {
        f.N = c.level;
        f.a = parse_hecke(c.hecke);
        f.sym = std::make_shared<const EigenSymbol>(ManinSpace(c.level), f.a, c.p, sturm(c));
    } else {
        f.curve = parse_curve(c.curve);
        f.N = f.curve->conductor();
        f.sym = std::make_shared<const EigenSymbol>(cached_symbol(*f.curve, c.p, sturm(c), cache_dir()));
    }
    return f;
}

json inv_json(const InvariantPair& v) {
    json j;
    j["infinite"] = v.infinite;
    if (!v.infinite) {
        j["mu"] = v.mu.get_str();
        j["lambda"] = v.lambda;
        j["level_bound"] = v.level_bound;
    }
    return j;
}

Verdict run_space(const Config& c) {
    Form f = load_form(c);
    ManinSpace S(f.N);
    json r;
    r["level"] = f.N;
    r["dimension"] = S.dim();
    r["cuspidal_dimension"] = static_cast<i64>(S.cuspidal_basis().size());
    r["gamma0_index"] = gamma0_index(f.N);
    r["sturm"] = f.sym->sturm();
    r["plus_scale"] = f.sym->plus_scale().get_str();
    r["minus_scale"] = f.sym->minus_scale().get_str();
    json rows = json::array();
    for (i64 m : {i64(1), c.p})
        for (i64 a = 0; a < m; ++a) {
            if (gcd(a, m) != 1) continue;
            rows.push_back({{"cusp", std::to_string(a) + "/" + std::to_string(m)},
                            {"plus", f.sym->eval(a, m, 1).get_str()},
                            {"minus", f.sym->eval(a, m, -1).get_str()}});
        }
    r["table"] = rows;
    return {r, 0};
}

Verdict run_theta(const Config& c) {
    Form f = load_form(c);
    DirichletChar psi = parse_char(c.psi);
    json rows = json::array();
    for (int n : parse_int_list(c.n)) {
        auto R = twist_ring(c.p, {psi.primitive().order()});
        GroupElem G = twist_exact(theta_raw(*f.sym, c.p, n, c.tame), psi, R);
        json coeffs = json::array();
        for (i64 t = 0; t < G.size(); ++t) coeffs.push_back(G.at(t).str());
        rows.push_back({{"n", n}, {"den", G.den().get_str()}, {"coefficients", coeffs}});
    }
    json r;
    r["table"] = rows;
    return {r, 0};
}

Verdict run_invariants(const Config& c) {
    Form f = load_form(c);
    DirichletChar psi = parse_char(c.psi);
    json rows = json::array();
    for (int n : parse_int_list(c.n)) {
        auto R = twist_ring(c.p, {psi.primitive().order()});
        auto inv = invariants(twist_exact(theta_raw(*f.sym, c.p, n, c.tame), psi, R), c.precision);
        json row = inv_json(inv);
        row["n"] = n;
        rows.push_back(row);
    }
    json r;
    r["table"] = rows;
    return {r, 0};
}

KidaInstance kida_instance(const Config& c, const Form& f) {
    KidaInstance I;
    I.sym = f.sym;
    I.curve = f.curve;
    I.N = f.N;
    I.p = c.p;
    I.K = parse_field(c.K);
    I.L = parse_field(c.L);
    I.B = c.precision;
    I.convention = parse_convention(c.convention);
    if (I.convention != PrimeConvention::Curve) {
        if (f.curve) {
            for (auto [ell, e] : factorize(I.L.conductor())) I.a[ell] = f.a_ell(ell);
        } else {
            I.a = f.a;
        }
    }
    return I;
}

json kida_json(const KidaReport& r) {
    json j;
    j["n"] = r.n;
    j["level_K"] = r.level_K;
    j["n_K"] = r.n_K;
    j["n_L"] = r.n_L;
    j["lhs"] = inv_json(r.inv_L);
    j["base"] = inv_json(r.inv_K);
    j["degree_inf"] = r.degree_inf;
    j["p1_total"] = r.p1_total;
    j["p2_total"] = r.p2_total;
    j["rhs"] = r.rhs;
    j["all_f_rel_one"] = r.all_f_rel_one;
    j["verdict"] = verdict_name(r.verdict);
    json primes = json::array();
    for (const auto& q : r.primes)
        primes.push_back({{"ell", q.ell},
                          {"reduction", q.reduction},
                          {"e_rel", q.e_rel},
                          {"f_rel", q.f_rel},
                          {"delta", q.delta},
                          {"count", q.count},
                          {"contribution", q.contribution}});
    j["table"] = primes;
    return j;
}

Verdict run_kida(const Config& c) {
    Form f = load_form(c);
    json rows = json::array();
    int status = 0;
    for (int n : parse_int_list(c.n)) {
        KidaInstance I = kida_instance(c, f);
        I.n = n;
        auto rep = verify_kida(I);
        if (rep.verdict == KidaVerdict::Unequal) status = 1;
        rows.push_back(kida_json(rep));
    }
    json r;
    if (rows.size() == 1) {
        r = rows[0];
    } else {
        r["reports"] = rows;
    }
    return {r, status};
}

Verdict run_tower(const Config& c) {
    Form f = load_form(c);
    KidaInstance I = kida_instance(c, f);
    auto ns = parse_int_list(c.n);
    if (ns.size() != 1) fail(ErrorKind::InvalidInput, "tower takes a single n");
    I.n = ns[0];
    auto t = verify_tower_consistency(I, parse_field(c.M_field), I.K, I.L);
    json r;
    r["L_over_M"] = kida_json(t.LM);
    r["K_over_M"] = kida_json(t.KM);
    r["L_over_K"] = kida_json(t.LK);
    r["corrections"] = {{"L_over_M", t.corr_LM}, {"K_over_M", t.corr_KM}, {"L_over_K", t.corr_LK}};
    r["degree_LK"] = t.degree_LK;
    r["corrections_consistent"] = t.corrections_consistent;
    r["lambda_consistent"] = t.lambda_consistent;
    return {r, t.corrections_consistent && t.lambda_consistent ? 0 : 1};
}

Verdict run_signed(Config c) {
    json r;
    if (c.scan) {
        json scanned = json::array();
        std::string found;
        for (const auto& lab : builtin_curve_labels()) {
            auto E = *builtin_curve(lab);
            if (E.conductor() % c.p == 0) continue;
            i64 ap = E.a_ell(c.p);
            scanned.push_back({{"curve", lab}, {"a_p", ap}, {"points", E.count_points(c.p)}});
            if (ap == 0 && found.empty()) found = lab;
        }
        r["scan"] = scanned;
        if (found.empty()) fail(ErrorKind::InvalidInput, "no built-in curve with a_p = 0");
        c.curve = found;
        r["curve"] = found;
    }
    Form f = load_form(c);
    i64 ap = f.a_ell(c.p);
    if (ap != 0) fail(ErrorKind::InvalidInput, "signed growth needs a_p = 0");
    auto rep = signed_growth_check(*f.sym, ap, c.p, parse_char(c.psi), parse_int_list(c.n), c.precision);
    json rows = json::array();
    for (std::size_t k = 0; k < rep.levels.size(); ++k) {
        json row = inv_json(rep.inv[k]);
        row["n"] = rep.levels[k];
        row["q_n"] = rep.q[k];
        row["lambda_minus_q"] = rep.diff[k];
        rows.push_back(row);
    }
    r["table"] = rows;
    r["mu_zero"] = rep.mu_zero;
    r["constant"] = rep.constant;
    return {r, rep.mu_zero && rep.constant ? 0 : 1};
}

Verdict run_oracle(const Config& c) {
    Form f = load_form(c);
    if (!f.curve) fail(ErrorKind::InvalidInput, "oracle-check needs a curve");
    auto qe = QExpansion::from_curve(*f.curve, c.qexp_bound);
    auto cal = calibrate_periods(*f.sym, qe, c.tol * 1e-3);
    json r;
    r["fricke_sign"] = cal.eps;
    r["omega_plus"] = cal.omega_plus.real();
    r["omega_minus"] = cal.omega_minus.imag();
    r["real_period"] = real_period(*f.curve);
    json rows = json::array();
    int status = 0;
    DirichletChar psi = parse_char(c.psi);
    i64 ap = f.a_ell(c.p);
    for (int n : parse_int_list(c.n)) {
        int lo = c.i > 0 ? c.i : n, hi = c.i > 0 ? c.i : n;
        for (int i = lo; i <= hi; ++i) {
            auto rep = check_interpolation(*f.sym, qe, cal, psi, ap, n, i, c.tame, c.tol);
            if (!rep.agree) status = 1;
            rows.push_back({{"n", n},
                            {"i", i},
                            {"exact", {rep.exact.real(), rep.exact.imag()}},
                            {"oracle", {rep.oracle.real(), rep.oracle.imag()}},
                            {"oracle_err", rep.oracle_err},
                            {"rel_err", rep.rel_err},
                            {"agree", rep.agree}});
        }
    }
    r["table"] = rows;
    return {r, status};
}

std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render(const json& report, const std::string& format, std::ostream& os) {
    if (format == "json") {
        os << report.dump(2) << "\n";
        return;
    }
    const json& res = report.contains("result") ? report["result"] : json::object();
    if (format == "tsv") {
        os << "# version\t" << report["version"].get<std::string>() << "\n";
        os << "# config\t" << report["config"].dump() << "\n";
        for (auto it = res.begin(); it != res.end(); ++it)
            if (it.key() != "table") os << "# " << it.key() << "\t" << scalar(*it) << "\n";
        if (res.contains("table") && !res["table"].empty()) {
            const json& t = res["table"];
            std::vector<std::string> cols;
            for (auto it = t[0].begin(); it != t[0].end(); ++it) cols.push_back(it.key());
            for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "\t" : "") << cols[k];
            os << "\n";
            for (const auto& row : t) {
                for (std::size_t k = 0; k < cols.size(); ++k)
                    os << (k ? "\t" : "") << (row.contains(cols[k]) ? scalar(row[cols[k]]) : "");
                os << "\n";
            }
        }
        if (report.contains("error")) os << "# error\t" << report["error"].dump() << "\n";
        return;
    }
    os << "mtk " << report["version"].get<std::string>() << "  " << report["config"]["command"].get<std::string>()
       << "\n";
    for (auto it = res.begin(); it != res.end(); ++it) {
        if (it.key() == "table") {
            os << "table:\n";
            for (const auto& row : *it) os << "  " << row.dump() << "\n";
        } else {
            os << it.key() << ": " << scalar(*it) << "\n";
        }
    }
    if (report.contains("error"))
        os << "error: " << report["error"]["kind"].get<std::string>() << ": "
           << report["error"]["message"].get<std::string>() << "\n";
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::PrecisionExhausted:
        case ErrorKind::ToleranceUnreachable:
            return 3;
        case ErrorKind::DescentResidual:
        case ErrorKind::CoefficientDrift:
        case ErrorKind::NoConventionMatches:
            return 1;
        default:
            return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"Mazur-Tate elements, Iwasawa invariants and Kida's formula"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--curve", c.curve, "Cremona label or 'a1,a2,a3,a4,a6/N[/2=type,3=type]'");
        sub->add_option("--level", c.level, "eigenform level (instead of --curve)");
        sub->add_option("--hecke", c.hecke, "eigenform Hecke eigenvalues 'ell:a,...' up to the Sturm bound");
        sub->add_option("-p,--prime", c.p, "odd prime p");
        sub->add_option("-n,--n", c.n, "level n, list or range (e.g. 1-3)");
        sub->add_option("--precision", c.precision, "p-adic precision B");
        sub->add_option("--qexp-bound", c.qexp_bound, "q-expansion truncation");
        sub->add_option("--tol", c.tol, "numerical tolerance");
        sub->add_option("--seed", c.seed, "random seed (recorded in the report)");
        sub->add_option("--format", c.format, "json, tsv or text")->check(CLI::IsMember({"json", "tsv", "text"}));
        sub->add_option("--sturm-override", c.sturm_override, "Hecke bound used to cut out the eigenspace");
    };
    auto add_twist = [&](CLI::App* sub) {
        sub->add_option("--psi", c.psi, "character 'trivial' or 'm:x1,x2,...'");
        sub->add_option("--tame", c.tame, "tame level M");
    };
    auto add_fields = [&](CLI::App* sub) {
        sub->add_option("-K,--K", c.K, "base field spec");
        sub->add_option("-L,--L", c.L, "extension field spec");
        sub->add_option("--p1p2-convention", c.convention, "curve, derived or displayed")
            ->check(CLI::IsMember({"curve", "derived", "displayed"}));
    };
    auto* space = app.add_subcommand("space", "modular symbol space and eigen-symbol");
    auto* theta = app.add_subcommand("theta", "twisted Mazur-Tate elements");
    auto* inv = app.add_subcommand("invariants", "mu and lambda of twisted Mazur-Tate elements");
    auto* kida = app.add_subcommand("kida", "verify Kida's formula for L/K");
    auto* tower = app.add_subcommand("tower", "consistency of Kida reports in M < K < L");
    auto* sgn = app.add_subcommand("signed", "lambda growth against q_n when a_p = 0");
    auto* orc = app.add_subcommand("oracle-check", "compare Mazur-Tate values with numerical L-values");
    for (auto* s : {space, theta, inv, kida, tower, sgn, orc}) add_common(s);
    for (auto* s : {theta, inv, sgn, orc}) add_twist(s);
    add_fields(kida);
    add_fields(tower);
    tower->add_option("-M,--M", c.M_field, "bottom field spec");
    sgn->add_flag("--scan", c.scan, "pick the first built-in curve with a_p = 0");
    orc->add_option("-i,--i", c.i, "evaluate at zeta_{p^i} (default i = n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (auto* s : app.get_subcommands()) c.command = s->get_name();

    json report;
    report["version"] = MTK_VERSION;
    report["config"] = c.to_json();
    int status = 0;
    try {
        if (c.p < 3 || !is_prime(c.p)) fail(ErrorKind::InvalidInput, "p must be an odd prime");
        Verdict v;
        if (c.command == "space") v = run_space(c);
        else if (c.command == "theta") v = run_theta(c);
        else if (c.command == "invariants") v = run_invariants(c);
        else if (c.command == "kida") v = run_kida(c);
        else if (c.command == "tower") v = run_tower(c);
        else if (c.command == "signed") v = run_signed(c);
        else v = run_oracle(c);
        report["result"] = v.result;
        status = v.status;
    } catch (const Error& e) {
        status = exit_code(e.kind());
        report["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
        std::cerr << json{{"error", report["error"]}, {"exit", status}}.dump() << "\n";
    }
    report["exit"] = status;
    render(report, c.format, std::cout);
    return status;
}
