#include "mtk/specs.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtk/error.hpp"

namespace mtk {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

i64 to_int(const std::string& s) {
    std::size_t pos = 0;
    i64 v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        fail(ErrorKind::InvalidInput, "not an integer: '" + s + "'");
    }
    if (pos != s.size()) fail(ErrorKind::InvalidInput, "not an integer: '" + s + "'");
    return v;
}

std::vector<DirichletChar> parse_chars(const std::string& list) {
    std::vector<DirichletChar> out;
    for (const auto& c : split(list, ';')) out.push_back(parse_char(c));
    if (out.empty()) fail(ErrorKind::InvalidInput, "empty character list");
    return out;
}

}  // namespace

DirichletChar parse_char(const std::string& spec) {
    if (spec == "trivial" || spec == "1") return DirichletChar::trivial();
    auto parts = split(spec, ':');
    if (parts.size() != 2) fail(ErrorKind::InvalidInput, "character spec must be 'trivial' or 'm:x1,x2,...'");
    i64 m = to_int(parts[0]);
    if (m < 1) fail(ErrorKind::InvalidInput, "character modulus must be positive");
    std::vector<i64> x;
    if (!parts[1].empty())
        for (const auto& e : split(parts[1], ',')) x.push_back(to_int(e));
    if (x.size() != UnitGroup(m).gens().size())
        fail(ErrorKind::InvalidInput, "character spec '" + spec + "' needs one exponent per generator");
    return DirichletChar::from_exponents(m, x);
}

std::string char_spec(const DirichletChar& chi) {
    if (chi.modulus() == 1) return "trivial";
    std::ostringstream os;
    os << chi.modulus() << ":";
    auto x = chi.exponents();
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    return os.str();
}

CharGroup parse_field(const std::string& spec) {
    if (spec == "Q" || spec == "trivial") return CharGroup::trivial_group();
    auto colon = spec.find(':');
    if (colon == std::string::npos) fail(ErrorKind::InvalidInput, "unknown field spec '" + spec + "'");
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "cyclo" || kind == "cyclic") {
        auto parts = split(rest, ':');
        if (parts.size() != 2) fail(ErrorKind::InvalidInput, "field spec '" + spec + "' needs two integers");
        i64 a = to_int(parts[0]), b = to_int(parts[1]);
        if (!is_prime(a)) fail(ErrorKind::InvalidInput, "field spec '" + spec + "': " + parts[0] + " is not prime");
        if (kind == "cyclo") {
            if (b < 0) fail(ErrorKind::InvalidInput, "layer index must be nonnegative");
            return CharGroup::cyclotomic_layer(a, static_cast<int>(b));
        }
        if (b < 1 || (a - 1) % b != 0) fail(ErrorKind::InvalidInput, "degree must divide ell - 1");
        return CharGroup::cyclic_subfield(a, b);
    }
    if (kind == "gen") return CharGroup::generated_by(parse_chars(rest));
    if (kind == "set") return CharGroup(parse_chars(rest));
    fail(ErrorKind::InvalidInput, "unknown field spec '" + spec + "'");
}

EllipticCurve parse_curve(const std::string& spec) {
    if (auto E = builtin_curve(spec)) return *E;
    auto parts = split(spec, '/');
    if (parts.size() < 2 || parts.size() > 3)
        fail(ErrorKind::InvalidInput, "curve spec must be a known label or 'a1,a2,a3,a4,a6/N[/2=type,...]'");
    std::vector<i64> a;
    for (const auto& x : split(parts[0], ',')) a.push_back(to_int(x));
    if (a.size() != 5) fail(ErrorKind::InvalidInput, "curve spec needs five coefficients");
    std::map<i64, Reduction> small;
    if (parts.size() == 3)
        for (const auto& kv : split(parts[2], ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) fail(ErrorKind::InvalidInput, "reduction entry '" + kv + "' needs '='");
            small[to_int(kv.substr(0, eq))] = parse_reduction(kv.substr(eq + 1));
        }
    return EllipticCurve(a, to_int(parts[1]), small);
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    for (const auto& item : split(spec, ',')) {
        auto dash = item.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(static_cast<int>(to_int(item)));
            continue;
        }
        i64 lo = to_int(item.substr(0, dash)), hi = to_int(item.substr(dash + 1));
        if (hi < lo) fail(ErrorKind::InvalidInput, "empty range '" + item + "'");
        for (i64 v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    }
    if (out.empty()) fail(ErrorKind::InvalidInput, "empty integer list");
    return out;
}

EigenSymbol cached_symbol(const EllipticCurve& E, i64 p, std::optional<i64> sturm_override,
                          const std::string& cache_dir) {
    if (cache_dir.empty()) return EigenSymbol::from_curve(E, p, sturm_override);
    std::ostringstream name;
    name << "symbol_N" << E.conductor() << "_p" << p << "_s" << (sturm_override ? std::to_string(*sturm_override) : "auto");
    for (i64 a : E.ainvs()) name << "_" << a;
    name << ".json";
    namespace fs = std::filesystem;
    fs::path path = fs::path(cache_dir) / name.str();
    auto rats = [](const nlohmann::json& j) {
        std::vector<Rat> v;
        for (const auto& s : j) {
            Rat r(s.get<std::string>());
            r.canonicalize();
            v.push_back(r);
        }
        return v;
    };
    if (fs::exists(path)) {
        try {
            std::ifstream in(path);
            auto j = nlohmann::json::parse(in);
            Rat ps(j.at("plus_scale").get<std::string>()), ms(j.at("minus_scale").get<std::string>());
            ps.canonicalize();
            ms.canonicalize();
            return EigenSymbol(j.at("N").get<i64>(), j.at("p").get<i64>(), rats(j.at("plus")), rats(j.at("minus")), ps,
                               ms, j.at("sturm").get<i64>());
        } catch (const std::exception&) {
            // unreadable entries are rebuilt below
        }
    }
    EigenSymbol sym = EigenSymbol::from_curve(E, p, sturm_override);
    nlohmann::json j;
    j["N"] = sym.N();
    j["p"] = sym.p();
    j["sturm"] = sym.sturm();
    j["plus_scale"] = sym.plus_scale().get_str();
    j["minus_scale"] = sym.minus_scale().get_str();
    for (const auto& r : sym.plus_values()) j["plus"].push_back(r.get_str());
    for (const auto& r : sym.minus_values()) j["minus"].push_back(r.get_str());
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump();
    }
    fs::rename(tmp, path, ec);
    return sym;
}

}  // namespace mtk
