#include "hodge/json_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hodge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string string_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const json& array_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    return v;
}

Rational parse_literal(const std::string& s) {
    try {
        std::string t = s;
        if (!t.empty() && t.front() == '+') t.erase(0, 1);
        return Rational::parse(t);
    } catch (const std::exception&) {
        fail("malformed rational '" + s + "'");
    }
}

MultiIndex index_from_json(const json& j, int dim) {
    if (!j.is_array()) fail("multi-index must be an array");
    std::vector<int> v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail("multi-index entries must be integers");
        v.push_back(x.get<int>());
    }
    try {
        MultiIndex I(v);
        I.check_dimension(dim);
        return I;
    } catch (const std::exception& e) {
        fail(std::string("invalid multi-index: ") + e.what());
    }
}

json index_to_json(const MultiIndex& I) { return json(I.indices()); }

Gaussian term_coefficient(const json& t) {
    if (t.contains("coeff")) return gaussian_from_json(t.at("coeff"));
    if (t.contains("num")) return Gaussian(rational_from_json(t));
    Rational re = t.contains("re") ? rational_from_json(t.at("re")) : Rational(0);
    Rational im = t.contains("im") ? rational_from_json(t.at("im")) : Rational(0);
    return Gaussian(re, im);
}

std::vector<RingTerm> ring_terms_from_json(const json& arr) {
    if (!arr.is_array()) fail("ring terms must be an array");
    std::vector<RingTerm> out;
    for (const auto& t : arr) out.push_back({string_field(t, "name"), term_coefficient(t)});
    return out;
}

json ring_terms_to_json(const std::vector<RingTerm>& terms) {
    json arr = json::array();
    for (const auto& t : terms)
        arr.push_back({{"name", t.name}, {"re", rational_str(t.coeff.re())}, {"im", rational_str(t.coeff.im())}});
    return arr;
}

const char* definiteness_name(Definiteness d) {
    switch (d) {
        case Definiteness::positive: return "positive";
        case Definiteness::negative: return "negative";
        default: return "indefinite_or_degenerate";
    }
}

json basis_json(const GradedRing& ring, const std::vector<RingVector>& basis) {
    json arr = json::array();
    for (const auto& v : basis) arr.push_back(ring.format(v));
    return arr;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars and matrices

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) {
            auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(INT64_MAX)) return parse_literal(std::to_string(u));
        }
        return Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) return parse_literal(j.get<std::string>());
    if (j.is_object()) {
        Rational num = rational_from_json(field(j, "num"));
        Rational den = j.contains("den") ? rational_from_json(j.at("den")) : Rational(1);
        if (den.is_zero()) fail("zero denominator");
        return num / den;
    }
    if (j.is_number_float()) fail("floating-point value where an exact rational is required");
    fail("expected a rational");
}

Gaussian gaussian_from_json(const json& j) {
    if (j.is_object() && (j.contains("re") || j.contains("im"))) {
        Rational re = j.contains("re") ? rational_from_json(j.at("re")) : Rational(0);
        Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
        return Gaussian(re, im);
    }
    return Gaussian(rational_from_json(j));
}

json rational_to_json(const Rational& r) {
    auto as_json = [](const std::string& s) -> json {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos == s.size()) return v;
        } catch (const std::exception&) {
        }
        return s;
    };
    return {{"num", as_json(r.numerator_string())}, {"den", as_json(r.denominator_string())}};
}

json gaussian_to_json(const Gaussian& z) { return {{"re", rational_to_json(z.re())}, {"im", rational_to_json(z.im())}}; }

json rational_str(const Rational& r) { return r.str(); }
json gaussian_str(const Gaussian& z) { return z.str(); }

RationalMatrix rational_matrix_from_json(const json& j) {
    if (!j.is_array()) fail("matrix must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) fail("matrix rows must be arrays");
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(rational_from_json(x));
        rows.push_back(std::move(r));
    }
    try {
        return RationalMatrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

GaussianMatrix gaussian_matrix_from_json(const json& j) {
    if (!j.is_array()) fail("matrix must be an array of rows");
    std::vector<std::vector<Gaussian>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) fail("matrix rows must be arrays");
        std::vector<Gaussian> r;
        for (const auto& x : row) r.push_back(gaussian_from_json(x));
        rows.push_back(std::move(r));
    }
    try {
        return GaussianMatrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

json matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json matrix_to_json(const GaussianMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(gaussian_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Elements

ExteriorElement<Gaussian> complex_exterior_from_json(const json& j) {
    int dim = int_field(j, "dim");
    if (dim < 0) fail("negative dimension");
    ExteriorElement<Gaussian> u(dim);
    for (const auto& t : array_field(j, "terms")) u.add_term(index_from_json(field(t, "index"), dim), term_coefficient(t));
    return u;
}

ExteriorElement<Rational> exterior_from_json(const json& j) {
    auto z = complex_exterior_from_json(j);
    ExteriorElement<Rational> u(z.dim());
    for (const auto& [I, c] : z.terms()) {
        if (!c.is_real()) fail("real exterior element has a complex coefficient");
        u.add_term(I, c.re());
    }
    return u;
}

json exterior_to_json(const ExteriorElement<Rational>& u) {
    json terms = json::array();
    for (const auto& [I, c] : u.terms()) {
        json t = rational_to_json(c);
        json e = {{"index", index_to_json(I)}};
        e["num"] = t["num"];
        e["den"] = t["den"];
        terms.push_back(std::move(e));
    }
    return {{"dim", u.dim()}, {"terms", terms}};
}

json exterior_to_json(const ExteriorElement<Gaussian>& u) {
    bool real = std::all_of(u.terms().begin(), u.terms().end(), [](const auto& kv) { return kv.second.is_real(); });
    json terms = json::array();
    for (const auto& [I, c] : u.terms()) {
        json e = {{"index", index_to_json(I)}};
        if (real) {
            json t = rational_to_json(c.re());
            e["num"] = t["num"];
            e["den"] = t["den"];
        } else {
            e["re"] = rational_to_json(c.re());
            e["im"] = rational_to_json(c.im());
        }
        terms.push_back(std::move(e));
    }
    return {{"dim", u.dim()}, {"terms", terms}};
}

BigradedElement bigraded_from_json(const json& j) {
    int n = int_field(j, "n");
    if (n < 0) fail("negative dimension");
    BigradedElement u(n);
    for (const auto& t : array_field(j, "terms")) {
        BiIndex b{index_from_json(field(t, "I"), n), index_from_json(field(t, "J"), n)};
        u.add_term(b, term_coefficient(t));
    }
    return u;
}

json bigraded_to_json(const BigradedElement& u) {
    json terms = json::array();
    for (const auto& [b, c] : u.terms())
        terms.push_back({{"I", index_to_json(b.holo)},
                         {"J", index_to_json(b.antiholo)},
                         {"re", rational_to_json(c.re())},
                         {"im", rational_to_json(c.im())}});
    return {{"n", u.n()}, {"terms", terms}};
}

HermitianForm hermitian_from_json(const json& j) {
    const json& m = j.is_object() ? field(j, "h") : j;
    try {
        return HermitianForm(gaussian_matrix_from_json(m));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        fail(e.what());
    }
}

json hermitian_to_json(const HermitianForm& h) {
    json rows = json::array();
    const auto& m = h.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(gaussian_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"n", h.n()}, {"h", rows}};
}

FourierForm fourier_from_json(const json& j) {
    int m = int_field(j, "m");
    if (m < 1) fail("torus dimension must be positive");
    FourierForm f(m);
    for (const auto& mode : array_field(j, "modes")) {
        const json& kj = field(mode, "k");
        if (!kj.is_array() || kj.size() != static_cast<std::size_t>(m)) fail("mode vector must have length m");
        Mode k;
        for (const auto& x : kj) {
            if (!x.is_number_integer()) fail("mode entries must be integers");
            k.push_back(x.get<int>());
        }
        json coeff = field(mode, "coeff");
        if (!coeff.contains("dim")) coeff["dim"] = m;
        auto c = complex_exterior_from_json(coeff);
        if (c.dim() != m) fail("mode coefficient has the wrong dimension");
        f.add_mode(k, c);
    }
    return f;
}

json fourier_to_json(const FourierForm& f) {
    json modes = json::array();
    for (const auto& [k, c] : f.modes()) modes.push_back({{"k", k}, {"coeff", exterior_to_json(c)}});
    return {{"m", f.m()}, {"modes", modes}};
}

// ---------------------------------------------------------------------------
// Rings

RingSpec ring_spec_from_json(const json& j) {
    RingSpec s;
    s.name = j.contains("name") ? string_field(j, "name") : std::string("ring");
    s.n = int_field(j, "n");
    for (const auto& b : array_field(j, "basis"))
        s.basis.push_back({string_field(b, "name"), int_field(b, "p"), int_field(b, "q")});
    if (j.contains("mult"))
        for (const auto& e : array_field(j, "mult"))
            s.mult.push_back({string_field(e, "a"), string_field(e, "b"), ring_terms_from_json(field(e, "out"))});
    s.integral = ring_terms_from_json(field(j, "integral"));
    if (j.contains("conj")) {
        const json& c = j.at("conj");
        if (!c.is_object()) fail("'conj' must map basis names to term lists");
        for (const auto& [name, terms] : c.items()) s.conj[name] = ring_terms_from_json(terms);
    }
    return s;
}

json ring_spec_to_json(const RingSpec& s) {
    json basis = json::array();
    for (const auto& b : s.basis) basis.push_back({{"name", b.name}, {"p", b.p}, {"q", b.q}});
    json mult = json::array();
    for (const auto& e : s.mult) mult.push_back({{"a", e.a}, {"b", e.b}, {"out", ring_terms_to_json(e.out)}});
    json out = {{"name", s.name}, {"n", s.n}, {"basis", basis}, {"mult", mult}, {"integral", ring_terms_to_json(s.integral)}};
    if (!s.conj.empty()) {
        json c = json::object();
        for (const auto& [name, terms] : s.conj) c[name] = ring_terms_to_json(terms);
        out["conj"] = c;
    }
    return out;
}

IntersectionMatrix intersection_matrix_from_json(const json& j) {
    IntersectionMatrix M;
    M.m = int_field(j, "m");
    const json& entries = array_field(j, "entries");
    bool approximate = false;
    for (const auto& row : entries) {
        if (!row.is_array()) fail("matrix rows must be arrays");
        for (const auto& x : row)
            if (x.is_number_float() && std::floor(x.get<double>()) != x.get<double>()) approximate = true;
    }
    M.approximate = approximate;
    if (!approximate) {
        json exact = json::array();
        for (const auto& row : entries) {
            json r = json::array();
            for (const auto& x : row) r.push_back(x.is_number_float() ? json(static_cast<std::int64_t>(x.get<double>())) : x);
            exact.push_back(std::move(r));
        }
        M.exact = rational_matrix_from_json(exact);
    } else {
        for (const auto& row : entries) {
            std::vector<double> r;
            for (const auto& x : row) r.push_back(x.is_number() ? x.get<double>() : rational_from_json(x).to_double());
            M.approx.push_back(std::move(r));
        }
    }
    return M;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

LoadedRing load_ring(const std::string& source, std::optional<int> n) {
    std::string kind = source;
    std::optional<int> param = n;
    if (auto colon = source.find(':'); colon != std::string::npos) {
        kind = source.substr(0, colon);
        try {
            std::size_t pos = 0;
            param = std::stoi(source.substr(colon + 1), &pos);
            if (pos != source.size() - colon - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail("malformed ring alias '" + source + "'");
        }
    }
    static const std::map<std::string, std::string> aliases = {
        {"pn", "projective_space"},         {"projective_space", "projective_space"},
        {"torus", "torus"},                 {"quadric", "quadric_surface"},
        {"quadric_surface", "quadric_surface"}, {"p1xp1", "product_P1_P1"},
        {"product_P1_P1", "product_P1_P1"}, {"blowup_p2", "blowup_P2"},
        {"blowup_P2", "blowup_P2"},         {"blowup_p3_point", "blowup_P3_point"},
        {"blowup_P3_point", "blowup_P3_point"}};
    if (auto it = aliases.find(kind); it != aliases.end()) {
        int d = param.value_or(it->second == "torus" ? 1 : 2);
        if (d < 1 || d > 6) fail("ring dimension must lie in 1..6");
        auto b = ring_builtin(it->second, d);
        return {std::move(b.ring), std::move(b.omega)};
    }
    return {GradedRing::certify(ring_spec_from_json(read_json_file(source))), std::nullopt};
}

RingVector parse_ring_element(const GradedRing& ring, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail("empty ring element");
    RingVector out = ring.zero();
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        if (term.empty()) fail("malformed ring element '" + text + "'");
        Gaussian coeff(sign);
        std::optional<std::size_t> basis;
        std::stringstream factors(term);
        std::string f;
        while (std::getline(factors, f, '*')) {
            if (f.empty()) fail("malformed ring element '" + text + "'");
            if (f.size() > 2 && f.front() == '(' && f.back() == ')') f = f.substr(1, f.size() - 2);
            bool is_name = true;
            try {
                ring.index_of(f);
            } catch (const std::exception&) {
                is_name = false;
            }
            if (is_name) {
                if (basis) fail("term '" + term + "' names two basis elements");
                basis = ring.index_of(f);
            } else if (f == "i") {
                coeff *= Gaussian::i();
            } else if (f.back() == 'i') {
                coeff *= Gaussian(Rational(0), parse_literal(f.substr(0, f.size() - 1)));
            } else {
                coeff *= Gaussian(parse_literal(f));
            }
        }
        out[basis.value_or(ring.unit_index())] += coeff;
        pos = end;
    }
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        std::stringstream inner(token);
        std::string t;
        while (inner >> t) out.push_back(parse_literal(trim(t)));
    }
    if (out.empty()) fail("empty list of rationals");
    return out;
}

// ---------------------------------------------------------------------------
// Reports

json report_json(const KahlerSuiteReport& r) {
    json rels = json::array();
    for (const auto& x : r.relations) {
        json e = {{"tag", x.tag},
                  {"relation", x.relation},
                  {"mode_independent", x.mode_independent},
                  {"modes_checked", x.modes_checked},
                  {"residual", x.passed() ? json("0 exact") : rational_str(x.max_residual)},
                  {"passed", x.passed()}};
        if (x.worst_mode) e["worst_mode"] = *x.worst_mode;
        rels.push_back(std::move(e));
    }
    return {{"tag", "bciokg"}, {"n", r.n}, {"modes", r.modes.size()}, {"passed", r.all_passed()}, {"relations", rels}};
}

json report_json(const HardLefschetzReport& r) {
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"r", s.r},
                         {"source_degree", s.source_degree},
                         {"target_degree", s.target_degree},
                         {"b_source", s.b_source},
                         {"b_target", s.b_target},
                         {"rank", s.rank},
                         {"iso", s.iso},
                         {"pairing_nondegenerate", s.pairing_nondegenerate}});
    auto ff = r.first_failure();
    return {{"tag", "chl-a"}, {"passed", r.passed()}, {"first_failure", ff ? json(*ff) : json(nullptr)}, {"steps", steps}};
}

json report_json(const PrimitiveDecomposition& d) {
    json sums = json::array();
    for (const auto& s : d.summands)
        sums.push_back({{"j", s.j},
                        {"primitive_degree", s.primitive_degree},
                        {"dim", s.basis.size()},
                        {"expected_dim", s.expected_dim},
                        {"closed_under_bidegree", s.closed_under_bidegree}});
    return {{"tag", "chl-b"},
            {"l", d.l},
            {"b_l", d.b_l},
            {"dimensions_match", d.dimensions_match},
            {"direct_sum", d.direct_sum},
            {"orthogonal", d.orthogonal},
            {"passed", d.passed()},
            {"summands", sums}};
}

json report_json(const HodgeRiemannReport& r) {
    json blocks = json::array();
    for (const auto& b : r.blocks)
        blocks.push_back({{"p", b.p},
                          {"q", b.q},
                          {"dim", b.basis.size()},
                          {"form", matrix_to_json(b.form)},
                          {"raw", matrix_to_json(b.raw)},
                          {"hermitian", b.hermitian},
                          {"verdict", definiteness_name(b.verdict)},
                          {"raw_verdict", definiteness_name(b.raw_verdict)},
                          {"passed", b.passed()}});
    return {{"tag", "chl-c"}, {"l", r.l}, {"sign", r.sign}, {"passed", r.passed()}, {"blocks", blocks}};
}

json report_json(const PolarizationReport& r) {
    json subs = json::array();
    for (const auto& s : r.substructures) subs.push_back(report_json(s));
    return {{"tag", "defpol"},
            {"weight", r.weight},
            {"dim", r.real_basis.size()},
            {"psi", matrix_to_json(r.psi)},
            {"psi_tilde", matrix_to_json(r.psi_tilde)},
            {"psi_real", r.psi_real},
            {"parity_ok", r.parity_ok},
            {"psi_tilde_symmetric", r.psi_tilde_symmetric},
            {"psi_tilde_definiteness", definiteness_name(r.psi_tilde_definiteness)},
            {"weil_square_ok", r.weil_square_ok},
            {"hodge_orthogonal", r.hodge_orthogonal},
            {"hermitian_positive", r.hermitian_positive},
            {"passed", r.passed()},
            {"failure", r.failure()},
            {"substructures", subs}};
}

json report_json(const HodgeDiamond& d) {
    json checks = json::array();
    for (const auto& c : d.checks)
        checks.push_back({{"tag", c.tag}, {"statement", c.statement}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"tag", "pqid"}, {"n", d.n}, {"h", d.h}, {"betti", d.betti}, {"passed", d.passed()}, {"checks", checks},
            {"text", d.text()}};
}

json report_json(const ContractibilityVerdict& v, const IntersectionMatrix& M) {
    json out = {{"tag", "grmu"},
                {"m", M.m},
                {"size", M.size()},
                {"method", v.method},
                {"consistent", v.consistent},
                {"verdict", v.text()}};
    if (v.method == "exact") {
        json minors = json::array();
        for (const auto& x : v.minors) minors.push_back(rational_str(x));
        out["minors"] = minors;
    } else {
        out["min_eigenvalue"] = v.min_eigenvalue;
    }
    return out;
}

json report_json(const PrimitiveLimitTrace& t, const GradedRing& ring) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"eps", rational_str(s.eps)}, {"dim", s.basis.size()}, {"basis", basis_json(ring, s.basis)}, {"gap", s.gap}});
    return {{"tag", "apprxu"},
            {"m", t.m},
            {"expected_dim", t.expected_dim},
            {"hard_lefschetz_M", t.hard_lefschetz_M},
            {"dims_constant", t.dims_constant},
            {"limit_dim_ok", t.limit_dim_ok},
            {"monotone", t.monotone},
            {"limit_basis", basis_json(ring, t.limit_basis)},
            {"steps", steps},
            {"polarization",
             {{"basis", basis_json(ring, t.polarization_basis)},
              {"matrix", matrix_to_json(t.polarization)},
              {"definiteness", definiteness_name(t.polarization_definiteness)}}},
            {"passed", t.passed()}};
}

json ring_vector_json(const GradedRing& ring, const RingVector& v) { return ring.format(v); }

}  // namespace hodge
