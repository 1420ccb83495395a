// hodge: command-line front end for the exterior, torus, Lefschetz and
// degeneration checks.  Exit status: 0 all identities hold, 1 a checked
// identity fails (the relation is named on stderr), 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hodge/json_io.hpp"

using namespace hodge;

namespace {

struct Options {
    std::string format = "text";
    std::string out;
    std::string ring;
    std::optional<int> n;
    std::optional<int> m;
    std::optional<int> max_mode;
    std::string eps;
    std::string matrix;
    std::string input;
    std::string omega;
    std::string class_m = "h";
    std::string class_l;
    std::optional<int> l;
    int orientation = 1;
};

struct Failure {
    std::string relation;
    std::string detail;
};

struct Result {
    json report;
    std::string text;
    std::vector<Failure> failures;
    void check(bool ok, const std::string& relation, const std::string& detail) {
        if (!ok) failures.push_back({relation, detail});
    }
};

const char* pass_fail(bool b) { return b ? "PASS" : "FAIL"; }

std::string matrix_text(const json& rows) {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? ", " : "") + rows[i][j].get<std::string>();
        s += "]";
    }
    return s + "]";
}

LoadedRing ring_from(const Options& o, const std::string& fallback) {
    return load_ring(o.ring.empty() ? fallback : o.ring, o.n);
}

RingVector kahler_class(const LoadedRing& lr, const std::string& text) {
    if (!text.empty()) return parse_ring_element(lr.ring, text);
    if (!lr.omega) throw ParseError("ring files need an explicit --omega");
    return *lr.omega;
}

// ---------------------------------------------------------------------------

Result run_star(const Options& o) {
    const int m0 = o.m.value_or(3);
    MetricSpec g = o.matrix.empty() ? MetricSpec::euclidean(m0)
                                    : MetricSpec(rational_matrix_from_json(parse_json_text(o.matrix)));
    if (o.m && g.dim() != *o.m) throw ParseError("metric size does not match --m");
    OrientationSpec orient(o.orientation);
    const int m = g.dim();
    auto scale = volume_scale(g);
    auto top = ExteriorElement<Rational>::top(m, Rational(orient.sign()));

    Result r;
    std::ostringstream text;
    text << "star on Lambda(R^" << m << "), det g = " << g.determinant();
    if (scale)
        text << ", sqrt(det g) = " << *scale << "\n";
    else
        text << ", sqrt(det g) irrational: images shown multiplied by sqrt(det g)\n";

    json table = json::array();
    bool involution = true, defining = true;
    for (int p = 0; p <= m; ++p) {
        const Rational sign((p * (m - p)) % 2 == 0 ? 1 : -1);
        for (const auto& I : multi_indices(m, p)) {
            auto e = ExteriorElement<Rational>::basis(m, I);
            auto scaled = hodge_star_scaled(e, g, orient);
            auto image = scale ? scaled.unnormalized * scale->inverse() : scaled.unnormalized;
            bool inv = hodge_star_twice(e, g, orient) == e * sign;
            involution = involution && inv;
            // u ∧ ⋆v = ⟨u,v⟩ dV, both sides multiplied by √det g.
            for (const auto& J : multi_indices(m, p))
                if (!(wedge(ExteriorElement<Rational>::basis(m, J), scaled.unnormalized) == top * g.basis_inner(J, I)))
                    defining = false;
            table.push_back({{"index", I.indices()}, {"star", exterior_to_json(image)}, {"scaled", !scale}});
            text << "  *e" << I << " = " << image << "\n";
        }
    }
    json checks = json::array();
    auto add = [&](const char* tag, const char* statement, bool ok) {
        checks.push_back({{"tag", tag}, {"statement", statement}, {"passed", ok}});
        text << "  " << tag << "  " << statement << "  " << pass_fail(ok) << "\n";
        r.check(ok, tag, statement);
    };
    add("stst", "** = (-1)^{p(m-p)} on every basis element", involution);
    add("doso", "u ^ *v = <u,v> dV on every basis pair", defining);
    if (scale) {
        auto dV = volume_element(g, orient);
        auto one = ExteriorElement<Rational>::scalar(m, Rational(1));
        add("exonst", "*1 = dV and *dV = 1", hodge_star(one, g, orient) == dV && hodge_star(dV, g, orient) == one);
    }
    r.report = {{"m", m}, {"det", rational_str(g.determinant())}, {"orientation", orient.sign()},
                {"table", table}, {"checks", checks}};
    r.text = text.str();
    return r;
}

Result run_kahler(const Options& o) {
    const int n = o.n.value_or(2);
    auto rep = kahler_identity_suite(n, o.max_mode.value_or(2));
    Result r;
    r.report = report_json(rep);
    std::ostringstream text;
    text << "Kahler identities on the flat complex torus, n = " << n << ", " << rep.modes.size() << " modes\n";
    for (const auto& x : rep.relations) {
        text << "  " << x.tag << "  " << x.relation << "  residual "
             << (x.passed() ? std::string("0 exact") : x.max_residual.str()) << "\n";
        r.check(x.passed(), x.tag, x.relation);
    }
    r.text = text.str();
    return r;
}

Result run_torus(const Options& o) {
    const int m = o.m.value_or(2);
    const int bound = o.max_mode.value_or(1);
    Result r;
    std::ostringstream text;

    auto betti = betti_numbers(m, bound);
    bool betti_ok = true;
    for (int p = 0; p <= m; ++p) betti_ok = betti_ok && betti[p] == binomial(m, p);
    text << "flat torus R^" << m << "/Z^" << m << ", modes |k| <= " << bound << "\n  betti:";
    for (auto b : betti) text << ' ' << b;
    text << "  " << pass_fail(betti_ok) << "\n";
    r.check(betti_ok, "hit", "dim of harmonic p-forms = C(m,p)");

    json pairings = json::array();
    bool pd_ok = true;
    for (int p = 0; p <= m; ++p) {
        Rational det = determinant(poincare_pairing(m, p));
        pd_ok = pd_ok && !det.is_zero();
        pairings.push_back({{"p", p}, {"det", rational_str(det)}});
        text << "  pd  p=" << p << " det " << det << "\n";
    }
    r.check(pd_ok, "pd", "Poincare pairing nondegenerate");

    RealTorusModel model(m);
    bool lap_ok = true;
    auto modes = modes_in_box(m, bound);
    for (const auto& k : modes) {
        GaussianMatrix expected = GaussianMatrix::identity(model.size()) * Gaussian(model.frequency_norm2(k));
        if (!(model.laplacian_block(k) == expected)) lap_ok = false;
    }
    text << "  itslap  Delta = |k|^2 Id on " << modes.size() << " modes  " << pass_fail(lap_ok) << "\n";
    r.check(lap_ok, "itslap", "Delta = |k|^2 Id per mode");

    r.report = {{"m", m}, {"max_mode", bound}, {"betti", betti},
                {"checks", json::array({{{"tag", "hit"}, {"passed", betti_ok}},
                                        {{"tag", "pd"}, {"passed", pd_ok}, {"pairings", pairings}},
                                        {{"tag", "itslap"}, {"passed", lap_ok}, {"modes", modes.size()}}})}};

    if (o.n) {
        auto h = hodge_numbers(*o.n, bound);
        bool h_ok = true;
        for (int p = 0; p <= *o.n; ++p)
            for (int q = 0; q <= *o.n; ++q) h_ok = h_ok && h[p][q] == binomial(*o.n, p) * binomial(*o.n, q);
        r.report["hodge_numbers"] = h;
        r.report["checks"].push_back({{"tag", "pqdeco"}, {"passed", h_ok}});
        text << "  h^{p,q} of C^" << *o.n << "/Z^" << 2 * *o.n << ":";
        for (const auto& row : h) {
            text << " [";
            for (std::size_t q = 0; q < row.size(); ++q) text << (q ? " " : "") << row[q];
            text << "]";
        }
        text << "  " << pass_fail(h_ok) << "\n";
        r.check(h_ok, "pqdeco", "h^{p,q} = C(n,p) C(n,q)");
    }

    if (!o.input.empty()) {
        auto f = fourier_from_json(read_json_file(o.input));
        auto d = hodge_decompose(f);
        MetricSpec g = MetricSpec::euclidean(f.m());
        bool recon = d.harmonic + d.exact + d.coexact == f;
        bool orth = l2_inner(d.harmonic, d.exact, g).is_zero() && l2_inner(d.harmonic, d.coexact, g).is_zero() &&
                    l2_inner(d.exact, d.coexact, g).is_zero();
        r.report["decomposition"] = {{"tag", "hdts"},
                                     {"harmonic", fourier_to_json(d.harmonic)},
                                     {"exact", fourier_to_json(d.exact)},
                                     {"coexact", fourier_to_json(d.coexact)},
                                     {"reconstructs", recon},
                                     {"orthogonal", orth}};
        text << "  hdts  F = H + dA + d*B  reconstructs " << pass_fail(recon) << ", orthogonal " << pass_fail(orth) << "\n";
        r.check(recon && orth, "hdts", "orthogonal Hodge decomposition");
    }
    r.text = text.str();
    return r;
}

Result run_lefschetz(const Options& o) {
    auto lr = ring_from(o, "pn");
    auto omega = kahler_class(lr, o.omega);
    const auto& ring = lr.ring;
    Result r;
    std::ostringstream text;
    auto hl = hard_lefschetz_check(ring, omega);
    text << "ring " << ring.name() << ", n = " << ring.n() << ", omega = " << ring.format(omega) << "\n";
    for (const auto& s : hl.steps)
        text << "  chl-a  r=" << s.r << "  H^" << s.source_degree << " -> H^" << s.target_degree << "  rank " << s.rank
             << " (b = " << s.b_source << ", " << s.b_target << ")  " << (s.iso ? "iso" : "not iso") << "\n";
    r.report = {{"ring", ring.name()}, {"omega", ring.format(omega)}, {"hard_lefschetz", report_json(hl)}};
    if (!hl.passed()) {
        r.check(false, "chl-a", "hard Lefschetz fails at r = " + std::to_string(*hl.first_failure()));
        r.text = text.str();
        return r;
    }
    json decs = json::array();
    for (int l = 0; l <= ring.n(); ++l) {
        auto d = primitive_decompose(ring, omega, l);
        decs.push_back(report_json(d));
        text << "  chl-b  H^" << l << " =";
        for (std::size_t i = 0; i < d.summands.size(); ++i)
            text << (i ? " +" : "") << " L^" << d.summands[i].j << " P^" << d.summands[i].primitive_degree << " ("
                 << d.summands[i].basis.size() << ")";
        text << "  b_" << l << " = " << d.b_l << "  " << pass_fail(d.passed()) << "\n";
        r.check(d.passed(), "chl-b", "primitive decomposition of H^" + std::to_string(l));
    }
    r.report["decompositions"] = decs;
    r.text = text.str();
    return r;
}

Result run_hr(const Options& o) {
    auto lr = ring_from(o, "pn");
    auto omega = kahler_class(lr, o.omega);
    const auto& ring = lr.ring;
    Result r;
    std::ostringstream text;
    text << "ring " << ring.name() << ", omega = " << ring.format(omega) << "\n";
    json hrs = json::array(), pols = json::array();
    std::vector<int> degrees;
    if (o.l) {
        if (*o.l < 0 || *o.l > ring.n()) throw ParseError("--l must lie in 0..n");
        degrees.push_back(*o.l);
    } else {
        for (int l = 0; l <= ring.n(); ++l) degrees.push_back(l);
    }
    for (int l : degrees) {
        auto hr = hodge_riemann_check(ring, omega, l);
        json hj = report_json(hr);
        hrs.push_back(hj);
        for (std::size_t b = 0; b < hr.blocks.size(); ++b) {
            if (hr.blocks[b].basis.empty()) continue;
            text << "  chl-c  l=" << l << " (p,q)=(" << hr.blocks[b].p << "," << hr.blocks[b].q << ")  form "
                 << matrix_text(hj["blocks"][b]["form"]) << "  raw " << matrix_text(hj["blocks"][b]["raw"]) << "  "
                 << pass_fail(hr.blocks[b].passed()) << "\n";
        }
        r.check(hr.passed(), "chl-c", "Hodge-Riemann sign fails in degree " + std::to_string(l));

        auto slice = primitive_slice(ring, omega, l);
        if (slice.dim() == 0) continue;
        auto pol = polarization_check(slice, canonical_polarization_form(ring, omega, l));
        json pj = report_json(pol);
        pols.push_back(pj);
        text << "  defpol l=" << l << "  psi_tilde " << matrix_text(pj["psi_tilde"]) << "  " << pass_fail(pol.passed())
             << "\n";
        r.check(pol.passed(), "defpol", "polarization fails on P^" + std::to_string(l) + ": " + pol.failure());
    }
    r.report = {{"ring", ring.name()}, {"omega", ring.format(omega)}, {"hodge_riemann", hrs}, {"polarizations", pols}};
    r.text = text.str();
    return r;
}

Result run_diamond(const Options& o) {
    auto lr = ring_from(o, "pn");
    auto d = hodge_diamond(lr.ring);
    Result r;
    r.report = report_json(d);
    r.report["ring"] = lr.ring.name();
    std::ostringstream text;
    text << d.text();
    for (const auto& c : d.checks) {
        text << "  " << c.tag << "  " << c.statement << "  " << pass_fail(c.passed)
             << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
        r.check(c.passed, c.tag, c.statement + (c.detail.empty() ? "" : ": " + c.detail));
    }
    r.text = text.str();
    return r;
}

Result run_contract(const Options& o) {
    IntersectionMatrix M;
    if (!o.input.empty()) {
        M = intersection_matrix_from_json(read_json_file(o.input));
        if (o.m) M.m = *o.m;
    } else {
        if (o.matrix.empty()) throw ParseError("contract needs --matrix or --input");
        M = intersection_matrix_from_json({{"m", o.m.value_or(1)}, {"entries", parse_json_text(o.matrix)}});
    }
    auto v = contractibility_check(M);
    Result r;
    r.report = report_json(v, M);
    std::ostringstream text;
    text << "grmu  (-1)^" << M.m << " M positive definite (" << v.method << "): " << v.text() << "\n";
    if (v.method == "exact") {
        text << "  leading minors of (-1)^m M:";
        for (const auto& x : v.minors) text << ' ' << x;
        text << "\n";
    } else {
        text << "  smallest eigenvalue of (-1)^m M: " << v.min_eigenvalue << "\n";
    }
    r.check(v.consistent, "grmu", "(-1)^m M is not positive definite");
    r.text = text.str();
    return r;
}

Result run_limit(const Options& o) {
    auto lr = ring_from(o, "blowup_p2");
    const auto& ring = lr.ring;
    RingVector M = parse_ring_element(ring, o.class_m);
    RingVector L = kahler_class(lr, o.class_l);
    auto eps = o.eps.empty() ? dyadic_sequence(10) : parse_rational_list(o.eps);
    auto t = primitive_limit(ring, M, L, eps);
    Result r;
    r.report = report_json(t, ring);
    r.report["M"] = ring.format(M);
    r.report["L"] = ring.format(L);
    std::ostringstream text;
    text << "P^" << 2 * t.m << " of M + eps L, M = " << ring.format(M) << ", L = " << ring.format(L) << "\n";
    for (const auto& s : t.steps) {
        text << "  eps " << s.eps << "  dim " << s.basis.size() << "  gap " << s.gap << "  basis";
        for (const auto& b : s.basis) text << " {" << ring.format(b) << "}";
        text << "\n";
    }
    text << "  limit P_M:";
    for (const auto& b : t.limit_basis) text << " {" << ring.format(b) << "}";
    text << "  expected dim " << t.expected_dim << "\n";
    text << "  eqbn  dimension constant  " << pass_fail(t.dims_constant && t.limit_dim_ok) << "\n";
    text << "  apprxu  gap non-increasing  " << pass_fail(t.monotone) << "\n";
    text << "  grmu  (-1)^m int on P_M = " << matrix_text(r.report["polarization"]["matrix"]) << "  "
         << pass_fail(t.polarization_definiteness == Definiteness::positive) << "\n";
    r.check(t.dims_constant && t.limit_dim_ok, "eqbn", "dim P != b_2m - b_2m-2");
    r.check(t.monotone, "apprxu", "gap distance not monotone");
    r.check(t.polarization_definiteness == Definiteness::positive, "grmu", "polarization on P_M not positive definite");
    r.text = text.str();
    return r;
}

void emit(const Options& o, const std::string& command, const Result& r) {
    std::string body;
    if (o.format == "json") {
        json out = {{"command", command}, {"passed", r.failures.empty()}, {"report", r.report}};
        json fails = json::array();
        for (const auto& f : r.failures) fails.push_back({{"relation", f.relation}, {"detail", f.detail}});
        out["failures"] = fails;
        body = out.dump(2) + "\n";
    } else {
        body = r.text;
        body += r.failures.empty() ? "all checks passed\n" : "FAILED\n";
    }
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out);
        if (!f) throw ParseError("cannot write '" + o.out + "'");
        f << body;
    }
    for (const auto& f : r.failures) std::cerr << "identity failed: " << f.relation << ": " << f.detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks of linear and Kahler Hodge theory"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sc->add_option("--out", o.out, "write the report to a file");
    };
    auto ring_opts = [&](CLI::App* sc) {
        sc->add_option("--ring", o.ring, "builtin alias (pn, pn:4, torus:2, quadric, p1xp1, blowup_p2, blowup_p3_point) or ring file");
        sc->add_option("--n", o.n, "dimension for pn/torus")->check(CLI::Range(1, 6));
    };

    auto* star = app.add_subcommand("star", "Hodge star tables and identities");
    common(star);
    star->add_option("--m", o.m, "real dimension")->check(CLI::Range(1, 6));
    star->add_option("--matrix", o.matrix, "Gram matrix of the coframe, JSON");
    star->add_option("--orientation", o.orientation, "+1 or -1")->check(CLI::IsMember({1, -1}));

    auto* kahler = app.add_subcommand("kahler-check", "Kahler identity suite on the flat torus");
    common(kahler);
    kahler->add_option("--n", o.n, "complex dimension")->check(CLI::Range(1, 6));
    kahler->add_option("--max-mode", o.max_mode, "mode bound |k|_inf")->check(CLI::Range(0, 4));

    auto* torus = app.add_subcommand("torus", "Betti numbers, pairings, Laplacian spectrum, decomposition");
    common(torus);
    torus->add_option("--m", o.m, "real dimension")->check(CLI::Range(1, 6));
    torus->add_option("--n", o.n, "also report Hodge numbers of C^n/Z^2n")->check(CLI::Range(1, 3));
    torus->add_option("--max-mode", o.max_mode, "mode bound |k|_inf")->check(CLI::Range(0, 4));
    torus->add_option("--input", o.input, "FourierForm JSON to decompose");

    auto* lef = app.add_subcommand("lefschetz", "Hard Lefschetz and primitive decomposition");
    common(lef);
    ring_opts(lef);
    lef->add_option("--omega", o.omega, "Kahler class, e.g. '2*h-e'");

    auto* hr = app.add_subcommand("hr", "Hodge-Riemann signatures and polarizations");
    common(hr);
    ring_opts(hr);
    hr->add_option("--omega", o.omega, "Kahler class");
    hr->add_option("--l", o.l, "single degree");

    auto* dia = app.add_subcommand("diamond", "Hodge diamond and its identities");
    common(dia);
    ring_opts(dia);

    auto* con = app.add_subcommand("contract", "contractibility criterion for intersection matrices");
    common(con);
    con->add_option("--m", o.m, "half-dimension of the fiber")->check(CLI::Range(1, 6));
    con->add_option("--matrix", o.matrix, "entries as JSON, e.g. '[[-2,1],[1,-2]]'");
    con->add_option("--input", o.input, "IntersectionMatrix JSON file");

    auto* lim = app.add_subcommand("limit", "primitive subspaces of M + eps L as eps -> 0");
    common(lim);
    ring_opts(lim);
    lim->add_option("--class-m", o.class_m, "class M");
    lim->add_option("--class-l", o.class_l, "class L (default: the builtin Kahler class)");
    lim->add_option("--eps", o.eps, "decreasing rationals, e.g. '1/2,1/4'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Result r;
        if (command == "star") r = run_star(o);
        else if (command == "kahler-check") r = run_kahler(o);
        else if (command == "torus") r = run_torus(o);
        else if (command == "lefschetz") r = run_lefschetz(o);
        else if (command == "hr") r = run_hr(o);
        else if (command == "diamond") r = run_diamond(o);
        else if (command == "contract") r = run_contract(o);
        else r = run_limit(o);
        emit(o, command, r);
        return r.failures.empty() ? 0 : 1;
    } catch (const LefschetzFailure& e) {
        std::cerr << "identity failed: chl-a: " << e.what() << "\n";
        return 1;
    } catch (const RingCertificationError& e) {
        std::cerr << "ring certification failed (" << e.invariant() << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
