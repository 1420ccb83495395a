#include "doctest.h"
#include "hodge/complex_hermitian.hpp"
#include "hodge/lefschetz_ring.hpp"
#include "oracles.hpp"

using namespace hodge;
using R = Rational;
using G = Gaussian;

namespace {

const G I_(0, 1);

RingVector combo(const GradedRing& r, std::initializer_list<std::pair<const char*, G>> terms) {
    RingVector v = r.zero();
    for (const auto& [name, c] : terms) v[r.index_of(name)] += c;
    return v;
}

/// Rank of a list of vectors, from the largest nonvanishing Leibniz minor.
std::size_t oracle_rank(const std::vector<RingVector>& vs) {
    if (vs.empty()) return 0;
    const std::size_t cols = vs[0].size();
    for (std::size_t k = std::min(vs.size(), cols); k > 0; --k) {
        std::vector<int> rsel(vs.size(), 0), csel(cols, 0);
        std::fill(rsel.begin(), rsel.begin() + k, 1);
        do {
            std::fill(csel.begin(), csel.end(), 0);
            std::fill(csel.begin(), csel.begin() + k, 1);
            do {
                std::vector<std::vector<G>> m;
                for (std::size_t i = 0; i < vs.size(); ++i) {
                    if (!rsel[i]) continue;
                    std::vector<G> row;
                    for (std::size_t j = 0; j < cols; ++j)
                        if (csel[j]) row.push_back(vs[i][j]);
                    m.push_back(row);
                }
                if (!oracle::det(m).is_zero()) return k;
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

RingSpec surface_spec() {
    RingSpec s;
    s.name = "test";
    s.n = 2;
    s.basis = {{"1", 0, 0}, {"a", 1, 1}, {"b", 1, 1}, {"pt", 2, 2}};
    s.mult = {{"a", "a", {}}, {"b", "b", {}}, {"a", "b", {{"pt", G(1)}}}};
    s.integral = {{"pt", G(1)}};
    return s;
}

std::string certification_failure(const RingSpec& s) {
    try {
        GradedRing::certify(s);
    } catch (const RingCertificationError& e) {
        return e.invariant();
    }
    return "";
}

}  // namespace

TEST_CASE("builtin rings") {
    auto p3 = projective_space(3);
    CHECK(p3.ring.dim() == 4);
    CHECK(p3.ring.integrate(p3.ring.power(p3.omega, 3)) == G(1));
    CHECK(p3.ring.power(p3.omega, 4) == p3.ring.zero());
    for (int l = 0; l <= 6; ++l) CHECK(p3.ring.betti(l) == (l % 2 ? 0 : 1));

    auto t1 = torus_ring(1);
    // dz ∧ dz̄ = −2i dx∧dy, and ∫ dx∧dy = 1.
    CHECK(t1.ring.integrate(t1.ring.element("dz1^dzb1")) == G(0, -2));
    CHECK(t1.ring.integrate(t1.omega) == G(1));
    CHECK(t1.ring.integrate(t1.ring.unit()) == G(0));
    CHECK(t1.ring.conjugate(t1.ring.element("dz1")) == t1.ring.element("dzb1"));
    CHECK(t1.ring.is_real(t1.omega));
    for (int n = 1; n <= 3; ++n) {
        auto t = torus_ring(n);
        // ∫ ω^n / n! is the volume, 1.
        R fact(1);
        for (int k = 2; k <= n; ++k) fact *= R(k);
        CHECK(t.ring.integrate(t.ring.power(t.omega, n)) == G(fact));
        for (int l = 0; l <= 2 * n; ++l) CHECK(t.ring.betti(l) == oracle::binomial(2 * n, l));
    }

    auto bl = blowup_P2();
    CHECK(bl.ring.integrate(bl.ring.power(bl.omega, 2)) == G(3));
    auto b3 = blowup_P3_point();
    CHECK(b3.ring.integrate(b3.ring.power(b3.ring.element("e"), 3)) == G(1));
    CHECK(ring_builtin("quadric_surface").ring.dim() == 4);
    CHECK_THROWS(ring_builtin("k3"));
    CHECK_THROWS(projective_space(0));
}

TEST_CASE("ring arithmetic against the structure constants") {
    auto q = quadric_surface();
    const auto& r = q.ring;
    RingVector a = r.element("a"), b = r.element("b");
    CHECK(r.multiply(a, b) == r.element("pt"));
    CHECK(r.multiply(b, a) == r.element("pt"));
    CHECK(r.multiply(a, a) == r.zero());
    CHECK(r.multiply(r.unit(), a) == a);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        G x = oracle::random_gaussian(rng), y = oracle::random_gaussian(rng), u = oracle::random_gaussian(rng),
          v = oracle::random_gaussian(rng);
        RingVector w1 = combo(r, {{"a", x}, {"b", y}}), w2 = combo(r, {{"a", u}, {"b", v}});
        CHECK(r.integrate(r.multiply(w1, w2)) == x * v + y * u);
    }
    CHECK(r.format(combo(r, {{"a", G(2)}, {"b", G(-1)}})).find("a") != std::string::npos);
}

TEST_CASE("Hard Lefschetz") {
    for (int n = 1; n <= 5; ++n) {
        auto p = projective_space(n);
        auto rep = hard_lefschetz_check(p.ring, p.omega);
        CHECK(rep.passed());
        for (const auto& s : rep.steps) {
            CHECK(s.target_degree - s.source_degree == 2 * s.r);
            if (s.b_source > 0) CHECK(s.pairing_nondegenerate);
        }
    }
    for (int n = 1; n <= 3; ++n) {
        auto t = torus_ring(n);
        CHECK(hard_lefschetz_check(t.ring, t.omega).passed());
    }

    // ω = x a + y b on the quadric: ω² = 2xy pt, so HL holds iff xy ≠ 0.
    auto q = quadric_surface();
    std::mt19937 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        R x = trial % 4 == 0 ? R(0) : oracle::random_rational(rng), y = oracle::random_rational(rng);
        RingVector w = combo(q.ring, {{"a", G(x)}, {"b", G(y)}});
        CHECK(hard_lefschetz_check(q.ring, w).passed() == !(x * y).is_zero());
    }

    // h kills e on the blow-up of P^3, so h : H^2 → H^4 is not injective.
    auto b3 = blowup_P3_point();
    auto bad = hard_lefschetz_check(b3.ring, b3.ring.element("h"));
    CHECK_FALSE(bad.passed());
    CHECK(bad.first_failure() == 1);
    CHECK(hard_lefschetz_check(b3.ring, b3.omega).passed());

    CHECK_THROWS_AS(require_lefschetz_class(q.ring, q.ring.element("pt")), std::invalid_argument);
    CHECK_THROWS_AS(require_lefschetz_class(q.ring, combo(q.ring, {{"a", I_}})), std::invalid_argument);
}

TEST_CASE("primitive subspaces and decomposition") {
    auto bl = blowup_P2();
    // (2h − e)(αh + βe) = (2α + β) pt.
    auto P = primitive_subspace(bl.ring, bl.omega, 1, 1);
    REQUIRE(P.size() == 1);
    RingVector v = P[0];
    CHECK((G(2) * v[bl.ring.index_of("h")] + v[bl.ring.index_of("e")]).is_zero());
    CHECK(bl.ring.multiply(bl.omega, v) == bl.ring.zero());
    CHECK(primitive_subspace(bl.ring, bl.omega, 0).size() == 1);
    CHECK(primitive_subspace(bl.ring, bl.omega, 2).size() == 1);

    for (int n = 1; n <= 3; ++n) {
        auto t = torus_ring(n);
        for (int l = 0; l <= n; ++l) {
            auto Pl = primitive_subspace(t.ring, t.omega, l);
            long long expected = oracle::binomial(2 * n, l) - (l >= 2 ? oracle::binomial(2 * n, l - 2) : 0);
            CHECK(static_cast<long long>(Pl.size()) == expected);
            if (n <= 2) CHECK(oracle_rank(Pl) == Pl.size());
            RingVector w = t.ring.power(t.omega, n - l + 1);
            for (const auto& x : Pl) CHECK(t.ring.multiply(w, x) == t.ring.zero());
        }
        for (int l = 0; l <= n; ++l) {
            auto dec = primitive_decompose(t.ring, t.omega, l);
            CHECK(dec.passed());
            long long total = 0;
            for (const auto& s : dec.summands) {
                CHECK(static_cast<long long>(s.basis.size()) == s.expected_dim);
                CHECK(s.closed_under_bidegree);
                total += static_cast<long long>(s.basis.size());
            }
            CHECK(total == dec.b_l);
            std::vector<RingVector> all;
            for (const auto& s : dec.summands) all.insert(all.end(), s.basis.begin(), s.basis.end());
            if (n <= 2) CHECK(oracle_rank(all) == static_cast<std::size_t>(dec.b_l));
        }
    }

    auto b3 = blowup_P3_point();
    CHECK_THROWS_AS(primitive_decompose(b3.ring, b3.ring.element("h"), 2), LefschetzFailure);
}

TEST_CASE("Hodge-Riemann") {
    for (int n = 1; n <= 4; ++n) {
        auto p = projective_space(n);
        for (int l = 0; l <= n; ++l) CHECK(hodge_riemann_check(p.ring, p.omega, l).passed());
    }
    auto t1 = torus_ring(1);
    auto hr = hodge_riemann_check(t1.ring, t1.omega, 1);
    CHECK(hr.passed());
    REQUIRE(hr.blocks.size() == 2);
    CHECK(hr.blocks[0].form == GaussianMatrix::from_rows({{G(2)}}));
    for (int n = 2; n <= 3; ++n) {
        auto t = torus_ring(n);
        for (int l = 0; l <= n; ++l) CHECK(hodge_riemann_check(t.ring, t.omega, l).passed());
    }

    // On the blow-up of P^2 with ω = x h + y e, primitive H^2 is spanned by
    // y h + x e, whose square integrates to y² − x²; ∫ ω² = x² − y².
    auto bl = blowup_P2();
    std::mt19937 rng(5);
    for (int trial = 0; trial < 16; ++trial) {
        R x = oracle::random_rational(rng), y = oracle::random_rational(rng);
        RingVector w = combo(bl.ring, {{"h", G(x)}, {"e", G(y)}});
        R disc = x * x - y * y;
        if (disc.is_zero()) {
            CHECK_THROWS_AS(hodge_riemann_check(bl.ring, w, 2), LefschetzFailure);
            continue;
        }
        bool expected = disc.sign() > 0;
        CHECK(hodge_riemann_check(bl.ring, w, 0).passed() == expected);
        CHECK(hodge_riemann_check(bl.ring, w, 2).passed() == expected);
        CHECK(hodge_riemann_check(bl.ring, w, 1).passed());
    }

    auto q = quadric_surface();
    CHECK(hodge_riemann_check(q.ring, q.omega, 2).passed());
    RingVector a_minus_b = combo(q.ring, {{"a", G(1)}, {"b", G(-1)}});
    CHECK_FALSE(hodge_riemann_check(q.ring, a_minus_b, 0).passed());
    CHECK_THROWS_AS(hodge_riemann_check(q.ring, q.omega, 3), std::out_of_range);
}

TEST_CASE("polarizations of primitive slices") {
    for (int n = 1; n <= 3; ++n) {
        auto t = torus_ring(n);
        for (int l = 0; l <= n; ++l) {
            auto slice = primitive_slice(t.ring, t.omega, l);
            auto rep = polarization_check(slice, canonical_polarization_form(t.ring, t.omega, l));
            CHECK_MESSAGE(rep.passed(), rep.failure());
        }
    }
    auto p2 = projective_space(2);
    CHECK(polarization_check(primitive_slice(p2.ring, p2.omega, 2), canonical_polarization_form(p2.ring, p2.omega, 2))
              .passed());

    // torus(1), weight 1: the real basis is dx, dy with C(dx) = −dy.  With
    // Ψ = −∫ x y, Ψ(dx, C dx) = ∫ dx∧dy = 1; the opposite sign is negative definite.
    auto t1 = torus_ring(1);
    auto slice = primitive_slice(t1.ring, t1.omega, 1);
    GaussianMatrix psi = canonical_polarization_form(t1.ring, t1.omega, 1);
    auto good = polarization_check(slice, psi);
    CHECK(good.passed());
    CHECK(good.psi_tilde_definiteness == Definiteness::positive);
    auto flipped = polarization_check(slice, psi * G(-1));
    CHECK_FALSE(flipped.passed());
    CHECK(flipped.psi_tilde_definiteness == Definiteness::negative);
    CHECK(flipped.parity_ok);

    auto zero = polarization_check(slice, GaussianMatrix(psi.rows(), psi.cols()));
    CHECK_FALSE(zero.passed());
    CHECK(zero.psi_tilde_definiteness == Definiteness::indefinite_or_degenerate);

    // A weight-1 form that is symmetric rather than alternating.
    GaussianMatrix sym = t1.ring.cup_form(t1.ring.unit());
    for (std::size_t i = 0; i < sym.rows(); ++i)
        for (std::size_t j = 0; j < sym.cols(); ++j)
            if (sym(i, j) != sym(j, i)) sym(j, i) = sym(i, j);
    CHECK_FALSE(polarization_check(slice, sym).passed());

    CHECK_THROWS(polarization_check(slice, GaussianMatrix(1, 1)));
}

TEST_CASE("polarization restricts to sub-Hodge structures") {
    auto t = torus_ring(2);
    const auto& r = t.ring;
    auto slice = primitive_slice(r, t.omega, 2);
    GaussianMatrix psi = canonical_polarization_form(r, t.omega, 2);

    HodgeStructureSlice sub11;
    sub11.weight = 2;
    sub11.conj = slice.conj;
    sub11.parts[{1, 1}] = {combo(r, {{"dz1^dzb1", G(1)}, {"dz2^dzb2", G(-1)}})};
    HodgeStructureSlice sub20;
    sub20.weight = 2;
    sub20.conj = slice.conj;
    sub20.parts[{2, 0}] = {r.element("dz1^dz2")};
    sub20.parts[{0, 2}] = {r.element("dzb1^dzb2")};

    auto rep = polarization_check(slice, psi, {sub11, sub20});
    CHECK_MESSAGE(rep.passed(), rep.failure());
    REQUIRE(rep.substructures.size() == 2);
    CHECK(rep.substructures[0].real_basis.size() == 1);
    CHECK(rep.substructures[1].real_basis.size() == 2);

    HodgeStructureSlice broken = sub20;
    broken.parts.erase({0, 2});
    CHECK_THROWS(broken.validate());
}

TEST_CASE("Hodge diamonds") {
    for (int n = 1; n <= 4; ++n) {
        auto d = hodge_diamond(projective_space(n).ring);
        CHECK(d.passed());
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) CHECK(d.h[p][q] == (p == q ? 1 : 0));
    }
    for (int n = 1; n <= 3; ++n) {
        auto d = hodge_diamond(torus_ring(n).ring);
        CHECK(d.passed());
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) CHECK(d.h[p][q] == oracle::binomial(n, p) * oracle::binomial(n, q));
    }
    auto bl = hodge_diamond(blowup_P2().ring);
    CHECK(bl.passed());
    CHECK(bl.h[1][1] == 2);
    CHECK(bl.betti == std::vector<long long>{1, 0, 2, 0, 1});
    auto text = hodge_diamond(torus_ring(1).ring).text();
    CHECK(text.find('1') != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 2);
}

TEST_CASE("ring certification rejects broken inputs") {
    CHECK(certification_failure(surface_spec()).empty());

    RingSpec degenerate = surface_spec();
    degenerate.mult = {{"a", "a", {}}, {"b", "b", {}}, {"a", "b", {}}};
    CHECK(certification_failure(degenerate) == "poincare");

    RingSpec anticommuting = surface_spec();
    anticommuting.mult.push_back({"b", "a", {{"pt", G(-1)}}});
    std::string inv = certification_failure(anticommuting);
    CHECK((inv == "graded-commutativity" || inv == "mult"));

    RingSpec off_top = surface_spec();
    off_top.integral.push_back({"a", G(1)});
    CHECK(certification_failure(off_top) == "integral");

    RingSpec wrong_bidegree = surface_spec();
    wrong_bidegree.mult.push_back({"a", "pt", {{"b", G(1)}}});
    CHECK(certification_failure(wrong_bidegree) == "bidegree");

    RingSpec no_unit = surface_spec();
    no_unit.basis[0].p = 1;
    no_unit.basis[0].q = 1;
    CHECK(certification_failure(no_unit) == "unit");

    RingSpec unknown = surface_spec();
    unknown.mult.push_back({"a", "c", {}});
    CHECK(certification_failure(unknown) == "basis");

    RingSpec bad_conj = surface_spec();
    bad_conj.conj["a"] = {{"pt", G(1)}};
    CHECK(certification_failure(bad_conj) == "conjugation");
}
