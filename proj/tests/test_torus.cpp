#include <set>

#include "doctest.h"
#include "hodge/flat_torus.hpp"
#include "oracles.hpp"

using namespace hodge;
using R = Rational;
using G = Gaussian;
using CE = ExteriorElement<Gaussian>;

namespace {

const G I_(0, 1);

FourierForm random_form(std::mt19937& rng, int m, int bound, int terms = 4) {
    FourierForm f(m);
    std::uniform_int_distribution<int> kd(-bound, bound), deg(0, m);
    for (int t = 0; t < terms; ++t) {
        Mode k(m);
        for (auto& x : k) x = kd(rng);
        int p = deg(rng);
        f.add_mode(k, oracle::to_lib(m, oracle::random_homogeneous<G>(rng, m, p, oracle::gaussian_gen)));
    }
    return f;
}

/// ⟨⟨U, V⟩⟩ via the change-of-basis oracle, mode by mode.
G oracle_l2(const FourierForm& u, const FourierForm& v, const std::vector<std::vector<R>>& g) {
    G total(0);
    for (const auto& [k, c] : u.modes()) {
        auto cv = oracle::from_lib(v.coefficient(k));
        for (auto& [I, x] : cv) x = x.conj();
        total += oracle::change_of_basis_inner(oracle::from_lib(c), cv, g);
    }
    return total;
}

std::vector<std::vector<R>> euclid(int m) {
    std::vector<std::vector<R>> g(m, std::vector<R>(m));
    for (int i = 0; i < m; ++i) g[i][i] = R(1);
    return g;
}

GaussianMatrix blk(const std::string& label, const Mode& k, int n) { return operator_block(label, k, n).matrix.to_dense(); }

GaussianMatrix anticomm(const GaussianMatrix& a, const GaussianMatrix& b) { return a * b + b * a; }
GaussianMatrix comm(const GaussianMatrix& a, const GaussianMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("exterior derivative on Fourier modes") {
    FourierForm c(2);
    c.add_mode({0, 0}, CE::basis(2, MultiIndex{1}, G(3)));
    CHECK(exterior_d(c).is_zero());

    FourierForm f(2);
    f.add_mode({1, 0}, CE::scalar(2, G(1)));
    FourierForm expected(2);
    expected.add_mode({1, 0}, CE::basis(2, MultiIndex{1}, I_));
    CHECK(exterior_d(f) == expected);

    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 1 + trial % 4;
        FourierForm F = random_form(rng, m, 2);
        FourierForm dF = exterior_d(F);
        CHECK(exterior_d(dF).is_zero());
        for (const auto& [k, coeff] : F.modes()) {
            oracle::Form<G> dk;
            for (int j = 1; j <= m; ++j) dk[{j}] = G(R(0), R(k[j - 1]));
            for (auto it = dk.begin(); it != dk.end();) it = it->second.is_zero() ? dk.erase(it) : std::next(it);
            CHECK(oracle::from_lib(dF.coefficient(k)) == oracle::wedge(dk, oracle::from_lib(coeff)));
        }
    }
}

TEST_CASE("codifferential is the adjoint of d") {
    FourierForm c(2);
    c.add_mode({0, 0}, CE::basis(2, MultiIndex{1, 2}, G(1)));
    CHECK(codifferential(c, MetricSpec::euclidean(2)).is_zero());

    FourierForm f(2);
    f.add_mode({1, 0}, CE::basis(2, MultiIndex{1}, I_));
    FourierForm expected(2);
    expected.add_mode({1, 0}, CE::scalar(2, G(1)));
    CHECK(codifferential(f, MetricSpec::euclidean(2)) == expected);

    std::mt19937 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 1 + trial % 4;
        auto gm = trial % 2 ? oracle::random_metric(rng, m) : euclid(m);
        MetricSpec g(oracle::to_matrix(gm));
        FourierForm U = random_form(rng, m, 2, 6), V = random_form(rng, m, 2, 6);
        CHECK(oracle_l2(exterior_d(U), V, gm) == oracle_l2(U, codifferential(V, g), gm));
        CHECK(codifferential(codifferential(V, g), g).is_zero());
    }
    RealTorusModel model(3, MetricSpec(oracle::to_matrix(oracle::random_metric(rng, 3))));
    for (const auto& k : modes_in_box(3, 1)) CHECK(model.dstar_block(k) == model.dstar_formula_block(k));
}

TEST_CASE("Laplacian eigenvalues") {
    FourierForm c(2);
    c.add_mode({0, 0}, CE::basis(2, MultiIndex{2}, G(5)));
    CHECK(laplacian(c).is_zero());

    FourierForm f(2);
    CE coeff = CE::basis(2, MultiIndex{1}, G(2)) + CE::scalar(2, I_);
    f.add_mode({1, 1}, coeff);
    FourierForm twice(2);
    twice.add_mode({1, 1}, coeff * G(2));
    CHECK(laplacian(f) == twice);

    std::mt19937 rng(6);
    for (int trial = 0; trial < 12; ++trial) {
        int m = 1 + trial % 4;
        auto gm = oracle::random_metric(rng, m);
        RealTorusModel model(m, MetricSpec(oracle::to_matrix(gm)));
        for (const auto& k : modes_in_box(m, 1)) {
            R norm(0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) norm += gm[i][j] * R(k[i]) * R(k[j]);
            CHECK(model.laplacian_block(k) == GaussianMatrix::identity(model.size()) * G(norm));
        }
    }

    std::mt19937 rng2(14);
    for (int t = 0; t < 3; ++t) {
        FourierForm r = random_form(rng2, 4, 2, 5);
        FourierForm two_prime(4), two_dprime(4);
        FourierForm lp = laplacian(r, LaplacianFlavor::holomorphic), lpp = laplacian(r, LaplacianFlavor::antiholomorphic);
        for (const auto& [k, cf] : lp.modes()) two_prime.add_mode(k, cf * G(2));
        for (const auto& [k, cf] : lpp.modes()) two_dprime.add_mode(k, cf * G(2));
        CHECK(laplacian(r) == two_prime);
        CHECK(laplacian(r) == two_dprime);
    }
    CHECK_THROWS(laplacian(FourierForm(3), LaplacianFlavor::holomorphic));
}

TEST_CASE("Hodge decomposition") {
    FourierForm c(3);
    c.add_mode({0, 0, 0}, CE::basis(3, MultiIndex{1, 3}, G(2)));
    auto dc = hodge_decompose(c);
    CHECK(dc.harmonic == c);
    CHECK(dc.exact.is_zero());
    CHECK(dc.coexact.is_zero());

    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        FourierForm g = random_form(rng, 3, 2, 5);
        FourierForm dg = exterior_d(g);
        auto d = hodge_decompose(dg);
        CHECK(d.harmonic.is_zero());
        CHECK(d.coexact.is_zero());
        CHECK(d.exact == dg);
    }
    for (int trial = 0; trial < 10; ++trial) {
        int m = 2 + trial % 3;
        auto gm = trial % 2 ? oracle::random_metric(rng, m) : euclid(m);
        MetricSpec g(oracle::to_matrix(gm));
        FourierForm F = random_form(rng, m, 3, 6);
        auto d = hodge_decompose(F, g);
        CHECK(d.harmonic + d.exact + d.coexact == F);
        CHECK(oracle_l2(d.harmonic, d.exact, gm).is_zero());
        CHECK(oracle_l2(d.harmonic, d.coexact, gm).is_zero());
        CHECK(oracle_l2(d.exact, d.coexact, gm).is_zero());
        CHECK(exterior_d(d.primitive_exact) == d.exact);
        CHECK(codifferential(d.primitive_coexact, g) == d.coexact);
        for (const auto& [k, x] : d.harmonic.modes()) CHECK(std::all_of(k.begin(), k.end(), [](int v) { return v == 0; }));
    }
}

TEST_CASE("Betti and Hodge numbers of flat tori") {
    CHECK(betti_numbers(2) == std::vector<long long>{1, 2, 1});
    CHECK(betti_numbers(3) == std::vector<long long>{1, 3, 3, 1});
    for (int m = 1; m <= 5; ++m) {
        auto b = betti_numbers(m, 1);
        for (int p = 0; p <= m; ++p) CHECK(b[p] == oracle::binomial(m, p));
    }
    auto h1 = hodge_numbers(1);
    CHECK(h1 == std::vector<std::vector<long long>>{{1, 1}, {1, 1}});
    auto h2 = hodge_numbers(2);
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) CHECK(h2[p][q] == oracle::binomial(2, p) * oracle::binomial(2, q));
}

TEST_CASE("Poincare and Serre pairings") {
    CHECK(poincare_pairing(2, 1) == RationalMatrix::from_rows({{R(0), R(1)}, {R(-1), R(0)}}));
    CHECK(poincare_pairing(1, 0) == RationalMatrix::from_rows({{R(1)}}));
    for (int m = 1; m <= 5; ++m)
        for (int p = 0; p <= m; ++p) {
            auto P = poincare_pairing(m, p);
            auto rows = oracle::subsets(m, p), cols = oracle::subsets(m, m - p);
            std::vector<std::vector<R>> expected(rows.size(), std::vector<R>(cols.size()));
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < cols.size(); ++j) {
                    std::vector<int> cat = rows[i];
                    cat.insert(cat.end(), cols[j].begin(), cols[j].end());
                    expected[i][j] = R(oracle::perm_sign(cat));
                }
            CHECK(P == RationalMatrix::from_rows(expected));
            CHECK_FALSE(oracle::det(expected).is_zero());
        }
    CHECK(poincare_pairing(4, 2).rows() == 6);
    for (int n = 1; n <= 2; ++n)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) CHECK_FALSE(determinant(serre_pairing(n, p, q)).is_zero());
}

TEST_CASE("operator blocks of the complex torus") {
    const int n = 2;
    Mode k{1, 0, -1, 2};
    auto id = GaussianMatrix::identity(ComplexTorusModel(n).size());
    for (int j = 1; j <= n; ++j)
        for (int l = 1; l <= n; ++l) {
            auto w_j = blk("wedge:" + std::to_string(j), k, n), w_l = blk("wedge:" + std::to_string(l), k, n);
            auto ws_j = blk("wedge*:" + std::to_string(j), k, n);
            auto wb_l = blk("wedgebar:" + std::to_string(l), k, n), wbs_l = blk("wedgebar*:" + std::to_string(l), k, n);
            CHECK(anticomm(ws_j, w_l) == (j == l ? id * G(2) : id * G(0)));
            CHECK(anticomm(w_j, wbs_l).is_zero());
            CHECK(anticomm(wbs_l, w_j).is_zero());
            CHECK(anticomm(wb_l, wb_l).is_zero());
        }
    for (int j = 1; j <= n; ++j) {
        auto s = std::to_string(j);
        CHECK(blk("partial*:" + s, k, n) == -blk("partialbar:" + s, k, n));
        CHECK(blk("partialbar*:" + s, k, n) == -blk("partial:" + s, k, n));
    }
    // d = d' + d'', and the complex-basis d agrees with the real one.
    CHECK(blk("d", k, n) == blk("d'", k, n) + blk("d''", k, n));
    ComplexTorusModel model(n);
    RealTorusModel real(2 * n);
    GaussianMatrix Q = model.real_to_bigraded();
    CHECK(blk("d", k, n) * Q == Q * real.d_block(k));
    CHECK(blk("Delta", k, n) == blk("Delta''", k, n) * G(2));
    CHECK(blk("Delta", k, n) == blk("Delta'", k, n) * G(2));
    CHECK_THROWS(operator_block("nonsense", k, n));
}

TEST_CASE("Kahler identities through independent commutators") {
    const int n = 2;
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> kd(-2, 2);
    for (int trial = 0; trial < 4; ++trial) {
        Mode k(2 * n);
        for (auto& x : k) x = kd(rng);
        auto L = blk("L", k, n), Ls = blk("L*", k, n);
        auto dp = blk("d'", k, n), dpp = blk("d''", k, n), dps = blk("d'*", k, n), dpps = blk("d''*", k, n);
        // Graded commutators of a degree −1 or +1 operator with L (degree 2) and L* (degree −2) are plain commutators.
        CHECK(comm(dpps, L) == dp * I_);
        CHECK(comm(dps, L) == dpp * -I_);
        CHECK(comm(Ls, dpp) == dps * -I_);
        CHECK(comm(Ls, dp) == dpps * I_);
        CHECK(anticomm(dp, dpps).is_zero());
        CHECK(anticomm(dpp, dps).is_zero());
        auto lap = blk("Delta", k, n);
        CHECK(comm(lap, blk("star", k, n)).is_zero());
        CHECK(comm(lap, blk("pi:1,0", k, n)).is_zero());
        CHECK(comm(lap, L).is_zero());
    }
}

TEST_CASE("Kahler identity suite") {
    auto r1 = kahler_identity_suite(1, std::vector<Mode>{{1, 0}});
    CHECK(r1.all_passed());
    bool crel = false;
    for (const auto& x : r1.relations)
        if (x.tag == "crel") crel = x.passed();
    CHECK(crel);
    CHECK(kahler_identity_suite(2, std::vector<Mode>{{0, 0, 0, 0}}).all_passed());
    auto r2 = kahler_identity_suite(2, std::vector<Mode>{{1, 0, -1, 2}, {2, 2, -2, 1}});
    CHECK(r2.all_passed());
    std::set<std::string> tags;
    for (const auto& x : r2.relations) tags.insert(x.tag);
    for (const char* t : {"fikg3", "fikg1", "fikg2", "crel", "111", "ez3", "ez33", "333", "3A", "3B", "lsc", "bciokg"})
        CHECK(tags.count(t) == 1);
}
