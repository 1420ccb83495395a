#include "doctest.h"
#include "hodge/exterior.hpp"
#include "oracles.hpp"

using namespace hodge;
using R = Rational;
using E = ExteriorElement<Rational>;

namespace {

E e(int m, std::initializer_list<int> idx, R c = R(1)) { return E::basis(m, MultiIndex(idx), c); }

MetricSpec metric(const std::vector<std::vector<R>>& g) { return MetricSpec(RationalMatrix::from_rows(g)); }

}  // namespace

TEST_CASE("rational arithmetic stays canonical across the 64-bit boundary") {
    R big = R(INT64_MAX) * R(INT64_MAX);
    CHECK_FALSE(big.is_small());
    R back = big / R(INT64_MAX);
    CHECK(back.is_small());
    CHECK(back == R(INT64_MAX));
    CHECK(R(6, -4) == R(-3, 2));
    CHECK(R::parse("10/4") == R(5, 2));
    CHECK(R(1, 3) + R(1, 6) == R(1, 2));
    CHECK(exact_sqrt(R(9, 4)) == R(3, 2));
    CHECK_FALSE(exact_sqrt(R(2)).has_value());
    CHECK(Gaussian::i_pow(3) == Gaussian(0, -1));
}

TEST_CASE("multi-index complement sign") {
    auto [s0, c0] = complement_sign(MultiIndex{}, 3);
    CHECK(s0 == 1);
    CHECK(c0 == MultiIndex{1, 2, 3});
    auto [s1, c1] = complement_sign(MultiIndex{2}, 3);
    CHECK(s1 == -1);
    CHECK(c1 == MultiIndex{1, 3});
    auto [s2, c2] = complement_sign(MultiIndex{1, 2}, 4);
    CHECK(s2 == 1);
    CHECK(c2 == MultiIndex{3, 4});

    for (int m = 1; m <= 6; ++m)
        for (int p = 0; p <= m; ++p)
            for (const auto& I : oracle::subsets(m, p)) {
                auto [s, C] = complement_sign(MultiIndex(I), m);
                std::vector<int> perm = I;
                perm.insert(perm.end(), C.begin(), C.end());
                CHECK(s == oracle::perm_sign(perm));
            }

    CHECK_THROWS_AS(complement_sign(MultiIndex{4}, 3), std::out_of_range);
    CHECK_THROWS(MultiIndex({2, 1}));
}

TEST_CASE("wedge product") {
    CHECK(wedge(e(2, {1}), e(2, {2})) == e(2, {1, 2}));
    CHECK(wedge(e(2, {2}), e(2, {1})) == e(2, {1, 2}, R(-1)));
    CHECK(wedge(e(2, {1}) + e(2, {2}), e(2, {2})) == e(2, {1, 2}));
    CHECK_THROWS_AS(wedge(e(2, {1}), e(3, {1})), std::invalid_argument);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 1 + trial % 6;
        std::uniform_int_distribution<int> deg(0, m);
        int p = deg(rng), q = deg(rng), r = deg(rng);
        auto a = oracle::random_homogeneous<R>(rng, m, p, oracle::rational_gen);
        auto b = oracle::random_homogeneous<R>(rng, m, q, oracle::rational_gen);
        auto c = oracle::random_homogeneous<R>(rng, m, r, oracle::rational_gen);
        E A = oracle::to_lib(m, a), B = oracle::to_lib(m, b), C = oracle::to_lib(m, c);
        CHECK(oracle::from_lib(wedge(A, B)) == oracle::wedge(a, b));
        CHECK(wedge(wedge(A, B), C) == wedge(A, wedge(B, C)));
        CHECK(wedge(A, B) == wedge(B, A) * R((p * q) % 2 ? -1 : 1));
    }
}

TEST_CASE("inner product from Gram determinants") {
    MetricSpec id = MetricSpec::euclidean(2);
    CHECK(inner_product(e(2, {1, 2}), e(2, {1, 2}), id) == R(1));
    MetricSpec g = metric({{R(2), R(1)}, {R(1), R(1)}});
    CHECK(inner_product(e(2, {1, 2}), e(2, {1, 2}), g) == R(1));
    CHECK(inner_product(e(2, {1}), e(2, {1, 2}), g) == R(0));

    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + trial % 5;
        auto gm = oracle::random_metric(rng, m);
        MetricSpec G(oracle::to_matrix(gm));
        int p = trial % (m + 1);
        auto u = oracle::random_homogeneous<R>(rng, m, p, oracle::rational_gen);
        auto v = oracle::random_homogeneous<R>(rng, m, p, oracle::rational_gen);
        R lib = inner_product(oracle::to_lib(m, u), oracle::to_lib(m, v), G);
        CHECK(lib == oracle::change_of_basis_inner(u, v, gm));
        CHECK(lib == inner_product(oracle::to_lib(m, v), oracle::to_lib(m, u), G));
        if (!u.empty()) CHECK(inner_product(oracle::to_lib(m, u), oracle::to_lib(m, u), G).sign() > 0);
    }
}

TEST_CASE("metric validation and dual metric") {
    CHECK_THROWS(metric({{R(1), R(2)}, {R(0), R(1)}}));
    CHECK_THROWS(metric({{R(1), R(2)}, {R(2), R(1)}}));
    CHECK(dual_metric(RationalMatrix::identity(3)).gram() == RationalMatrix::identity(3));
    CHECK(dual_metric(RationalMatrix::from_rows({{R(4)}})).gram()(0, 0) == R(1, 4));
    auto d = dual_metric(RationalMatrix::from_rows({{R(2), R(1)}, {R(1), R(1)}}));
    CHECK(d.gram() == RationalMatrix::from_rows({{R(1), R(-1)}, {R(-1), R(2)}}));
    CHECK(dual_metric(d.gram()).gram() == RationalMatrix::from_rows({{R(2), R(1)}, {R(1), R(1)}}));
    CHECK_THROWS(dual_metric(RationalMatrix::from_rows({{R(1), R(1)}, {R(1), R(1)}})));
}

TEST_CASE("volume element") {
    CHECK(volume_element(MetricSpec::euclidean(3), 1) == E::top(3));
    CHECK(volume_element(MetricSpec::euclidean(3), -1) == E::top(3, R(-1)));
    CHECK(volume_element(metric({{R(4)}}), 1) == e(1, {1}, R(1, 2)));
    auto g = metric({{R(2), R(1)}, {R(1), R(1)}});
    auto dV = volume_element(g, 1);
    CHECK(inner_product(dV, dV, g) == R(1));
    CHECK_THROWS_AS(volume_element(metric({{R(2)}}), 1), std::domain_error);
}

TEST_CASE("Hodge star: examples") {
    MetricSpec g2 = MetricSpec::euclidean(2);
    CHECK(hodge_star(e(2, {1}), g2, 1) == e(2, {2}));
    CHECK(hodge_star(e(2, {2}), g2, 1) == e(2, {1}, R(-1)));
    for (int m = 1; m <= 5; ++m) {
        MetricSpec g = MetricSpec::euclidean(m);
        auto dV = volume_element(g, 1);
        CHECK(hodge_star(E::scalar(m, R(1)), g, 1) == dV);
        CHECK(hodge_star(dV, g, 1) == E::scalar(m, R(1)));
    }
}

TEST_CASE("Hodge star: defining identity and isometry against the oracles") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + trial % 5;
        auto gm = oracle::random_square_det_metric(rng, m);
        MetricSpec g(oracle::to_matrix(gm));
        OrientationSpec o(trial % 2 ? -1 : 1);
        int p = trial % (m + 1);
        auto u = oracle::random_homogeneous<R>(rng, m, p, oracle::rational_gen);
        auto v = oracle::random_homogeneous<R>(rng, m, p, oracle::rational_gen);
        E U = oracle::to_lib(m, u), V = oracle::to_lib(m, v);
        R uv = oracle::change_of_basis_inner(u, v, gm);
        // dV = σ e_1∧…∧e_m / √det g, with √det g read off the triangular factor.
        R root = *exact_sqrt(g.determinant());
        auto dV = oracle::from_lib(E::top(m, R(o.sign()) / root));
        auto lhs = oracle::wedge(u, oracle::from_lib(hodge_star(V, g, o)));
        oracle::Form<R> rhs;
        for (const auto& [I, c] : dV) oracle::add(rhs, I, c * uv);
        CHECK(lhs == rhs);
        auto su = oracle::from_lib(hodge_star(U, g, o)), sv = oracle::from_lib(hodge_star(V, g, o));
        CHECK(oracle::change_of_basis_inner(su, sv, gm) == uv);
    }
}

TEST_CASE("Hodge star: non-square determinants use the scaled form") {
    MetricSpec g = metric({{R(2), R(0)}, {R(0), R(1)}});
    CHECK_THROWS_AS(hodge_star(e(2, {1}), g, 1), std::domain_error);
    auto s = hodge_star_scaled(e(2, {1}), g, 1);
    CHECK(s.gram_det == R(2));
    CHECK(s.unnormalized == e(2, {2}, R(2)));
    CHECK(hodge_star_twice(e(2, {1}), g, 1) == e(2, {1}, R(-1)));
}

TEST_CASE("Hodge star: linear across degrees") {
    MetricSpec g = MetricSpec::euclidean(3);
    E mixed = E::scalar(3, R(2)) + e(3, {1});
    CHECK(hodge_star(mixed, g, 1) == E::top(3, R(2)) + e(3, {2, 3}));
}

TEST_CASE("star star = (-1)^{p(m-p)} for random metrics, m <= 6") {
    std::mt19937 rng(7);
    for (int m = 1; m <= 6; ++m)
        for (int trial = 0; trial < 3; ++trial) {
            MetricSpec g(oracle::to_matrix(oracle::random_metric(rng, m)));
            for (int p = 0; p <= m; ++p) {
                auto u = oracle::random_homogeneous<R>(rng, m, p, oracle::rational_gen);
                E U = oracle::to_lib(m, u);
                CHECK(hodge_star_twice(U, g, 1) == U * R((p * (m - p)) % 2 ? -1 : 1));
            }
        }
}
