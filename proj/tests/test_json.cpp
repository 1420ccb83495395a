#include "doctest.h"
#include "hodge/json_io.hpp"
#include "oracles.hpp"

using namespace hodge;
using R = Rational;
using G = Gaussian;

TEST_CASE("scalars from JSON") {
    CHECK(rational_from_json(json(3)) == R(3));
    CHECK(rational_from_json(json("-6/4")) == R(-3, 2));
    CHECK(rational_from_json(json{{"num", 2}, {"den", 6}}) == R(1, 3));
    CHECK_THROWS_AS(rational_from_json(json(0.5)), ParseError);
    CHECK_THROWS_AS(rational_from_json(json("1/0")), ParseError);
    CHECK_THROWS_AS(rational_from_json(json("x")), ParseError);
    CHECK(gaussian_from_json(json{{"re", 1}, {"im", "1/2"}}) == G(R(1), R(1, 2)));
    CHECK(gaussian_from_json(json(4)) == G(4));

    std::mt19937 rng(1);
    for (int t = 0; t < 30; ++t) {
        R r = oracle::random_rational(rng, 1000, 97);
        G z = oracle::random_gaussian(rng, 50, 13);
        CHECK(rational_from_json(rational_to_json(r)) == r);
        CHECK(rational_from_json(rational_str(r)) == r);
        CHECK(gaussian_from_json(gaussian_to_json(z)) == z);
    }
    R big = R(INT64_MAX) * R(INT64_MAX) / R(7);
    CHECK(rational_from_json(rational_str(big)) == big);
}

TEST_CASE("matrices and forms round-trip") {
    auto m = RationalMatrix::from_rows({{R(1), R(1, 2)}, {R(-3), R(0)}});
    CHECK(rational_matrix_from_json(matrix_to_json(m)) == m);
    CHECK(rational_matrix_from_json(json::parse("[[1, \"1/2\"], [-3, 0]]")) == m);
    CHECK_THROWS_AS(rational_matrix_from_json(json::parse("[[1, 2], [3]]")), ParseError);

    std::mt19937 rng(2);
    for (int t = 0; t < 20; ++t) {
        int m = 1 + t % 5;
        auto u = oracle::to_lib(m, oracle::random_homogeneous<R>(rng, m, t % (m + 1), oracle::rational_gen));
        CHECK(exterior_from_json(exterior_to_json(u)) == u);
        auto c = oracle::to_lib(m, oracle::random_homogeneous<G>(rng, m, t % (m + 1), oracle::gaussian_gen));
        CHECK(complex_exterior_from_json(exterior_to_json(c)) == c);
    }
    auto e = exterior_from_json(json::parse(R"({"dim": 3, "terms": [{"index": [1, 3], "num": 2, "den": 3}]})"));
    CHECK(e == ExteriorElement<R>::basis(3, MultiIndex{1, 3}, R(2, 3)));
    CHECK_THROWS_AS(exterior_from_json(json::parse(R"({"dim": 2, "terms": [{"index": [3], "num": 1}]})")),
                    ParseError);
    CHECK_THROWS_AS(exterior_from_json(json::parse(R"({"dim": 2, "terms": [{"index": [2, 1], "num": 1}]})")),
                    ParseError);

    BigradedElement b = BigradedElement::basis(2, MultiIndex{1}, MultiIndex{2}, G(R(1), R(-2)));
    CHECK(bigraded_from_json(bigraded_to_json(b)) == b);

    FourierForm f(2);
    f.add_mode({1, -1}, ExteriorElement<G>::basis(2, MultiIndex{2}, G(0, 1)));
    f.add_mode({0, 0}, ExteriorElement<G>::scalar(2, G(5)));
    CHECK(fourier_from_json(fourier_to_json(f)) == f);

    auto h = HermitianForm::euclidean(2);
    CHECK(hermitian_from_json(hermitian_to_json(h)).matrix() == h.matrix());
}

TEST_CASE("ring specifications") {
    auto point = ring_spec_from_json(
        json::parse(R"({"n": 0, "basis": [{"name": "1", "p": 0, "q": 0}], "integral": [{"name": "1", "num": 1}]})"));
    CHECK(GradedRing::certify(ring_spec_from_json(ring_spec_to_json(point))).dim() == 1);
    const char* text = R"({
        "name": "quadric",
        "n": 2,
        "basis": [{"name": "1", "p": 0, "q": 0}, {"name": "a", "p": 1, "q": 1},
                  {"name": "b", "p": 1, "q": 1}, {"name": "pt", "p": 2, "q": 2}],
        "mult": [{"a": "a", "b": "b", "out": [{"name": "pt", "num": 1}]}],
        "integral": [{"name": "pt", "num": 1}]
    })";
    auto spec = ring_spec_from_json(parse_json_text(text));
    CHECK(spec.name == "quadric");
    CHECK(spec.basis.size() == 4);
    auto ring = GradedRing::certify(spec);
    CHECK(ring.integrate(ring.multiply(ring.element("a"), ring.element("b"))) == G(1));
    auto again = GradedRing::certify(ring_spec_from_json(ring_spec_to_json(spec)));
    CHECK(again.dim() == ring.dim());
    CHECK_THROWS_AS(ring_spec_from_json(json::parse(R"({"n": 2})")), ParseError);
    CHECK_THROWS_AS(parse_json_text("{not json"), ParseError);
}

TEST_CASE("ring aliases and element parsing") {
    CHECK(load_ring("pn").ring.n() == 2);
    CHECK(load_ring("pn:4").ring.n() == 4);
    CHECK(load_ring("pn", 3).ring.n() == 3);
    CHECK(load_ring("torus").ring.n() == 1);
    CHECK(load_ring("quadric").ring.dim() == 4);
    CHECK(load_ring("blowup_p2").ring.dim() == 4);
    CHECK(load_ring("blowup_p3_point").ring.n() == 3);
    CHECK(load_ring("p1xp1").omega.has_value());
    CHECK_THROWS(load_ring("pn:9"));
    CHECK_THROWS(load_ring("/nonexistent/ring.json"));

    auto bl = load_ring("blowup_P2");
    const auto& r = bl.ring;
    CHECK(parse_ring_element(r, "2*h - e") == *bl.omega);
    CHECK(parse_ring_element(r, "2*h-e") == *bl.omega);
    CHECK_THROWS_AS(parse_ring_element(r, "2h-e"), ParseError);
    CHECK(parse_ring_element(r, "1/2*pt") == r.element("pt", G(R(1, 2))));
    CHECK(parse_ring_element(r, "3") == r.element("1", G(3)));
    CHECK(parse_ring_element(r, "i*h") == r.element("h", G(0, 1)));
    CHECK(parse_ring_element(r, "h + h") == r.element("h", G(2)));
    CHECK_THROWS_AS(parse_ring_element(r, "q"), ParseError);
    CHECK_THROWS_AS(parse_ring_element(r, ""), ParseError);

    auto p3 = load_ring("pn:3");
    CHECK(parse_ring_element(p3.ring, "h^2") == p3.ring.element("h^2"));

    CHECK(parse_rational_list("1/2, 1/4 1/8") == std::vector<R>{R(1, 2), R(1, 4), R(1, 8)});
    CHECK_THROWS_AS(parse_rational_list("1/2, x"), ParseError);
}

TEST_CASE("intersection matrices") {
    auto M = intersection_matrix_from_json(json::parse(R"({"m": 1, "entries": [[-2, 1], [1, -2]]})"));
    CHECK_FALSE(M.approximate);
    CHECK(M.exact == RationalMatrix::from_rows({{R(-2), R(1)}, {R(1), R(-2)}}));
    auto A = intersection_matrix_from_json(json::parse(R"({"m": 1, "entries": [[-1.5, 0.25], [0.25, -1]]})"));
    CHECK(A.approximate);
    CHECK(A.approx[0][1] == doctest::Approx(0.25));
    auto F = intersection_matrix_from_json(json::parse(R"({"m": 2, "entries": [["1/3"]]})"));
    CHECK(F.exact(0, 0) == R(1, 3));
}

TEST_CASE("reports serialize deterministically") {
    auto q = ring_builtin("quadric_surface");
    auto d1 = report_json(hodge_diamond(q.ring)).dump();
    auto d2 = report_json(hodge_diamond(q.ring)).dump();
    CHECK(d1 == d2);
    CHECK(d1.find("pqid") != std::string::npos);
    auto hl = report_json(hard_lefschetz_check(q.ring, q.omega));
    CHECK(hl.dump().find("chl-a") != std::string::npos);
    IntersectionMatrix M;
    M.exact = RationalMatrix::from_rows({{R(0)}});
    auto v = report_json(contractibility_check(M), M);
    CHECK(v.dump().find("grmu") != std::string::npos);
    CHECK(ring_vector_json(q.ring, q.omega).dump() == ring_vector_json(q.ring, q.omega).dump());
}
