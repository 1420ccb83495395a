#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hodge/json_io.hpp"

namespace py = pybind11;
using namespace hodge;

namespace {

LoadedRing ring_with_class(const std::string& ring, std::optional<int> n, const std::optional<std::string>& omega,
                           RingVector& cls) {
    auto lr = load_ring(ring, n);
    if (omega) cls = parse_ring_element(lr.ring, *omega);
    else if (lr.omega) cls = *lr.omega;
    else throw ParseError("ring has no default Kahler class; pass omega");
    require_lefschetz_class(lr.ring, cls);
    return lr;
}

std::string star(const std::string& form, const std::optional<std::string>& gram, int orientation) {
    auto u = exterior_from_json(parse_json_text(form));
    MetricSpec g = gram ? MetricSpec(rational_matrix_from_json(parse_json_text(*gram))) : MetricSpec::euclidean(u.dim());
    return exterior_to_json(hodge_star(u, g, OrientationSpec(orientation))).dump();
}

std::string kahler_check(int n, int max_mode) {
    if (n < 1 || n > 6) throw std::invalid_argument("n must lie in 1..6");
    return report_json(kahler_identity_suite(n, max_mode)).dump();
}

std::string decompose(const std::string& form, const std::optional<std::string>& gram) {
    auto f = fourier_from_json(parse_json_text(form));
    MetricSpec g = gram ? MetricSpec(rational_matrix_from_json(parse_json_text(*gram))) : MetricSpec::euclidean(f.m());
    auto d = hodge_decompose(f, g);
    json out = {{"harmonic", fourier_to_json(d.harmonic)},
                {"exact", fourier_to_json(d.exact)},
                {"coexact", fourier_to_json(d.coexact)}};
    return out.dump();
}

std::string diamond(const std::string& ring, std::optional<int> n) {
    auto lr = load_ring(ring, n);
    json out = report_json(hodge_diamond(lr.ring));
    out["ring"] = lr.ring.name();
    return out.dump();
}

std::string lefschetz(const std::string& ring, std::optional<int> n, const std::optional<std::string>& omega) {
    RingVector cls;
    auto lr = ring_with_class(ring, n, omega, cls);
    auto hl = hard_lefschetz_check(lr.ring, cls);
    json out = {{"ring", lr.ring.name()}, {"omega", lr.ring.format(cls)}, {"hard_lefschetz", report_json(hl)}};
    json decs = json::array();
    if (hl.passed())
        for (int l = 0; l <= lr.ring.n(); ++l) decs.push_back(report_json(primitive_decompose(lr.ring, cls, l)));
    out["decompositions"] = decs;
    return out.dump();
}

std::string hodge_riemann(const std::string& ring, int l, std::optional<int> n, const std::optional<std::string>& omega) {
    RingVector cls;
    auto lr = ring_with_class(ring, n, omega, cls);
    json out = {{"ring", lr.ring.name()}, {"hodge_riemann", report_json(hodge_riemann_check(lr.ring, cls, l))}};
    auto slice = primitive_slice(lr.ring, cls, l);
    if (slice.dim() > 0)
        out["polarization"] = report_json(polarization_check(slice, canonical_polarization_form(lr.ring, cls, l)));
    return out.dump();
}

std::string contract(int m, const std::string& entries) {
    auto M = intersection_matrix_from_json({{"m", m}, {"entries", parse_json_text(entries)}});
    return report_json(contractibility_check(M), M).dump();
}

std::string limit(const std::string& ring, const std::string& M, const std::optional<std::string>& L,
                  const std::optional<std::string>& eps) {
    RingVector cls;
    auto lr = ring_with_class(ring, std::nullopt, L, cls);
    auto m = parse_ring_element(lr.ring, M);
    auto e = eps ? parse_rational_list(*eps) : dyadic_sequence(10);
    json out = report_json(primitive_limit(lr.ring, m, cls, e), lr.ring);
    out["M"] = lr.ring.format(m);
    out["L"] = lr.ring.format(cls);
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_hodge, m) {
    m.doc() = "Exact linear and Kahler Hodge theory checks; reports are JSON strings.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<RingCertificationError>(m, "RingCertificationError", PyExc_ValueError);
    py::register_exception<LefschetzFailure>(m, "LefschetzFailure", PyExc_ArithmeticError);

    m.def("hodge_star", &star, py::arg("form"), py::arg("gram") = py::none(), py::arg("orientation") = 1);
    m.def("kahler_check", &kahler_check, py::arg("n"), py::arg("max_mode") = 2);
    m.def("betti_numbers", &betti_numbers, py::arg("m"), py::arg("max_mode") = 1);
    m.def("hodge_decompose", &decompose, py::arg("form"), py::arg("gram") = py::none());
    m.def("diamond", &diamond, py::arg("ring"), py::arg("n") = py::none());
    m.def("lefschetz", &lefschetz, py::arg("ring"), py::arg("n") = py::none(), py::arg("omega") = py::none());
    m.def("hodge_riemann", &hodge_riemann, py::arg("ring"), py::arg("l"), py::arg("n") = py::none(),
          py::arg("omega") = py::none());
    m.def("contract", &contract, py::arg("m"), py::arg("entries"));
    m.def("primitive_limit", &limit, py::arg("ring") = "blowup_p2", py::arg("M") = "h", py::arg("L") = py::none(),
          py::arg("eps") = py::none());
}
