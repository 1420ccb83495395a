#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hodge/complex_hermitian.hpp"
#include "hodge/degeneration.hpp"
#include "hodge/exterior.hpp"
#include "hodge/flat_torus.hpp"
#include "hodge/lefschetz_ring.hpp"

namespace hodge {

using json = nlohmann::ordered_json;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scalars.  Rationals are read from integers, "p/q" strings or {"num","den"};
// Gaussians from any of those or from {"re","im"}.
Rational rational_from_json(const json& j);
Gaussian gaussian_from_json(const json& j);
json rational_to_json(const Rational& r);  // {"num","den"}
json gaussian_to_json(const Gaussian& z);  // {"re","im"}
json rational_str(const Rational& r);      // "p/q"
json gaussian_str(const Gaussian& z);      // "a+bi"

RationalMatrix rational_matrix_from_json(const json& j);
GaussianMatrix gaussian_matrix_from_json(const json& j);
json matrix_to_json(const RationalMatrix& m);
json matrix_to_json(const GaussianMatrix& m);

ExteriorElement<Rational> exterior_from_json(const json& j);
ExteriorElement<Gaussian> complex_exterior_from_json(const json& j);
json exterior_to_json(const ExteriorElement<Rational>& u);
json exterior_to_json(const ExteriorElement<Gaussian>& u);

BigradedElement bigraded_from_json(const json& j);
json bigraded_to_json(const BigradedElement& u);

HermitianForm hermitian_from_json(const json& j);
json hermitian_to_json(const HermitianForm& h);

FourierForm fourier_from_json(const json& j);
json fourier_to_json(const FourierForm& f);

RingSpec ring_spec_from_json(const json& j);
json ring_spec_to_json(const RingSpec& s);

/// Entries are exact unless some entry is a non-integral JSON number.
IntersectionMatrix intersection_matrix_from_json(const json& j);

json parse_json_text(const std::string& text);
json read_json_file(const std::string& path);

/// A certified ring and, for builtins, its default Kähler class.
struct LoadedRing {
    GradedRing ring;
    std::optional<RingVector> omega;
};

/// Builtin alias ("pn", "pn:4", "torus:2", "quadric", "p1xp1", "blowup_p2",
/// "blowup_p3_point") or a path to a ring file.  Certification failures
/// propagate as RingCertificationError.
LoadedRing load_ring(const std::string& source, std::optional<int> n = std::nullopt);

/// Parses "2*h - e", "h^2", "1/2*a + b", "i*dz1^dzb1" in the ring basis.
RingVector parse_ring_element(const GradedRing& ring, const std::string& text);

/// Comma- or whitespace-separated rationals, e.g. "1/2,1/4,1/8".
std::vector<Rational> parse_rational_list(const std::string& text);

// Reports.  Every report records the tag of the relation it verifies.
json report_json(const KahlerSuiteReport& r);
json report_json(const HardLefschetzReport& r);
json report_json(const PrimitiveDecomposition& d);
json report_json(const HodgeRiemannReport& r);
json report_json(const PolarizationReport& r);
json report_json(const HodgeDiamond& d);
json report_json(const ContractibilityVerdict& v, const IntersectionMatrix& M);
json report_json(const PrimitiveLimitTrace& t, const GradedRing& ring);

json ring_vector_json(const GradedRing& ring, const RingVector& v);

}  // namespace hodge
