#pragma once

// JSON encodings of the domain types and the number syntax accepted on the
// command line. Complex numbers are [re, im] pairs; big integers are decimal
// strings so they survive readers limited to doubles.

#include <optional>
#include <string>

#include <json.hpp>

#include "pvi/counting.hpp"
#include "pvi/lattice.hpp"
#include "pvi/lines.hpp"
#include "pvi/params.hpp"
#include "pvi/surface.hpp"

namespace pvi {

using Json = nlohmann::json;

/// "1.5", "-2i", "3-0.25i", "1e-3+2i". Throws std::invalid_argument.
Complex parse_complex(const std::string& text);

/// "p/q", an integer, or a terminating decimal, read exactly; nullopt
/// for anything else (including complex values).
std::optional<Rational> parse_rational(const std::string& text);

/// A JSON number, [re, im] pair, or string in either syntax above.
Complex complex_from_json(const Json& j);
Json complex_to_json(const Complex& z);

Json big_to_json(const BigInt& v);
BigInt big_from_json(const Json& j);

/// A JSON array of 4 (kappa_1..kappa_4) or 5 (kappa_0..kappa_4) entries.
/// When every entry of the 4-entry form is an exact rational string or an
/// integer, the exact representation is kept.
KappaPoint kappa_from_json(const Json& j);
Json to_json(const KappaPoint& k);

Json to_json(const MonodromyTraces& a);
Json to_json(const EigenParams& b);
Json to_json(const ThetaPoint& t);
ThetaPoint theta_from_json(const Json& j);
EigenParams eigen_from_json(const Json& j);

Json to_json(const WallReport& r);
WallReport wall_report_from_json(const Json& j);

Json to_json(const AffinePoint& p);
AffinePoint affine_point_from_json(const Json& j);
Vec3<Complex> vec3_from_json(const Json& j);

Json to_json(const CountReport& r);
CountReport count_report_from_json(const Json& j);

Json to_json(const LatticeEndo& m);
LatticeEndo endo_from_json(const Json& j);
Json poly_to_json(const IntPoly& p);

Json to_json(const ProjectiveLine& l);
ProjectiveLine line_from_json(const Json& j);
Json to_json(const SigmaLineReport& r);
Json to_json(const VerifyReport& r);

}  // namespace pvi
