#pragma once

// JSON encodings of the domain types and of the computation reports. Field
// order is fixed so dumps are byte-stable.

#include <json.hpp>

#include "filtmult/convex.hpp"
#include "filtmult/divisorial.hpp"
#include "filtmult/multiplicity.hpp"
#include "filtmult/okounkov.hpp"

namespace filtmult {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become kSchema.
Json parse_json(const std::string& text);

Json to_json(const Scalar& s);
/// {"rat"}, {"quad"}, {"float","tol"}; plain integers and "p/q" strings are accepted too.
Scalar scalar_from_json(const Json& j);

Json to_json(const ExponentVector& v);
Json to_json(const MonomialIdeal& ideal);
MonomialIdeal ideal_from_json(std::size_t dim, const Json& gens);

Json to_json(const Filtration& f);
Filtration filtration_from_json(const Json& j);

Json to_json(const Polytope<Rational>& p);
Json to_json(const Polytope<QuadExt>& p);
Polytope<Rational> polytope_from_json(const Json& j);

Json to_json(const IntersectionTensor& t);
IntersectionTensor tensor_from_json(const Json& j);
Json to_json(const NefEnvelope& env);
NefEnvelope envelope_from_json(const Json& j);
DivisorCoeffs divisor_from_json(const Json& j);

Json to_json(const HomogeneousForm& f, int digits = 12);

// Reports.
Json to_json(const LimitEstimate& e);
Json to_json(const MixedMultiplicities& e);
Json to_json(const MinkowskiReport& r);
Json to_json(const GammaRatioReport& r);
Json to_json(const MinkowskiEqualityResult& r);
Json to_json(const TrskResult& r);
Json to_json(const ReesResult& r);
Json to_json(const RigidityResult& r);
Json to_json(const TruncatedBody& b);
Json to_json(const BrunnMinkowskiReport& r);
Json to_json(const EqualityClassification& c, const NefEnvelope& env);
Json to_json(const MixedPolynomial& p, int digits = 12);

/// Flattens a report to (dotted key, rendered value) rows; Scalar objects are
/// rendered with to_display_string.
std::vector<std::pair<std::string, std::string>> flatten(const Json& j, int digits = 12);

}  // namespace filtmult
