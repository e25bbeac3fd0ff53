#pragma once

// JSON forms of the library objects (schema "blaschke-dyn/1").

#include <string>

#include <json.hpp>

#include "bdyn/blaschke.hpp"
#include "bdyn/cheby.hpp"
#include "bdyn/dynamics.hpp"
#include "bdyn/elliptic_rational.hpp"
#include "bdyn/factorization.hpp"
#include "bdyn/monodromy.hpp"
#include "bdyn/verify.hpp"

namespace bdyn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "blaschke-dyn/1";

/// {"schema": ..., "kind": kind} followed by the fields of payload.
Json document(const std::string& kind, const Json& payload);

Json to_json(Complex z);
Json to_json(const Point& p);
Json to_json(const FBP& f);
Json to_json(const ChebyBlaschke& c);
Json to_json(const Permutation& p);
Json to_json(const MonodromyRep& rep);
Json to_json(const Decomposition& d);
Json to_json(const RittMove& m);
Json to_json(const BiluTichyPair& p);
Json to_json(const Orbit& o);
Json to_json(const HeightEstimate& h);
Json to_json(const IntersectionReport& r);
Json to_json(const DegreeGrowthReport& r);
Json to_json(const SuiteResult& s);
Json to_json(const GaussianRational& x);

/// {"re": x, "im": y}; InputError when malformed.
Complex complex_from_json(const Json& j);
/// Accepts a bare document or one wrapped under "fbp"/"first".
FBP fbp_from_json(const Json& j);
/// {"rho": "1", "zeros": ["1/2", ...]} with strings or {"re","im"} numbers
/// (doubles taken at their exact binary value), or {"power": n}.
ExactBlaschke exact_blaschke_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace bdyn
