#pragma once

// JSON forms of rings, spaces, matrices, words, dilation witnesses, shares
// and identity reports. Scalars are strings in the ring's own syntax. Every
// reader throws Error(ParseError) on a malformed document.

#include "json.hpp"

#include "dser/identity.hpp"
#include "dser/local_global.hpp"

namespace dser {

using Json = nlohmann::ordered_json;

std::string direction_name(Direction d);  // "alpha" | "beta_star"
Direction direction_from_name(const std::string& name);

Json to_json(const Scalar& x);
Scalar scalar_from_json(const Ring& r, const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Ring& r, const Json& j);

/// {"ring": descriptor, "gram": [[...]], "hyperbolic_rank": m}
Json to_json(const AmbientSpace& s);
SpacePtr space_from_json(const Json& j);

/// {"dir": "alpha", "entries": [[...]]}
Json to_json(const HomMatrix& h);
HomMatrix hom_from_json(const AmbientSpace& s, const Json& j);

/// [{"kind": "CoordAlpha", "i": 1, "j": 2, "y": "s^3*x", "exp": 1}, ...]
Json to_json(const Word& w);
Word word_from_json(const SpacePtr& s, const Json& j);

Json to_json(const DilationInput& in);
DilationInput dilation_input_from_json(const Ring& r, const Json& j);

/// {"input": {...}, "case": "2b", "d": 9, "word": [...], "min_s_order": 1, "verified": true}
Json to_json(const DilationWitness& w);
DilationWitness witness_from_json(const SpacePtr& s, const Json& j);

std::vector<Share> shares_from_json(const Ring& r, const Json& j);
Json to_json(const std::vector<Share>& shares);

Json to_json(const IdentityReport& r);
IdentityReport report_from_json(const Json& j);

}  // namespace dser
