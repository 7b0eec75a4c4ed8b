#pragma once

#include "adsfuse/assertion.hpp"
#include "adsfuse/model.hpp"
#include "adsfuse/signature.hpp"
#include "json.hpp"

namespace adsfuse::codec {

using json = nlohmann::ordered_json;

// {"op":"and","args":[...]}, {"op":"var","name":"x"},
// {"op":"app","symbol":{...},"args":[...]}
json to_json(Symbol f);
json to_json(Term t);
json to_json(const Assertion& a);
json to_json(const AssertionSet& gamma);
json to_json(const Signature& sig);
// {"domain":3,"roles":{"R1":[[0,1]]},"transitive":[...],"functional":[...],
//  "vars":{"x":[1]},"objects":{"a":0},"nominals":{}}
json to_json(const FiniteInterpretation& m);

// All decoders throw Error(Json) on malformed input.
Symbol symbol_from_json(const json& j);
Term term_from_json(const json& j);
Assertion assertion_from_json(const json& j);
AssertionSet assertions_from_json(const json& j);
Signature signature_from_json(const json& j);
FiniteInterpretation model_from_json(const json& j);

}  // namespace adsfuse::codec
