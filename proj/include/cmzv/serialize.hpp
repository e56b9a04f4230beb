#pragma once

// JSON forms of the library's values. Exact quantities are written as
// fraction strings "p/q".

#include "cmzv/compositions.hpp"
#include "cmzv/etaspace.hpp"
#include "cmzv/poles.hpp"
#include "cmzv/quad.hpp"
#include "cmzv/reduce.hpp"
#include "cmzv/shuffle.hpp"

#include <json.hpp>

namespace cmzv {

using Json = nlohmann::json;

Json to_json(const Composition& c);
Composition composition_from_json(const Json& j);

Json to_json(const WordSum& w);
WordSum word_sum_from_json(const Json& j);

Json to_json(const VElement& v);
VElement velement_from_json(const Json& j);

Json to_json(const NumericResult& r);
NumericResult numeric_result_from_json(const Json& j);

Json to_json(const SymbolicConstant& c);
SymbolicConstant symbolic_constant_from_json(const Json& j);

Json to_json(const Hyperplane& h);
Hyperplane hyperplane_from_json(const Json& j);

} // namespace cmzv
