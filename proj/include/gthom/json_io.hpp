#pragma once

#include <string>

#include <json.hpp>

#include "gthom/morphisms.hpp"
#include "gthom/nadic.hpp"
#include "gthom/plmap.hpp"
#include "gthom/subdivision.hpp"

namespace gthom {

// Deterministic key order throughout; arbitrary-precision integers are
// emitted as JSON numbers when they fit in 53 bits and as decimal strings
// otherwise, and both forms are accepted on input.
using Json = nlohmann::ordered_json;

Json to_json(const mpz_class& z);
mpz_class mpz_from_json(const Json& j);

Json to_json(const Rat& q);              // {"num":..., "den":...}
Rat rat_from_json(const Json& j);

Json to_json(const NAdic& x);            // {"n":..., "m":..., "e":...}
NAdic nadic_from_json(const Json& j, bool canonicalize_input = false);

Json to_json(const PLMap& f);            // {"n","breaks","ls","rs","offset"}
PLMap plmap_from_json(const Json& j);

Json to_json(const GenAuto& a);          // {"n","period","images","verified"}
GenAuto genauto_from_json(const Json& j);

Json to_json(const SubdivisionPair& p);  // {"n","dom","ran","shift"}

}  // namespace gthom
