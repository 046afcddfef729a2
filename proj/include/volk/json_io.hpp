#pragma once

#include "json.hpp"
#include "volk/distribution.hpp"

namespace volk {

using Json = nlohmann::ordered_json;

Json to_json(const PadicScalar& s);
Json to_json(const CycloElement& x);
Json to_json(const TabulatedDistribution& d);
Json to_json(const GroupRingElement& g);
Json to_json(const PadicSize& s, long p);

PadicScalar scalar_from_json(const Json& j, long wdigits);
CycloElement element_from_json(const Json& j, long wdigits);
TabulatedDistribution distribution_from_json(const Json& j, long wdigits);

}  // namespace volk
