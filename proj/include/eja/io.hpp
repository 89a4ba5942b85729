#pragma once

#include "eja/cones.hpp"

#include <json.hpp>

#include <string>

namespace eja {

nlohmann::ordered_json element_to_json(const Element& x);
Element element_from_json(const nlohmann::json& j);

/// {"variant": ..., "algebra": ..., "anchor"?: ..., "points"?: ...,
///  "region"?: name}. Region callables do not serialize; regions round-trip
/// through their registered names.
nlohmann::ordered_json setspec_to_json(const SetSpec& E);

/// Registered eigenvalue regions addressable by name from JSON:
/// "nonnegative-orthant" (the symmetric cone as a region, with its
/// projector) and "all" (the whole space, identity projector).
SetSpec region_by_name(const Algebra& algebra, const std::string& name);

/// {set, point, candidate, budget, max_violation, pass}.
nlohmann::ordered_json certificate_to_json(const SubgradientCertificate& cert);

} // namespace eja
