#pragma once

#include <json.hpp>

#include "lpcurse/certifier.hpp"
#include "lpcurse/discrepancy.hpp"

namespace lpcurse {

// Certificates serialize to exactly their fields. to_json/from_json are found
// by nlohmann::json through ADL.
void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);

void to_json(nlohmann::json& j, const DiscrepancyEstimate& e);

} // namespace lpcurse
