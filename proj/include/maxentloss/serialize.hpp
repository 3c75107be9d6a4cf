#pragma once

#include <json.hpp>

#include "maxentloss/mem.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/risk.hpp"
#include "maxentloss/runner.hpp"
#include "maxentloss/sme.hpp"
#include "maxentloss/validation.hpp"

namespace maxent {

nlohmann::json moments_to_json(const FractionalMoments& moments);
FractionalMoments moments_from_json(const nlohmann::json& j);

nlohmann::json sme_to_json(const SmeDensity& fit);
SmeDensity sme_from_json(const nlohmann::json& j);

nlohmann::json mem_to_json(const MemSolution& fit);
MemSolution mem_from_json(const nlohmann::json& j);

nlohmann::json gof_to_json(const GofReport& report);

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json risk_rows_to_json(const std::vector<RiskRow>& rows);

}  // namespace maxent
