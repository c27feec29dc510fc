#pragma once

#include <string>

#include <json.hpp>

#include "taskstop/estimate.hpp"
#include "taskstop/identify.hpp"
#include "taskstop/model.hpp"
#include "taskstop/rationalize.hpp"

namespace taskstop {

using json = nlohmann::ordered_json;

// Tagged-union schemas with strict key checking; numeric fields accept
// plain numbers or decimal strings (atoms are order-sensitive, strings
// keep them exact in hand-written configs).

json distribution_to_json(const Distribution& f);
Distribution distribution_from_json(const json& j);

json problem_to_json(const StoppingProblem& problem);
StoppingProblem problem_from_json(const json& j);

json preferences_to_json(const Preferences& prefs);
Preferences preferences_from_json(const json& j);

json profile_to_json(const EquilibriumProfile& profile);

json rich_data_to_json(const RichData& data);
RichData rich_data_from_json(const json& j);

double number_from_json(const json& j, const std::string& context);

/// FNV-1a hash of the canonical dump, recorded in output headers.
std::string config_hash(const json& config);

}  // namespace taskstop
