#pragma once

#include <string>

#include "frost/policy/policy.hpp"

namespace frost::policy {

// {policy_id, version, m, limit_lo, limit_hi,
//  probe: {limits[], duration_s, warmup_s}, max_delay_increase_pct?}
// Missing fields take the defaults; a fractional m is rejected. Throws
// ConfigError for malformed JSON and InvalidArgument for invalid values.
PolicyDoc parse_policy(const std::string& json_text);
PolicyDoc load_policy(const std::string& path);
std::string policy_to_json(const PolicyDoc& policy, int indent = 2);

}  // namespace frost::policy
