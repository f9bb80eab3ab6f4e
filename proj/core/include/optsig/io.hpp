// JSON file formats shared by the CLI and the test suite.
//
// Instance files:
//   {"buyers": [{"support": ["0", "1", "2"], "mass": ["1/3", "1/3", "1/3"]}]}
// Rationals travel as "p/q" strings so nothing is ever rounded.
//
// Design files pair a signal profile with a mechanism (block indices are
// 0-based atom indices into each buyer's posterior):
//   {"partitions": [[[0, 0], [1, 2]], ...],
//    "mechanism": {"type": "sequential",
//                  "schedule": [{"buyer": 1, "block": 1, "price": "3/2"}]}}
// or {"type": "permutation", "order": [{"buyer": 0, "block": 1}, ...]}.
#pragma once

#include <string>

#include "json.hpp"
#include "optsig/auction.hpp"
#include "optsig/signals.hpp"

namespace optsig {

nlohmann::json instance_to_json(const Instance& inst);
// Throws ParseError on malformed input; the parsed instance is validated.
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json partitions_to_json(const SignalProfile& profile);
SignalProfile partitions_from_json(const nlohmann::json& j);

nlohmann::json mechanism_to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const nlohmann::json& j);

struct DesignFile {
    SignalProfile profile;
    Mechanism mechanism;
};

nlohmann::json design_to_json(const DesignFile& design);
DesignFile design_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

}  // namespace optsig
