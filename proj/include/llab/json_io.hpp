#pragma once

#include <string>

#include <json.hpp>

#include "llab/boyd.hpp"
#include "llab/construction.hpp"
#include "llab/operators.hpp"
#include "llab/weight.hpp"
#include "llab/weight_classes.hpp"

namespace llab {

using Json = nlohmann::ordered_json;

// Non-finite values are written as the strings "inf", "-inf", "nan".
[[nodiscard]] Json number(double v);

// {"domain", "segments": [{"from", "to", "coef", "exp"}], "tail": {"coef", "exp"}}.
// Throws ConfigError on malformed input and on violated weight invariants.
[[nodiscard]] WeightModel weight_from_json(const Json& j);
[[nodiscard]] WeightModel load_weight(const std::string& path);
[[nodiscard]] Json to_json(const WeightModel& w);

// [[lo, hi], ...].
[[nodiscard]] IntervalUnion union_from_json(const Json& j);
[[nodiscard]] Json to_json(const IntervalUnion& set);

// [{"region": [[lo, hi], ...], "value": v}, ...].
[[nodiscard]] StepFunction step_from_json(const Json& j);
[[nodiscard]] Json to_json(const StepFunction& f);

[[nodiscard]] Json to_json(const Configuration& c);
[[nodiscard]] Json to_json(const ClassVerdict& v);
[[nodiscard]] Json to_json(const IndexEstimate& e);
[[nodiscard]] Json to_json(const MaximalVerdict& v);
[[nodiscard]] Json to_json(const HilbertVerdict& v);
[[nodiscard]] Json to_json(const WeakTypeCertificate& c);

}  // namespace llab
