#pragma once

#include <json.hpp>

#include "divkit/core.hpp"
#include "divkit/harness.hpp"
#include "divkit/stats.hpp"

namespace divkit {

nlohmann::json to_json(const ParamValue& v);
nlohmann::json to_json(const DiversityReport& report);
nlohmann::json to_json(const KernelSpec& spec, std::optional<std::size_t> dim = std::nullopt);
nlohmann::json to_json(const SyntheticSpec& spec);
nlohmann::json to_json(const SweepCorrelation& sweep);

/// {"plan": {...}, "results": [{"method", "n", "stage", "mean_ms", "std_ms"}],
///  "scores": [...], "env": {"threads", "timestamp"}}
nlohmann::json to_json(const BenchReport& report);

}  // namespace divkit
