#pragma once

// JSON scenario documents (schema_version 1). Unknown keys are rejected and
// every error names the offending key path.

#include "ftboost/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace ftboost {

inline constexpr int kScenarioSchemaVersion = 1;

/// Reads, parses and fully validates a scenario. Throws ConfigError with
/// category Syntax (unreadable file, malformed JSON), Schema (unknown,
/// missing or mistyped key) or Physics (constraint violation).
[[nodiscard]] ScenarioConfig parse_scenario(const std::filesystem::path& path);

/// Same as parse_scenario for an in-memory document. `origin` seeds the
/// scenario name when the document has none.
[[nodiscard]] ScenarioConfig parse_scenario_text(std::string_view text, std::string origin = "scenario");

}  // namespace ftboost
