#pragma once

#include "sumsetlab/pipelines.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sumsetlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnverified = 2;

struct Outcome {
    int code = kExitOk;
    nlohmann::json report;  // empty when only help text was requested
    std::string text;       // help output
    std::string summary;    // one-line human summary
};

/// Defaults merged with overrides from a JSON file or an inline JSON object.
/// A missing file falls back to the defaults only when `defaults_on_missing`.
/// Unknown keys and nonpositive values are rejected with InvalidArgument.
/// Overrides fields of `cfg` from a JSON object, then validates.
void apply_constants(ConstantsConfig &cfg, const nlohmann::json &overrides);

ConstantsConfig load_constants(const std::optional<std::string> &source, bool defaults_on_missing);

/// Integer set from a JSON array, given inline or as a file path.
IntSet parse_int_set(const std::string &source);

/// Group set from a JSON array (needs `group`) or a {group, support} object.
/// Elements are canonical indices or coordinate arrays.
ElementSet parse_group_set(const std::string &source, const std::optional<GroupSpec> &group);

/// Runs one invocation; `args` excludes the program name.
Outcome run(const std::vector<std::string> &args);

/// run() with output: the report on `out`, the summary on `err` unless --json-only.
int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// The report with manifest.timestamp removed, for reproducibility comparisons.
nlohmann::json without_timestamp(nlohmann::json report);

} // namespace sumsetlab::cli
