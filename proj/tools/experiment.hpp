#pragma once

#include "sumsetlab/pipelines.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace sumsetlab::cli {

struct BatchResult {
    nlohmann::json aggregate;
    bool ok = true; // no unverified witness and success rate at or above the requested floor
    std::string summary;
};

/// Runs a batch described by `spec`:
///   {pipeline, trials, seed, generator{kind, ...}, params{...}, constants{...},
///    oracle, plot, min_success_rate}
/// Pipelines: almost-periods, bootstrap, dense, doubling, ff, bogolyubov, embed.
/// Generators: group, interval, interval-subset, subspace, small-sets.
/// Trial i draws its instance from derive_seed(seed, 2i) and runs the pipeline
/// with derive_seed(seed, 2i+1). `trials` and `plot` override the spec fields.
/// `constants` in the spec are layered over `base`. Invalid specs throw InvalidArgument.
BatchResult run_experiment(const nlohmann::json &spec, const ConstantsConfig &base, std::uint64_t seed,
                           std::optional<std::size_t> trials, const std::optional<std::string> &plot);

} // namespace sumsetlab::cli
