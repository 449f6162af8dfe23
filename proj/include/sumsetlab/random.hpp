#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace sumsetlab {

/// Identifier of the generator and derivation scheme, recorded in reports.
inline constexpr std::string_view kRngId = "mt19937_64+splitmix64/v1";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `index` of a run seeded with `seed`; independent of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Seedable generator with a platform-independent output sequence. The
/// standard distributions are implementation-defined, so uniform draws are
/// derived from raw engine output here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double probability) { return uniform() < probability; }
    /// k distinct values from [0, n), sorted.
    std::vector<std::uint64_t> choose(std::uint64_t n, std::uint64_t k);

private:
    std::mt19937_64 engine_;
};

/// Draws index j with probability weights[j] / sum(weights).
class IndexSampler {
public:
    explicit IndexSampler(std::span<const double> weights);

    std::size_t operator()(Rng &rng) const;
    std::size_t size() const noexcept { return cumulative_.size(); }
    double probability(std::size_t j) const;

private:
    std::vector<double> cumulative_;
    double total_;
};

} // namespace sumsetlab
