#include "sumsetlab/random.hpp"

#include "sumsetlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sumsetlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw InvalidArgument("Rng::below needs a positive bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::vector<std::uint64_t> Rng::choose(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        throw InvalidArgument("cannot choose more elements than available");
    // Floyd's algorithm.
    std::vector<std::uint64_t> picked;
    picked.reserve(k);
    for (std::uint64_t j = n - k; j < n; ++j) {
        const std::uint64_t t = below(j + 1);
        if (std::find(picked.begin(), picked.end(), t) == picked.end())
            picked.push_back(t);
        else
            picked.push_back(j);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

IndexSampler::IndexSampler(std::span<const double> weights)
{
    cumulative_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || std::isinf(w))
            throw InvalidArgument("sampling weights must be finite and non-negative");
        acc += w;
        cumulative_.push_back(acc);
    }
    total_ = acc;
    if (!(total_ > 0.0))
        throw InvalidArgument("sampling weights are all zero");
}

std::size_t IndexSampler::operator()(Rng &rng) const
{
    const double u = rng.uniform() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end())
        --it;
    std::size_t j = static_cast<std::size_t>(it - cumulative_.begin());
    // Zero-weight entries share their cumulative value with a predecessor and
    // upper_bound never lands on them; step back only past rounding overshoot.
    while (j > 0 && cumulative_[j] == cumulative_[j - 1])
        --j;
    return j;
}

double IndexSampler::probability(std::size_t j) const
{
    const double prev = j == 0 ? 0.0 : cumulative_[j - 1];
    return (cumulative_[j] - prev) / total_;
}

} // namespace sumsetlab
