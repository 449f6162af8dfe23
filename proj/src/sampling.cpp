#include "sumsetlab/sampling.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sumsetlab {

namespace {

void check_parameters(double p, double epsilon)
{
    if (!(p >= 2.0))
        throw InvalidArgument("sampling needs p >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("sampling needs 0 < epsilon < 1");
}

} // namespace

Complex direction(Complex lambda) noexcept
{
    const double a = std::abs(lambda);
    return a == 0.0 ? Complex{} : lambda / a;
}

std::size_t sample_count(double p, double epsilon, double c_sample)
{
    if (!(c_sample > 0.0))
        throw InvalidArgument("C_sample must be positive");
    return static_cast<std::size_t>(std::ceil(c_sample * p / (epsilon * epsilon)));
}

double PartSource::part_norm(std::size_t j, double p) const { return lp_norm(part(j), p); }

GroupFunction PartSource::part(std::size_t j) const
{
    auto f = GroupFunction::zero(group());
    accumulate(j, 1.0, f.values());
    return f;
}

ExplicitParts::ExplicitParts(std::vector<GroupFunction> parts) : parts_(std::move(parts))
{
    if (parts_.empty())
        throw InvalidArgument("decomposition needs at least one part");
    for (const auto &g : parts_)
        require_same_group(parts_.front().group(), g.group(), "decomposition parts");
}

void ExplicitParts::accumulate(std::size_t j, Complex coef, std::span<Complex> out) const
{
    const auto &v = parts_.at(j).values();
    for (std::size_t x = 0; x < v.size(); ++x)
        out[x] += coef * v[x];
}

double ExplicitParts::part_norm(std::size_t j, double p) const { return lp_norm(parts_.at(j), p); }

CharacterParts::CharacterParts(GroupSpec group) : group_(group), roots_(unit_root_table(group.modulus()))
{
    require_enumerable(group_);
}

void CharacterParts::accumulate(std::size_t j, Complex coef, std::span<Complex> out) const
{
    for (Index x = 0; x < group_.order(); ++x)
        out[x] += coef * roots_[group_.phase(j, x)];
}

TranslateParts::TranslateParts(ElementSet b, double scale) : b_(std::move(b)), scale_(scale)
{
    if (b_.empty())
        throw InvalidArgument("translate family needs a nonempty B");
    if (!(scale_ > 0.0))
        throw InvalidArgument("translate scale must be positive");
}

void TranslateParts::accumulate(std::size_t j, Complex coef, std::span<Complex> out) const
{
    const auto &g = b_.group();
    const Complex c = coef / scale_;
    for (auto b : b_.members())
        out[g.add(j, b)] += c;
}

double TranslateParts::part_norm(std::size_t, double p) const
{
    return std::pow(b_.density(), 1.0 / p) / scale_;
}

Decomposition::Decomposition(std::vector<Complex> weights, std::vector<GroupFunction> parts)
    : Decomposition(std::move(weights), std::make_shared<ExplicitParts>(std::move(parts)))
{
}

Decomposition::Decomposition(std::vector<Complex> weights, std::shared_ptr<const PartSource> parts,
                             std::optional<GroupFunction> sum)
    : weights_(std::move(weights)), parts_(std::move(parts)), sum_(std::move(sum))
{
    if (!parts_ || parts_->size() == 0)
        throw InvalidArgument("decomposition needs at least one part");
    if (weights_.size() != parts_->size())
        throw InvalidArgument("decomposition has " + std::to_string(weights_.size()) + " weights but " +
                              std::to_string(parts_->size()) + " parts");
    for (const auto &w : weights_)
        l1_ += std::abs(w);
    if (!(l1_ > 0.0))
        throw InvalidArgument("decomposition weights are all zero");
    if (sum_) {
        require_same_group(sum_->group(), parts_->group(), "decomposition sum");
    } else {
        auto f = GroupFunction::zero(parts_->group());
        for (std::size_t j = 0; j < weights_.size(); ++j)
            if (weights_[j] != Complex{})
                parts_->accumulate(j, weights_[j], f.values());
        sum_ = std::move(f);
    }
}

GroupFunction Decomposition::normalized_target() const { return *sum_ * (1.0 / l1_); }

void Decomposition::check_part_norms(double p) const
{
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (weights_[j] == Complex{})
            continue;
        const double n = parts_->part_norm(j, p);
        if (n > 1.0 + 1e-9)
            throw InvalidArgument("part " + std::to_string(j) + " has L^p norm " + std::to_string(n) + " > 1");
    }
}

GroupFunction approximant_from_indices(const Decomposition &d, std::span<const std::size_t> sigma)
{
    if (sigma.empty())
        throw InvalidArgument("approximant needs at least one index");
    auto g = GroupFunction::zero(d.group());
    const double inv_k = 1.0 / static_cast<double>(sigma.size());
    for (auto j : sigma)
        d.parts().accumulate(j, direction(d.weights().at(j)) * inv_k, g.values());
    return g;
}

SampleReport sample_with_k(const Decomposition &d, std::size_t k, double p, std::uint64_t seed)
{
    if (k == 0)
        throw InvalidArgument("sample size must be positive");
    if (!(p >= 1.0))
        throw InvalidArgument("L^p error needs p >= 1");

    std::vector<double> magnitudes(d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
        magnitudes[j] = std::abs(d.weights()[j]);
    const IndexSampler sampler(magnitudes);

    Rng rng(seed);
    std::vector<std::size_t> sigma(k);
    for (auto &s : sigma)
        s = sampler(rng);

    // Accumulate each distinct index once, weighted by its multiplicity.
    std::map<std::size_t, std::size_t> counts;
    for (auto j : sigma)
        ++counts[j];
    auto approx = GroupFunction::zero(d.group());
    const double inv_k = 1.0 / static_cast<double>(k);
    for (const auto &[j, m] : counts)
        d.parts().accumulate(j, direction(d.weights()[j]) * (static_cast<double>(m) * inv_k), approx.values());

    SampleReport report{.k = k,
                        .sigma = std::move(sigma),
                        .approximant = std::move(approx),
                        .p = p,
                        .seed = seed};
    report.lp_error = lp_distance(d.normalized_target(), report.approximant, p);
    return report;
}

SampleReport sample_approximant(const Decomposition &d, double p, double epsilon, std::uint64_t seed,
                                double c_sample)
{
    check_parameters(p, epsilon);
    d.check_part_norms(p);
    auto report = sample_with_k(d, sample_count(p, epsilon, c_sample), p, seed);
    report.epsilon = epsilon;
    return report;
}

FourierSample fourier_sample(const GroupFunction &f, double p, double epsilon, std::uint64_t seed, double c_sample)
{
    check_parameters(p, epsilon);
    auto spectrum = transform(f);
    // Coefficients at rounding-noise level are exact zeros of f^; drop them so
    // they never receive sampling mass.
    double peak = 0.0;
    for (const auto &c : spectrum.coeffs())
        peak = std::max(peak, std::abs(c));
    for (auto &c : spectrum.coeffs())
        if (std::abs(c) <= 1e-13 * peak)
            c = Complex{};
    const double l1 = spectral_l1_norm(spectrum);
    if (!(l1 > 0.0) || f.is_zero())
        throw ZeroFunction("Fourier sampling needs a nonzero function");

    const Decomposition d(spectrum.coeffs(), std::make_shared<CharacterParts>(f.group()), f);
    FourierSample out{.report = sample_with_k(d, sample_count(p, epsilon, c_sample), p, seed)};
    out.report.epsilon = epsilon;
    out.spectral_l1 = l1;
    out.characters.reserve(out.report.k);
    out.coefficients.reserve(out.report.k);
    for (auto j : out.report.sigma) {
        out.characters.push_back({f.group(), j});
        out.coefficients.push_back(direction(spectrum[j]));
    }
    return out;
}

SampleReport physical_sample(const ElementSet &a, const ElementSet &b, double p, double epsilon, std::uint64_t seed,
                             double c_sample)
{
    check_parameters(p, epsilon);
    require_same_group(a.group(), b.group(), "physical_sample");
    if (a.empty())
        throw InvalidArgument("physical sampling needs a nonempty A");
    if (b.empty())
        throw InvalidArgument("physical sampling needs a nonempty B");

    const auto &g = a.group();
    const double scale = std::pow(b.density(), 1.0 / p);
    const double base = scale / static_cast<double>(g.order());
    std::vector<Complex> weights(g.order());
    for (auto y : a.members())
        weights[y] = base;
    auto sum = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
    const Decomposition d(std::move(weights), std::make_shared<TranslateParts>(b, scale), std::move(sum));
    auto report = sample_with_k(d, sample_count(p, epsilon, c_sample), p, seed);
    report.epsilon = epsilon;
    report.part_scale = scale;
    return report;
}

SamplingTask SamplingTask::approximant(std::shared_ptr<const Decomposition> d, double p, double epsilon,
                                       double c_sample)
{
    return {"approximant", epsilon, [d = std::move(d), p, epsilon, c_sample](std::uint64_t seed) {
                return sample_approximant(*d, p, epsilon, seed, c_sample);
            }};
}

SamplingTask SamplingTask::fourier(GroupFunction f, double p, double epsilon, double c_sample)
{
    return {"fourier", epsilon, [f = std::move(f), p, epsilon, c_sample](std::uint64_t seed) {
                return fourier_sample(f, p, epsilon, seed, c_sample).report;
            }};
}

SamplingTask SamplingTask::physical(ElementSet a, ElementSet b, double p, double epsilon, double c_sample)
{
    return {"physical", epsilon, [a = std::move(a), b = std::move(b), p, epsilon, c_sample](std::uint64_t seed) {
                return physical_sample(a, b, p, epsilon, seed, c_sample);
            }};
}

FailureReport measure_failure_rate(const SamplingTask &task, std::size_t trials, std::uint64_t seed)
{
    if (trials == 0)
        throw InvalidArgument("failure-rate measurement needs at least one trial");
    std::vector<double> errors(trials);
    std::vector<std::size_t> ks(trials);
    parallel_for(trials, [&](std::size_t i) {
        const auto r = task.run(derive_seed(seed, i));
        errors[i] = r.lp_error;
        ks[i] = r.k;
    });
    FailureReport out;
    out.trials = trials;
    out.k = ks.front();
    double total = 0.0;
    for (double e : errors) {
        if (e > task.epsilon)
            ++out.failures;
        total += e;
        out.max_error = std::max(out.max_error, e);
    }
    out.rate = static_cast<double>(out.failures) / static_cast<double>(trials);
    out.mean_error = total / static_cast<double>(trials);
    return out;
}

} // namespace sumsetlab
