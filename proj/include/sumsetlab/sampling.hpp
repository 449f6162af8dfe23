#pragma once

#include "sumsetlab/fourier.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/random.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sumsetlab {

/// Default for the unnamed constant C in k = ceil(C p / eps^2).
inline constexpr double kDefaultCSample = 4.0;

/// lambda / |lambda|, with 0 mapped to 0.
Complex direction(Complex lambda) noexcept;

/// k = ceil(c_sample * p / eps^2).
std::size_t sample_count(double p, double epsilon, double c_sample);

/// The functions g_j of a decomposition f = sum_j lambda_j g_j. Parts are
/// produced on demand so that families like "all characters" never need to
/// be materialized at once.
class PartSource {
public:
    virtual ~PartSource() = default;

    virtual const GroupSpec &group() const noexcept = 0;
    virtual std::size_t size() const noexcept = 0;
    /// out += coef * g_j.
    virtual void accumulate(std::size_t j, Complex coef, std::span<Complex> out) const = 0;
    /// ||g_j||_{L^p}.
    virtual double part_norm(std::size_t j, double p) const;

    GroupFunction part(std::size_t j) const;
};

/// Explicitly stored parts.
class ExplicitParts final : public PartSource {
public:
    explicit ExplicitParts(std::vector<GroupFunction> parts);

    const GroupSpec &group() const noexcept override { return parts_.front().group(); }
    std::size_t size() const noexcept override { return parts_.size(); }
    void accumulate(std::size_t j, Complex coef, std::span<Complex> out) const override;
    double part_norm(std::size_t j, double p) const override;

private:
    std::vector<GroupFunction> parts_;
};

/// Part j is the character with frequency j; every part has unit L^p norm.
class CharacterParts final : public PartSource {
public:
    explicit CharacterParts(GroupSpec group);

    const GroupSpec &group() const noexcept override { return group_; }
    std::size_t size() const noexcept override { return group_.order(); }
    void accumulate(std::size_t j, Complex coef, std::span<Complex> out) const override;
    double part_norm(std::size_t, double) const override { return 1.0; }

private:
    GroupSpec group_;
    std::vector<Complex> roots_;
};

/// Part y is 1_{y+B} / scale, where scale = mu_G(B)^{1/p} makes it unit-norm in L^p.
class TranslateParts final : public PartSource {
public:
    TranslateParts(ElementSet b, double scale);

    const GroupSpec &group() const noexcept override { return b_.group(); }
    std::size_t size() const noexcept override { return b_.group().order(); }
    void accumulate(std::size_t j, Complex coef, std::span<Complex> out) const override;
    double part_norm(std::size_t j, double p) const override;

private:
    ElementSet b_;
    double scale_;
};

/// f = lambda_1 g_1 + ... + lambda_n g_n over one group.
class Decomposition {
public:
    Decomposition(std::vector<Complex> weights, std::vector<GroupFunction> parts);
    /// `sum`, when supplied, must equal sum_j lambda_j g_j; otherwise it is computed.
    Decomposition(std::vector<Complex> weights, std::shared_ptr<const PartSource> parts,
                  std::optional<GroupFunction> sum = std::nullopt);

    const std::vector<Complex> &weights() const noexcept { return weights_; }
    const PartSource &parts() const noexcept { return *parts_; }
    const GroupSpec &group() const noexcept { return parts_->group(); }
    std::size_t size() const noexcept { return weights_.size(); }
    double l1() const noexcept { return l1_; }
    const GroupFunction &sum() const noexcept { return *sum_; }
    /// f / ||lambda||_1, the function the samples approximate.
    GroupFunction normalized_target() const;
    /// Throws InvalidArgument if some part has ||g_j||_p > 1 (up to 1e-9).
    void check_part_norms(double p) const;

private:
    std::vector<Complex> weights_;
    std::shared_ptr<const PartSource> parts_;
    std::optional<GroupFunction> sum_;
    double l1_ = 0.0;
};

struct SampleReport {
    std::size_t k = 0;
    std::vector<std::size_t> sigma;
    GroupFunction approximant;
    double lp_error = 0.0;
    double epsilon = 0.0;
    double p = 2.0;
    std::uint64_t seed = 0;
    std::string rng_id{kRngId};
    /// Factor the parts were divided by to make them unit-norm (1 unless rescaled).
    double part_scale = 1.0;
};

/// (1/k) sum_j direction(lambda_{sigma_j}) g_{sigma_j}, summed in sigma order.
GroupFunction approximant_from_indices(const Decomposition &d, std::span<const std::size_t> sigma);

/// Draws k i.i.d. indices with P(j) = |lambda_j| / ||lambda||_1 and measures
/// the L^p distance of their signed average to f / ||lambda||_1.
SampleReport sample_with_k(const Decomposition &d, std::size_t k, double p, std::uint64_t seed);

/// Same with k = ceil(c_sample p / eps^2). Requires p >= 2 and 0 < eps < 1.
SampleReport sample_approximant(const Decomposition &d, double p, double epsilon, std::uint64_t seed,
                                double c_sample = kDefaultCSample);

struct FourierSample {
    SampleReport report;
    std::vector<Character> characters;  // gamma_1 .. gamma_k in draw order
    std::vector<Complex> coefficients;  // c_j = direction(f^(gamma_j))
    double spectral_l1 = 0.0;           // ||f^||_1
};

/// Approximates f / ||f^||_1 by an average of k characters with unimodular coefficients.
FourierSample fourier_sample(const GroupFunction &f, double p, double epsilon, std::uint64_t seed,
                             double c_sample = kDefaultCSample);

/// Samples the expansion 1_A*1_B = sum_y (1_A(y)/|G|) 1_{y+B}, with parts
/// rescaled to unit L^p norm; the target is mu_A*1_B / mu_G(B)^{1/p}.
SampleReport physical_sample(const ElementSet &a, const ElementSet &b, double p, double epsilon,
                             std::uint64_t seed, double c_sample = kDefaultCSample);

/// A sampling operation rerun with independent seeds.
struct SamplingTask {
    std::string name;
    double epsilon = 0.0;
    std::function<SampleReport(std::uint64_t seed)> run;

    static SamplingTask approximant(std::shared_ptr<const Decomposition> d, double p, double epsilon,
                                    double c_sample = kDefaultCSample);
    static SamplingTask fourier(GroupFunction f, double p, double epsilon, double c_sample = kDefaultCSample);
    static SamplingTask physical(ElementSet a, ElementSet b, double p, double epsilon,
                                 double c_sample = kDefaultCSample);
};

struct FailureReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double rate = 0.0;
    std::size_t k = 0;
    double mean_error = 0.0;
    double max_error = 0.0;
};

/// Fraction of trials whose lp_error exceeds epsilon; trial i uses derive_seed(seed, i).
FailureReport measure_failure_rate(const SamplingTask &task, std::size_t trials, std::uint64_t seed);

} // namespace sumsetlab
