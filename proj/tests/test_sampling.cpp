#include "doctest.h"
#include "oracles.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/sampling.hpp"

#include <cmath>
#include <map>

using namespace sumsetlab;

namespace {

ElementSet random_set(const GroupSpec &g, double density, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<Index> m;
    for (Index x = 0; x < g.order(); ++x)
        if (rng.bernoulli(density))
            m.push_back(x);
    if (m.empty())
        m.push_back(0);
    return ElementSet(g, std::move(m));
}

ElementSet random_set_of_size(const GroupSpec &g, std::size_t size, std::uint64_t seed)
{
    Rng rng(seed);
    const auto picks = rng.choose(g.order(), size);
    return ElementSet(g, std::vector<Index>(picks.begin(), picks.end()));
}

GroupFunction indicator_convolution(const ElementSet &a, const ElementSet &b)
{
    return convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
}

} // namespace

TEST_SUITE("sampling") {

TEST_CASE("sample count")
{
    CHECK(sample_count(2.0, 0.25, 4.0) == 128);
    CHECK(sample_count(2.0, 0.3, 4.0) == 89);
    CHECK(sample_count(3.0, 0.5, 1.0) == 12);
    CHECK_THROWS_AS(sample_count(2.0, 0.5, 0.0), InvalidArgument);
}

TEST_CASE("direction convention")
{
    CHECK(direction(Complex{}) == Complex{});
    CHECK(std::abs(direction(Complex(3.0, 4.0)) - Complex(0.6, 0.8)) < 1e-15);
}

TEST_CASE("degenerate decompositions are exact")
{
    const auto g = GroupSpec::cyclic(16);
    const auto part = GroupFunction::indicator(ElementSet(g, {1, 2, 3})) * 0.5;
    const Decomposition single({Complex(0.0, -2.0)}, {part});
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        const auto r = sample_approximant(single, 2.0, 0.5, seed);
        CHECK(r.lp_error < 1e-15);
    }
    const Decomposition same({1.0, 2.0, 0.5, 3.0}, {part, part, part, part});
    CHECK(sample_approximant(same, 3.0, 0.2, 7).lp_error < 1e-15);

    const auto task = SamplingTask::approximant(std::make_shared<Decomposition>(same), 2.0, 0.2);
    CHECK(measure_failure_rate(task, 20, 3).rate == 0.0);
}

TEST_CASE("invalid parameters")
{
    const auto g = GroupSpec::cyclic(8);
    const auto part = GroupFunction::constant(g, 1.0);
    const Decomposition d({1.0}, {part});
    CHECK_THROWS_AS(sample_approximant(d, 1.5, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_approximant(d, 2.0, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_approximant(d, 2.0, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(Decomposition({0.0}, {part}), InvalidArgument);
    CHECK_THROWS_AS(Decomposition({1.0, 2.0}, {part}), InvalidArgument);
    const Decomposition fat({1.0}, {part * 2.0});
    CHECK_THROWS_AS(sample_approximant(fat, 2.0, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(fourier_sample(GroupFunction::zero(g), 2.0, 0.5, 1), ZeroFunction);
    CHECK_THROWS_AS(physical_sample(ElementSet(g), ElementSet(g, {1}), 2.0, 0.5, 1), InvalidArgument);
}

TEST_CASE("zero weights are never drawn")
{
    const auto g = GroupSpec::cyclic(4);
    std::vector<GroupFunction> parts;
    for (Index r = 0; r < 4; ++r)
        parts.push_back(GroupFunction::character({g, r}));
    const Decomposition d({0.0, 1.0, 0.0, Complex(0.0, 1.0)}, parts);
    const auto r = sample_with_k(d, 5000, 2.0, 42);
    for (auto j : r.sigma)
        REQUIRE((j == 1 || j == 3));
}

TEST_CASE("fourier sampling of single characters")
{
    const auto g = GroupSpec::cyclic(30);
    const auto principal = fourier_sample(GroupFunction::constant(g, 1.0), 2.0, 0.5, 5);
    CHECK(principal.report.lp_error < 1e-12);
    for (const auto &c : principal.characters)
        CHECK(c.is_principal());

    const Character gamma{g, 7};
    const auto s = fourier_sample(GroupFunction::character(gamma), 2.0, 0.5, 5);
    CHECK(s.report.lp_error < 1e-12);
    for (std::size_t i = 0; i < s.characters.size(); ++i) {
        CHECK(s.characters[i] == gamma);
        CHECK(std::abs(s.coefficients[i] - Complex(1.0)) < 1e-12);
    }
}

TEST_CASE("physical sampling degenerate cases")
{
    const auto g = GroupSpec::cyclic(50);
    const auto b = random_set(g, 0.3, 8);
    const auto r = physical_sample(ElementSet(g, {17}), b, 2.0, 0.4, 3);
    CHECK(r.lp_error < 1e-12);
    const auto shifted = GroupFunction::indicator(b.translated(17)) * (1.0 / r.part_scale);
    CHECK(oracle::max_diff(r.approximant.values(), shifted.values()) < 1e-12);

    const auto a = random_set(g, 0.4, 9);
    const auto whole = physical_sample(a, ElementSet::whole(g), 3.0, 0.4, 3);
    CHECK(whole.lp_error < 1e-12);
    CHECK(whole.part_scale == 1.0);
}

TEST_CASE("reports are reproducible and recomputable")
{
    const auto g = GroupSpec::cyclic(64);
    const auto f = indicator_convolution(random_set(g, 0.5, 1), random_set(g, 0.5, 2));
    const auto a = fourier_sample(f, 2.0, 0.25, 1234);
    const auto b = fourier_sample(f, 2.0, 0.25, 1234);
    CHECK(a.report.sigma == b.report.sigma);
    CHECK(a.report.lp_error == b.report.lp_error);
    CHECK(a.report.approximant.values() == b.report.approximant.values());
    CHECK(a.report.rng_id == std::string(kRngId));
    CHECK(a.report.k == 128);
    CHECK(fourier_sample(f, 2.0, 0.25, 1235).report.sigma != a.report.sigma);

    const auto spectrum = transform(f);
    const Decomposition d(spectrum.coeffs(), std::make_shared<CharacterParts>(g), f);
    const auto again = approximant_from_indices(d, a.report.sigma);
    CHECK(oracle::max_diff(again.values(), a.report.approximant.values()) < 1e-12);
    const double err = lp_distance(f * (1.0 / a.spectral_l1), a.report.approximant, 2.0);
    CHECK(std::abs(err - a.report.lp_error) < 1e-9);

    for (const auto &c : a.coefficients)
        CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
    CHECK(spectral_l1_norm(transform(a.report.approximant)) <= 1.0 + 1e-9);
}

TEST_CASE("physical sampling reports are recomputable")
{
    const auto g = GroupSpec::cyclic(97);
    const auto a = random_set_of_size(g, 20, 3);
    const auto b = random_set_of_size(g, 20, 4);
    const auto r = physical_sample(a, b, 2.0, 0.3, 77);
    CHECK(r.part_scale == doctest::Approx(std::sqrt(20.0 / 97.0)).epsilon(1e-15));

    std::vector<Complex> approx(97);
    for (auto y : r.sigma) {
        REQUIRE(a.contains(y));
        for (auto x : b.members())
            approx[g.add(y, x)] += 1.0 / (r.part_scale * static_cast<double>(r.k));
    }
    CHECK(oracle::max_diff(approx, r.approximant.values()) < 1e-12);

    // f / ||lambda||_1 = (1_A*1_B) * |G| / (|A| scale) = mu_A*1_B / scale.
    const auto target =
        convolve(GroupFunction::measure(a), GroupFunction::indicator(b)) * (1.0 / r.part_scale);
    CHECK(std::abs(lp_distance(target, r.approximant, 2.0) - r.lp_error) < 1e-9);
}

TEST_CASE("empirical index distribution")
{
    const auto g = GroupSpec::cyclic(8);
    std::vector<GroupFunction> parts;
    for (Index r = 0; r < 8; ++r)
        parts.push_back(GroupFunction::character({g, r}));
    const std::vector<Complex> w{3.0, Complex(0.0, -1.0), 0.5, 0.0, 2.0, Complex(-1.0, 1.0), 0.25, 1.0};
    const Decomposition d(w, parts);
    const std::size_t draws = 20000;
    const auto r = sample_with_k(d, draws, 2.0, 2024);
    std::vector<double> freq(8, 0.0);
    for (auto j : r.sigma)
        freq[j] += 1.0 / static_cast<double>(draws);
    double tv = 0.0;
    for (std::size_t j = 0; j < 8; ++j)
        tv += std::abs(freq[j] - std::abs(w[j]) / d.l1());
    CHECK(0.5 * tv < 0.02);
}

TEST_CASE("mean error decreases with k")
{
    const auto g = GroupSpec::cyclic(64);
    const auto f = indicator_convolution(random_set(g, 0.4, 31), random_set(g, 0.6, 32));
    const auto spectrum = transform(f);
    const Decomposition d(spectrum.coeffs(), std::make_shared<CharacterParts>(g), f);
    std::vector<double> means;
    for (std::size_t k : {4, 16, 64, 256}) {
        double total = 0.0;
        for (std::uint64_t s = 0; s < 100; ++s)
            total += sample_with_k(d, k, 2.0, derive_seed(900, s)).lp_error;
        means.push_back(total / 100.0);
    }
    for (std::size_t i = 1; i < means.size(); ++i)
        CHECK(means[i] <= means[i - 1]);
}

TEST_CASE("Monte Carlo success rates")
{
    SUBCASE("fourier, cyclic(64), eps 0.25")
    {
        const auto g = GroupSpec::cyclic(64);
        const auto f = indicator_convolution(random_set(g, 0.5, 11), random_set(g, 0.5, 12));
        const auto r = measure_failure_rate(SamplingTask::fourier(f, 2.0, 0.25), 200, 1);
        CHECK(r.rate <= 0.05);
        CHECK(r.k == 128);
        const auto r500 = measure_failure_rate(SamplingTask::fourier(f, 2.0, 0.25), 500, 2);
        CHECK(r500.rate <= 0.05);
    }
    SUBCASE("fourier, cyclic(101), eps 0.3")
    {
        const auto g = GroupSpec::cyclic(101);
        const auto f = indicator_convolution(random_set(g, 0.5, 21), random_set(g, 0.5, 22));
        CHECK(measure_failure_rate(SamplingTask::fourier(f, 2.0, 0.3), 200, 3).rate <= 0.05);
    }
    SUBCASE("physical, cyclic(97), eps 0.3")
    {
        const auto g = GroupSpec::cyclic(97);
        const auto a = random_set_of_size(g, 20, 41);
        const auto b = random_set_of_size(g, 20, 42);
        CHECK(measure_failure_rate(SamplingTask::physical(a, b, 2.0, 0.3), 200, 4).rate <= 0.10);
    }
}

TEST_CASE("failure rate is independent of scheduling")
{
    const auto g = GroupSpec::cyclic(32);
    const auto f = indicator_convolution(random_set(g, 0.5, 51), random_set(g, 0.3, 52));
    const auto task = SamplingTask::fourier(f, 2.0, 0.2, 0.5);
    const auto a = measure_failure_rate(task, 64, 9);
    const auto b = measure_failure_rate(task, 64, 9);
    CHECK(a.failures == b.failures);
    CHECK(a.mean_error == b.mean_error);
    CHECK(a.max_error == b.max_error);
}

} // TEST_SUITE
