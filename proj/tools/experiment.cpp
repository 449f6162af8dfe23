#include "experiment.hpp"

#include "cli.hpp"
#include "serialize.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"
#include "sumsetlab/parallel.hpp"
#include "sumsetlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sumsetlab::cli {

namespace {

constexpr std::uint64_t kOracleOrderLimit = 4096;
constexpr std::size_t kOracleSumsetLimit = 5000;

struct Instance {
    std::optional<ElementSet> a, b;
    std::optional<IntSet> ia, ib;
    std::uint64_t n = 0;
};

struct Trial {
    bool success = false;
    bool verified = true;
    std::optional<std::string> error;
    std::optional<std::uint64_t> length;
    std::optional<std::uint64_t> oracle_length;
    json detail = json::object();
};

double num_field(const json &j, const char *key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number())
        throw InvalidArgument(std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::uint64_t count_field(const json &j, const char *key, std::uint64_t fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number_unsigned() && !(j[key].is_number_integer() && j[key].get<std::int64_t>() >= 0))
        throw InvalidArgument(std::string("field '") + key + "' must be a nonnegative integer");
    return j[key].get<std::uint64_t>();
}

std::string string_field(const json &j, const char *key, const std::string &fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_string())
        throw InvalidArgument(std::string("field '") + key + "' must be a string");
    return j[key].get<std::string>();
}

bool bool_field(const json &j, const char *key, bool fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_boolean())
        throw InvalidArgument(std::string("field '") + key + "' must be a boolean");
    return j[key].get<bool>();
}

std::vector<std::uint64_t> bernoulli_subset(Rng &rng, std::uint64_t n, double density)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < n; ++x)
        if (rng.bernoulli(density))
            out.push_back(x);
    if (out.empty())
        out.push_back(rng.below(n));
    return out;
}

double draw_density(Rng &rng, const json &gen)
{
    if (gen.contains("density"))
        return num_field(gen, "density", 0.5);
    const double lo = num_field(gen, "density_min", 0.5);
    const double hi = num_field(gen, "density_max", lo);
    return lo + (hi - lo) * rng.uniform();
}

ElementSet random_group_set(Rng &rng, const GroupSpec &g, double density)
{
    const auto v = bernoulli_subset(rng, g.order(), density);
    return ElementSet(g, std::vector<Index>(v.begin(), v.end()));
}

IntSet random_interval_set(Rng &rng, std::uint64_t n, double density)
{
    std::vector<std::int64_t> v;
    for (auto x : bernoulli_subset(rng, n, density))
        v.push_back(static_cast<std::int64_t>(x) + 1);
    return IntSet(std::move(v));
}

ElementSet random_subspace(Rng &rng, const GroupSpec &g, std::size_t dim)
{
    if (!g.is_vector())
        throw InvalidArgument("subspace generator needs a vector group");
    if (dim > g.dimension())
        throw InvalidArgument("subspace dimension exceeds the ambient dimension");
    std::vector<Index> basis;
    while (basis.size() < dim) {
        auto trial = basis;
        trial.push_back(rng.below(g.order()));
        if (rank_mod_p(g, trial) == trial.size())
            basis = std::move(trial);
    }
    auto span = span_elements(g, 0, basis);
    std::sort(span.begin(), span.end());
    return ElementSet(g, std::move(span));
}

Instance generate(const json &gen, std::uint64_t seed)
{
    Rng rng(seed);
    const auto kind = string_field(gen, "kind", "");
    const bool same = bool_field(gen, "same", kind == "interval-subset" || kind == "subspace");
    Instance in;
    if (kind == "group") {
        const auto g = GroupSpec::parse(string_field(gen, "group", ""));
        in.a = random_group_set(rng, g, draw_density(rng, gen));
        in.b = same ? *in.a : random_group_set(rng, g, num_field(gen, "density_b", draw_density(rng, gen)));
    } else if (kind == "interval") {
        in.n = count_field(gen, "N", 0);
        if (in.n == 0)
            throw InvalidArgument("interval generator needs N >= 1");
        in.ia = random_interval_set(rng, in.n, draw_density(rng, gen));
        in.ib = same ? *in.ia : random_interval_set(rng, in.n, draw_density(rng, gen));
    } else if (kind == "interval-subset") {
        const auto size = count_field(gen, "size", 30);
        const auto length = count_field(gen, "length", 2 * size);
        const double max_k = num_field(gen, "max_doubling", 0.0);
        if (size == 0 || length < size)
            throw InvalidArgument("interval-subset needs 1 <= size <= length");
        auto draw = [&] {
            std::vector<std::int64_t> v;
            for (auto x : rng.choose(length, size))
                v.push_back(static_cast<std::int64_t>(x) + 1);
            return IntSet(std::move(v));
        };
        for (int attempt = 0;; ++attempt) {
            auto a = draw();
            if (max_k <= 0.0 || doubling_stats(a, a).k_a.to_double() <= max_k) {
                in.ia = std::move(a);
                break;
            }
            if (attempt == 1000)
                throw InvalidArgument("interval-subset: no draw met max_doubling in 1000 attempts");
        }
        in.ib = same ? *in.ia : draw();
        in.n = length;
    } else if (kind == "subspace") {
        const auto g = GroupSpec::parse(string_field(gen, "group", ""));
        in.a = random_subspace(rng, g, count_field(gen, "dim", 1));
        in.b = same ? *in.a : random_group_set(rng, g, num_field(gen, "density_b", 0.5));
    } else if (kind == "small-sets") {
        const auto max_size = count_field(gen, "max_size", 10);
        const auto range = count_field(gen, "range", 50);
        if (max_size == 0 || range < max_size)
            throw InvalidArgument("small-sets needs 1 <= max_size <= range");
        auto draw = [&] {
            std::vector<std::int64_t> v;
            for (auto x : rng.choose(range, 1 + rng.below(max_size)))
                v.push_back(static_cast<std::int64_t>(x));
            return IntSet(std::move(v));
        };
        in.ia = draw();
        in.ib = same ? *in.ia : draw();
    } else {
        throw InvalidArgument("unknown generator kind '" + kind + "'");
    }
    return in;
}

const ElementSet &need_group(const std::optional<ElementSet> &s, const std::string &pipeline)
{
    if (!s)
        throw InvalidArgument(pipeline + " needs a group generator");
    return *s;
}

const IntSet &need_int(const std::optional<IntSet> &s, const std::string &pipeline)
{
    if (!s)
        throw InvalidArgument(pipeline + " needs an integer generator");
    return *s;
}

void integer_oracle(Trial &t, const IntSet &a, const IntSet &b, bool oracle)
{
    if (!oracle)
        return;
    const auto s = sumset(a, b);
    if (s.size() > kOracleSumsetLimit)
        return;
    t.oracle_length = longest_ap_oracle(s).length;
    if (t.length && *t.length > *t.oracle_length)
        t.verified = false;
}

Trial run_trial(const std::string &pipeline, const json &params, const Instance &in, std::uint64_t seed,
                const ConstantsConfig &cfg, bool oracle, const std::string &generator_kind)
{
    Trial t;
    const double p = num_field(params, "p", 2.0);
    if (pipeline == "almost-periods") {
        const auto &a = need_group(in.a, pipeline);
        const auto &b = need_group(in.b, pipeline);
        const double eps = num_field(params, "eps", 0.4);
        const auto f = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
        const auto r = almost_period_bohr(f, p, eps, seed, cfg);
        t.success = r.pass;
        t.length = r.t_size;
        t.detail = {{"T_size", r.t_size}, {"rank", r.T.rank()}, {"max_distance", r.max_distance}};
        if (oracle && a.group().order() <= kOracleOrderLimit) {
            const auto bf = brute_force_almost_periods(f, p, eps, ReferenceNorm::spectral());
            const bool contained = materialize(r.T).is_subset_of(bf);
            t.oracle_length = bf.size();
            t.detail["contained"] = contained;
            if (r.pass && !contained)
                t.verified = false;
        }
    } else if (pipeline == "bootstrap") {
        const auto &a = need_group(in.a, pipeline);
        const auto &b = need_group(in.b, pipeline);
        const double kb = static_cast<double>(group_sumset(a, b).size()) / static_cast<double>(b.size());
        const double eps = num_field(params, "eps", 1.0 / std::sqrt(kb));
        const auto r = bootstrap_strong_lp(a, b, p, eps, std::nullopt, seed, cfg);
        t.success = r.periodicity.pass;
        t.verified = r.certificates_ok();
        t.length = r.periodicity.t_size;
        t.detail = {{"T_size", r.periodicity.t_size},
                    {"lambda_size", r.chang.basis.size()},
                    {"dissociated", r.dissociated},
                    {"spans", r.spans_verified},
                    {"containment", r.containment_verified}};
    } else if (pipeline == "dense" || pipeline == "doubling") {
        const auto &a = need_int(in.ia, pipeline);
        const auto &b = need_int(in.ib, pipeline);
        ProgressionReport r;
        if (pipeline == "dense") {
            const auto n = count_field(params, "N", in.n);
            if (n == 0)
                throw InvalidArgument("dense pipeline needs N");
            r = find_progression_dense(a, b, n, seed, cfg);
        } else {
            r = find_progression_small_doubling(a, b, seed, cfg);
        }
        t.success = r.witness.verified;
        t.verified = r.witness.verified;
        t.length = r.witness.length;
        t.detail = {{"step", r.witness.step}, {"base", r.witness.base}, {"attempts", r.attempts}};
        integer_oracle(t, a, b, oracle);
    } else if (pipeline == "ff") {
        const auto &a = need_group(in.a, pipeline);
        const auto &b = need_group(in.b, pipeline);
        const auto r = finite_field_translate(a, b, parse_finite_field_variant(string_field(params, "variant", "green")),
                                              seed, cfg);
        t.success = r.witness.verified;
        t.verified = r.witness.verified;
        t.length = r.witness.dimension();
        t.detail = {{"dimension", r.witness.dimension()}};
        const auto min_dim = count_field(params, "min_dimension", 0);
        if (t.success && r.witness.dimension() < min_dim)
            t.success = false;
    } else if (pipeline == "bogolyubov") {
        const auto &a = need_group(in.a, pipeline);
        const auto r = bogolyubov_bohr(a, seed, cfg);
        t.verified = r.false_containments == 0;
        t.success = r.contained && t.verified;
        t.length = r.t_size;
        t.detail = {{"T_size", r.t_size}, {"false_containments", r.false_containments}, {"outside", r.outside}};
        if (generator_kind == "subspace") {
            const bool inside = materialize(r.bootstrap.periodicity.T).is_subset_of(a);
            t.detail["T_subset_of_A"] = inside;
            t.success = t.success && inside;
            t.verified = t.verified && inside;
        }
    } else if (pipeline == "embed") {
        const auto &a = need_int(in.ia, pipeline);
        const auto &b = need_int(in.ib, pipeline);
        const auto k = static_cast<unsigned>(count_field(params, "k", 2));
        const auto modulus = next_prime(iterated_combination(a, b, k).size());
        const auto cert = embed_pair(a, b, k, modulus);
        const bool band_ok =
            cert.a_prime().size() * 2 * k >= a.size() && cert.b_prime().size() * 2 * k >= b.size();
        t.success = cert.verified && band_ok && cert.check.exhaustive;
        t.verified = t.success;
        t.length = cert.a_prime().size();
        t.detail = {{"modulus", modulus}, {"band_ok", band_ok}, {"exhaustive", cert.check.exhaustive}};
    } else {
        throw InvalidArgument("unknown pipeline '" + pipeline + "'");
    }
    return t;
}

// Witness length per trial against the oracle length, as an SVG scatter.
void write_plot(const std::string &path, const std::string &title, const std::vector<Trial> &trials)
{
    const double w = 640, h = 400, left = 60, right = 20, top = 40, bottom = 50;
    double ymax = 1;
    for (const auto &t : trials) {
        if (t.length)
            ymax = std::max(ymax, static_cast<double>(*t.length));
        if (t.oracle_length)
            ymax = std::max(ymax, static_cast<double>(*t.oracle_length));
    }
    const double n = std::max<double>(1.0, static_cast<double>(trials.size()));
    auto px = [&](std::size_t i) { return left + (w - left - right) * (static_cast<double>(i) + 0.5) / n; };
    auto py = [&](double v) { return h - bottom - (h - top - bottom) * v / ymax; };

    std::ostringstream s;
    s << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << w << R"(" height=")" << h << R"(">)" << '\n';
    s << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    s << R"(<text x=")" << w / 2 << R"(" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">)"
      << title << "</text>\n";
    s << R"(<line x1=")" << left << R"(" y1=")" << h - bottom << R"(" x2=")" << w - right << R"(" y2=")"
      << h - bottom << R"(" stroke="black"/>)" << '\n';
    s << R"(<line x1=")" << left << R"(" y1=")" << top << R"(" x2=")" << left << R"(" y2=")" << h - bottom
      << R"(" stroke="black"/>)" << '\n';
    s << R"(<text x=")" << left - 8 << R"(" y=")" << py(ymax) + 4
      << R"(" text-anchor="end" font-family="sans-serif" font-size="11">)" << ymax << "</text>\n";
    s << R"(<text x=")" << left - 8 << R"(" y=")" << py(0) + 4
      << R"(" text-anchor="end" font-family="sans-serif" font-size="11">0</text>)" << '\n';
    s << R"(<text x=")" << w / 2 << R"(" y=")" << h - 15
      << R"(" text-anchor="middle" font-family="sans-serif" font-size="12">trial</text>)" << '\n';
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto &t = trials[i];
        if (t.oracle_length)
            s << R"(<rect x=")" << px(i) - 3 << R"(" y=")" << py(static_cast<double>(*t.oracle_length)) - 3
              << R"(" width="6" height="6" fill="none" stroke="gray"/>)" << '\n';
        if (t.length)
            s << R"(<circle cx=")" << px(i) << R"(" cy=")" << py(static_cast<double>(*t.length))
              << R"(" r="3" fill=")" << (t.success ? "steelblue" : "firebrick") << R"("/>)" << '\n';
    }
    s << R"(<text x=")" << w - right << R"(" y=")" << top
      << R"(" text-anchor="end" font-family="sans-serif" font-size="11">dot: witness, square: oracle</text>)"
      << '\n';
    s << "</svg>\n";

    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write plot file '" + path + "'");
    out << s.str();
}

json length_stats(const std::vector<Trial> &trials)
{
    std::vector<std::uint64_t> v;
    for (const auto &t : trials)
        if (t.length && t.success)
            v.push_back(*t.length);
    if (v.empty())
        return {{"count", 0}, {"min", nullptr}, {"max", nullptr}, {"mean", nullptr}, {"histogram", json::object()}};
    std::map<std::uint64_t, std::size_t> hist;
    double sum = 0;
    for (auto x : v) {
        ++hist[x];
        sum += static_cast<double>(x);
    }
    json h = json::object();
    for (const auto &[len, c] : hist)
        h[std::to_string(len)] = c;
    return {{"count", v.size()},
            {"min", *std::min_element(v.begin(), v.end())},
            {"max", *std::max_element(v.begin(), v.end())},
            {"mean", sum / static_cast<double>(v.size())},
            {"histogram", h}};
}

} // namespace

BatchResult run_experiment(const json &spec, const ConstantsConfig &base, std::uint64_t seed,
                           std::optional<std::size_t> trials_override, const std::optional<std::string> &plot)
{
    if (!spec.is_object())
        throw InvalidArgument("batch spec must be a JSON object");
    static const std::vector<std::string> known{"pipeline", "trials",   "seed", "generator",       "params",
                                                "constants", "oracle", "plot", "min_success_rate"};
    for (const auto &[key, value] : spec.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidArgument("unknown batch spec field '" + key + "'");

    const auto pipeline = string_field(spec, "pipeline", "");
    if (pipeline.empty())
        throw InvalidArgument("batch spec needs a pipeline");
    const std::size_t trials = trials_override.value_or(count_field(spec, "trials", 0));
    const std::uint64_t batch_seed = spec.contains("seed") ? count_field(spec, "seed", 0) : seed;
    const json gen = spec.value("generator", json::object());
    const json params = spec.value("params", json::object());
    if (!gen.is_object() || !params.is_object())
        throw InvalidArgument("generator and params must be objects");
    ConstantsConfig cfg = base;
    if (spec.contains("constants"))
        apply_constants(cfg, spec["constants"]);
    const bool oracle = bool_field(spec, "oracle", true);
    const double min_rate = num_field(spec, "min_success_rate", 0.0);
    const auto plot_path = plot ? plot : (spec.contains("plot") ? std::optional(string_field(spec, "plot", "")) : std::nullopt);
    const auto kind = string_field(gen, "kind", "");

    std::vector<Trial> results(trials);
    parallel_for(trials, [&](std::size_t i) {
        Trial &t = results[i];
        try {
            const auto instance = generate(gen, derive_seed(batch_seed, 2 * i));
            t = run_trial(pipeline, params, instance, derive_seed(batch_seed, 2 * i + 1), cfg, oracle, kind);
        } catch (const InvalidArgument &) {
            throw;
        } catch (const Error &e) {
            t = Trial{};
            t.error = to_string(e.code());
            t.detail = {{"message", e.what()}};
            t.verified = e.code() != ErrorCode::internal;
        }
    });

    std::size_t successes = 0, unverified = 0, oracle_count = 0, dominated = 0;
    std::map<std::string, std::size_t> errors;
    double ratio_sum = 0.0;
    json per_trial = json::array();
    for (std::size_t i = 0; i < trials; ++i) {
        const auto &t = results[i];
        successes += t.success ? 1 : 0;
        unverified += t.verified ? 0 : 1;
        if (t.error)
            ++errors[*t.error];
        if (t.oracle_length && t.length) {
            ++oracle_count;
            dominated += *t.length <= *t.oracle_length ? 1 : 0;
            ratio_sum += static_cast<double>(*t.length) / static_cast<double>(std::max<std::uint64_t>(1, *t.oracle_length));
        }
        json row = {{"trial", i},          {"success", t.success},
                    {"verified", t.verified}, {"length", t.length ? json(*t.length) : json(nullptr)},
                    {"oracle_length", t.oracle_length ? json(*t.oracle_length) : json(nullptr)},
                    {"detail", t.detail}};
        if (t.error)
            row["error"] = *t.error;
        per_trial.push_back(row);
    }
    json err = json::object();
    for (const auto &[code, c] : errors)
        err[code] = c;

    BatchResult out;
    const double rate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    out.aggregate = {{"pipeline", pipeline},
                     {"generator", gen},
                     {"params", params},
                     {"batch_seed", batch_seed},
                     {"constants", cfg},
                     {"trials", trials},
                     {"successes", successes},
                     {"success_rate", trials ? json(rate) : json(nullptr)},
                     {"unverified", unverified},
                     {"errors", err},
                     {"lengths", length_stats(results)},
                     {"oracle",
                      {{"compared", oracle_count},
                       {"dominated", dominated},
                       {"mean_ratio", oracle_count ? json(ratio_sum / static_cast<double>(oracle_count)) : json(nullptr)}}},
                     {"min_success_rate", min_rate},
                     {"per_trial", per_trial},
                     {"plot", nullptr}};
    if (plot_path && !plot_path->empty() && trials > 0) {
        write_plot(*plot_path, pipeline + " witness lengths", results);
        out.aggregate["plot"] = *plot_path;
    }
    out.ok = unverified == 0 && (trials == 0 || rate >= min_rate);
    std::ostringstream s;
    s << successes << "/" << trials << " trials succeeded";
    if (unverified)
        s << ", " << unverified << " unverified";
    out.summary = s.str();
    return out;
}

} // namespace sumsetlab::cli
