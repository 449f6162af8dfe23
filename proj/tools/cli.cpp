#include "cli.hpp"

#include "experiment.hpp"
#include "serialize.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"
#include "sumsetlab/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifndef SUMSETLAB_VERSION
#define SUMSETLAB_VERSION "unknown"
#endif

namespace sumsetlab::cli {

namespace {

constexpr std::uint64_t kListLimit = 4096;

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

bool looks_inline(const std::string &s)
{
    const auto pos = s.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && (s[pos] == '[' || s[pos] == '{');
}

json read_json(const std::string &source, const char *what)
{
    try {
        if (looks_inline(source))
            return json::parse(source);
        std::ifstream in(source);
        if (!in)
            throw InvalidArgument(std::string("cannot open ") + what + " file '" + source + "'");
        return json::parse(in);
    } catch (const json::exception &e) {
        throw InvalidArgument(std::string("malformed ") + what + ": " + e.what());
    }
}

Index element_from_json(const GroupSpec &g, const json &e)
{
    if (e.is_array()) {
        std::vector<std::uint64_t> coords;
        for (const auto &c : e) {
            if (!c.is_number_integer())
                throw InvalidArgument("coordinates must be integers");
            coords.push_back(static_cast<std::uint64_t>(mod_floor(c.get<std::int64_t>(),
                                                                  static_cast<std::int64_t>(g.modulus()))));
        }
        return g.from_coords(coords);
    }
    if (!e.is_number_integer())
        throw InvalidArgument("set elements must be integers or coordinate arrays");
    const auto v = e.get<std::int64_t>();
    if (g.is_cyclic())
        return g.reduce(v);
    if (v < 0 || static_cast<std::uint64_t>(v) >= g.order())
        throw InvalidArgument("element " + std::to_string(v) + " outside " + g.to_string());
    return static_cast<Index>(v);
}

ElementSet group_set_from_json(const GroupSpec &g, const json &support)
{
    if (!support.is_array())
        throw InvalidArgument("set support must be a JSON array");
    std::vector<Index> m;
    for (const auto &e : support)
        m.push_back(element_from_json(g, e));
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return ElementSet(g, std::move(m));
}

std::vector<Index> frequencies_from_json(const GroupSpec &g, const json &j)
{
    if (!j.is_array())
        throw InvalidArgument("frequencies must be a JSON array");
    std::vector<Index> out;
    for (const auto &e : j)
        out.push_back(element_from_json(g, e));
    return out;
}

GroupSpec require_group(const std::optional<std::string> &literal)
{
    if (!literal)
        throw InvalidArgument("--group is required");
    return GroupSpec::parse(*literal);
}

std::optional<GroupSpec> optional_group(const std::optional<std::string> &literal)
{
    if (!literal)
        return std::nullopt;
    return GroupSpec::parse(*literal);
}

std::string require(const std::optional<std::string> &v, const char *flag)
{
    if (!v)
        throw InvalidArgument(std::string(flag) + " is required");
    return *v;
}

// Where a set was materialized, list it when small enough to read.
void attach_members(json &j, const char *key, const std::vector<Index> &members, const GroupSpec &g)
{
    if (members.size() > kListLimit)
        return;
    json list = json::array();
    for (auto x : members)
        list.push_back(element_json(g, x));
    j[key] = list;
}

struct Params {
    std::uint64_t seed = 0;
    std::optional<std::string> constants;
    bool defaults = false;
    bool json_only = false;
    std::optional<std::size_t> trials;
    std::optional<std::string> group;

    std::optional<std::string> set_a, set_b, set, values, freqs, x_set, subset, spec, plot, manifest;
    std::optional<double> eps, delta, n_real;
    std::uint64_t n = 0;
    double p = 2.0;
    unsigned k = 2;
    std::optional<std::uint64_t> modulus;
    std::string mode;
    std::string variant = "green";
    std::string reference = "spectral";
    bool measure = false;
    bool brute = false;

    std::vector<double> alphas, betas, ns;
    std::optional<double> k_a, k_b;
    double c = 1.0, big_c = 1.0, bound_eps = 0.5, bound_p = 2.0;
};

struct Result {
    json body;
    bool verified = true;
    std::string summary;
};

Result cmd_fourier(const Params &pr)
{
    std::optional<GroupSpec> g = optional_group(pr.group);
    std::optional<GroupFunction> f;
    json body;
    if (pr.set_a) {
        const auto a = parse_group_set(*pr.set_a, g);
        g = a.group();
        f = GroupFunction::indicator(a);
        body["function"] = "indicator";
        body["alpha"] = a.density();
    } else if (pr.values) {
        const auto grp = require_group(pr.group);
        const auto j = read_json(*pr.values, "function values");
        if (!j.is_array() || j.size() != grp.order())
            throw InvalidArgument("--values needs " + std::to_string(grp.order()) + " entries");
        std::vector<Complex> v;
        for (const auto &e : j) {
            if (e.is_array() && e.size() == 2)
                v.emplace_back(e[0].get<double>(), e[1].get<double>());
            else if (e.is_number())
                v.emplace_back(e.get<double>(), 0.0);
            else
                throw InvalidArgument("function values must be numbers or [re, im] pairs");
        }
        f = GroupFunction(grp, std::move(v));
        body["function"] = "values";
    } else {
        throw InvalidArgument("fourier needs --A or --values");
    }

    const auto s = transform(*f);
    const double l2 = lp_norm(*f, 2.0);
    double energy = 0.0;
    for (auto c : s.coeffs())
        energy += std::norm(c);
    const auto back = inverse(s);
    double inv_err = 0.0;
    for (std::size_t i = 0; i < f->size(); ++i)
        inv_err = std::max(inv_err, std::abs(back.values()[i] - f->values()[i]));
    const double parseval_err = std::abs(l2 * l2 - energy);
    bool ok = parseval_err <= 1e-9 && inv_err <= 1e-9;

    body["group"] = g->to_string();
    body["spectral_l1"] = spectral_l1_norm(s);
    body["parseval"] = {{"l2_squared", l2 * l2}, {"spectral_energy", energy}, {"error", parseval_err}};
    body["inversion_error"] = inv_err;
    if (g->order() <= kListLimit) {
        json coeffs = json::array();
        for (auto c : s.coeffs())
            coeffs.push_back({c.real(), c.imag()});
        body["spectrum"] = coeffs;
    }
    if (pr.set_b) {
        if (!pr.set_a)
            throw InvalidArgument("--B needs --A");
        const auto b = parse_group_set(*pr.set_b, g);
        require_same_group(*g, b.group(), "fourier");
        const auto fb = GroupFunction::indicator(b);
        const auto conv = convolve(*f, fb);
        const auto sc = transform(conv);
        const auto sb = transform(fb);
        double conv_err = 0.0;
        for (std::size_t r = 0; r < sc.coeffs().size(); ++r)
            conv_err = std::max(conv_err, std::abs(sc.coeffs()[r] - s.coeffs()[r] * sb.coeffs()[r]));
        const double l1 = spectral_l1_norm(sc);
        const double bound = std::sqrt(body["alpha"].get<double>() * b.density());
        const bool cs = l1 <= bound + 1e-9;
        body["convolution_identity_error"] = conv_err;
        body["cauchy_schwarz"] = {{"spectral_l1", l1}, {"bound", bound}, {"pass", cs}};
        ok = ok && conv_err <= 1e-9 && cs;
    }
    return {body, ok, "fourier identities " + std::string(ok ? "hold" : "FAIL")};
}

Result cmd_bohr(const Params &pr)
{
    const auto g = require_group(pr.group);
    if (!pr.delta)
        throw InvalidArgument("--delta is required");
    const BohrDescriptor b(g, frequencies_from_json(g, read_json(require(pr.freqs, "--freqs"), "frequencies")),
                           *pr.delta);
    const auto check = size_bound_check(b);
    json body = {{"descriptor", b},
                 {"size", check.actual},
                 {"size_bound", {{"actual", check.actual}, {"bound", check.bound}, {"pass", check.pass}}},
                 {"ap_guarantee", nullptr}};
    attach_members(body, "members", b.members(), g);
    bool ok = check.pass;
    if (g.is_cyclic() && is_prime(g.order()) && b.delta() > 0.0) {
        const auto w = find_ap_in_bohr(b);
        const auto guarantee = ap_length_guarantee(b.delta(), g.order(), b.rank());
        body["witness"] = w;
        body["ap_guarantee"] = guarantee;
        ok = ok && w.verified && w.length >= std::max<std::uint64_t>(1, guarantee);
    } else if (g.is_vector() &&
               (b.rank() == 0 || b.delta() < 2.0 * std::sin(std::numbers::pi / static_cast<double>(g.modulus())))) {
        const auto w = find_subspace_in_bohr(b);
        body["witness"] = w;
        ok = ok && w.verified;
    }
    return {body, ok, "Bohr set of size " + std::to_string(check.actual) + (ok ? ", verified" : ", FAILED")};
}

Result cmd_sample(const Params &pr, const ConstantsConfig &cfg)
{
    const auto g = optional_group(pr.group);
    const auto a = parse_group_set(require(pr.set_a, "--A"), g);
    const double eps = pr.eps.value_or(0.25);
    const std::string mode = pr.mode.empty() ? "fourier" : pr.mode;
    SamplingTask task;
    if (mode == "fourier") {
        auto f = GroupFunction::indicator(a);
        if (pr.set_b)
            f = convolve(f, GroupFunction::indicator(parse_group_set(*pr.set_b, a.group())));
        task = SamplingTask::fourier(f, pr.p, eps, cfg.C_sample);
    } else if (mode == "physical") {
        task = SamplingTask::physical(a, parse_group_set(require(pr.set_b, "--B"), a.group()), pr.p, eps,
                                      cfg.C_sample);
    } else {
        throw InvalidArgument("--mode must be fourier or physical");
    }
    json body = {{"mode", mode}, {"group", a.group().to_string()}, {"p", pr.p}, {"epsilon", eps}};
    const std::size_t trials = pr.trials.value_or(1);
    if (trials <= 1) {
        const auto r = task.run(pr.seed);
        body["sample"] = r;
        const bool ok = r.lp_error <= eps;
        return {body, ok, "L^p error " + std::to_string(r.lp_error) + " against " + std::to_string(eps)};
    }
    const auto fr = measure_failure_rate(task, trials, pr.seed);
    body["failure"] = fr;
    body["max_failure_rate"] = 0.05;
    const bool ok = fr.rate <= 0.05;
    return {body, ok, "failure rate " + std::to_string(fr.rate) + " over " + std::to_string(trials) + " trials"};
}

Result cmd_embed(const Params &pr)
{
    const auto a = parse_int_set(require(pr.set_a, "--A"));
    const auto b = parse_int_set(require(pr.set_b, "--B"));
    std::uint64_t modulus = 0;
    if (pr.modulus) {
        modulus = *pr.modulus;
    } else {
        modulus = next_prime(iterated_combination(a, b, pr.k).size());
    }
    const auto cert = embed_pair(a, b, pr.k, modulus);
    const unsigned bands = 2 * pr.k;
    const bool band_ok = cert.a_prime().size() * bands >= a.size() && cert.b_prime().size() * bands >= b.size();
    const json body = {{"certificate", cert},
                       {"band_guarantee", {{"bands", bands}, {"ok", band_ok}}},
                       {"plunnecke", {{"D_size", cert.choice.d_size}}}};
    const bool ok = cert.verified && band_ok;
    return {body, ok,
            "embedding into Z/" + std::to_string(modulus) + (ok ? " verified" : " FAILED verification")};
}

json oracle_comparison(const IntSet &a, const IntSet &b, const ProgressionWitness &w)
{
    const auto s = sumset(a, b);
    if (s.size() > 5000)
        return nullptr;
    const auto o = longest_ap_oracle(s);
    return {{"longest", o}, {"dominated", w.length <= o.length}};
}

Result cmd_find_ap(const std::string &which, const Params &pr, const ConstantsConfig &cfg)
{
    if (which == "ff") {
        const auto g = optional_group(pr.group);
        const auto a = parse_group_set(require(pr.set_a, "--A"), g);
        const auto b = parse_group_set(require(pr.set_b, "--B"), a.group());
        std::optional<std::vector<Index>> subset;
        if (pr.subset)
            subset = frequencies_from_json(a.group(), read_json(*pr.subset, "subset"));
        const auto r = finite_field_translate(a, b, parse_finite_field_variant(pr.variant), pr.seed, cfg, subset);
        json body = {{"variant", pr.variant}, {"report", r}};
        return {body, r.witness.verified,
                "translate of dimension " + std::to_string(r.witness.dimension()) +
                    (r.witness.verified ? " verified" : " NOT verified")};
    }
    const auto a = parse_int_set(require(pr.set_a, "--A"));
    const auto b = parse_int_set(require(pr.set_b, "--B"));
    ProgressionReport r;
    if (which == "dense") {
        if (pr.n == 0)
            throw InvalidArgument("--N is required");
        r = find_progression_dense(a, b, pr.n, pr.seed, cfg);
    } else {
        r = find_progression_small_doubling(a, b, pr.seed, cfg);
    }
    json body = {{"report", r}, {"oracle", oracle_comparison(a, b, r.witness)}};
    bool ok = r.witness.verified;
    if (!body["oracle"].is_null())
        ok = ok && body["oracle"]["dominated"].get<bool>();
    return {body, ok,
            "progression of length " + std::to_string(r.witness.length) + (ok ? " verified" : " NOT verified")};
}

Result cmd_almost_periods(const Params &pr, const ConstantsConfig &cfg)
{
    const auto g = optional_group(pr.group);
    const auto a = parse_group_set(require(pr.set_a, "--A"), g);
    const auto b = parse_group_set(require(pr.set_b, "--B"), a.group());
    const std::string mode = pr.mode.empty() ? "fourier" : pr.mode;
    json body = {{"mode", mode}};
    if (mode == "fourier") {
        const auto f = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
        const double eps = pr.eps.value_or(0.4);
        const auto r = almost_period_bohr(f, pr.p, eps, pr.seed, cfg);
        body["periodicity"] = r;
        attach_members(body, "T_members", r.T.members(), a.group());
        bool ok = r.pass;
        if (pr.brute || a.group().order() <= kListLimit) {
            const auto bf = brute_force_almost_periods(f, pr.p, eps, ReferenceNorm::spectral());
            const bool contained = materialize(r.T).is_subset_of(bf);
            body["brute_force"] = {{"size", bf.size()}, {"contains_T", contained}};
            ok = ok && (!r.pass || contained);
        }
        return {body, ok, "almost-period set of size " + std::to_string(r.t_size) + (ok ? " verified" : " FAILED")};
    }
    if (mode != "bootstrap")
        throw InvalidArgument("--mode must be fourier or bootstrap");
    std::optional<ElementSet> x;
    if (pr.x_set)
        x = parse_group_set(*pr.x_set, a.group());
    const double kb = static_cast<double>(group_sumset(a, b).size()) / static_cast<double>(b.size());
    const double eps = pr.eps.value_or(1.0 / std::sqrt(kb));
    const auto r = bootstrap_strong_lp(a, b, pr.p, eps, x, pr.seed, cfg);
    body["bootstrap"] = r;
    attach_members(body, "T_members", r.periodicity.T.members(), a.group());
    const bool ok = r.periodicity.pass && r.certificates_ok();
    return {body, ok,
            "bootstrap set of size " + std::to_string(r.periodicity.t_size) + (ok ? " verified" : " FAILED")};
}

Result cmd_bogolyubov(const Params &pr, const ConstantsConfig &cfg)
{
    const auto a = parse_group_set(require(pr.set_a, "--A"), optional_group(pr.group));
    const auto r = bogolyubov_bohr(a, pr.seed, cfg);
    json body = {{"report", r}};
    attach_members(body, "T_members", r.bootstrap.periodicity.T.members(), a.group());
    const bool ok = r.contained && r.false_containments == 0;
    return {body, ok,
            "Bohr set of size " + std::to_string(r.t_size) + (ok ? " inside 2A-2A" : " NOT inside 2A-2A")};
}

Result cmd_oracle(const std::string &which, const Params &pr)
{
    if (which == "longest-ap") {
        const auto src = require(pr.set, "--set");
        LongestAp r;
        const auto j = read_json(src, "set");
        if (j.is_object() || pr.group) {
            r = longest_ap_oracle(parse_group_set(src, optional_group(pr.group)));
        } else {
            r = longest_ap_oracle(parse_int_set(src));
        }
        return {json(r), true, "longest progression has length " + std::to_string(r.length)};
    }
    const auto g = optional_group(pr.group);
    const auto a = parse_group_set(require(pr.set_a, "--A"), g);
    const auto b = parse_group_set(require(pr.set_b, "--B"), a.group());
    const auto f = convolve(pr.measure ? GroupFunction::measure(a) : GroupFunction::indicator(a),
                            GroupFunction::indicator(b));
    ReferenceNorm ref;
    if (pr.reference == "spectral")
        ref = ReferenceNorm::spectral();
    else if (pr.reference == "energy")
        ref = ReferenceNorm::energy();
    else {
        try {
            ref = ReferenceNorm::fixed(std::stod(pr.reference));
        } catch (const std::exception &) {
            throw InvalidArgument("--reference must be spectral, energy or a number");
        }
    }
    const double eps = pr.eps.value_or(0.4);
    const auto s = brute_force_almost_periods(f, pr.p, eps, ref);
    json body = {{"function", pr.measure ? "mu_A*1_B" : "1_A*1_B"},
                 {"p", pr.p},
                 {"epsilon", eps},
                 {"reference_kind", to_string(ref.kind)},
                 {"reference", reference_value(f, pr.p, ref)},
                 {"periods", set_json(s)}};
    return {body, true, std::to_string(s.size()) + " almost-periods"};
}

Result cmd_bounds(const Params &pr)
{
    BoundInputs in;
    in.alphas = pr.alphas;
    in.betas = pr.betas;
    in.ns = pr.ns;
    if (in.alphas.empty() || in.betas.empty() || in.ns.empty())
        throw InvalidArgument("bounds needs --alpha, --beta and --N");
    in.k_a = pr.k_a;
    in.k_b = pr.k_b;
    in.c = pr.c;
    in.C = pr.big_c;
    in.epsilon = pr.bound_eps;
    in.p = pr.bound_p;
    const auto t = bound_table(in);
    json body = t;
    body["constants"] = {{"c", in.c}, {"C", in.C}, {"epsilon", in.epsilon}, {"p", in.p}};
    return {body, true, std::to_string(t.rows.size()) + " bound rows"};
}

Outcome error_outcome(int code, const std::string &kind, const std::string &message)
{
    Outcome o;
    o.code = code;
    o.report = {{"error", {{"code", kind}, {"message", message}}}, {"verified", false}};
    o.summary = "error: " + message;
    return o;
}

int exit_code_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::not_found:
    case ErrorCode::internal:
        return kExitUnverified;
    default:
        return kExitUsage;
    }
}

} // namespace

void apply_constants(ConstantsConfig &cfg, const json &overrides)
{
    if (!overrides.is_object())
        throw InvalidArgument("constants must be a JSON object");
    for (const auto &[key, value] : overrides.items()) {
        if (!value.is_number())
            throw InvalidArgument("constant " + key + " must be a number");
        const double v = value.get<double>();
        if (key == "C_sample")
            cfg.C_sample = v;
        else if (key == "C_p")
            cfg.C_p = v;
        else if (key == "c_eps")
            cfg.c_eps = v;
        else if (key == "C_chang")
            cfg.C_chang = v;
        else if (key == "C_bohr_radius")
            cfg.C_bohr_radius = v;
        else if (key == "retries") {
            if (!(v >= 1.0) || v != std::floor(v))
                throw InvalidArgument("retries must be a positive integer");
            cfg.retries = static_cast<unsigned>(v);
        } else
            throw InvalidArgument("unknown constant '" + key + "'");
    }
    cfg.validate();
}

ConstantsConfig load_constants(const std::optional<std::string> &source, bool defaults_on_missing)
{
    ConstantsConfig cfg;
    if (!source) {
        cfg.validate();
        return cfg;
    }
    if (!looks_inline(*source) && !std::filesystem::exists(*source)) {
        if (defaults_on_missing)
            return cfg;
        throw InvalidArgument("constants file '" + *source + "' does not exist");
    }
    apply_constants(cfg, read_json(*source, "constants"));
    return cfg;
}

IntSet parse_int_set(const std::string &source)
{
    const auto j = read_json(source, "set");
    const json *list = &j;
    if (j.is_object()) {
        if (!j.contains("support"))
            throw InvalidArgument("set object needs a support array");
        list = &j["support"];
    }
    if (!list->is_array() || list->empty())
        throw InvalidArgument("integer set must be a nonempty JSON array");
    std::vector<std::int64_t> v;
    for (const auto &e : *list) {
        if (!e.is_number_integer())
            throw InvalidArgument("integer set elements must be integers");
        v.push_back(e.get<std::int64_t>());
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return IntSet(std::move(v));
}

ElementSet parse_group_set(const std::string &source, const std::optional<GroupSpec> &group)
{
    const auto j = read_json(source, "set");
    if (j.is_object()) {
        if (!j.contains("group") || !j["group"].is_string() || !j.contains("support"))
            throw InvalidArgument("set object needs string 'group' and array 'support'");
        const auto g = GroupSpec::parse(j["group"].get<std::string>());
        if (group)
            require_same_group(*group, g, "set file");
        return group_set_from_json(g, j["support"]);
    }
    if (!group)
        throw InvalidArgument("a bare JSON array needs --group");
    return group_set_from_json(*group, j);
}

Outcome run(const std::vector<std::string> &args)
{
    Params pr;
    CLI::App app{"Sumset and almost-periodicity toolkit"};
    app.name("sumsetlab");
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", pr.seed, "Seed for randomized steps");
    app.add_option("--constants", pr.constants, "Constants as a JSON file or inline object");
    app.add_flag("--defaults", pr.defaults, "Use default constants when the constants file is missing");
    app.add_flag("--json-only", pr.json_only, "Suppress the human summary on stderr");
    app.add_option("--trials", pr.trials, "Number of trials");
    app.add_option("--group", pr.group, "Group literal, zN:<N> or vec:<p>^<n>");

    auto set_opts = [&](CLI::App *s) {
        s->add_option("--A", pr.set_a, "Set A (JSON array, {group, support} object, or file)");
        s->add_option("--B", pr.set_b, "Set B");
    };

    auto *fourier = app.add_subcommand("fourier", "Transform, Parseval, inversion and convolution identities");
    set_opts(fourier);
    fourier->add_option("--values", pr.values, "Function values as a JSON array");

    auto *bohr = app.add_subcommand("bohr", "Materialize a Bohr set and find a progression or subspace in it");
    bohr->add_option("--freqs", pr.freqs, "Frequencies as a JSON array")->required();
    bohr->add_option("--delta", pr.delta, "Radius in [0, 2]")->required();

    auto *sample = app.add_subcommand("sample", "Random sampling approximation");
    set_opts(sample);
    sample->add_option("--p", pr.p, "Exponent p >= 2");
    sample->add_option("--eps", pr.eps, "Accuracy in (0, 1)");
    sample->add_option("--mode", pr.mode, "fourier or physical");

    auto *embed = app.add_subcommand("embed", "Freiman isomorphic model of two integer sets in Z/N");
    set_opts(embed);
    embed->add_option("--k", pr.k, "Order of the isomorphism");
    embed->add_option("--N", pr.modulus, "Prime modulus (default: least admissible prime)");

    auto *find_ap = app.add_subcommand("find-ap", "Progressions or subspace translates inside A+B");
    find_ap->require_subcommand(1);
    find_ap->fallthrough();
    auto *dense = find_ap->add_subcommand("dense", "A, B subsets of {1..N}");
    set_opts(dense);
    dense->add_option("--N", pr.n, "Interval length")->required();
    auto *doubling = find_ap->add_subcommand("doubling", "Integer sets with small doubling");
    set_opts(doubling);
    auto *ff = find_ap->add_subcommand("ff", "Subsets of F_p^n");
    set_opts(ff);
    ff->add_option("--variant", pr.variant, "green, improved or subset");
    ff->add_option("--subset", pr.subset, "Subset of V to translate (subset variant)");

    auto *periods = app.add_subcommand("almost-periods", "Bohr set of almost-periods of 1_A*1_B or mu_A*1_B");
    set_opts(periods);
    periods->add_option("--p", pr.p, "Exponent p >= 2");
    periods->add_option("--eps", pr.eps, "Accuracy");
    periods->add_option("--mode", pr.mode, "fourier or bootstrap");
    periods->add_option("--X", pr.x_set, "Set X for the bootstrap (default: brute-force almost-periods)");
    periods->add_flag("--brute", pr.brute, "Check containment in the brute-force almost-period set");

    auto *bogolyubov = app.add_subcommand("bogolyubov", "Bohr set inside 2A-2A");
    set_opts(bogolyubov);

    auto *oracle = app.add_subcommand("oracle", "Exhaustive reference computations");
    oracle->require_subcommand(1);
    oracle->fallthrough();
    auto *longest = oracle->add_subcommand("longest-ap", "Longest progression in a set");
    longest->add_option("--set", pr.set, "Integer set, or group set with --group")->required();
    auto *oracle_periods = oracle->add_subcommand("periods", "Exact almost-period set");
    set_opts(oracle_periods);
    oracle_periods->add_option("--p", pr.p, "Exponent");
    oracle_periods->add_option("--eps", pr.eps, "Accuracy");
    oracle_periods->add_option("--reference", pr.reference, "spectral, energy or a number");
    oracle_periods->add_flag("--measure", pr.measure, "Use mu_A instead of 1_A");

    auto *bounds = app.add_subcommand("bounds", "Tabulate the progression-length and radius bounds");
    bounds->add_option("--alpha", pr.alphas, "Densities of A")->required();
    bounds->add_option("--beta", pr.betas, "Densities of B")->required();
    bounds->add_option("--N", pr.ns, "Interval lengths")->required();
    bounds->add_option("--c", pr.c, "Small constant c");
    bounds->add_option("--C", pr.big_c, "Large constant C");
    bounds->add_option("--K_A", pr.k_a, "Doubling constant K_A (default 2/alpha)");
    bounds->add_option("--K_B", pr.k_b, "Doubling constant K_B (default 2/beta)");
    bounds->add_option("--eps", pr.bound_eps, "epsilon in the radius bound");
    bounds->add_option("--p", pr.bound_p, "p in the radius bound");

    auto *experiment = app.add_subcommand("experiment", "Run a batch of seeded trials");
    experiment->add_option("--spec", pr.spec, "Batch spec (JSON file or inline)")->required();
    experiment->add_option("--plot", pr.plot, "SVG output path");

    auto *replay = app.add_subcommand("replay", "Re-run the invocation recorded in a report's manifest");
    replay->add_option("--manifest", pr.manifest, "Report or manifest JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        Outcome o;
        o.text = app.help();
        return o;
    } catch (const CLI::ParseError &e) {
        return error_outcome(kExitUsage, "usage", e.what());
    }

    std::string command;
    for (auto *s = app.get_subcommands().front();; s = s->get_subcommands().front()) {
        command += (command.empty() ? "" : " ") + s->get_name();
        if (s->get_subcommands().empty())
            break;
    }

    try {
        if (command == "replay") {
            const auto j = read_json(*pr.manifest, "manifest");
            const json &m = j.contains("manifest") ? j["manifest"] : j;
            if (!m.contains("args") || !m["args"].is_array())
                throw InvalidArgument("manifest has no args array");
            const auto replay_args = m["args"].get<std::vector<std::string>>();
            if (!replay_args.empty() && replay_args.front() == "replay")
                throw InvalidArgument("refusing to replay a replay");
            return run(replay_args);
        }

        const auto cfg = load_constants(pr.constants, pr.defaults);
        Result res;
        if (command == "fourier")
            res = cmd_fourier(pr);
        else if (command == "bohr")
            res = cmd_bohr(pr);
        else if (command == "sample")
            res = cmd_sample(pr, cfg);
        else if (command == "embed")
            res = cmd_embed(pr);
        else if (command.rfind("find-ap ", 0) == 0)
            res = cmd_find_ap(command.substr(8), pr, cfg);
        else if (command == "almost-periods")
            res = cmd_almost_periods(pr, cfg);
        else if (command == "bogolyubov")
            res = cmd_bogolyubov(pr, cfg);
        else if (command.rfind("oracle ", 0) == 0)
            res = cmd_oracle(command.substr(7), pr);
        else if (command == "bounds")
            res = cmd_bounds(pr);
        else if (command == "experiment") {
            auto spec = read_json(*pr.spec, "batch spec");
            auto batch = run_experiment(spec, cfg, pr.seed, pr.trials, pr.plot);
            res = {std::move(batch.aggregate), batch.ok, batch.summary};
        } else
            throw InvalidArgument("unknown command '" + command + "'");

        Outcome o;
        o.code = res.verified ? kExitOk : kExitUnverified;
        o.report = std::move(res.body);
        if (!o.report.is_object())
            o.report = json{{"result", o.report}};
        o.report["command"] = command;
        o.report["verified"] = res.verified;
        o.report["manifest"] = {{"command", command},   {"args", args},
                                {"constants", cfg},     {"seed", pr.seed},
                                {"timestamp", utc_timestamp()}, {"version", SUMSETLAB_VERSION},
                                {"rng_id", std::string(kRngId)}};
        o.summary = command + ": " + res.summary;
        if (pr.json_only)
            o.summary.clear();
        return o;
    } catch (const Error &e) {
        auto o = error_outcome(exit_code_for(e.code()), to_string(e.code()), e.what());
        o.report["command"] = command;
        return o;
    } catch (const std::exception &e) {
        auto o = error_outcome(kExitUsage, "invalid_argument", e.what());
        o.report["command"] = command;
        return o;
    }
}

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto o = run(args);
    if (!o.text.empty()) {
        out << o.text;
        return o.code;
    }
    out << o.report.dump() << '\n';
    const bool quiet = std::find(args.begin(), args.end(), "--json-only") != args.end();
    if (!quiet && !o.summary.empty())
        err << o.summary << '\n';
    return o.code;
}

json without_timestamp(json report)
{
    if (report.contains("manifest") && report["manifest"].is_object())
        report["manifest"].erase("timestamp");
    return report;
}

} // namespace sumsetlab::cli
