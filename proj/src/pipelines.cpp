#include "sumsetlab/pipelines.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"
#include "sumsetlab/parallel.hpp"
#include "sumsetlab/random.hpp"
#include "sumsetlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

namespace sumsetlab {

namespace {

constexpr std::uint64_t kLengthLimit = std::uint64_t{1} << 62;

double max_translate_distance(const GroupFunction &f, const std::vector<Index> &ts, double p)
{
    std::vector<double> d(ts.size(), 0.0);
    parallel_for(ts.size(), [&](std::size_t i) { d[i] = symmetric_translate_distance(f, ts[i], p); });
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

std::uint64_t floor_exp(double p)
{
    const double v = std::floor(std::exp(p));
    return v >= static_cast<double>(kLengthLimit) ? kLengthLimit : static_cast<std::uint64_t>(v);
}

/// First x in canonical order with x + o in the support for every offset o.
std::optional<Index> scan_translate(const GroupSpec &g, const std::vector<char> &support,
                                    const std::vector<Index> &offsets)
{
    for (Index x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (auto o : offsets) {
            if (!support[g.add(x, o)]) {
                ok = false;
                break;
            }
        }
        if (ok)
            return x;
    }
    return std::nullopt;
}

std::vector<Index> truncated_ap(const GroupSpec &g, const ProgressionWitness &ap, std::uint64_t length)
{
    std::vector<Index> out(length);
    Index x = static_cast<Index>(ap.base);
    for (std::uint64_t j = 0; j < length; ++j) {
        out[j] = x;
        x = g.add(x, static_cast<Index>(ap.step));
    }
    return out;
}

ElementSet to_group(const GroupSpec &g, const IntSet &s)
{
    std::vector<Index> m;
    m.reserve(s.size());
    for (auto v : s.elements())
        m.push_back(g.reduce(v));
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return ElementSet(g, std::move(m));
}

bool all_in(const IntSet &s, const std::vector<std::int64_t> &xs)
{
    return std::all_of(xs.begin(), xs.end(), [&](std::int64_t v) { return s.contains(v); });
}

/// Integer witness from a sequence known to be an AP; step 0 for one term.
ProgressionWitness integer_witness(const std::vector<std::int64_t> &terms)
{
    if (terms.size() == 1)
        return ProgressionWitness::integer(terms[0], 0, 1);
    const std::int64_t step = terms[1] - terms[0];
    for (std::size_t j = 1; j < terms.size(); ++j)
        if (terms[j] - terms[j - 1] != step)
            throw InternalError("pulled-back terms do not form a progression");
    if (step < 0)
        return ProgressionWitness::integer(terms.back(), -step, terms.size());
    return ProgressionWitness::integer(terms.front(), step, terms.size());
}

void check_common(double p, double epsilon)
{
    if (!(p >= 2.0) || !std::isfinite(p))
        throw InvalidArgument("p must be at least 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("epsilon must lie in (0, 1)");
}

struct Doubling {
    double k_a, k_b;
};

Doubling group_doubling(const ElementSet &a, const ElementSet &b)
{
    const double s = static_cast<double>(group_sumset(a, b).size());
    return {s / static_cast<double>(a.size()), s / static_cast<double>(b.size())};
}

double improved_exponent(double log_n, double k_a, double k_b, const ConstantsConfig &cfg)
{
    const double l = std::log(2.0 * k_a);
    return std::max(2.0, cfg.C_p * std::sqrt(log_n / (k_b * l * l * l)));
}

void holder_check(ProgressionReport &r, const GroupFunction &f, const ElementSet &sum)
{
    const double p = r.p;
    r.holder_lhs = lp_norm(f, p / 2.0);
    r.holder_rhs = lp_norm(f, 1.0) / std::pow(sum.density(), 1.0 - 2.0 / p);
    r.holder_ok = r.holder_lhs >= r.holder_rhs - 1e-9;
}

} // namespace

void ConstantsConfig::validate() const
{
    const std::pair<const char *, double> fields[] = {
        {"C_sample", C_sample}, {"C_p", C_p}, {"c_eps", c_eps}, {"C_chang", C_chang}, {"C_bohr_radius", C_bohr_radius}};
    for (const auto &[name, v] : fields)
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument(std::string("constant ") + name + " must be positive, got " + std::to_string(v));
    if (retries == 0)
        throw InvalidArgument("retries must be positive");
}

const char *to_string(ReferenceNorm::Kind k) noexcept
{
    switch (k) {
    case ReferenceNorm::Kind::spectral_l1:
        return "spectral_l1";
    case ReferenceNorm::Kind::half_energy:
        return "half_energy";
    case ReferenceNorm::Kind::explicit_value:
        return "explicit";
    }
    return "unknown";
}

double reference_value(const GroupFunction &f, double p, const ReferenceNorm &ref)
{
    switch (ref.kind) {
    case ReferenceNorm::Kind::spectral_l1:
        return spectral_l1_norm(transform(f));
    case ReferenceNorm::Kind::half_energy:
        return std::sqrt(lp_norm(f, p / 2.0));
    case ReferenceNorm::Kind::explicit_value:
        if (!(ref.value >= 0.0))
            throw InvalidArgument("explicit reference must be nonnegative");
        return ref.value;
    }
    throw InvalidArgument("unknown reference norm");
}

double symmetric_translate_distance(const GroupFunction &f, Index t, double p)
{
    const auto &g = f.group();
    return lp_translate_distance(f, std::min(t, g.neg(t)), p);
}

PeriodicityReport almost_period_bohr(const GroupFunction &f, double p, double epsilon, std::uint64_t seed,
                                     const ConstantsConfig &cfg)
{
    cfg.validate();
    check_common(p, epsilon);
    require_enumerable(f.group());
    if (f.is_zero())
        throw ZeroFunction("almost-periodicity needs a nonzero function");

    const double accuracy = cfg.c_eps * epsilon;
    const auto sample = fourier_sample(f, p, accuracy, seed, cfg.C_sample);
    BohrDescriptor t(f.group(), sample.characters, accuracy);

    PeriodicityReport r{.T = t};
    r.p = p;
    r.epsilon = epsilon;
    r.reference_kind = ReferenceNorm::Kind::spectral_l1;
    r.reference = reference_value(f, p, ReferenceNorm::spectral());
    const auto &members = t.members();
    r.t_size = members.size();
    r.samples = sample.characters.size();
    r.max_distance = max_translate_distance(f, members, p);
    r.pass = r.max_distance <= epsilon * r.reference;
    return r;
}

ElementSet brute_force_almost_periods(const GroupFunction &f, double p, double epsilon, const ReferenceNorm &ref)
{
    if (!(p >= 1.0))
        throw InvalidArgument("p must be at least 1");
    const auto &g = f.group();
    require_enumerable(g);
    const double threshold = epsilon * reference_value(f, p, ref);

    std::vector<Index> reps;
    for (Index t = 0; t < g.order(); ++t)
        if (t <= g.neg(t))
            reps.push_back(t);
    std::vector<char> ok(reps.size(), 0);
    parallel_for(reps.size(), [&](std::size_t i) {
        ok[i] = lp_translate_distance(f, reps[i], p) <= threshold ? 1 : 0;
    });
    std::vector<char> in(g.order(), 0);
    in[0] = 1;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (ok[i])
            in[reps[i]] = in[g.neg(reps[i])] = 1;
    std::vector<Index> members;
    for (Index t = 0; t < g.order(); ++t)
        if (in[t])
            members.push_back(t);
    return ElementSet(g, std::move(members));
}

std::uint64_t certified_length(const GroupFunction &f, double p, double dmax, std::uint64_t limit)
{
    if (limit == 0)
        return 0;
    if (!(dmax > 0.0))
        return limit;
    const double ratio = std::pow(lp_norm(f, p) / dmax, p);
    if (!std::isfinite(ratio) || ratio > static_cast<double>(limit))
        return limit;
    const auto l = static_cast<std::uint64_t>(std::ceil(ratio)) - 1;
    return std::clamp<std::uint64_t>(l, 1, limit);
}

BootstrapReport bootstrap_strong_lp(const ElementSet &a, const ElementSet &b, double p, double epsilon,
                                    const std::optional<ElementSet> &x, [[maybe_unused]] std::uint64_t seed,
                                    const ConstantsConfig &cfg)
{
    cfg.validate();
    const auto &g = a.group();
    require_same_group(g, b.group(), "bootstrap");
    require_enumerable(g);
    if (a.empty() || b.empty())
        throw InvalidArgument("bootstrap needs nonempty A and B");
    if (!(p >= 2.0) || !std::isfinite(p))
        throw InvalidArgument("p must be at least 2");
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");

    const auto dbl = group_doubling(a, b);
    if (epsilon > (1.0 + 1e-12) / std::sqrt(dbl.k_b))
        throw HypothesisViolation("epsilon " + std::to_string(epsilon) + " exceeds 1/sqrt(K_B) = " +
                                  std::to_string(1.0 / std::sqrt(dbl.k_b)));

    const auto f = convolve(GroupFunction::measure(a), GroupFunction::indicator(b));
    const auto ref = ReferenceNorm::energy();

    ElementSet xs = x ? *x : brute_force_almost_periods(f, p, cfg.c_eps * epsilon, ref);
    require_same_group(g, xs.group(), "bootstrap X");
    if (xs.empty())
        throw InvalidArgument("bootstrap needs a nonempty X");

    const double delta = epsilon / (cfg.C_bohr_radius * std::sqrt(dbl.k_a));
    const auto k = static_cast<unsigned>(std::max(1.0, std::ceil(std::log(2.0 / delta))));
    const auto mu_x = GroupFunction::measure(xs);
    const double smoothing = lp_distance(convolve(f, convolution_power(mu_x, k)), f, p);
    const auto spectrum = large_spectrum(mu_x, 1.0 / std::numbers::e);
    const double tau = xs.density();
    auto chang = chang_reduce(spectrum, delta, tau, cfg.C_chang);

    BootstrapReport r{.periodicity = PeriodicityReport{.T = chang.reduced}, .chang = chang};
    r.k_a = dbl.k_a;
    r.k_b = dbl.k_b;
    r.delta = delta;
    r.k = k;
    r.oracle_x = !x.has_value();
    r.x_size = xs.size();
    r.tau = tau;
    r.smoothing_error = smoothing;
    r.gamma_size = spectrum.frequencies.size();
    r.dissociated = is_dissociated(g, chang.basis);
    r.spans_verified = verify_span_certificates(g, chang);
    r.containment_verified = verify_chang_containment(g, chang).contained;
    const double d = static_cast<double>(std::max<std::size_t>(1, chang.basis.size()));
    r.implied_radius_constant = chang.reduced_radius * d * std::sqrt(dbl.k_a) / epsilon;

    auto &per = r.periodicity;
    per.p = p;
    per.epsilon = epsilon;
    per.reference_kind = ref.kind;
    per.reference = reference_value(f, p, ref);
    const auto &members = chang.reduced.members();
    per.t_size = members.size();
    per.max_distance = max_translate_distance(f, members, p);
    per.pass = per.max_distance <= epsilon * per.reference;
    return r;
}

ProgressionReport find_progression_dense(const IntSet &a, const IntSet &b, std::uint64_t n, std::uint64_t seed,
                                         const ConstantsConfig &cfg)
{
    cfg.validate();
    if (n == 0)
        throw InvalidArgument("N must be positive");
    for (const auto *s : {&a, &b})
        if (s->min() < 1 || s->max() > static_cast<std::int64_t>(n))
            throw InvalidArgument("sets must lie in {1.." + std::to_string(n) + "}");

    const std::uint64_t modulus = next_prime(4 * n);
    const auto g = GroupSpec::cyclic(modulus);
    const auto ea = to_group(g, a);
    const auto eb = to_group(g, b);
    const auto support = group_sumset(ea, eb);
    const auto mask = support.mask();
    const auto integer_sum = sumset(a, b);
    const auto f = convolve(GroupFunction::indicator(ea), GroupFunction::indicator(eb));

    ProgressionReport r;
    r.modulus = modulus;
    r.alpha = ea.density();
    r.beta = eb.density();
    const auto dbl = group_doubling(ea, eb);
    r.k_a = dbl.k_a;
    r.k_b = dbl.k_b;
    r.epsilon = std::sqrt(r.alpha * r.beta) / std::numbers::e;
    r.p = std::max(2.0, cfg.C_p * std::sqrt(r.alpha * r.beta * std::log(static_cast<double>(modulus))));
    r.cap_exp = floor_exp(r.p);
    holder_check(r, f, support);

    auto finish = [&](const ProgressionWitness &ap, std::uint64_t len, Index x) {
        const auto step = static_cast<std::int64_t>(ap.step);
        const Index start = g.add(x, static_cast<Index>(ap.base));
        r.model_witness = ProgressionWitness::cyclic(g, start, static_cast<Index>(step), len);
        r.model_witness.verified = true;
        // Terms lie in [2, 2N] and 2N < N'/2, so consecutive terms differ by
        // the representative of the step in (-N'/2, N'/2).
        const std::int64_t rep = step > static_cast<std::int64_t>(modulus / 2) ? step - static_cast<std::int64_t>(modulus)
                                                                                : step;
        std::vector<std::int64_t> terms(len);
        for (std::uint64_t j = 0; j < len; ++j) {
            terms[j] = static_cast<std::int64_t>(start) + static_cast<std::int64_t>(j) * rep;
            if (static_cast<Index>(mod_floor(terms[j], static_cast<std::int64_t>(modulus))) !=
                g.add(start, g.scale(static_cast<std::int64_t>(j), static_cast<Index>(step))))
                throw InternalError("integer lift disagrees with the model progression");
        }
        r.witness = integer_witness(terms);
        r.witness.verified = all_in(integer_sum, r.witness.integer_elements());
    };

    std::optional<ProgressionWitness> last_ap;
    std::uint64_t last_len = 1;
    for (unsigned attempt = 0; attempt < cfg.retries; ++attempt) {
        const auto s = derive_seed(seed, attempt);
        auto per = almost_period_bohr(f, r.p, r.epsilon, s, cfg);
        const auto ap = find_ap_in_bohr(per.T);
        const std::uint64_t cert = per.pass ? certified_length(f, r.p, per.max_distance, ap.length) : 0;
        const std::uint64_t len = std::min(ap.length, std::max(r.cap_exp, cert));
        r.attempts = attempt + 1;
        r.found_length = ap.length;
        r.cap_certified = cert;
        r.attempt_seed = s;
        r.periodicity = per;
        if (auto x = scan_translate(g, mask, truncated_ap(g, ap, len))) {
            finish(ap, len, *x);
            return r;
        }
        last_ap = ap;
        last_len = len;
    }
    for (std::uint64_t len = last_len / 2; len >= 1; len /= 2) {
        ++r.shrinks;
        if (auto x = scan_translate(g, mask, truncated_ap(g, *last_ap, len))) {
            finish(*last_ap, len, *x);
            return r;
        }
    }
    throw NotFound("no translate of any progression from the almost-period set lies in A+B");
}

ProgressionReport find_progression_small_doubling(const IntSet &a_in, const IntSet &b_in, std::uint64_t seed,
                                                  const ConstantsConfig &cfg)
{
    cfg.validate();
    const auto stats = doubling_stats(a_in, b_in);
    const bool swapped = stats.k_b > stats.k_a;
    const IntSet &a = swapped ? b_in : a_in;
    const IntSet &b = swapped ? a_in : b_in;
    const auto integer_sum = sumset(a, b);

    const auto d = iterated_combination(a, b, 2);
    const std::uint64_t modulus = next_prime(d.size() + 1);
    auto cert = embed_pair(a, b, 2, modulus);
    if (!cert.verified)
        throw InternalError("model embedding failed its isomorphism check");

    // Translate so that A' and B' contain 0 and phi fixes it.
    const auto g = GroupSpec::cyclic(modulus);
    const auto &ap = cert.a_prime();
    const auto &bp = cert.b_prime();
    const Index pa0 = cert.phi.at(ap.min());
    const Index pb0 = cert.phi.at(bp.min());
    auto image = [&](const IntSet &s, Index shift) {
        std::vector<Index> m;
        for (auto v : s.elements())
            m.push_back(g.sub(cert.phi.at(v), shift));
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        return ElementSet(g, std::move(m));
    };
    const auto ea = image(ap, pa0);
    const auto eb = image(bp, pb0);
    const Index shift = g.add(pa0, pb0);

    // psi^{-1}: phi(a) + phi(b) - shift -> a + b on A' + B'.
    constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> inverse(modulus, kUnset);
    for (auto x : ap.elements())
        for (auto y : bp.elements()) {
            const Index key = g.sub(g.add(cert.phi.at(x), cert.phi.at(y)), shift);
            if (inverse[key] != kUnset && inverse[key] != x + y)
                throw InternalError("model map is not injective on A'+B'");
            inverse[key] = x + y;
        }

    const auto support = group_sumset(ea, eb);
    const auto mask = support.mask();

    ProgressionReport r;
    r.swapped = swapped;
    r.modulus = modulus;
    r.alpha = ea.density();
    r.beta = eb.density();
    const auto dbl = group_doubling(ea, eb);
    r.k_a = dbl.k_a;
    r.k_b = dbl.k_b;
    r.epsilon = 1.0 / (std::numbers::e * std::sqrt(r.k_b));
    r.p = improved_exponent(std::log(static_cast<double>(modulus)), r.k_a, r.k_b, cfg);
    r.cap_exp = floor_exp(r.p);

    const auto f = convolve(GroupFunction::measure(ea), GroupFunction::indicator(eb));
    holder_check(r, f, support);

    // The bootstrap has no random component, so one attempt decides the
    // progression; only the shrinking stage can change the outcome.
    auto boot = bootstrap_strong_lp(ea, eb, r.p, r.epsilon, std::nullopt, seed, cfg);
    const auto &per = boot.periodicity;
    const auto prog = find_ap_in_bohr(per.T);
    r.attempts = 1;
    r.attempt_seed = seed;
    r.found_length = prog.length;
    r.cap_certified = per.pass ? certified_length(f, r.p, per.max_distance, prog.length) : 0;
    r.periodicity = per;
    r.embedding = std::move(cert);
    r.bootstrap = std::move(boot);

    std::uint64_t len = std::min(prog.length, std::max(r.cap_exp, r.cap_certified));
    for (bool first = true; len >= 1; len /= 2, first = false) {
        if (!first)
            ++r.shrinks;
        auto x = scan_translate(g, mask, truncated_ap(g, prog, len));
        if (!x)
            continue;
        const Index start = g.add(*x, static_cast<Index>(prog.base));
        r.model_witness = ProgressionWitness::cyclic(g, start, static_cast<Index>(prog.step), len);
        r.model_witness.verified = true;
        std::vector<std::int64_t> terms;
        for (auto y : r.model_witness.group_elements()) {
            if (inverse[y] == kUnset)
                throw InternalError("model progression leaves the image of A'+B'");
            terms.push_back(inverse[y]);
        }
        r.witness = integer_witness(terms);
        r.witness.verified = all_in(integer_sum, r.witness.integer_elements());
        return r;
    }
    throw NotFound("no translate of any progression from the almost-period set lies in A+B");
}

const char *to_string(FiniteFieldVariant v) noexcept
{
    switch (v) {
    case FiniteFieldVariant::green:
        return "green";
    case FiniteFieldVariant::improved:
        return "improved";
    case FiniteFieldVariant::subset:
        return "subset";
    }
    return "unknown";
}

FiniteFieldVariant parse_finite_field_variant(const std::string &s)
{
    if (s == "green")
        return FiniteFieldVariant::green;
    if (s == "improved")
        return FiniteFieldVariant::improved;
    if (s == "subset")
        return FiniteFieldVariant::subset;
    throw InvalidArgument("unknown finite-field variant '" + s + "' (expected green, improved or subset)");
}

ProgressionReport finite_field_translate(const ElementSet &a_in, const ElementSet &b_in, FiniteFieldVariant variant,
                                         std::uint64_t seed, const ConstantsConfig &cfg,
                                         const std::optional<std::vector<Index>> &subset)
{
    cfg.validate();
    const auto g = a_in.group();
    if (!g.is_vector())
        throw InvalidArgument("finite-field pipeline needs a vector space, got " + g.to_string());
    require_same_group(g, b_in.group(), "finite-field pipeline");
    require_enumerable(g);
    if (a_in.empty() || b_in.empty())
        throw InvalidArgument("finite-field pipeline needs nonempty A and B");
    if (subset && variant != FiniteFieldVariant::subset)
        throw InvalidArgument("a subset is only accepted by the subset variant");

    const auto d0 = group_doubling(a_in, b_in);
    const bool swapped = variant != FiniteFieldVariant::green && d0.k_b > d0.k_a;
    const ElementSet &a = swapped ? b_in : a_in;
    const ElementSet &b = swapped ? a_in : b_in;
    const auto support = group_sumset(a, b);
    const auto mask = support.mask();
    const double q = static_cast<double>(g.modulus());
    const double log_order = std::log(static_cast<double>(g.order()));

    ProgressionReport r;
    r.swapped = swapped;
    r.modulus = g.order();
    r.alpha = a.density();
    r.beta = b.density();
    const auto dbl = group_doubling(a, b);
    r.k_a = dbl.k_a;
    r.k_b = dbl.k_b;

    std::optional<GroupFunction> f;
    if (variant == FiniteFieldVariant::green) {
        r.epsilon = std::sqrt(r.alpha * r.beta) / std::numbers::e;
        r.p = std::max(2.0, cfg.C_p * std::sqrt(r.alpha * r.beta * log_order));
        f = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
    } else {
        r.epsilon = 1.0 / (std::numbers::e * std::sqrt(r.k_b));
        r.p = improved_exponent(log_order, r.k_a, r.k_b, cfg);
        f = convolve(GroupFunction::measure(a), GroupFunction::indicator(b));
    }
    r.cap_exp = floor_exp(r.p);
    holder_check(r, *f, support);

    auto dim_for = [&](std::uint64_t cap) {
        unsigned dim = 0;
        double size = q;
        while (size <= static_cast<double>(cap) && dim < g.dimension()) {
            ++dim;
            size *= q;
        }
        return dim;
    };
    auto finish = [&](const ProgressionWitness &v, unsigned dim, Index x) {
        std::vector<Index> basis(v.basis.begin(), v.basis.begin() + dim);
        r.witness = ProgressionWitness::subspace(g, x, std::move(basis));
        const auto elements = r.witness.group_elements();
        r.witness.verified = std::all_of(elements.begin(), elements.end(), [&](Index e) { return mask[e] != 0; });
        r.model_witness = r.witness;
    };

    if (variant == FiniteFieldVariant::green) {
        std::optional<ProgressionWitness> last;
        unsigned last_dim = 0;
        for (unsigned attempt = 0; attempt < cfg.retries; ++attempt) {
            const auto s = derive_seed(seed, attempt);
            auto per = almost_period_bohr(*f, r.p, r.epsilon, s, cfg);
            auto v = find_subspace_in_bohr(per.T);
            const std::uint64_t cert = per.pass ? certified_length(*f, r.p, per.max_distance, v.length) : 0;
            const unsigned dim = std::min(v.dimension(), dim_for(std::max(r.cap_exp, cert)));
            r.attempts = attempt + 1;
            r.found_length = v.length;
            r.cap_certified = cert;
            r.attempt_seed = s;
            r.periodicity = per;
            if (auto x = scan_translate(g, mask, span_elements(g, 0, std::span(v.basis).first(dim)))) {
                finish(v, dim, *x);
                return r;
            }
            last = v;
            last_dim = dim;
        }
        for (unsigned dim = last_dim; dim-- > 0;) {
            ++r.shrinks;
            if (auto x = scan_translate(g, mask, span_elements(g, 0, std::span(last->basis).first(dim)))) {
                finish(*last, dim, *x);
                return r;
            }
        }
        throw NotFound("no translate of any subspace of the almost-period set lies in A+B");
    }

    auto boot = bootstrap_strong_lp(a, b, r.p, r.epsilon, std::nullopt, seed, cfg);
    const auto &per = boot.periodicity;
    auto v = find_subspace_in_bohr(per.T);
    r.attempts = 1;
    r.attempt_seed = seed;
    r.found_length = v.length;
    r.cap_certified = per.pass ? certified_length(*f, r.p, per.max_distance, v.length) : 0;
    r.periodicity = per;
    r.bootstrap = std::move(boot);

    if (variant == FiniteFieldVariant::subset) {
        const auto v_elements = v.group_elements();
        std::vector<Index> s = subset ? *subset : v_elements;
        const std::unordered_set<Index> in_v(v_elements.begin(), v_elements.end());
        for (auto e : s)
            if (!g.contains(e) || !in_v.count(e))
                throw InvalidArgument("subset element " + std::to_string(e) + " is not in V");
        if (s.empty())
            throw InvalidArgument("subset must be nonempty");
        const double codim = static_cast<double>(g.dimension() - v.dimension());
        const double l = std::log(2.0 / r.beta);
        r.subset_bound = std::exp(r.alpha * codim / (l * l * l));
        auto x = scan_translate(g, mask, s);
        if (!x)
            throw NotFound("no translate of the subset lies in A+B");
        r.subset.assign(s.begin(), s.end());
        r.witness = ProgressionWitness::subspace(g, *x, v.basis);
        r.witness.verified = std::all_of(s.begin(), s.end(), [&](Index e) { return mask[g.add(*x, e)] != 0; });
        r.model_witness = r.witness;
        return r;
    }

    for (unsigned dim = std::min(v.dimension(), dim_for(std::max(r.cap_exp, r.cap_certified)));; --dim) {
        if (auto x = scan_translate(g, mask, span_elements(g, 0, std::span(v.basis).first(dim)))) {
            finish(v, dim, *x);
            return r;
        }
        if (dim == 0)
            break;
        ++r.shrinks;
    }
    throw NotFound("no translate of any subspace of the almost-period set lies in A+B");
}

BogolyubovReport bogolyubov_bohr(const ElementSet &a, std::uint64_t seed, const ConstantsConfig &cfg)
{
    cfg.validate();
    if (a.empty())
        throw InvalidArgument("Bogolyubov needs a nonempty A");
    const auto &g = a.group();
    require_enumerable(g);

    const auto diff = group_difference(a, a);
    const double k = static_cast<double>(group_sumset(a, a).size()) / static_cast<double>(a.size());
    const double p = std::max(2.0, cfg.C_p * std::log(2.0 * k));
    auto boot = bootstrap_strong_lp(a, diff, p, 0.5, std::nullopt, seed, cfg);

    const auto h = convolve(GroupFunction::measure(a.negated()),
                            convolve(GroupFunction::measure(a), GroupFunction::indicator(diff)));
    const auto two = group_sumset(diff, diff);

    BogolyubovReport r{.bootstrap = boot};
    r.k = k;
    r.alpha = a.density();
    const auto &t = boot.periodicity.T;
    r.radius = t.delta();
    r.rank = t.rank();
    r.radius_shape = std::sqrt(r.alpha);
    const double l = std::log(1.0 / r.alpha);
    r.rank_shape = l * l * l * l;
    const auto &members = t.members();
    r.t_size = members.size();
    for (auto x : members) {
        const double dev = std::abs(h[x] - Complex(1.0, 0.0));
        r.max_deviation = std::max(r.max_deviation, dev);
        const bool member = two.contains(x);
        if (!(dev < 1.0))
            ++r.inequality_failures;
        if (!member)
            ++r.outside;
        if (dev < 1.0 && !member)
            ++r.false_containments;
    }
    r.contained = r.outside == 0;
    return r;
}

LongestAp longest_ap_oracle(const IntSet &s, std::uint64_t budget)
{
    const auto &e = s.elements();
    if (e.size() == 1)
        return {e[0], 0, 1};
    const std::uint64_t n = e.size();
    if (n > budget / n)
        throw CapExceeded("longest-AP oracle over " + std::to_string(n) + " elements exceeds the scan budget");

    std::vector<std::int64_t> steps;
    steps.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            steps.push_back(e[j] - e[i]);
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    if (steps.size() > budget / n)
        throw CapExceeded("longest-AP oracle exceeds the scan budget");

    LongestAp best{e[0], 0, 1};
    for (auto u : steps) {
        if (static_cast<std::uint64_t>((s.max() - s.min()) / u) + 1 <= best.length)
            break;
        for (auto x : e) {
            if (s.contains(x - u))
                continue;
            std::uint64_t len = 1;
            while (s.contains(x + static_cast<std::int64_t>(len) * u))
                ++len;
            if (len > best.length)
                best = {x, u, len};
        }
    }
    return best;
}

LongestAp longest_ap_oracle(const ElementSet &s, std::uint64_t budget)
{
    const auto &g = s.group();
    if (!g.is_cyclic())
        throw InvalidArgument("longest-AP oracle needs a cyclic group, got " + g.to_string());
    if (s.empty())
        throw InvalidArgument("longest-AP oracle needs a nonempty set");
    const std::uint64_t n = g.order();
    const auto &e = s.members();
    if (e.size() == n)
        return {0, n == 1 ? 0 : 1, n};
    if (e.size() == 1)
        return {static_cast<std::int64_t>(e[0]), 0, 1};
    if (n - 1 > budget / e.size())
        throw CapExceeded("longest-AP oracle on " + g.to_string() + " exceeds the scan budget");

    const auto in = s.mask();
    std::vector<std::uint64_t> stamp(n, 0);
    LongestAp best{static_cast<std::int64_t>(e[0]), 0, 1};
    for (Index u = 1; u < n; ++u) {
        const std::uint64_t cycle = n / std::gcd(u, n);
        if (cycle <= best.length)
            continue;
        for (auto x : e) {
            if (in[g.sub(x, u)])
                continue;
            std::uint64_t len = 0;
            for (Index y = x; in[y] && len < cycle; y = g.add(y, u)) {
                stamp[y] = u;
                ++len;
            }
            if (len > best.length)
                best = {static_cast<std::int64_t>(x), static_cast<std::int64_t>(u), len};
        }
        // Anything left unvisited lies on a cycle of <u> contained in S.
        for (auto x : e) {
            if (stamp[x] == u)
                continue;
            for (Index y = x, j = 0; j < cycle; y = g.add(y, u), ++j)
                stamp[y] = u;
            if (cycle > best.length)
                best = {static_cast<std::int64_t>(x), static_cast<std::int64_t>(u), cycle};
        }
    }
    return best;
}

BoundTable bound_table(const BoundInputs &in)
{
    auto positive = [](double v, const char *name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument(std::string(name) + " must be positive");
    };
    for (auto v : in.alphas)
        positive(v, "alpha");
    for (auto v : in.betas)
        positive(v, "beta");
    for (auto v : in.ns)
        positive(v, "N");
    positive(in.c, "c");
    positive(in.C, "C");
    positive(in.epsilon, "epsilon");
    positive(in.p, "p");
    if (in.k_a)
        positive(*in.k_a, "K_A");
    if (in.k_b)
        positive(*in.k_b, "K_B");

    BoundTable t;
    for (double n : in.ns) {
        const double log_n = std::log(n);
        for (double beta : in.betas) {
            Crossover cross{beta, n};
            for (double alpha : in.alphas) {
                BoundRow row{alpha, beta, n};
                row.k_a = in.k_a.value_or(2.0 / alpha);
                row.k_b = in.k_b.value_or(2.0 / beta);
                row.log_green = in.c * std::sqrt(alpha * beta * log_n) - std::log(log_n);
                const double lb = std::log(2.0 / beta);
                row.log_improved = in.c * std::sqrt(alpha * log_n / (lb * lb * lb)) - std::log(log_n / beta);
                const double size_a = alpha * n;
                const double la = std::log(2.0 * row.k_a);
                row.log_doubling = in.c * std::sqrt(std::log(row.k_a * size_a) / (row.k_b * la * la * la)) -
                                   std::log(2.0 * row.k_a * std::log(2.0 * size_a));
                row.radius_delta = in.c * in.epsilon * std::sqrt(alpha / beta) * std::pow(row.k_b, -1.0 / in.p);
                const double ld = std::log(1.0 / row.radius_delta);
                row.radius_rank = in.C * in.p * ld * ld / (in.epsilon * in.epsilon) * std::log(2.0 * row.k_a) +
                                  in.C * std::log(1.0 / alpha);
                row.radius = row.radius_delta / row.radius_rank;
                row.improved_exceeds_green = row.log_improved > row.log_green;
                if (row.improved_exceeds_green) {
                    cross.alpha_min = std::min(cross.alpha_min.value_or(alpha), alpha);
                    cross.alpha_max = std::max(cross.alpha_max.value_or(alpha), alpha);
                }
                t.rows.push_back(row);
            }
            t.crossovers.push_back(cross);
        }
    }
    return t;
}

} // namespace sumsetlab
