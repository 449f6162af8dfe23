#include "sumsetlab/freiman.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"
#include "sumsetlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace sumsetlab {

IntSet::IntSet(std::vector<std::int64_t> elements) : elements_(std::move(elements))
{
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty())
        throw InvalidArgument("integer sets must be nonempty");
}

IntSet IntSet::interval(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo)
        throw InvalidArgument("empty interval");
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t x = lo; x <= hi; ++x)
        v.push_back(x);
    return IntSet(std::move(v));
}

bool IntSet::contains(std::int64_t x) const noexcept
{
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

IntSet IntSet::negated() const
{
    std::vector<std::int64_t> v(elements_.rbegin(), elements_.rend());
    for (auto &x : v)
        x = -x;
    return IntSet(std::move(v));
}

IntSet IntSet::translated(std::int64_t t) const
{
    auto v = elements_;
    for (auto &x : v)
        x += t;
    return IntSet(std::move(v));
}

IntSet sumset(const IntSet &x, const IntSet &y, std::uint64_t pair_cap)
{
    const auto pairs = static_cast<unsigned __int128>(x.size()) * y.size();
    if (pairs > pair_cap)
        throw CapExceeded("sumset of sizes " + std::to_string(x.size()) + " and " + std::to_string(y.size()) +
                          " exceeds the pair cap");
    const std::int64_t lo = x.min() + y.min();
    const auto span = static_cast<std::uint64_t>(x.max() + y.max() - lo) + 1;
    std::vector<std::int64_t> out;
    if (span <= (std::uint64_t{1} << 26)) {
        std::vector<char> hit(span, 0);
        for (auto a : x.elements())
            for (auto b : y.elements())
                hit[static_cast<std::size_t>(a + b - lo)] = 1;
        for (std::size_t i = 0; i < span; ++i)
            if (hit[i])
                out.push_back(lo + static_cast<std::int64_t>(i));
        return IntSet(std::move(out));
    }
    out.reserve(static_cast<std::size_t>(pairs));
    for (auto a : x.elements())
        for (auto b : y.elements())
            out.push_back(a + b);
    return IntSet(std::move(out));
}

IntSet difference(const IntSet &x, const IntSet &y, std::uint64_t pair_cap)
{
    return sumset(x, y.negated(), pair_cap);
}

IntSet iterated_combination(std::span<const IntSet> sets, unsigned k, std::uint64_t pair_cap)
{
    if (sets.empty())
        throw InvalidArgument("iterated combination needs at least one set");
    if (k < 1)
        throw InvalidArgument("iterated combination needs k >= 1");
    IntSet acc{0};
    for (const auto &s : sets) {
        // kA - kA is built as k copies of A - A.
        const auto diff = difference(s, s, pair_cap);
        for (unsigned i = 0; i < k; ++i)
            acc = sumset(acc, diff, pair_cap);
    }
    return acc;
}

IntSet iterated_combination(const IntSet &a, const IntSet &b, unsigned k, std::uint64_t pair_cap)
{
    const IntSet sets[] = {a, b};
    return iterated_combination(sets, k, pair_cap);
}

DoublingStats doubling_stats(const IntSet &a, const IntSet &b)
{
    DoublingStats s;
    s.sumset_size = sumset(a, b).size();
    const auto n = static_cast<std::int64_t>(s.sumset_size);
    s.k_a = Rational(n, static_cast<std::int64_t>(a.size()));
    s.k_b = Rational(n, static_cast<std::int64_t>(b.size()));
    return s;
}

PlunneckeQuantities plunnecke_quantities(const IntSet &a, const IntSet &b)
{
    PlunneckeQuantities q;
    q.actual = iterated_combination(a, b, 2).size();
    const auto ab = static_cast<std::int64_t>(sumset(a, b).size());
    q.k = Rational(ab, static_cast<std::int64_t>(std::min(a.size(), b.size())));
    q.bound = std::pow(q.k.to_double(), 11.0) * static_cast<double>(b.size());
    q.slack = q.bound - static_cast<double>(q.actual);
    q.pass = q.slack >= 0.0;
    return q;
}

namespace {

struct Interval {
    Rational lo;
    Rational hi;
    std::int64_t t;
    std::int64_t d;
};

} // namespace

XiChoice choose_xi(const IntSet &d_set, std::uint64_t modulus, std::uint64_t interval_cap)
{
    if (modulus < 1)
        throw InvalidArgument("modulus must be positive");
    if (modulus < d_set.size())
        throw HypothesisViolation("modulus " + std::to_string(modulus) + " is below |D| = " +
                                  std::to_string(d_set.size()));
    const auto n = static_cast<std::int64_t>(modulus);

    std::vector<std::int64_t> ts;
    std::uint64_t count = 0;
    for (auto t : d_set.elements()) {
        if (t <= 0)
            continue;
        ts.push_back(t);
        count += static_cast<std::uint64_t>(t) + 1;
        if (count > interval_cap)
            throw CapExceeded("xi selection would sweep more than " + std::to_string(interval_cap) + " intervals");
    }

    XiChoice out;
    out.modulus = modulus;
    out.d_size = d_set.size();
    out.interval_count = count;

    const Rational zero(0);
    const Rational top(n);
    auto make = [&](std::int64_t t, std::int64_t d) {
        Interval iv{Rational(d * n - 1, t), Rational(d * n + 1, t), t, d};
        iv.lo = std::max(iv.lo, zero);
        iv.hi = std::min(iv.hi, top);
        return iv;
    };

    // Per t the clipped lengths share the denominator t, so the exact total
    // is accumulated one t at a time.
    Rational total(0);
    for (auto t : ts) {
        std::int64_t num = 0;
        for (std::int64_t d = 0; d <= t; ++d) {
            const auto iv = make(t, d);
            const auto len = iv.hi - iv.lo;
            num += len.num() * (t / len.den());
        }
        total = total + Rational(num, t);
    }
    out.excluded_total = total;

    // k-way merge of the per-t interval lists, which are already sorted by d.
    auto later = [](const Interval &a, const Interval &b) {
        if (a.lo != b.lo)
            return a.lo > b.lo;
        return std::tie(a.t, a.d) > std::tie(b.t, b.d);
    };
    std::priority_queue<Interval, std::vector<Interval>, decltype(later)> heap(later);
    for (auto t : ts)
        heap.push(make(t, 0));

    Rational covered_to = zero;
    bool have_gap = false;
    Rational best_lo, best_hi;
    double union_measure = 0.0;
    Rational run_start = zero;
    bool in_run = false;
    auto consider = [&](const Rational &lo, const Rational &hi) {
        if (!(lo < hi))
            return;
        if (!have_gap || (hi - lo) > (best_hi - best_lo)) {
            best_lo = lo;
            best_hi = hi;
            have_gap = true;
        }
    };
    while (!heap.empty()) {
        const Interval iv = heap.top();
        heap.pop();
        if (iv.d < iv.t)
            heap.push(make(iv.t, iv.d + 1));
        if (!in_run || iv.lo > covered_to) {
            if (in_run)
                union_measure += (covered_to - run_start).to_double();
            consider(covered_to, iv.lo);
            run_start = iv.lo;
            covered_to = iv.hi;
            in_run = true;
        } else if (iv.hi > covered_to) {
            covered_to = iv.hi;
        }
    }
    if (in_run)
        union_measure += (covered_to - run_start).to_double();
    consider(covered_to, top);
    out.excluded_union = union_measure;
    if (!have_gap)
        throw InternalError("no admissible xi found although N >= |D|");
    out.gap_lo = best_lo;
    out.gap_hi = best_hi;
    out.xi = (best_lo + best_hi) / Rational(2);
    return out;
}

XiChoice choose_xi(const IntSet &a, const IntSet &b, unsigned k, std::uint64_t modulus, std::uint64_t interval_cap)
{
    if (k < 2)
        throw InvalidArgument("model embedding needs k >= 2");
    return choose_xi(iterated_combination(a, b, k), modulus, interval_cap);
}

namespace {

struct State {
    std::int64_t sum;
    std::int64_t lifted;
    std::uint32_t prev;
    std::uint32_t elem;
};

struct Layered {
    std::vector<std::vector<State>> layers; // layer 0 is the empty tuple
    bool overflow = false;
};

Layered build_states(const std::map<std::int64_t, std::int64_t> &lift, std::span<const IntSet> sets, unsigned k,
                     std::uint64_t state_cap)
{
    Layered out;
    out.layers.push_back({State{0, 0, 0, 0}});
    for (const auto &s : sets) {
        std::vector<std::int64_t> lifts;
        for (auto a : s.elements()) {
            const auto it = lift.find(a);
            if (it == lift.end())
                throw InvalidArgument("map is undefined at " + std::to_string(a));
            lifts.push_back(it->second);
        }
        for (unsigned rep = 0; rep < k; ++rep) {
            const auto &prev = out.layers.back();
            std::vector<State> next;
            next.reserve(prev.size() * s.size());
            for (std::uint32_t i = 0; i < prev.size(); ++i)
                for (std::uint32_t e = 0; e < s.size(); ++e)
                    next.push_back({prev[i].sum + s.elements()[e], prev[i].lifted + lifts[e], i, e});
            std::stable_sort(next.begin(), next.end(), [](const State &x, const State &y) {
                return std::tie(x.sum, x.lifted) < std::tie(y.sum, y.lifted);
            });
            next.erase(std::unique(next.begin(), next.end(),
                                   [](const State &x, const State &y) {
                                       return x.sum == y.sum && x.lifted == y.lifted;
                                   }),
                       next.end());
            if (next.size() > state_cap) {
                out.overflow = true;
                return out;
            }
            out.layers.push_back(std::move(next));
        }
    }
    return out;
}

std::vector<std::vector<std::int64_t>> trace(const Layered &st, std::span<const IntSet> sets, unsigned k,
                                             std::size_t idx)
{
    std::vector<std::vector<std::int64_t>> groups(sets.size(), std::vector<std::int64_t>(k));
    for (std::size_t layer = st.layers.size() - 1; layer > 0; --layer) {
        const auto &s = st.layers[layer][idx];
        const std::size_t set = (layer - 1) / k;
        groups[set][(layer - 1) % k] = sets[set].elements()[s.elem];
        idx = s.prev;
    }
    return groups;
}

struct Verdict {
    bool forward = true;
    bool forward_integer = true;
    bool backward = true;
    std::optional<IsoCounterexample> counterexample;
};

Verdict judge(const Layered &st, std::span<const IntSet> sets, unsigned k, std::uint64_t modulus)
{
    Verdict v;
    const auto &fin = st.layers.back();
    const auto n = static_cast<std::int64_t>(modulus);
    auto note = [&](const char *dir, std::size_t i, std::size_t j) {
        if (!v.counterexample)
            v.counterexample = IsoCounterexample{dir, trace(st, sets, k, i), trace(st, sets, k, j)};
    };
    // States are sorted by (sum, lifted): equal sums are adjacent.
    for (std::size_t i = 1; i < fin.size(); ++i) {
        if (fin[i].sum != fin[i - 1].sum)
            continue;
        v.forward_integer = false;
        if (mod_floor(fin[i].lifted, n) != mod_floor(fin[i - 1].lifted, n)) {
            v.forward = false;
            note("forward", i - 1, i);
        }
    }
    if (v.forward && !v.forward_integer) {
        for (std::size_t i = 1; i < fin.size(); ++i)
            if (fin[i].sum == fin[i - 1].sum) {
                note("forward-integer", i - 1, i);
                break;
            }
    }
    std::vector<std::size_t> order(fin.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::make_pair(mod_floor(fin[x].lifted, n), fin[x].sum) <
               std::make_pair(mod_floor(fin[y].lifted, n), fin[y].sum);
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        const auto &x = fin[order[i - 1]];
        const auto &y = fin[order[i]];
        if (mod_floor(x.lifted, n) == mod_floor(y.lifted, n) && x.sum != y.sum) {
            v.backward = false;
            note("backward", order[i - 1], order[i]);
            break;
        }
    }
    return v;
}

IsoCheck sampled_check(const std::map<std::int64_t, std::int64_t> &lift, std::span<const IntSet> sets, unsigned k,
                       std::uint64_t modulus, std::uint64_t seed)
{
    constexpr std::size_t kSamples = 200'000;
    const auto n = static_cast<std::int64_t>(modulus);
    Rng rng(seed);
    std::map<std::int64_t, std::pair<std::int64_t, std::vector<std::vector<std::int64_t>>>> by_sum;
    std::map<std::int64_t, std::pair<std::int64_t, std::vector<std::vector<std::int64_t>>>> by_residue;
    IsoCheck out;
    out.exhaustive = false;
    out.forward_integer = true;
    out.ok = true;
    for (std::size_t i = 0; i < kSamples && out.ok; ++i) {
        std::vector<std::vector<std::int64_t>> tuple(sets.size());
        std::int64_t sum = 0;
        std::int64_t lifted = 0;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            for (unsigned j = 0; j < k; ++j) {
                const auto a = sets[s].elements()[rng.below(sets[s].size())];
                tuple[s].push_back(a);
                sum += a;
                lifted += lift.at(a);
            }
        }
        const auto res = mod_floor(lifted, n);
        auto [it, fresh] = by_sum.try_emplace(sum, lifted, tuple);
        if (!fresh && it->second.first != lifted) {
            out.forward_integer = false;
            if (mod_floor(it->second.first, n) != res) {
                out.ok = false;
                out.counterexample = IsoCounterexample{"forward", it->second.second, tuple};
            }
        }
        auto [jt, fresh2] = by_residue.try_emplace(res, sum, tuple);
        if (!fresh2 && jt->second.first != sum) {
            out.ok = false;
            out.counterexample = IsoCounterexample{"backward", jt->second.second, tuple};
        }
    }
    out.states = by_sum.size();
    return out;
}

double tuple_pairs(std::span<const IntSet> sets, unsigned k)
{
    double one_side = 1.0;
    for (const auto &s : sets)
        one_side *= std::pow(static_cast<double>(s.size()), static_cast<double>(k));
    return one_side * one_side;
}

} // namespace

IsoCheck verify_k_isomorphism(const std::map<std::int64_t, std::int64_t> &lift, std::span<const IntSet> sets,
                              unsigned k, std::uint64_t modulus, std::uint64_t state_cap, std::uint64_t seed)
{
    if (sets.empty())
        throw InvalidArgument("isomorphism check needs at least one set");
    if (k < 1)
        throw InvalidArgument("isomorphism check needs k >= 1");
    if (modulus < 1)
        throw InvalidArgument("modulus must be positive");

    // psi(a + b) = phi(a) + phi(b) must be a function on A' + B' (k = 1, forward).
    const auto base = build_states(lift, sets, 1, state_cap);
    bool well_defined = true;
    if (!base.overflow)
        well_defined = judge(base, sets, 1, modulus).forward;

    const auto st = build_states(lift, sets, k, state_cap);
    IsoCheck out;
    if (st.overflow || base.overflow) {
        out = sampled_check(lift, sets, k, modulus, seed);
        out.well_defined = well_defined;
        out.tuple_count = tuple_pairs(sets, k);
        out.ok = out.ok && well_defined;
        return out;
    }
    const auto v = judge(st, sets, k, modulus);
    out.exhaustive = true;
    out.forward_integer = v.forward_integer;
    out.well_defined = well_defined;
    out.ok = v.forward && v.backward && well_defined;
    out.states = st.layers.back().size();
    out.tuple_count = tuple_pairs(sets, k);
    if (!out.ok || !out.forward_integer)
        out.counterexample = v.counterexample;
    return out;
}

IsoCheck verify_k_isomorphism(const std::map<std::int64_t, std::int64_t> &lift, const IntSet &a, const IntSet &b,
                              unsigned k, std::uint64_t modulus, std::uint64_t state_cap, std::uint64_t seed)
{
    const IntSet sets[] = {a, b};
    return verify_k_isomorphism(lift, sets, k, modulus, state_cap, seed);
}

EmbeddingCertificate embed_many(std::span<const IntSet> sets, unsigned k, std::uint64_t modulus)
{
    if (sets.empty())
        throw InvalidArgument("embedding needs at least one set");
    if (k < 2)
        throw InvalidArgument("model embedding needs k >= 2");

    EmbeddingCertificate cert;
    cert.k = k;
    cert.modulus = modulus;
    cert.choice = choose_xi(iterated_combination(sets, k), modulus);
    const Rational &xi = cert.choice.xi;
    const auto nbands = static_cast<std::int64_t>(sets.size()) * k;
    const auto n = static_cast<std::int64_t>(modulus);

    for (const auto &s : sets) {
        // Band j (1-based) holds a with (j-1)/B <= {xi a} < j/B, i.e.
        // j = floor(B * r / den) + 1 where r / den = {xi a}.
        std::vector<std::vector<std::int64_t>> bands(static_cast<std::size_t>(nbands));
        for (auto a : s.elements()) {
            const auto r = xi.frac_times_num(a);
            const auto j = static_cast<std::size_t>(static_cast<__int128>(nbands) * r / xi.den());
            bands[j].push_back(a);
        }
        std::size_t best = 0;
        std::vector<std::size_t> sizes;
        for (std::size_t j = 0; j < bands.size(); ++j) {
            sizes.push_back(bands[j].size());
            if (bands[j].size() > bands[best].size())
                best = j;
        }
        cert.bands.push_back(static_cast<unsigned>(best + 1));
        cert.band_sizes.push_back(std::move(sizes));
        cert.subsets.emplace_back(std::move(bands[best]));
    }
    for (const auto &s : cert.subsets) {
        for (auto a : s.elements()) {
            const auto l = xi.floor_times(a);
            cert.lift[a] = l;
            cert.phi[a] = static_cast<std::uint64_t>(mod_floor(l, n));
        }
    }
    cert.check = verify_k_isomorphism(cert.lift, cert.subsets, k, modulus);
    cert.verified = cert.check.ok && cert.check.exhaustive;
    return cert;
}

EmbeddingCertificate embed_pair(const IntSet &a, const IntSet &b, unsigned k, std::uint64_t modulus)
{
    const IntSet sets[] = {a, b};
    return embed_many(sets, k, modulus);
}

} // namespace sumsetlab
