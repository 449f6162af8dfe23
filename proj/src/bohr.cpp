#include "sumsetlab/bohr.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

namespace sumsetlab {

namespace {

using Row = std::vector<std::uint64_t>;

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    // p is prime, so a^(p-2) is the inverse.
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1)
            result = static_cast<std::uint64_t>((unsigned __int128)result * base % p);
        base = static_cast<std::uint64_t>((unsigned __int128)base * base % p);
    }
    return result;
}

// Reduced row echelon form in place; returns the pivot column of each kept row.
std::vector<std::size_t> rref(std::vector<Row> &rows, std::uint64_t p, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0)
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        const std::uint64_t inv = inverse_mod(rows[r][c], p);
        for (auto &v : rows[r])
            v = v * inv % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            const std::uint64_t f = rows[i][c];
            for (std::size_t k = 0; k < cols; ++k)
                rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::vector<Row> coordinate_rows(const GroupSpec &g, std::span<const Index> vectors)
{
    if (!g.is_vector())
        throw GroupMismatch("linear algebra needs a vector space, got " + g.to_string());
    std::vector<Row> rows;
    rows.reserve(vectors.size());
    for (auto v : vectors) {
        if (!g.contains(v))
            throw InvalidArgument("vector outside " + g.to_string());
        rows.push_back(g.coords(v));
    }
    return rows;
}

std::vector<Index> strip_principal(const GroupSpec &g, std::vector<Index> freqs)
{
    for (auto r : freqs)
        if (!g.contains(r))
            throw InvalidArgument("frequency " + std::to_string(r) + " outside " + g.to_string());
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
    if (!freqs.empty() && freqs.front() == 0)
        freqs.erase(freqs.begin());
    return freqs;
}

bool in_span_set_search(const GroupSpec &g, std::span<const Index> freqs, std::size_t i, Index sum, bool any)
{
    if (i == freqs.size())
        return any && sum == 0;
    return in_span_set_search(g, freqs, i + 1, sum, any) ||
           in_span_set_search(g, freqs, i + 1, g.add(sum, freqs[i]), true) ||
           in_span_set_search(g, freqs, i + 1, g.sub(sum, freqs[i]), true);
}

} // namespace

struct BohrDescriptor::Cache {
    std::once_flag once;
    std::vector<Index> members;
};

BohrDescriptor::BohrDescriptor(GroupSpec group, std::vector<Index> frequencies, double delta)
    : group_(group), frequencies_(strip_principal(group, std::move(frequencies))), delta_(delta),
      cache_(std::make_shared<Cache>())
{
    if (!(delta_ >= 0.0 && delta_ <= 2.0))
        throw InvalidArgument("Bohr radius must lie in [0, 2]");
}

BohrDescriptor::BohrDescriptor(GroupSpec group, std::span<const Character> characters, double delta)
    : BohrDescriptor(group,
                     [&] {
                         std::vector<Index> f;
                         for (const auto &c : characters) {
                             require_same_group(group, c.group, "Bohr frequencies");
                             f.push_back(c.frequency);
                         }
                         return f;
                     }(),
                     delta)
{
}

std::vector<Character> BohrDescriptor::characters() const
{
    std::vector<Character> out;
    out.reserve(frequencies_.size());
    for (auto r : frequencies_)
        out.push_back({group_, r});
    return out;
}

bool BohrDescriptor::contains(Index x) const noexcept
{
    const auto q = group_.modulus();
    for (auto r : frequencies_)
        if (phase_distance(group_.phase(r, x), q) > delta_)
            return false;
    return true;
}

const std::vector<Index> &BohrDescriptor::members(std::uint64_t cap) const
{
    require_enumerable(group_, cap);
    std::call_once(cache_->once, [this] {
        for (Index x = 0; x < group_.order(); ++x)
            if (contains(x))
                cache_->members.push_back(x);
    });
    return cache_->members;
}

ElementSet materialize(const BohrDescriptor &b, std::uint64_t cap)
{
    return ElementSet(b.group(), b.members(cap));
}

SizeBoundCheck size_bound_check(const BohrDescriptor &b)
{
    SizeBoundCheck out;
    out.actual = b.members().size();
    out.bound = std::pow(b.delta() / (2.0 * std::numbers::pi), static_cast<double>(b.rank())) *
                static_cast<double>(b.group().order());
    out.pass = static_cast<double>(out.actual) >= out.bound;
    return out;
}

std::uint64_t ap_length_guarantee(double delta, std::uint64_t modulus, std::size_t rank)
{
    if (rank == 0)
        return modulus;
    const double v = delta * std::pow(static_cast<double>(modulus), 1.0 / static_cast<double>(rank)) /
                     (2.0 * std::numbers::pi);
    return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(v));
}

ProgressionWitness find_ap_in_bohr(const BohrDescriptor &b)
{
    const auto &g = b.group();
    if (!g.is_cyclic() || !is_prime(g.order()))
        throw InvalidArgument("progression search needs a cyclic group of prime order, got " + g.to_string());
    if (!(b.delta() > 0.0))
        throw InvalidArgument("progression search needs delta > 0");

    const std::uint64_t n = g.order();
    const auto &members = b.members();
    if (members.size() == n) {
        auto w = ProgressionWitness::cyclic(g, 0, 1, n);
        w.verified = true;
        return w;
    }
    std::vector<char> in(n, 0);
    for (auto x : members)
        in[x] = 1;

    // u and N-u give the same centred progression, so half the steps suffice.
    const std::uint64_t max_half = (n - 1) / 2;
    std::uint64_t best_u = 1;
    std::uint64_t best_l = 0;
    // For each step, the triangle inequality guarantees the first
    // floor(delta / max |gamma(u) - 1|) multiples; walking the exact membership
    // mask finds that prefix and any continuation beyond it.
    for (Index u = 1; u <= max_half; ++u) {
        std::uint64_t l = 0;
        Index x = 0;
        while (l < max_half) {
            x = g.add(x, u);
            if (!in[x])
                break;
            ++l;
        }
        if (l > best_l) {
            best_l = l;
            best_u = u;
        }
    }
    auto w = ProgressionWitness::cyclic(g, g.scale(-static_cast<std::int64_t>(best_l), best_u), best_u,
                                        2 * best_l + 1);
    const auto elements = w.group_elements();
    w.verified = std::all_of(elements.begin(), elements.end(), [&](Index e) { return in[e] != 0; });
    return w;
}

ProgressionWitness find_subspace_in_bohr(const BohrDescriptor &b)
{
    const auto &g = b.group();
    if (!g.is_vector())
        throw InvalidArgument("subspace search needs a vector space, got " + g.to_string());
    const double limit = 2.0 * std::sin(std::numbers::pi / static_cast<double>(g.modulus()));
    if (b.rank() > 0 && !(b.delta() < limit))
        throw HypothesisViolation("radius " + std::to_string(b.delta()) + " does not force gamma(x) = 1; need delta < " +
                                  std::to_string(limit));
    auto w = ProgressionWitness::subspace(g, 0, annihilator_basis(g, b.frequencies()));
    const auto elements = w.group_elements();
    w.verified = std::all_of(elements.begin(), elements.end(), [&](Index x) { return b.contains(x); });
    return w;
}

std::size_t rank_mod_p(const GroupSpec &g, std::span<const Index> vectors)
{
    auto rows = coordinate_rows(g, vectors);
    return rref(rows, g.modulus(), g.dimension()).size();
}

std::vector<Index> annihilator_basis(const GroupSpec &g, std::span<const Index> frequencies)
{
    auto rows = coordinate_rows(g, frequencies);
    const std::uint64_t p = g.modulus();
    const std::size_t n = g.dimension();
    const auto pivots = rref(rows, p, n);

    std::vector<char> is_pivot(n, 0);
    for (auto c : pivots)
        is_pivot[c] = 1;
    std::vector<Index> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Row x(n, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = (p - rows[i][f]) % p;
        basis.push_back(g.from_coords(x));
    }
    return basis;
}

std::vector<Index> span_elements(const GroupSpec &g, Index base, std::span<const Index> basis)
{
    const std::uint64_t p = g.modulus();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (count > g.order() / p)
            throw InvalidArgument("spanning set is not independent");
        count *= p;
    }
    std::vector<Index> out;
    out.reserve(count);
    // Mixed-radix counter over coefficients; the last basis vector varies fastest.
    std::vector<std::uint64_t> coef(basis.size(), 0);
    Index x = base;
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(x);
        for (std::size_t k = basis.size(); k-- > 0;) {
            x = g.add(x, basis[k]);
            if (++coef[k] < p)
                break;
            coef[k] = 0; // p * basis[k] = 0, so x already wrapped
        }
    }
    return out;
}

LargeSpectrum large_spectrum(const GroupFunction &f, double threshold)
{
    if (!(threshold > 0.0))
        throw InvalidArgument("spectrum threshold must be positive");
    const auto s = transform(f);
    LargeSpectrum out{f.group(), threshold, {}, {}};
    for (Index r = 0; r < s.coeffs().size(); ++r) {
        const double m = std::abs(s[r]);
        if (m >= threshold) {
            out.frequencies.push_back(r);
            out.magnitudes.push_back(m);
        }
    }
    return out;
}

bool is_dissociated(const GroupSpec &g, std::span<const Index> frequencies)
{
    if (frequencies.size() > kMaxDissociatedRank)
        throw CapExceeded("dissociativity check limited to " + std::to_string(kMaxDissociatedRank) + " characters");
    std::vector<Index> f(frequencies.begin(), frequencies.end());
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
        return false;
    return !in_span_set_search(g, f, 0, 0, false);
}

namespace {

struct Visit {
    Index frequency;
    double magnitude;
};

ChangReduction reduce(const GroupSpec &g, std::vector<Visit> order, double threshold, double delta, double tau,
                      double c_chang)
{
    if (!(delta >= 0.0 && delta <= 2.0))
        throw InvalidArgument("Bohr radius must lie in [0, 2]");
    if (!(tau > 0.0 && tau <= 1.0))
        throw InvalidArgument("density tau must lie in (0, 1]");
    require_enumerable(g);

    std::erase_if(order, [](const Visit &v) { return v.frequency == 0; });
    std::stable_sort(order.begin(), order.end(), [](const Visit &a, const Visit &b) {
        if (a.magnitude != b.magnitude)
            return a.magnitude > b.magnitude;
        return a.frequency < b.frequency;
    });

    // Span set S(Lambda) of {-1,0,1}-combinations, each member remembering the
    // element it was reached from and the signed basis vector used.
    constexpr std::int32_t kAbsent = -1;
    const std::uint64_t n = g.order();
    std::vector<std::int32_t> via(n, kAbsent); // basis slot, or kRoot for 0
    std::vector<std::int8_t> sign(n, 0);
    std::vector<Index> from(n, 0);
    std::vector<Index> span{0};
    constexpr std::int32_t kRoot = -2;
    via[0] = kRoot;

    std::vector<Index> basis;
    for (const auto &v : order) {
        if (via[v.frequency] != kAbsent)
            continue;
        if (basis.size() == kMaxDissociatedRank)
            throw CapExceeded("dissociated basis would exceed " + std::to_string(kMaxDissociatedRank) + " characters");
        const auto slot = static_cast<std::int32_t>(basis.size());
        basis.push_back(v.frequency);
        const std::size_t before = span.size();
        for (std::size_t i = 0; i < before; ++i) {
            const Index s = span[i];
            for (int e : {1, -1}) {
                const Index t = e > 0 ? g.add(s, v.frequency) : g.sub(s, v.frequency);
                if (via[t] != kAbsent)
                    continue;
                via[t] = slot;
                sign[t] = static_cast<std::int8_t>(e);
                from[t] = s;
                span.push_back(t);
            }
        }
    }

    ChangReduction out{.threshold = threshold,
                       .tau = tau,
                       .delta = delta,
                       .reduced_radius = basis.empty() ? delta : delta / static_cast<double>(basis.size()),
                       .rank_bound = c_chang * std::log(1.0 / tau),
                       .reduced = BohrDescriptor(g, basis, basis.empty() ? delta : delta / static_cast<double>(basis.size()))};
    for (const auto &v : order)
        out.spectrum.push_back(v.frequency);
    std::sort(out.spectrum.begin(), out.spectrum.end());
    out.spectrum.erase(std::unique(out.spectrum.begin(), out.spectrum.end()), out.spectrum.end());
    out.basis = basis;
    for (auto gamma : out.spectrum) {
        std::vector<int> cert(basis.size(), 0);
        for (Index x = gamma; via[x] != kRoot; x = from[x])
            cert[static_cast<std::size_t>(via[x])] = sign[x];
        out.certificates.push_back(std::move(cert));
    }
    if (!is_dissociated(g, basis))
        throw InternalError("greedy basis failed the exhaustive dissociativity check");
    return out;
}

} // namespace

ChangReduction chang_reduce(const LargeSpectrum &gamma, double delta, double tau, double c_chang)
{
    if (gamma.frequencies.size() != gamma.magnitudes.size())
        throw InvalidArgument("spectrum frequencies and magnitudes differ in length");
    std::vector<Visit> order;
    for (std::size_t i = 0; i < gamma.frequencies.size(); ++i) {
        if (!gamma.group.contains(gamma.frequencies[i]))
            throw InvalidArgument("frequency outside " + gamma.group.to_string());
        order.push_back({gamma.frequencies[i], gamma.magnitudes[i]});
    }
    return reduce(gamma.group, std::move(order), gamma.threshold, delta, tau, c_chang);
}

ChangReduction chang_reduce(const GroupSpec &g, std::vector<Index> gamma, double delta, double tau, double c_chang)
{
    std::vector<Visit> order;
    for (auto r : gamma) {
        if (!g.contains(r))
            throw InvalidArgument("frequency outside " + g.to_string());
        order.push_back({r, 0.0});
    }
    return reduce(g, std::move(order), 0.0, delta, tau, c_chang);
}

bool verify_span_certificates(const GroupSpec &g, const ChangReduction &c)
{
    if (c.certificates.size() != c.spectrum.size())
        return false;
    for (std::size_t i = 0; i < c.spectrum.size(); ++i) {
        const auto &cert = c.certificates[i];
        if (cert.size() != c.basis.size())
            return false;
        Index sum = 0;
        for (std::size_t j = 0; j < cert.size(); ++j) {
            if (cert[j] < -1 || cert[j] > 1)
                return false;
            sum = g.add(sum, g.scale(cert[j], c.basis[j]));
        }
        if (sum != c.spectrum[i])
            return false;
    }
    return true;
}

ContainmentCheck verify_chang_containment(const GroupSpec &g, const ChangReduction &c)
{
    const BohrDescriptor original(g, c.spectrum, c.delta);
    const auto small = materialize(c.reduced);
    const auto big = materialize(original);
    return {small.is_subset_of(big), small.size(), big.size()};
}

} // namespace sumsetlab
