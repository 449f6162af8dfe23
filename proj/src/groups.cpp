#include "sumsetlab/groups.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace sumsetlab {

namespace {

std::uint64_t parse_uint(std::string_view text, std::string_view literal)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidArgument("malformed group literal '" + std::string(literal) + "'");
    return value;
}

} // namespace

GroupSpec GroupSpec::cyclic(std::uint64_t modulus)
{
    if (modulus < 1)
        throw InvalidArgument("cyclic group needs modulus >= 1");
    if (modulus > (std::uint64_t{1} << 40))
        throw CapExceeded("cyclic modulus beyond supported range");
    return GroupSpec(Kind::cyclic, modulus, 1, modulus);
}

GroupSpec GroupSpec::vector(std::uint64_t prime, unsigned dimension, std::uint64_t cap)
{
    if (!is_prime(prime))
        throw InvalidArgument("vector space needs a prime field size, got " + std::to_string(prime));
    if (dimension < 1)
        throw InvalidArgument("vector space needs dimension >= 1");
    std::uint64_t order = 1;
    for (unsigned i = 0; i < dimension; ++i) {
        if (order > cap / prime)
            throw CapExceeded("vector space " + std::to_string(prime) + "^" + std::to_string(dimension) +
                              " exceeds the size cap " + std::to_string(cap));
        order *= prime;
    }
    return GroupSpec(Kind::vector, prime, dimension, order);
}

GroupSpec GroupSpec::parse(std::string_view literal)
{
    if (literal.starts_with("zN:"))
        return cyclic(parse_uint(literal.substr(3), literal));
    if (literal.starts_with("vec:")) {
        const auto body = literal.substr(4);
        const auto caret = body.find('^');
        if (caret == std::string_view::npos)
            throw InvalidArgument("malformed group literal '" + std::string(literal) + "'");
        const auto p = parse_uint(body.substr(0, caret), literal);
        const auto n = parse_uint(body.substr(caret + 1), literal);
        if (n > 64)
            throw CapExceeded("vector dimension too large");
        return vector(p, static_cast<unsigned>(n));
    }
    throw InvalidArgument("unknown group literal '" + std::string(literal) + "' (expected zN:<N> or vec:<p>^<n>)");
}

std::string GroupSpec::to_string() const
{
    if (is_cyclic())
        return "zN:" + std::to_string(modulus_);
    return "vec:" + std::to_string(modulus_) + "^" + std::to_string(dimension_);
}

Index GroupSpec::add(Index x, Index y) const noexcept
{
    if (is_cyclic()) {
        const Index s = x + y;
        return s >= modulus_ ? s - modulus_ : s;
    }
    if (modulus_ == 2)
        return x ^ y;
    Index result = 0;
    Index place = 1;
    while (x != 0 || y != 0) {
        Index d = x % modulus_ + y % modulus_;
        if (d >= modulus_)
            d -= modulus_;
        result += d * place;
        place *= modulus_;
        x /= modulus_;
        y /= modulus_;
    }
    return result;
}

Index GroupSpec::neg(Index x) const noexcept
{
    if (is_cyclic())
        return x == 0 ? 0 : modulus_ - x;
    if (modulus_ == 2)
        return x;
    Index result = 0;
    Index place = 1;
    while (x != 0) {
        const Index d = x % modulus_;
        result += (d == 0 ? 0 : modulus_ - d) * place;
        place *= modulus_;
        x /= modulus_;
    }
    return result;
}

Index GroupSpec::sub(Index x, Index y) const noexcept { return add(x, neg(y)); }

Index GroupSpec::scale(std::int64_t j, Index x) const noexcept
{
    const auto jm = static_cast<std::uint64_t>(mod_floor(j, static_cast<std::int64_t>(modulus_)));
    if (is_cyclic())
        return static_cast<Index>(static_cast<unsigned __int128>(jm) * x % modulus_);
    Index result = 0;
    Index place = 1;
    while (x != 0) {
        result += (x % modulus_) * jm % modulus_ * place;
        place *= modulus_;
        x /= modulus_;
    }
    return result;
}

std::vector<std::uint64_t> GroupSpec::coords(Index x) const
{
    if (is_cyclic())
        return {x};
    std::vector<std::uint64_t> out(dimension_);
    for (unsigned i = dimension_; i-- > 0;) {
        out[i] = x % modulus_;
        x /= modulus_;
    }
    return out;
}

Index GroupSpec::from_coords(std::span<const std::uint64_t> c) const
{
    if (is_cyclic()) {
        if (c.size() != 1)
            throw InvalidArgument("cyclic element needs exactly one coordinate");
        return c[0] % modulus_;
    }
    if (c.size() != dimension_)
        throw InvalidArgument("vector element has " + std::to_string(c.size()) + " coordinates, expected " +
                              std::to_string(dimension_));
    Index x = 0;
    for (auto v : c)
        x = x * modulus_ + v % modulus_;
    return x;
}

Index GroupSpec::reduce(std::int64_t value) const
{
    if (!is_cyclic())
        throw InvalidArgument("integer reduction only applies to cyclic groups");
    return static_cast<Index>(mod_floor(value, static_cast<std::int64_t>(modulus_)));
}

std::uint64_t GroupSpec::phase(Index frequency, Index x) const noexcept
{
    if (is_cyclic())
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(frequency) * x % modulus_);
    if (modulus_ == 2)
        return static_cast<std::uint64_t>(__builtin_popcountll(frequency & x) & 1);
    std::uint64_t acc = 0;
    while (frequency != 0 && x != 0) {
        acc += (frequency % modulus_) * (x % modulus_);
        frequency /= modulus_;
        x /= modulus_;
    }
    return acc % modulus_;
}

void require_same_group(const GroupSpec &a, const GroupSpec &b, std::string_view context)
{
    if (!(a == b))
        throw GroupMismatch(std::string(context) + ": " + a.to_string() + " vs " + b.to_string());
}

void require_enumerable(const GroupSpec &g, std::uint64_t cap)
{
    if (g.order() > cap)
        throw CapExceeded(g.to_string() + " has order " + std::to_string(g.order()) +
                          " above the enumeration cap " + std::to_string(cap));
}

GroupElement GroupElement::operator+(const GroupElement &other) const
{
    require_same_group(group, other.group, "element addition");
    return {group, group.add(index, other.index)};
}

GroupElement GroupElement::operator-() const { return {group, group.neg(index)}; }

Complex Character::value(const GroupElement &x) const
{
    require_same_group(group, x.group, "character evaluation");
    return value(x.index);
}

Complex Character::value(Index x) const { return unit_root(group.phase(frequency, x), group.modulus()); }

std::vector<GroupElement> enumerate_group(const GroupSpec &g, std::uint64_t cap)
{
    require_enumerable(g, cap);
    std::vector<GroupElement> out;
    out.reserve(g.order());
    for (Index x = 0; x < g.order(); ++x)
        out.push_back({g, x});
    return out;
}

std::vector<Character> enumerate_dual(const GroupSpec &g, std::uint64_t cap)
{
    require_enumerable(g, cap);
    std::vector<Character> out;
    out.reserve(g.order());
    for (Index r = 0; r < g.order(); ++r)
        out.push_back({g, r});
    return out;
}

double phase_distance(std::uint64_t m, std::uint64_t q) noexcept
{
    m %= q;
    const std::uint64_t folded = std::min(m, q - m);
    return 2.0 * std::sin(std::numbers::pi * static_cast<double>(folded) / static_cast<double>(q));
}

double character_distance(const Character &c, const GroupElement &x)
{
    require_same_group(c.group, x.group, "character_distance");
    return phase_distance(c.group.phase(c.frequency, x.index), c.group.modulus());
}

Complex unit_root(std::uint64_t m, std::uint64_t q) noexcept
{
    m %= q;
    if (m == 0)
        return {1.0, 0.0};
    // Reduce to an angle in (-pi, pi] so that conjugate phases are exact mirrors.
    const bool upper = 2 * m <= q;
    const double folded = static_cast<double>(upper ? m : q - m);
    const double angle = 2.0 * std::numbers::pi * folded / static_cast<double>(q);
    const double re = std::cos(angle);
    const double im = std::sin(angle);
    return {re, upper ? im : -im};
}

std::vector<Complex> unit_root_table(std::uint64_t q)
{
    std::vector<Complex> table(q);
    for (std::uint64_t m = 0; m < q; ++m)
        table[m] = unit_root(m, q);
    return table;
}

ElementSet::ElementSet(GroupSpec group, std::vector<Index> members) : group_(group), members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= group_.order())
        throw InvalidArgument("element " + std::to_string(members_.back()) + " outside " + group_.to_string());
}

ElementSet ElementSet::whole(const GroupSpec &g)
{
    require_enumerable(g);
    std::vector<Index> all(g.order());
    for (Index x = 0; x < g.order(); ++x)
        all[x] = x;
    return ElementSet(g, std::move(all));
}

bool ElementSet::contains(Index x) const noexcept { return std::binary_search(members_.begin(), members_.end(), x); }

std::vector<char> ElementSet::mask() const
{
    std::vector<char> m(group_.order(), 0);
    for (auto x : members_)
        m[x] = 1;
    return m;
}

ElementSet ElementSet::negated() const
{
    std::vector<Index> out;
    out.reserve(members_.size());
    for (auto x : members_)
        out.push_back(group_.neg(x));
    return ElementSet(group_, std::move(out));
}

ElementSet ElementSet::translated(Index t) const
{
    std::vector<Index> out;
    out.reserve(members_.size());
    for (auto x : members_)
        out.push_back(group_.add(x, t));
    return ElementSet(group_, std::move(out));
}

bool ElementSet::is_subset_of(const ElementSet &other) const
{
    require_same_group(group_, other.group_, "subset test");
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

ElementSet group_sumset(const ElementSet &x, const ElementSet &y)
{
    require_same_group(x.group(), y.group(), "group_sumset");
    const auto &g = x.group();
    require_enumerable(g);
    std::vector<char> hit(g.order(), 0);
    std::uint64_t remaining = g.order();
    for (auto a : x.members()) {
        for (auto b : y.members()) {
            auto &slot = hit[g.add(a, b)];
            if (!slot) {
                slot = 1;
                --remaining;
            }
        }
        if (remaining == 0)
            break;
    }
    std::vector<Index> out;
    for (Index s = 0; s < g.order(); ++s)
        if (hit[s])
            out.push_back(s);
    return ElementSet(g, std::move(out));
}

ElementSet group_difference(const ElementSet &x, const ElementSet &y) { return group_sumset(x, y.negated()); }

} // namespace sumsetlab
