#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumsetlab {

using Complex = std::complex<double>;

/// Canonical position of an element (or a character) in enumeration order.
/// For Z/N this is the representative in [0, N); for F_p^n it is the
/// base-p number whose most significant digit is the first coordinate,
/// so ascending index order is lexicographic coordinate order.
using Index = std::uint64_t;

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// A finite abelian group: either cyclic Z/N or a vector space F_p^n.
class GroupSpec {
public:
    enum class Kind { cyclic, vector };

    static GroupSpec cyclic(std::uint64_t modulus);
    static GroupSpec vector(std::uint64_t prime, unsigned dimension,
                            std::uint64_t cap = kDefaultEnumerationCap);

    /// Parses "zN:97" or "vec:2^8".
    static GroupSpec parse(std::string_view literal);

    Kind kind() const noexcept { return kind_; }
    bool is_cyclic() const noexcept { return kind_ == Kind::cyclic; }
    bool is_vector() const noexcept { return kind_ == Kind::vector; }

    std::uint64_t order() const noexcept { return order_; }
    /// N for Z/N, p for F_p^n: the modulus of character phases.
    std::uint64_t modulus() const noexcept { return modulus_; }
    unsigned dimension() const noexcept { return dimension_; }

    std::string to_string() const;

    // Arithmetic on canonical indices. Arguments must be < order().
    Index add(Index x, Index y) const noexcept;
    Index sub(Index x, Index y) const noexcept;
    Index neg(Index x) const noexcept;
    Index zero() const noexcept { return 0; }
    /// j * x (j may be negative).
    Index scale(std::int64_t j, Index x) const noexcept;

    std::vector<std::uint64_t> coords(Index x) const;
    Index from_coords(std::span<const std::uint64_t> coords) const;
    /// Reduces an arbitrary integer into Z/N (cyclic groups only).
    Index reduce(std::int64_t value) const;

    /// Phase numerator m in [0, modulus): the pairing of frequency r with x
    /// is exp(2 pi i m / modulus).
    std::uint64_t phase(Index frequency, Index x) const noexcept;

    bool contains(Index x) const noexcept { return x < order_; }

    friend bool operator==(const GroupSpec &a, const GroupSpec &b) noexcept
    {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ && a.dimension_ == b.dimension_;
    }

private:
    GroupSpec(Kind kind, std::uint64_t modulus, unsigned dimension, std::uint64_t order)
        : kind_(kind), modulus_(modulus), dimension_(dimension), order_(order)
    {
    }

    Kind kind_;
    std::uint64_t modulus_;
    unsigned dimension_;
    std::uint64_t order_;
};

/// Throws GroupMismatch unless a == b.
void require_same_group(const GroupSpec &a, const GroupSpec &b, std::string_view context);

/// Throws CapExceeded when the group cannot be materialized.
void require_enumerable(const GroupSpec &g, std::uint64_t cap = kDefaultEnumerationCap);

struct GroupElement {
    GroupSpec group;
    Index index;

    std::vector<std::uint64_t> coords() const { return group.coords(index); }
    GroupElement operator+(const GroupElement &other) const;
    GroupElement operator-() const;

    friend bool operator==(const GroupElement &, const GroupElement &) = default;
};

/// The character x -> exp(2 pi i <r, x> / modulus) indexed by its frequency r.
struct Character {
    GroupSpec group;
    Index frequency;

    bool is_principal() const noexcept { return frequency == 0; }
    Complex value(const GroupElement &x) const;
    Complex value(Index x) const;
    /// The conjugate character (frequency -r).
    Character conjugate() const { return {group, group.neg(frequency)}; }

    friend bool operator==(const Character &, const Character &) = default;
};

std::vector<GroupElement> enumerate_group(const GroupSpec &g, std::uint64_t cap = kDefaultEnumerationCap);

/// Principal character first, then ascending frequency order.
std::vector<Character> enumerate_dual(const GroupSpec &g, std::uint64_t cap = kDefaultEnumerationCap);

/// |gamma(x) - 1| = 2 |sin(pi m / q)|, evaluated on the reduced phase so that
/// the result for x and -x is bitwise identical.
double character_distance(const Character &c, const GroupElement &x);

/// Distance for a raw phase numerator m modulo q.
double phase_distance(std::uint64_t m, std::uint64_t q) noexcept;

/// exp(2 pi i m / q) with m reduced to the nearest octant-friendly angle.
Complex unit_root(std::uint64_t m, std::uint64_t q) noexcept;

/// Table of exp(2 pi i m / q) for m in [0, q).
std::vector<Complex> unit_root_table(std::uint64_t q);

/// Sorted, duplicate-free set of elements of one group.
class ElementSet {
public:
    ElementSet(GroupSpec group, std::vector<Index> members);
    explicit ElementSet(GroupSpec group) : group_(group) {}

    static ElementSet whole(const GroupSpec &g);

    const GroupSpec &group() const noexcept { return group_; }
    const std::vector<Index> &members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Index x) const noexcept;
    double density() const noexcept
    {
        return static_cast<double>(members_.size()) / static_cast<double>(group_.order());
    }
    /// Dense membership mask indexed by element.
    std::vector<char> mask() const;

    ElementSet negated() const;
    ElementSet translated(Index t) const;
    bool is_subset_of(const ElementSet &other) const;

    friend bool operator==(const ElementSet &, const ElementSet &) = default;

private:
    GroupSpec group_;
    std::vector<Index> members_;
};

/// Exact sumset X + Y inside the group.
ElementSet group_sumset(const ElementSet &x, const ElementSet &y);
/// Exact difference set X - Y inside the group.
ElementSet group_difference(const ElementSet &x, const ElementSet &y);

} // namespace sumsetlab
