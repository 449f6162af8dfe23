#pragma once

#include "sumsetlab/groups.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sumsetlab {

/// An arithmetic progression {base + j*step : 0 <= j < length} in the integers
/// or in Z/N, or an affine subspace base + span(basis) in F_p^n.
struct ProgressionWitness {
    enum class Ambient { integers, cyclic, vector_space };

    Ambient ambient = Ambient::integers;
    std::optional<GroupSpec> group;
    std::int64_t base = 0; // integer value, or element index for group ambients
    std::int64_t step = 1; // element index for cyclic ambients
    std::uint64_t length = 1;
    std::vector<Index> basis;
    bool verified = false;

    static ProgressionWitness integer(std::int64_t base, std::int64_t step, std::uint64_t length);
    static ProgressionWitness cyclic(const GroupSpec &g, Index base, Index step, std::uint64_t length);
    static ProgressionWitness subspace(const GroupSpec &g, Index base, std::vector<Index> basis);

    unsigned dimension() const noexcept { return static_cast<unsigned>(basis.size()); }
    std::vector<std::int64_t> integer_elements() const;
    /// Elements of a cyclic progression or an affine subspace, in generation order.
    std::vector<Index> group_elements() const;
};

const char *to_string(ProgressionWitness::Ambient a) noexcept;

} // namespace sumsetlab
