#include "sumsetlab/progression.hpp"

#include "sumsetlab/bohr.hpp"
#include "sumsetlab/error.hpp"

namespace sumsetlab {

ProgressionWitness ProgressionWitness::integer(std::int64_t base, std::int64_t step, std::uint64_t length)
{
    if (length == 0)
        throw InvalidArgument("progression length must be positive");
    ProgressionWitness w;
    w.ambient = Ambient::integers;
    w.base = base;
    w.step = step;
    w.length = length;
    return w;
}

ProgressionWitness ProgressionWitness::cyclic(const GroupSpec &g, Index base, Index step, std::uint64_t length)
{
    if (!g.is_cyclic())
        throw GroupMismatch("cyclic progression in " + g.to_string());
    if (length == 0 || length > g.order())
        throw InvalidArgument("progression length must lie in [1, N]");
    ProgressionWitness w;
    w.ambient = Ambient::cyclic;
    w.group = g;
    w.base = static_cast<std::int64_t>(base % g.order());
    w.step = static_cast<std::int64_t>(step % g.order());
    w.length = length;
    return w;
}

ProgressionWitness ProgressionWitness::subspace(const GroupSpec &g, Index base, std::vector<Index> basis)
{
    if (!g.is_vector())
        throw GroupMismatch("subspace witness in " + g.to_string());
    ProgressionWitness w;
    w.ambient = Ambient::vector_space;
    w.group = g;
    w.base = static_cast<std::int64_t>(base);
    w.step = 0;
    w.length = 1;
    for (std::size_t i = 0; i < basis.size(); ++i)
        w.length *= g.modulus();
    w.basis = std::move(basis);
    return w;
}

std::vector<std::int64_t> ProgressionWitness::integer_elements() const
{
    if (ambient != Ambient::integers)
        throw InvalidArgument("not an integer progression");
    std::vector<std::int64_t> out(length);
    for (std::uint64_t j = 0; j < length; ++j)
        out[j] = base + static_cast<std::int64_t>(j) * step;
    return out;
}

std::vector<Index> ProgressionWitness::group_elements() const
{
    if (ambient == Ambient::integers || !group)
        throw InvalidArgument("not a group progression");
    const auto &g = *group;
    if (ambient == Ambient::vector_space)
        return span_elements(g, static_cast<Index>(base), basis);
    std::vector<Index> out(length);
    Index x = static_cast<Index>(base);
    for (std::uint64_t j = 0; j < length; ++j) {
        out[j] = x;
        x = g.add(x, static_cast<Index>(step));
    }
    return out;
}

const char *to_string(ProgressionWitness::Ambient a) noexcept
{
    switch (a) {
    case ProgressionWitness::Ambient::integers:
        return "integers";
    case ProgressionWitness::Ambient::cyclic:
        return "cyclic";
    case ProgressionWitness::Ambient::vector_space:
        return "vector";
    }
    return "unknown";
}

} // namespace sumsetlab
