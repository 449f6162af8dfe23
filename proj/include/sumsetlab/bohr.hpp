#pragma once

#include "sumsetlab/fourier.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/progression.hpp"

#include <memory>
#include <span>
#include <vector>

namespace sumsetlab {

/// Bohr(Gamma, delta) = { x : |gamma(x) - 1| <= delta for all gamma in Gamma }.
/// The principal character is dropped from Gamma (it never constrains
/// membership), so rank() counts only non-principal frequencies.
class BohrDescriptor {
public:
    BohrDescriptor(GroupSpec group, std::vector<Index> frequencies, double delta);
    BohrDescriptor(GroupSpec group, std::span<const Character> characters, double delta);

    const GroupSpec &group() const noexcept { return group_; }
    const std::vector<Index> &frequencies() const noexcept { return frequencies_; }
    double delta() const noexcept { return delta_; }
    std::size_t rank() const noexcept { return frequencies_.size(); }
    std::vector<Character> characters() const;

    bool contains(Index x) const noexcept;
    /// Exact member list, computed once by scanning the group and shared
    /// between copies of the descriptor.
    const std::vector<Index> &members(std::uint64_t cap = kDefaultEnumerationCap) const;

private:
    struct Cache;

    GroupSpec group_;
    std::vector<Index> frequencies_;
    double delta_;
    std::shared_ptr<Cache> cache_;
};

ElementSet materialize(const BohrDescriptor &b, std::uint64_t cap = kDefaultEnumerationCap);

struct SizeBoundCheck {
    std::uint64_t actual = 0;
    double bound = 0.0; // (delta / 2 pi)^d |G|
    bool pass = false;
};

/// Compares |T| with (delta/2pi)^d |G|. The inequality always holds, so this must
/// always pass.
SizeBoundCheck size_bound_check(const BohrDescriptor &b);

/// floor(delta N^(1/d) / 2 pi), the progression length a rank-d Bohr set in
/// Z/N (N prime) is guaranteed to contain; N itself when d = 0.
std::uint64_t ap_length_guarantee(double delta, std::uint64_t modulus, std::size_t rank);

/// Longest centred progression {j u : |j| <= L} inside a Bohr set of Z/N, N
/// prime. Each step u is scored with L = floor(delta / max_gamma |gamma(u)-1|)
/// from the triangle inequality, then extended while the next term still lies
/// in the set. Ties go to the smallest step. Never shorter than {0}.
ProgressionWitness find_ap_in_bohr(const BohrDescriptor &b);

/// Annihilator subspace of the frequencies in F_p^n. Requires delta below
/// |exp(2 pi i/p) - 1| whenever Gamma is nonempty, which makes the Bohr set
/// exactly that subspace. The witness is verified element by element.
ProgressionWitness find_subspace_in_bohr(const BohrDescriptor &b);

// Linear algebra over F_p on element indices of a vector group.

/// Rank of the given vectors.
std::size_t rank_mod_p(const GroupSpec &g, std::span<const Index> vectors);
/// Basis of { x : <r, x> = 0 for all r in frequencies }, in reduced echelon form.
std::vector<Index> annihilator_basis(const GroupSpec &g, std::span<const Index> frequencies);
/// All p^|basis| elements of span(basis), as base + combinations.
std::vector<Index> span_elements(const GroupSpec &g, Index base, std::span<const Index> basis);

struct LargeSpectrum {
    GroupSpec group;
    double threshold = 0.0;
    std::vector<Index> frequencies; // canonical order, principal included when large
    std::vector<double> magnitudes; // |f^(gamma)| for each frequency
};

/// { gamma : |f^(gamma)| >= threshold }.
LargeSpectrum large_spectrum(const GroupFunction &f, double threshold);

inline constexpr std::size_t kMaxDissociatedRank = 14;

/// Exhaustive check over all 3^m - 1 nonzero {-1,0,1} sign vectors.
bool is_dissociated(const GroupSpec &g, std::span<const Index> frequencies);

struct ChangReduction {
    double threshold = 0.0;
    std::vector<Index> spectrum;                 // Gamma without the principal character
    std::vector<Index> basis;                    // Lambda, in insertion order
    std::vector<std::vector<int>> certificates;  // signs over Lambda expressing each spectrum entry
    double tau = 1.0;
    double delta = 0.0;
    double reduced_radius = 0.0;                 // delta / |Lambda| (delta when Lambda is empty)
    double rank_bound = 0.0;                     // C_chang log(1/tau), reported only
    BohrDescriptor reduced;
};

/// Greedy dissociated basis of Gamma: entries are visited by decreasing
/// magnitude (ties by frequency) and kept iff the basis stays dissociated.
/// Every rejected entry is a {-1,0,1}-combination of the basis, recorded as
/// its certificate, so Bohr(Lambda, delta/|Lambda|) lies inside Bohr(Gamma, delta).
ChangReduction chang_reduce(const LargeSpectrum &gamma, double delta, double tau, double c_chang = 1.0);
/// Overload for an unweighted frequency set (canonical visiting order).
ChangReduction chang_reduce(const GroupSpec &g, std::vector<Index> gamma, double delta, double tau,
                            double c_chang = 1.0);

bool verify_span_certificates(const GroupSpec &g, const ChangReduction &c);

struct ContainmentCheck {
    bool contained = false;
    std::uint64_t reduced_size = 0;
    std::uint64_t original_size = 0;
};

/// Materializes Bohr(Lambda, delta/|Lambda|) and Bohr(Gamma, delta) and checks inclusion.
ContainmentCheck verify_chang_containment(const GroupSpec &g, const ChangReduction &c);

} // namespace sumsetlab
