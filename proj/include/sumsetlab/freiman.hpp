#pragma once

#include "sumsetlab/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sumsetlab {

/// Nonempty sorted set of distinct integers.
class IntSet {
public:
    explicit IntSet(std::vector<std::int64_t> elements);
    IntSet(std::initializer_list<std::int64_t> elements) : IntSet(std::vector<std::int64_t>(elements)) {}
    /// {lo, lo+1, ..., hi}.
    static IntSet interval(std::int64_t lo, std::int64_t hi);

    const std::vector<std::int64_t> &elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    std::int64_t min() const noexcept { return elements_.front(); }
    std::int64_t max() const noexcept { return elements_.back(); }
    bool contains(std::int64_t x) const noexcept;

    IntSet negated() const;
    IntSet translated(std::int64_t t) const;

    friend bool operator==(const IntSet &, const IntSet &) = default;

private:
    std::vector<std::int64_t> elements_;
};

/// Default limit on |X|*|Y| for one sumset.
inline constexpr std::uint64_t kSumsetPairCap = 200'000'000;

IntSet sumset(const IntSet &x, const IntSet &y, std::uint64_t pair_cap = kSumsetPairCap);
IntSet difference(const IntSet &x, const IntSet &y, std::uint64_t pair_cap = kSumsetPairCap);
/// kA - kA + kB - kB.
IntSet iterated_combination(const IntSet &a, const IntSet &b, unsigned k, std::uint64_t pair_cap = kSumsetPairCap);
/// kA_1 - kA_1 + ... + kA_m - kA_m.
IntSet iterated_combination(std::span<const IntSet> sets, unsigned k, std::uint64_t pair_cap = kSumsetPairCap);

struct DoublingStats {
    std::uint64_t sumset_size = 0;
    Rational k_a; // |A+B| / |A|
    Rational k_b; // |A+B| / |B|
};

DoublingStats doubling_stats(const IntSet &a, const IntSet &b);

struct PlunneckeQuantities {
    std::uint64_t actual = 0; // |2A-2A+2B-2B|
    Rational k;               // |A+B| / min(|A|, |B|)
    double bound = 0.0;       // K^11 |B|
    double slack = 0.0;       // bound - actual
    bool pass = false;
};

PlunneckeQuantities plunnecke_quantities(const IntSet &a, const IntSet &b);

struct XiChoice {
    Rational xi;
    std::uint64_t modulus = 0;
    std::uint64_t d_size = 0;          // |D|
    std::uint64_t interval_count = 0;  // excluded intervals after clipping to [0, N]
    Rational excluded_total;           // sum of clipped interval lengths (= |D| - 1)
    double excluded_union = 0.0;       // measure of their union
    Rational gap_lo, gap_hi;           // the largest uncovered gap; xi is its midpoint
};

/// Default limit on the number of excluded intervals swept by choose_xi.
inline constexpr std::uint64_t kIntervalCap = 20'000'000;

/// Picks xi in [0, N] avoiding (dN + (-1, 1)) / t for every positive t in D
/// and d in {0..t}, as the midpoint of the largest uncovered gap (leftmost
/// on ties). Requires N >= |D|.
XiChoice choose_xi(const IntSet &d, std::uint64_t modulus, std::uint64_t interval_cap = kIntervalCap);
XiChoice choose_xi(const IntSet &a, const IntSet &b, unsigned k, std::uint64_t modulus,
                   std::uint64_t interval_cap = kIntervalCap);

struct IsoCounterexample {
    std::string direction; // "forward", "forward-integer", "backward"
    // Left and right tuples, grouped by set: k entries per set.
    std::vector<std::vector<std::int64_t>> lhs;
    std::vector<std::vector<std::int64_t>> rhs;
};

struct IsoCheck {
    bool ok = false;
    bool exhaustive = true;        // false when the state cap forced random sampling
    bool forward_integer = false;  // equal sums give equal lifted sums as integers
    bool well_defined = false;     // psi(a+b) = phi(a)+phi(b) is a function on A'+B'
    double tuple_count = 0.0;      // number of (lhs, rhs) tuple pairs the check covers
    std::uint64_t states = 0;      // distinct (sum, lifted sum) pairs
    std::optional<IsoCounterexample> counterexample;
};

/// Default limit on distinct (sum, lifted-sum) states before falling back to sampling.
inline constexpr std::uint64_t kIsoStateCap = 10'000'000;

/// Checks that for tuples of k elements from each set on both sides,
///   sum of elements equal  <=>  sum of phi values congruent mod N.
/// `lift` gives an integer representative of phi on the union of the sets.
/// Enumerates every reachable (sum, lifted sum) pair with back-pointers, which
/// decides the statement for all tuples at once.
IsoCheck verify_k_isomorphism(const std::map<std::int64_t, std::int64_t> &lift, std::span<const IntSet> sets,
                              unsigned k, std::uint64_t modulus, std::uint64_t state_cap = kIsoStateCap,
                              std::uint64_t seed = 0);
IsoCheck verify_k_isomorphism(const std::map<std::int64_t, std::int64_t> &lift, const IntSet &a, const IntSet &b,
                              unsigned k, std::uint64_t modulus, std::uint64_t state_cap = kIsoStateCap,
                              std::uint64_t seed = 0);

struct EmbeddingCertificate {
    XiChoice choice;
    unsigned k = 2;
    std::uint64_t modulus = 0;
    std::vector<unsigned> bands;                    // selected band index (1-based) per input set
    std::vector<std::vector<std::size_t>> band_sizes;
    std::vector<IntSet> subsets;                    // A', B', ...
    std::map<std::int64_t, std::int64_t> lift;      // floor(xi a)
    std::map<std::int64_t, std::uint64_t> phi;      // floor(xi a) mod N
    IsoCheck check;
    bool verified = false;

    const IntSet &a_prime() const { return subsets.at(0); }
    const IntSet &b_prime() const { return subsets.at(1); }
    unsigned band_r() const { return bands.at(0); }
    unsigned band_s() const { return bands.at(1); }
};

/// Model embedding of A and B: picks xi, splits each set into 2k bands of
/// {xi a}, keeps the largest band of each (lowest index on ties), and verifies
/// the resulting map is a Freiman k-isomorphism into Z/N.
EmbeddingCertificate embed_pair(const IntSet &a, const IntSet &b, unsigned k, std::uint64_t modulus);

/// Same for m sets with m*k bands.
EmbeddingCertificate embed_many(std::span<const IntSet> sets, unsigned k, std::uint64_t modulus);

} // namespace sumsetlab
