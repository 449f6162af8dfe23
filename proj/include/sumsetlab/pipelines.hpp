#pragma once

#include "sumsetlab/bohr.hpp"
#include "sumsetlab/fourier.hpp"
#include "sumsetlab/freiman.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/progression.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumsetlab {

/// The unnamed absolute constants, with calibrated defaults.
struct ConstantsConfig {
    double C_sample = 4.0;      // k = ceil(C_sample p / eps^2)
    double C_p = 1.0;           // multiplier in the choice of the exponent p
    double c_eps = 1.0 / 3.0;   // sampling accuracy and Bohr radius as fractions of eps
    double C_chang = 1.0;       // rank bound C_chang log(1/tau), reported only
    double C_bohr_radius = 5.0; // delta = eps / (C_bohr_radius sqrt(K_A)) in the bootstrap
    unsigned retries = 3;       // fresh-seed attempts before shrinking P

    /// Throws InvalidArgument unless every constant is strictly positive.
    void validate() const;
};

/// Which quantity scales epsilon in an almost-periodicity inequality.
struct ReferenceNorm {
    enum class Kind { spectral_l1, half_energy, explicit_value };

    Kind kind = Kind::spectral_l1;
    double value = 0.0; // used by explicit_value

    static ReferenceNorm spectral() { return {Kind::spectral_l1, 0.0}; }
    /// ||f||_{p/2}^{1/2}.
    static ReferenceNorm energy() { return {Kind::half_energy, 0.0}; }
    static ReferenceNorm fixed(double v) { return {Kind::explicit_value, v}; }
};

const char *to_string(ReferenceNorm::Kind k) noexcept;

/// Value of the reference norm for f.
double reference_value(const GroupFunction &f, double p, const ReferenceNorm &ref);

/// ||f(. + t) - f||_{L^p}, evaluated at the smaller of t and -t so that the
/// value is identical for both.
double symmetric_translate_distance(const GroupFunction &f, Index t, double p);

struct PeriodicityReport {
    BohrDescriptor T;
    double p = 2.0;
    double epsilon = 0.0;
    ReferenceNorm::Kind reference_kind = ReferenceNorm::Kind::spectral_l1;
    double reference = 0.0;
    double max_distance = 0.0; // max over t in T of the translate distance
    std::uint64_t t_size = 0;
    std::size_t samples = 0;   // characters drawn (0 when T came from elsewhere)
    bool pass = false;         // max_distance <= epsilon * reference
};

/// Samples f / ||f^||_1 by characters at accuracy c_eps*eps, takes T as their
/// Bohr set of radius c_eps*eps, and checks every t in T exhaustively.
PeriodicityReport almost_period_bohr(const GroupFunction &f, double p, double epsilon, std::uint64_t seed,
                                     const ConstantsConfig &cfg = {});

/// { t : ||f(. + t) - f||_{L^p} <= eps * reference }; contains 0 and is symmetric.
ElementSet brute_force_almost_periods(const GroupFunction &f, double p, double epsilon, const ReferenceNorm &ref);

/// Largest L with L * dmax^p < ||f||_p^p, capped at `limit`: a progression P
/// of that many almost-periods always has a translate inside supp f.
std::uint64_t certified_length(const GroupFunction &f, double p, double dmax, std::uint64_t limit);

struct BootstrapReport {
    PeriodicityReport periodicity;
    double k_a = 0.0;        // |A+B| / |A|
    double k_b = 0.0;        // |A+B| / |B|
    double delta = 0.0;      // eps / (C_bohr_radius sqrt(K_A))
    unsigned k = 0;          // ceil(ln(2/delta))
    bool oracle_x = false;
    std::uint64_t x_size = 0;
    double tau = 0.0;        // |X| / |G|
    double smoothing_error = 0.0; // ||f * mu_X^(k) - f||_p
    std::size_t gamma_size = 0;   // |Gamma| including the principal character
    ChangReduction chang;
    bool dissociated = false;
    bool spans_verified = false;
    bool containment_verified = false;
    double implied_radius_constant = 0.0; // c with radius = c eps / (d sqrt(K_A))

    bool certificates_ok() const noexcept { return dissociated && spans_verified && containment_verified; }
};

/// Bohr set of almost-periods for mu_A * 1_B obtained by smoothing with
/// mu_X^(k) and reducing the large spectrum of mu_X with a dissociated basis.
/// Without X, the brute-force set at eps*c_eps with the energy reference is used.
BootstrapReport bootstrap_strong_lp(const ElementSet &a, const ElementSet &b, double p, double epsilon,
                                    const std::optional<ElementSet> &x, std::uint64_t seed,
                                    const ConstantsConfig &cfg = {});

struct ProgressionReport {
    ProgressionWitness witness;       // in the integers, or a subspace translate
    ProgressionWitness model_witness; // x + P in the model group
    std::uint64_t modulus = 0;        // order of the model group
    double alpha = 0.0, beta = 0.0;   // densities in the model group
    double k_a = 0.0, k_b = 0.0;      // doubling constants in the model group
    bool swapped = false;             // A and B exchanged so that K_B <= K_A
    double epsilon = 0.0;
    double p = 2.0;
    std::uint64_t found_length = 0;   // |P| available in T
    std::uint64_t cap_exp = 0;        // floor(e^p)
    std::uint64_t cap_certified = 0;  // from the measured translate distances
    unsigned attempts = 0;
    unsigned shrinks = 0;
    std::uint64_t attempt_seed = 0;   // seed of the successful attempt
    std::optional<PeriodicityReport> periodicity;
    std::optional<BootstrapReport> bootstrap;
    std::optional<EmbeddingCertificate> embedding;
    double holder_lhs = 0.0, holder_rhs = 0.0; // ||f||_{p/2} and ||f||_1 / mu(A+B)^{1-2/p}
    bool holder_ok = true;
    std::vector<std::int64_t> subset;  // 7.3 only: the translated subset of V, as element indices
    double subset_bound = 0.0;         // 7.3 only: exp(alpha (log 2/beta)^-3 d)
};

/// Integer progression in A+B for A, B subsets of {1..N}, via Z/N' with N'
/// the least prime >= 4N. Throws NotFound when no translate of P survives.
ProgressionReport find_progression_dense(const IntSet &a, const IntSet &b, std::uint64_t n, std::uint64_t seed,
                                         const ConstantsConfig &cfg = {});

/// Integer progression in A+B through a Freiman 2-isomorphic model in Z/N.
ProgressionReport find_progression_small_doubling(const IntSet &a, const IntSet &b, std::uint64_t seed,
                                                  const ConstantsConfig &cfg = {});

enum class FiniteFieldVariant { green, improved, subset };

const char *to_string(FiniteFieldVariant v) noexcept;
FiniteFieldVariant parse_finite_field_variant(const std::string &s);

/// Translate of a subspace inside A+B in F_p^n. For `subset`, V is the
/// subspace annihilated by the bootstrap's basis, the translated set is
/// `subset` (all of V when not given) and witness.verified refers to x + subset.
ProgressionReport finite_field_translate(const ElementSet &a, const ElementSet &b, FiniteFieldVariant variant,
                                         std::uint64_t seed, const ConstantsConfig &cfg = {},
                                         const std::optional<std::vector<Index>> &subset = std::nullopt);

struct BogolyubovReport {
    BootstrapReport bootstrap;
    double k = 0.0;            // |A+A| / |A|
    double alpha = 0.0;
    std::uint64_t t_size = 0;
    std::uint64_t inequality_failures = 0; // t with |mu_{-A}*mu_A*1_{A-A}(t) - 1| >= 1
    std::uint64_t outside = 0;             // t in T outside 2A-2A
    std::uint64_t false_containments = 0;  // t passing the inequality yet outside 2A-2A
    bool contained = false;                // T inside 2A-2A
    double max_deviation = 0.0;            // max over T of |mu_{-A}*mu_A*1_{A-A}(t) - 1|
    double radius = 0.0;
    std::size_t rank = 0;
    double radius_shape = 0.0; // alpha^{1/2}
    double rank_shape = 0.0;   // (log 1/alpha)^4
};

BogolyubovReport bogolyubov_bohr(const ElementSet &a, std::uint64_t seed, const ConstantsConfig &cfg = {});

struct LongestAp {
    std::int64_t base = 0;
    std::int64_t step = 0; // 0 for a single element
    std::uint64_t length = 0;
};

inline constexpr std::uint64_t kOracleBudget = 400'000'000;

/// Longest AP inside a set of integers; ties go to the smallest step, then base.
LongestAp longest_ap_oracle(const IntSet &s, std::uint64_t budget = kOracleBudget);
/// Same inside Z/N, where an AP has at most N distinct terms.
LongestAp longest_ap_oracle(const ElementSet &s, std::uint64_t budget = kOracleBudget);

struct BoundInputs {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<double> ns;
    std::optional<double> k_a; // defaults to 2/alpha
    std::optional<double> k_b; // defaults to 2/beta
    double c = 1.0;
    double C = 1.0;
    double epsilon = 0.5; // for the radius bound
    double p = 2.0;
};

struct BoundRow {
    double alpha = 0.0, beta = 0.0, n = 0.0, k_a = 0.0, k_b = 0.0;
    // Natural logs of the progression length bounds.
    double log_green = 0.0;     // c sqrt(alpha beta log N) - log log N
    double log_improved = 0.0;  // c sqrt(alpha log N / (log 2/beta)^3) - log(log N / beta)
    double log_doubling = 0.0;  // with |A| = alpha N and |A+B| = K_A |A|
    double radius_delta = 0.0;  // c eps sqrt(alpha/beta) K_B^{-1/p}
    double radius_rank = 0.0;   // C p log(1/delta)^2 eps^-2 log(2 K_A) + C log(1/alpha)
    double radius = 0.0;        // delta / d
    bool improved_exceeds_green = false;
};

struct Crossover {
    double beta = 0.0, n = 0.0;
    std::optional<double> alpha_min; // smallest alpha in the grid where the improved bound wins
    std::optional<double> alpha_max;
};

struct BoundTable {
    std::vector<BoundRow> rows;
    std::vector<Crossover> crossovers;
};

BoundTable bound_table(const BoundInputs &in);

} // namespace sumsetlab
