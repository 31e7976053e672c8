#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lindyn/sampled.hpp"
#include "lindyn/shifts.hpp"
#include "lindyn/sparse_seq.hpp"
#include "lindyn/weight.hpp"

namespace lindyn {

struct DensityEstimate {
    double value = 0.0;
    std::int64_t argmin = 0; // m in [horizon/2, horizon] realizing the minimum
    std::int64_t horizon = 0;
};

/// Desk proxy for liminf_N #(A cap [1, N]) / N: min over m in [horizon/2, horizon]
/// of #{a in A : a <= m} / m, minimized in exact integer arithmetic. The set is a
/// strictly increasing list of positive integers.
DensityEstimate lower_density(const std::vector<std::int64_t>& a, std::int64_t horizon);

/// Same proxy with Lebesgue measure over disjoint intervals inside [0, horizon].
double continuous_lower_density(std::vector<std::pair<double, double>> intervals,
                                double horizon);

/// Materialized prefixes of frequency sets E_p with their constants M(p).
struct FrequencySets {
    std::vector<std::vector<std::int64_t>> E; // E[p-1], strictly increasing, >= 1
    std::vector<double> M;                    // M[p-1] = M(p)
    std::int64_t horizon = 0;

    int p_max() const { return static_cast<int>(E.size()); }
    void validate() const;
};

/// Congruence-class family E_p = {n = p * spacing (mod spacing * (p_max + 1))}
/// materialized up to the horizon. Generation re-verifies its own claims
/// (residues distinct, inter-set gap >= spacing, positive density at horizon)
/// and fails with a generation error when the horizon cannot support them.
FrequencySets generate_frequency_sets(int p_max, std::int64_t horizon, std::int64_t spacing,
                                      std::vector<double> M);

struct ConditionVerdict {
    bool holds = false;
    std::vector<std::string> witnesses; // capped at kMaxWitnesses
    std::size_t violation_count = 0;
};

inline constexpr std::size_t kMaxWitnesses = 25;

struct ShiftFhParams {
    double min_density = 0.0;    // (a): require density proxy strictly above this
    double growth_factor = 10.0; // (c): last-quartile min over first-quartile max
    double growth_floor = 100.0; // (c): terminal b_s^n must reach this
};

/// Conditions (a)-(d) for frequent universality of a pseudo-shift family,
/// checked exhaustively on the materialized prefixes.
struct ShiftFhReport {
    std::vector<DensityEstimate> densities;
    ConditionVerdict density, separation, growth, domination;
    std::int64_t horizon = 0;
    bool consistent() const {
        return density.holds && separation.holds && growth.holds && domination.holds;
    }
    std::string verdict() const {
        return consistent() ? "consistent-at-horizon" : "refuted-at-horizon";
    }
};

ShiftFhReport check_pseudo_shift_fh(const PseudoShift& T, const FrequencySets& fs,
                                    const ShiftFhParams& params = {});

struct C0FhParams {
    double min_density = 0.0;
    double decay_tol = 1e-6;  // (c): last-quartile max of rho(n) must fall below
    double ratio_cap = 1e12;  // hypothesis guard on sup rho(k+1)/rho(k)
};

/// Conditions (a)-(d) for the translation semigroup on weighted vanishing
/// functions, in weight form: separation of shifted prefixes, decay of rho along
/// E_p, and rho(m - n) <= 1 / (M(p) M(q)). Also spot-checks the step bound
/// rho(k + n) <= M^|k| rho(n) with the fitted ratio constant.
struct C0FhReport {
    double fitted_ratio = 0.0;
    std::vector<DensityEstimate> densities;
    ConditionVerdict density, separation, decay, domination, step_bound;
    std::int64_t horizon = 0;
    bool consistent() const {
        return density.holds && separation.holds && decay.holds && domination.holds &&
               step_bound.holds;
    }
    std::string verdict() const {
        return consistent() ? "consistent-at-horizon" : "refuted-at-horizon";
    }
};

C0FhReport check_c0_translation_fh(const Weight& rho, const FrequencySets& fs,
                                   std::int64_t horizon, const C0FhParams& params = {});

/// Record of one vector construction: the growth-filtered sets E_p', the thinned
/// sets G_p, and the measured orbit errors against their guaranteed bounds.
struct ConstructionTrace {
    std::vector<double> alpha; // canonical amplitude ladder (recorded for extraction)
    std::vector<double> psi;   // psi[p-1] = max |g| over W_p
    std::vector<std::int64_t> stride;
    std::vector<std::vector<std::int64_t>> E_prime;
    std::vector<std::vector<std::int64_t>> G;
    std::vector<double> target_norm;
    std::vector<double> orbit_error;       // max over n in G_p of ||T_n x - y^p||
    std::vector<double> orbit_error_bound; // R^-p
    std::size_t support_size = 0;
    double max_log_entry = 0.0; // log of the largest |x_i|
    std::int64_t horizon = 0;
};

struct FhVector {
    LogSeq x;
    ConstructionTrace trace;
};

/// Builds the frequently-hypercyclic candidate x with x_{phi_n(s)} = y^p(s) / b_s^n
/// over n in G_p. Requires M(p) >= R^(4p), supp(y^p) inside W_p and ||y^p|| < R^p.
/// Entries are kept in log scale; a double assignment to one index reports an
/// inconsistency (it certifies a violated separation hypothesis), and an empty
/// G_p reports a horizon error.
FhVector construct_fh_vector(const PseudoShift& T, const FrequencySets& fs,
                             const std::vector<SparseSeq>& targets, std::int64_t horizon);

/// Default target ladder: y^p = R^(p-1) times the indicator of W_{p-1}, which
/// keeps supp(y^p) inside W_p with ||y^p|| = R^(p-1) < R^p.
std::vector<SparseSeq> default_dense_targets(const PseudoShift& T, int p_max);

/// sup_i |(T_n x)_i - y_i| over the union of supports.
double orbit_distance(const PseudoShift& T, const LogSeq& x, std::int64_t n,
                      const SparseSeq& y);

struct ExtractionParams {
    int p_max = 3;
    std::int64_t horizon = 0;
    std::vector<double> alpha; // empty: canonical ladder 2, 4 a R^(2 psi) + 1, ...
    int threads = 1;
};

/// Frequency sets recovered from an orbit: F_p collects the times whose orbit
/// point sits within 1/p of alpha_p times the indicator of W_p, E_p thins F_p by
/// the stride 2 floor(psi(p)) + 3, and M(p) = p. The two-sided estimate
/// alpha_p / 2 <= |b_s^n x_{phi_n(s)}| < 2 alpha_p is re-verified on the result.
struct ExtractionResult {
    FrequencySets sets;
    std::vector<std::vector<std::int64_t>> F;
    std::vector<double> alpha;
    std::vector<double> psi;
    std::vector<DensityEstimate> densities;
    std::size_t claim_violations = 0;
    std::string first_violation;
    bool all_nonempty = false;
    std::string verdict() const {
        if (claim_violations > 0) return "estimate-violated";
        return all_nonempty ? "recovered-at-horizon" : "not-witnessed-at-horizon";
    }
};

ExtractionResult extract_frequency_sets(const PseudoShift& T, const LogSeq& x,
                                        const ExtractionParams& params);

struct SeriesTrial {
    std::vector<std::int64_t> F;
    double norm_backward = 0.0; // || sum_{n in F} f(. + n) ||
    double norm_forward = 0.0;  // || sum_{n in F} f(. - n) ||
};

/// Random finite sums of translates past the eps-threshold: every sampled
/// || sum_{n in F} T_1^n f ||, and the forward-shift mirror, must stay below
/// 2 eps. Thresholds are the first times past which sup_x |f(x)| rho(x -+ t)
/// stays below eps up to the horizon; absent thresholds force a refutation.
struct SeriesCheckReport {
    std::optional<std::int64_t> threshold_backward, threshold_forward;
    double bound = 0.0; // 2 eps
    double max_norm_backward = 0.0, max_norm_forward = 0.0;
    std::size_t trials = 0, violations = 0;
    std::optional<SeriesTrial> witness;
    double eps = 0.0;
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
    bool bounded = false;
    std::string verdict() const { return bounded ? "bounded-at-horizon" : "refuted-at-horizon"; }
};

SeriesCheckReport check_unconditional_series(const SampledFunction& f, const Weight& rho,
                                             int trials, std::int64_t horizon, double eps,
                                             std::uint64_t seed);

} // namespace lindyn
