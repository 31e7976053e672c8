// Acceptance gate: one self-contained check per release criterion, each printing a
// single PASS/FAIL line. Tolerances are pinned here, not read from anywhere else.
// Exit status is the number of failing criteria clamped to 1.

#include <lindyn/conjugacy.hpp>
#include <lindyn/dyadic.hpp>
#include <lindyn/freqdyn.hpp>
#include <lindyn/sampled.hpp>
#include <lindyn/shifts.hpp>
#include <lindyn/sparse_seq.hpp>
#include <lindyn/weight.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace lindyn;
using Clock = std::chrono::steady_clock;

constexpr double kTinyTol = 1e-12;       // float-noise allowance on exact identities
constexpr double kLpSumTol = 1e-6;       // partial sum vs closed form
constexpr double kDiscretizeSlack = 1e-9;
constexpr double kOrbitNear = 0.1;       // "orbit visits the target" threshold
constexpr double kDensityFactor = 0.9;   // recovered density vs planted density
constexpr double kRoundTripBudget = 5.0; // seconds
constexpr double kDiagramBudget = 10.0;  // seconds
constexpr double kOrbitScanBudget = 60.0; // seconds

int failures = 0;

void report(int idx, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, what.c_str());
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Basis round trips reproduce dyadic-valued samples bit for bit.
void criterion_1() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<std::int64_t> pick(-4096, 4096);
    bool exact = true;
    for (int trial = 0; trial < 200 && exact; ++trial) {
        SampledFunction f = SampledFunction::zero(-8, 8, 8);
        for (double& v : f.values) v = std::ldexp(static_cast<double>(pick(rng)), -12);
        const SparseSeq a = schauder_coefficients(f);
        const SampledFunction g = schauder_reconstruct(a, -8, 8, 8);
        if (g.values.size() != f.values.size()) { exact = false; break; }
        for (std::size_t j = 0; j < f.values.size(); ++j)
            if (g.values[j] != f.values[j]) { exact = false; break; }
    }
    const double dt = seconds_since(t0);
    report(1, exact && dt < kRoundTripBudget,
           "200 random dyadic-valued functions round trip through the basis bit for bit (" +
               std::to_string(dt) + " s)");
}

// 2. Single-level coefficient sets reconstruct with sup norm at most twice the
// coefficient sup norm: hats on one level form a partition-of-unity-like family.
void criterion_2() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> level_dist(1, 6);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = level_dist(rng);
        std::uniform_int_distribution<std::int64_t> num_dist(0, (std::int64_t{1} << n) / 2 - 1);
        SparseSeq a(Universe::ZDyadic);
        double amax = 0.0;
        for (std::int64_t k = -4; k <= 4; ++k) {
            const double v = sign_dist(rng) ? 1.0 : -1.0;
            a.set(DyadicIndex::integer(k), v);
            amax = std::max(amax, std::abs(v));
        }
        for (std::int64_t k = -4; k <= 3; ++k) {
            const std::int64_t num = 2 * num_dist(rng) + 1;
            const double v = sign_dist(rng) ? 1.0 : -1.0;
            a.set(DyadicIndex(k, n, num), v);
            amax = std::max(amax, std::abs(v));
        }
        const SampledFunction g = schauder_reconstruct(a, -4, 4, n);
        if (g.sup_norm() > 2.0 * amax + kTinyTol) ++violations;
    }
    report(2, violations == 0,
           "500 single-level coefficient sets reconstruct with sup norm <= 2x coefficient norm");
}

// 3. Analysis: coefficient maps of weighted-sup-bounded functions commute with the
// weighted shift diagram and are bounded by twice the weighted norm.
void criterion_3() {
    const auto t0 = Clock::now();
    const std::vector<Weight> weights = {
        Weight::constant(1.0),
        Weight::exp_abs(1.0).step_normalized(),
        Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized(),
    };
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    bool ok = true;
    for (const Weight& rho : weights) {
        for (int trial = 0; trial < 50 && ok; ++trial) {
            SampledFunction f = SampledFunction::zero(-6, 6, 6);
            for (double& v : f.values) v = sign_dist(rng) ? 1.0 : -1.0;
            const DiagramReport d = verify_analysis_diagram(f, rho, 6, kTinyTol);
            const SparseSeq a = analysis_apply(f, rho, 6);
            const double bound = 2.0 * f.weighted_sup_norm(rho) + kTinyTol;
            if (!d.commutes || sup_norm(a) > bound) ok = false;
        }
        if (!ok) break;
    }
    const double dt = seconds_since(t0);
    report(3, ok && dt < kDiagramBudget,
           "analysis map commutes with the induced shift and is 2-bounded for three step "
           "weights x 50 random functions (" +
               std::to_string(dt) + " s)");
}

// 4. Synthesis: the reverse diagram commutes and the image norm is controlled by the
// step constants of the weight.
void criterion_4() {
    const std::vector<Weight> weights = {
        Weight::constant(1.0),
        Weight::exp_abs(1.0).step_normalized(),
        Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized(),
    };
    const std::vector<DyadicIndex> pool = wn_set(3, Domain::FullLine);
    std::mt19937_64 rng(93);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    bool ok = true;
    for (const Weight& rho : weights) {
        const double B = fit_step_constants(rho, -6.0, 6.0).B;
        for (int trial = 0; trial < 50 && ok; ++trial) {
            SparseSeq a(Universe::ZDyadic);
            for (int j = 0; j < 8; ++j)
                a.set(pool[pick(rng)], sign_dist(rng) ? 1.0 : -1.0);
            const DiagramReport d = verify_synthesis_diagram(a, rho, -6, 6, 6, kTinyTol);
            const SampledFunction g = synthesis_apply(a, rho, -6, 6, 6);
            const double bound = (B + 4.0) * sup_norm(a) + kTinyTol;
            if (!d.commutes || g.weighted_sup_norm(rho) > bound) ok = false;
        }
        if (!ok) break;
    }
    report(4, ok,
           "synthesis map commutes with the induced shift and is step-constant-bounded for "
           "three step weights x 50 random coefficient sets");
}

// 5. Constructed vector: every error stays under its per-level bound, and orbit times
// landing near the first target have lower density comparable to the planted set.
// The scan uses an exact shortcut: the orbit value at index 0 equals the vector entry
// at the integer index n times a positive gain, and the first target has value 1
// there, so times with no such entry are at distance >= 1 and can be skipped.
void criterion_5() {
    const auto t0 = Clock::now();
    const Weight rho = Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized();
    const PseudoShift T = backward_shift_family(rho, Universe::ZDyadic, -64, 64);
    const std::int64_t horizon = 100000;
    const FrequencySets fs =
        generate_frequency_sets(3, horizon, 40, {16.0, 256.0, 4096.0});
    const std::vector<SparseSeq> targets = default_dense_targets(T, 3);
    const FhVector built = construct_fh_vector(T, fs, targets, horizon);

    bool bounds_ok = true;
    for (std::size_t p = 0; p < built.trace.orbit_error.size(); ++p)
        if (built.trace.orbit_error[p] > built.trace.orbit_error_bound[p]) bounds_ok = false;

    std::vector<std::int64_t> visits;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        if (built.x.at(DyadicIndex::integer(n)).is_zero()) continue;
        if (orbit_distance(T, built.x, n, targets[0]) < kOrbitNear) visits.push_back(n);
    }
    const double planted = lower_density(built.trace.G[0], horizon).value;
    const double recovered = visits.empty() ? 0.0 : lower_density(visits, horizon).value;
    const double dt = seconds_since(t0);
    report(5,
           bounds_ok && recovered >= kDensityFactor * planted && dt < kOrbitScanBudget,
           "constructed vector respects every orbit error bound and visits the first target "
           "on a set of comparable lower density (" +
               std::to_string(dt) + " s)");
}

// 6. Frequency-set extraction inverts construction. The dense default targets cannot
// carry the amplitude ladder the extractor scans for (the ladder grows faster than
// the norm budget R^p), so this runs the round trip on a companion vector whose
// targets place ladder values on exhaustion sets at slots chosen so R^slot exceeds
// the ladder value. Extraction must find exactly the planted visit times.
void criterion_6() {
    const Weight rho = Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized();
    const PseudoShift T = backward_shift_family(rho, Universe::ZDyadic, -64, 64);
    const std::int64_t horizon = 100000;

    std::vector<double> alpha = {2.0};
    for (int p = 2; p <= 3; ++p)
        alpha.push_back(4.0 * alpha.back() * std::pow(T.ratio_R, 2.0 * T.psi(p)) + 1.0);

    const int slot_count = 16;
    std::vector<double> M;
    for (int p = 1; p <= slot_count; ++p) M.push_back(std::pow(2.0, 4.0 * p));
    const FrequencySets fs = generate_frequency_sets(slot_count, horizon, 192, M);

    std::vector<SparseSeq> targets(slot_count, SparseSeq(Universe::ZDyadic));
    const int slots[3] = {2, 8, 16};
    for (int j = 0; j < 3; ++j)
        for (const DyadicIndex& s : T.exhaustion(j + 1))
            targets[slots[j] - 1].set(s, alpha[static_cast<std::size_t>(j)]);

    const FhVector built = construct_fh_vector(T, fs, targets, horizon);

    ExtractionParams params;
    params.p_max = 3;
    params.horizon = horizon;
    params.threads = 2;
    const ExtractionResult rec = extract_frequency_sets(T, built.x, params);

    const bool ok = rec.all_nonempty && rec.claim_violations == 0 &&
                    rec.F.size() == 3 && rec.F[0] == built.trace.G[1] &&
                    rec.F[1] == built.trace.G[7] && rec.F[2] == built.trace.G[15] &&
                    rec.verdict() == "recovered-at-horizon";
    report(6, ok,
           "extraction recovers exactly the planted visit times of a companion vector "
           "carrying the amplitude ladder (dense defaults cannot: ladder exceeds the "
           "norm budget)");
}

// 7. Integrable-weight criterion matches the closed form, and unit-cell averaging is
// a contraction into the weighted sequence space up to the step constant.
void criterion_7() {
    const FhLpReport conv = check_fh_lp(Weight::exp_abs(1.0), 100);
    const double closed_form = 1.0 + 2.0 / (std::exp(1.0) - 1.0);
    const bool lp_ok = conv.convergent &&
                       std::abs(conv.partial_sum - closed_form) <= kLpSumTol &&
                       !check_fh_lp(Weight::constant(1.0), 100).convergent;

    const Weight rho = Weight::exp_abs(1.0).step_normalized();
    const double A = fit_step_constants(rho, -6.0, 6.0).A;
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    bool cells_ok = true;
    for (int trial = 0; trial < 100 && cells_ok; ++trial) {
        SampledFunction f = SampledFunction::zero(-6, 6, 3);
        for (double& v : f.values) v = sign_dist(rng) ? 1.0 : -1.0;
        const SparseSeq x = discretize_unit_cells(f);
        for (double p : {1.0, 2.0}) {
            double lhs = 0.0;
            for (const auto& [i, v] : x.entries)
                lhs += std::pow(std::abs(v), p) * rho.eval(static_cast<double>(i.k));
            const double rhs = std::pow(f.weighted_lp_norm(rho, p), p) / A;
            if (lhs > rhs + kDiscretizeSlack) cells_ok = false;
        }
    }
    report(7, lp_ok && cells_ok,
           "integrable weight sums to the closed form and unit-cell averaging contracts "
           "into the weighted sequence space");
}

// 8. The isometry onto the unweighted space intertwines the weighted and plain
// backward shifts.
void criterion_8() {
    const Weight v = Weight::exp_abs(1.0);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> pick(-20, 20);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    bool ok = true;
    for (double p : {1.0, 2.0}) {
        const auto w = lpv_shift_weights(v, p);
        for (int trial = 0; trial < 100 && ok; ++trial) {
            SparseSeq x(Universe::Z);
            for (int j = 0; j < 8; ++j)
                x.set(DyadicIndex::integer(pick(rng)), sign_dist(rng) ? 1.0 : -1.0);
            const SparseSeq lhs = lpv_isometry_apply(v, p, backward_shift_apply(x));
            const SparseSeq rhs = weighted_backward_shift_apply(w, lpv_isometry_apply(v, p, x));
            if (sup_distance(lhs, rhs) > kTinyTol) ok = false;
        }
        if (!ok) break;
    }
    report(8, ok,
           "the weighted-to-plain isometry intertwines backward shifts for p = 1, 2 "
           "across 100 random sequences each");
}

// 9. Randomized unconditional-series check: bounded for a decaying weight, refuted
// with a witness for a flat one.
void criterion_9() {
    const SampledFunction f = SampledFunction::hat(DyadicIndex::integer(0), -2, 2, 4);
    const SeriesCheckReport good =
        check_unconditional_series(f, Weight::exp_abs(1.0), 1000, 64, 1e-3, 11);
    const bool good_ok = good.bounded && good.violations == 0 &&
                         good.threshold_backward.has_value() &&
                         good.threshold_forward.has_value() &&
                         good.max_norm_backward <= good.bound &&
                         good.max_norm_forward <= good.bound;
    const SeriesCheckReport bad =
        check_unconditional_series(f, Weight::constant(1.0), 100, 64, 1e-3, 11);
    const bool bad_ok = !bad.bounded && bad.witness.has_value();
    report(9, good_ok && bad_ok,
           "random finite translate sums stay within 2-eps for a decaying weight and "
           "produce a witness for a flat one");
}

// 10. End-to-end verdicts on a hand-built sawtooth weight on the half line: the dips
// recur too slowly for chaos but the planted frequency sets satisfy every
// translation criterion.
void criterion_10() {
    const std::int64_t horizon = 2000;
    auto S = [](std::int64_t kk) -> std::int64_t {
        if (kk <= 20) return std::min<std::int64_t>(kk, 20 - kk);
        const std::int64_t t = (kk - 20) % 96;
        return std::min<std::int64_t>(t, 96 - t);
    };
    std::vector<double> values = {1.0};
    bool steps_ok = true;
    for (std::int64_t kk = 1; kk <= 2100; ++kk) {
        const double w = std::ldexp(1.0, static_cast<int>(S(kk) - S(kk - 1)));
        if (w < 0.5 || w > 2.0) steps_ok = false;
        values.push_back(w);
    }
    const Weight rho = weight_from_shift_weights(0, values, Domain::HalfLine);

    bool peaks_ok = true;
    for (std::int64_t kk = 20; kk <= horizon; kk += 96)
        if (rho.eval(static_cast<double>(kk)) != 1.0) peaks_ok = false;

    const ChaosC0Report chaos = check_chaos_c0(rho, 1e-3, horizon);
    const bool chaos_refuted = !chaos.consistent && chaos.witness_x.has_value();

    FrequencySets fs;
    fs.horizon = horizon;
    fs.M = {4.0, 8.0};
    fs.E.resize(2);
    for (std::int64_t n = 44; n <= horizon; n += 96) fs.E[0].push_back(n);
    for (std::int64_t n = 92; n <= horizon; n += 96) fs.E[1].push_back(n);
    const C0FhReport fh = check_c0_translation_fh(rho, fs, horizon);

    report(10, steps_ok && peaks_ok && chaos_refuted && fh.consistent(),
           "sawtooth half-line weight: chaos check refutes with a witness while the "
           "planted frequency sets pass every translation criterion");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all criteria pass\n");
    else
        std::printf("%d criteria failing\n", failures);
    return failures == 0 ? 0 : 1;
}
