#include "doctest.h"

#include <cmath>

#include "lindyn/freqdyn.hpp"

using namespace lindyn;
using doctest::Approx;

namespace {

PseudoShift dyadic_decay_family() {
    auto rho = Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized();
    return backward_shift_family(rho, Universe::ZDyadic, -64, 64);
}

std::vector<std::int64_t> evens(std::int64_t up_to) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; n <= up_to; n += 2) out.push_back(n);
    return out;
}

} // namespace

TEST_CASE("lower density minimizes the count ratio over the tail window") {
    auto half = lower_density(evens(10000), 10000);
    CHECK(half.value == 2500.0 / 5001.0);
    CHECK(half.argmin == 5001);
    CHECK(half.horizon == 10000);

    std::vector<std::int64_t> squares;
    for (std::int64_t k = 1; k * k <= 1000000; ++k) squares.push_back(k * k);
    auto sq = lower_density(squares, 1000000);
    CHECK(sq.value == 999.0 / 999999.0);
    CHECK(sq.argmin == 999999);

    std::vector<std::int64_t> all;
    for (std::int64_t n = 1; n <= 100; ++n) all.push_back(n);
    CHECK(lower_density(all, 100).value == 1.0);

    CHECK(lower_density({}, 100).value == 0.0);
    CHECK_THROWS_AS(lower_density({0}, 100), invalid_input_error);
    CHECK_THROWS_AS(lower_density({3, 3}, 100), invalid_input_error);
    CHECK_THROWS_AS(lower_density({1}, 0), invalid_input_error);
}

TEST_CASE("continuous lower density measures interval families") {
    std::vector<std::pair<double, double>> comb;
    for (int k = 0; k < 50; ++k) comb.emplace_back(2.0 * k, 2.0 * k + 1.0);
    CHECK(continuous_lower_density(comb, 100.0) == 0.5);

    CHECK(continuous_lower_density({{0.0, 100.0}}, 100.0) == 1.0);
    CHECK(continuous_lower_density({{0.0, 1.0}, {1.0, 2.0}}, 2.0) == 1.0);
    CHECK(continuous_lower_density({}, 100.0) == 0.0);

    CHECK_THROWS_AS(continuous_lower_density({{0.0, 2.0}, {1.0, 3.0}}, 10.0),
                    invalid_input_error);
    CHECK_THROWS_AS(continuous_lower_density({{-1.0, 1.0}}, 10.0), invalid_input_error);
    CHECK_THROWS_AS(continuous_lower_density({{2.0, 2.0}}, 10.0), invalid_input_error);
    CHECK_THROWS_AS(continuous_lower_density({{0.0, 1.0}}, 0.0), invalid_input_error);
}

TEST_CASE("congruence families generate, validate, and refuse tight horizons") {
    auto fs = generate_frequency_sets(2, 1000, 30, {16.0, 256.0});
    REQUIRE(fs.p_max() == 2);
    CHECK(fs.E[0].front() == 30);
    CHECK(fs.E[0].back() == 930);
    CHECK(fs.E[0].size() == 11);
    CHECK(fs.E[1].front() == 60);
    CHECK(fs.E[0][1] - fs.E[0][0] == 90); // spacing times (p_max + 1)
    fs.validate();

    CHECK_THROWS_AS(generate_frequency_sets(2, 50, 30, {16.0, 256.0}), generation_error);
    CHECK_THROWS_AS(generate_frequency_sets(1, 1000, 30, {16.0, 256.0}),
                    invalid_input_error);
    CHECK_THROWS_AS(generate_frequency_sets(2, 1000, 30, {16.0, -1.0}),
                    invalid_input_error);

    FrequencySets bad;
    bad.E = {{5, 3}};
    bad.M = {4.0};
    bad.horizon = 10;
    CHECK_THROWS_AS(bad.validate(), invalid_input_error);
    bad.E = {{5, 12}};
    CHECK_THROWS_AS(bad.validate(), invalid_input_error); // 12 beyond the horizon
    bad.E = {{}};
    bad.M = {};
    CHECK_THROWS_AS(bad.validate(), invalid_input_error);
}

TEST_CASE("pseudo-shift criteria hold for the dyadic decay family") {
    auto T = dyadic_decay_family();
    auto fs = generate_frequency_sets(2, 3000, 30, {16.0, 256.0});
    auto rep = check_pseudo_shift_fh(T, fs);
    CHECK(rep.density.holds);
    CHECK(rep.separation.holds);
    CHECK(rep.growth.holds);
    CHECK(rep.domination.holds);
    CHECK(rep.consistent());
    CHECK(rep.verdict() == "consistent-at-horizon");
    REQUIRE(rep.densities.size() == 2);
    CHECK(rep.densities[0].value > 0.0);
}

TEST_CASE("pseudo-shift criteria flag interleaved frequency sets") {
    auto T = dyadic_decay_family();
    FrequencySets fs;
    fs.E = {{10, 100}, {12, 102}};
    fs.M = {16.0, 256.0};
    fs.horizon = 3000;
    auto rep = check_pseudo_shift_fh(T, fs);
    CHECK_FALSE(rep.separation.holds);
    CHECK(rep.separation.violation_count >= 1);
    CHECK_FALSE(rep.separation.witnesses.empty());
    CHECK(rep.separation.witnesses.size() <= kMaxWitnesses);
    CHECK_FALSE(rep.consistent());
    CHECK(rep.verdict() == "refuted-at-horizon");
}

TEST_CASE("weight-form criteria verify the translation family") {
    auto rho = Weight::exp_abs(1.0, Domain::FullLine, 2.0);
    auto fs = generate_frequency_sets(2, 2000, 30, {8.0, 16.0});
    auto rep = check_c0_translation_fh(rho, fs, 2000);
    CHECK(rep.fitted_ratio == Approx(2.0).epsilon(1e-12));
    CHECK(rep.density.holds);
    CHECK(rep.separation.holds);
    CHECK(rep.decay.holds);
    CHECK(rep.domination.holds);
    CHECK(rep.step_bound.holds);
    CHECK(rep.verdict() == "consistent-at-horizon");

    auto flat = check_c0_translation_fh(Weight::constant(1.0), fs, 2000);
    CHECK_FALSE(flat.decay.holds);
    CHECK_FALSE(flat.domination.holds);
    CHECK(flat.verdict() == "refuted-at-horizon");

    CHECK_THROWS_AS(check_c0_translation_fh(Weight::exp_square(1.0), fs, 2000),
                    hypothesis_error); // adjacent ratios blow past the cap
}

TEST_CASE("vector construction hits its targets along the thinned sets") {
    auto T = dyadic_decay_family();
    auto fs = generate_frequency_sets(2, 3000, 30, {16.0, 256.0});
    auto targets = default_dense_targets(T, 2);
    REQUIRE(targets.size() == 2);
    CHECK(targets[0].support_size() == 1);
    CHECK(targets[1].support_size() == 6);
    CHECK(targets[1].at(DyadicIndex::integer(0)) == Approx(2.0));

    auto built = construct_fh_vector(T, fs, targets, 3000);
    const auto& tr = built.trace;
    CHECK(tr.alpha.size() == 2);
    CHECK(tr.alpha[0] == 2.0);
    CHECK(tr.alpha[1] == Approx(129.0));
    CHECK(tr.psi == std::vector<double>{1.0, 2.0});
    CHECK(tr.stride == std::vector<std::int64_t>{5, 7});
    CHECK(tr.E_prime[0] == fs.E[0]); // nothing pruned for a monotone decay weight
    REQUIRE(tr.G.size() == 2);
    CHECK(tr.G[0] == std::vector<std::int64_t>{30, 480, 930, 1380, 1830, 2280, 2730});
    CHECK(tr.G[1] == std::vector<std::int64_t>{60, 690, 1320, 1950, 2580});
    CHECK(tr.support_size == 37);
    CHECK(tr.max_log_entry < 0.0);

    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(tr.orbit_error[j] <= tr.orbit_error_bound[j]);
        CHECK(tr.orbit_error_bound[j] == Approx(std::pow(2.0, -double(j + 1))));
    }
    CHECK(tr.orbit_error[0] <= 1e-6);

    CHECK(orbit_distance(T, built.x, 30, targets[0]) <= 1e-6);
    CHECK(orbit_distance(T, built.x, 31, targets[0]) >= 0.5);
}

TEST_CASE("construction rejects weak constants and broken targets") {
    auto T = dyadic_decay_family();
    auto fs = generate_frequency_sets(2, 3000, 30, {2.0, 256.0});
    auto targets = default_dense_targets(T, 2);
    CHECK_THROWS_AS(construct_fh_vector(T, fs, targets, 3000), invalid_input_error);

    auto good = generate_frequency_sets(2, 3000, 30, {16.0, 256.0});
    auto big = targets;
    big[0] = SparseSeq::unit(Universe::ZDyadic, DyadicIndex::integer(0), 2.5);
    CHECK_THROWS_AS(construct_fh_vector(T, good, big, 3000), invalid_input_error);

    auto stray = targets;
    stray[0] = SparseSeq::unit(Universe::ZDyadic, DyadicIndex::integer(5), 1.0);
    CHECK_THROWS_AS(construct_fh_vector(T, good, stray, 3000), invalid_input_error);

    auto alien = targets;
    alien[0] = SparseSeq::unit(Universe::Z, DyadicIndex::integer(0), 1.0);
    CHECK_THROWS_AS(construct_fh_vector(T, good, alien, 3000), invalid_input_error);

    CHECK_THROWS_AS(construct_fh_vector(T, good, {targets[0]}, 3000), invalid_input_error);
}

TEST_CASE("a flat stretch of orbit weights empties the filtered sets") {
    // rho alternates 1, 1/2, so even shifts never grow past R^4
    std::vector<double> w = {0.5, 1.0};
    for (int j = 0; j < 60; ++j) {
        w.push_back(2.0);
        w.push_back(0.5);
    }
    auto rho = weight_from_shift_weights(-1, w);
    CHECK(rho.eval(0.0) == 1.0);
    CHECK(rho.eval(8.0) == 1.0);
    auto T = backward_shift_family(rho, Universe::ZDyadic, -1, 100);
    CHECK(T.ratio_R == Approx(2.0));

    FrequencySets fs;
    fs.M = {17.0};
    fs.horizon = 60;
    fs.E.push_back(evens(60));
    CHECK_THROWS_AS(construct_fh_vector(T, fs, default_dense_targets(T, 1), 60),
                    horizon_error);
}

TEST_CASE("colliding placements certify a separation failure") {
    auto T = dyadic_decay_family();
    FrequencySets fs;
    fs.E = {{13}, {13}};
    fs.M = {16.0, 256.0};
    fs.horizon = 100;
    CHECK_THROWS_AS(construct_fh_vector(T, fs, default_dense_targets(T, 2), 100),
                    inconsistency_error);
}

TEST_CASE("orbit extraction recovers the planted frequency set") {
    auto T = dyadic_decay_family();
    auto fs = generate_frequency_sets(2, 3000, 30, {16.0, 256.0});
    auto built = construct_fh_vector(T, fs, default_dense_targets(T, 2), 3000);

    ExtractionParams params;
    params.p_max = 1;
    params.horizon = 3000;
    auto rec = extract_frequency_sets(T, built.x, params);
    CHECK(rec.alpha == std::vector<double>{2.0});
    // amplitude-2 targets are exactly the level-1 pattern, planted along G_2
    CHECK(rec.F[0] == built.trace.G[1]);
    CHECK(rec.sets.E[0] == std::vector<std::int64_t>{60});
    CHECK(rec.sets.M == std::vector<double>{1.0});
    CHECK(rec.claim_violations == 0);
    CHECK(rec.all_nonempty);
    CHECK(rec.verdict() == "recovered-at-horizon");
    CHECK(rec.densities[0].value == 1.0 / 3000.0);

    params.threads = 3;
    auto rec3 = extract_frequency_sets(T, built.x, params);
    CHECK(rec3.F == rec.F);
    CHECK(rec3.sets.E == rec.sets.E);

    params.threads = 1;
    params.p_max = 2;
    auto two = extract_frequency_sets(T, built.x, params);
    CHECK(two.F[0] == built.trace.G[1]);
    CHECK(two.F[1].empty()); // nothing in the orbit carries the level-2 amplitude
    CHECK_FALSE(two.all_nonempty);
    CHECK(two.claim_violations == 0);
    CHECK(two.verdict() == "not-witnessed-at-horizon");
}

TEST_CASE("extraction validates its amplitude ladder") {
    auto T = dyadic_decay_family();
    LogSeq x(Universe::ZDyadic);
    x.set(DyadicIndex::integer(10), LogScalar::from_double(1.0));

    ExtractionParams params;
    params.p_max = 1;
    params.horizon = 100;
    params.alpha = {3.0};
    CHECK_THROWS_AS(extract_frequency_sets(T, x, params), invalid_input_error);

    params.p_max = 2;
    params.alpha = {2.0, 50.0};
    CHECK_THROWS_AS(extract_frequency_sets(T, x, params), invalid_input_error);

    params.alpha = {2.0, 1000.0};
    auto rec = extract_frequency_sets(T, x, params);
    CHECK(rec.verdict() == "not-witnessed-at-horizon");

    LogSeq alien(Universe::Z);
    params.alpha.clear();
    CHECK_THROWS_AS(extract_frequency_sets(T, alien, params), invalid_input_error);
}

TEST_CASE("random translate sums stay below the series bound under decay") {
    auto f = SampledFunction::hat(DyadicIndex::integer(0), -2, 2, 4);
    auto rho = Weight::exp_abs(1.0);
    auto rep = check_unconditional_series(f, rho, 50, 64, 1e-3, 7);
    CHECK(rep.bounded);
    REQUIRE(rep.threshold_backward.has_value());
    REQUIRE(rep.threshold_forward.has_value());
    CHECK(rep.violations == 0);
    CHECK(rep.max_norm_backward <= rep.bound);
    CHECK(rep.max_norm_forward <= rep.bound);
    CHECK(rep.bound == 2e-3);
    CHECK(rep.verdict() == "bounded-at-horizon");

    // same seed, same trials: the report is reproducible
    auto again = check_unconditional_series(f, rho, 50, 64, 1e-3, 7);
    CHECK(again.max_norm_backward == rep.max_norm_backward);
    CHECK(again.max_norm_forward == rep.max_norm_forward);
}

TEST_CASE("a flat weight refutes the series bound with a witness") {
    auto f = SampledFunction::hat(DyadicIndex::integer(0), -2, 2, 4);
    auto rep = check_unconditional_series(f, Weight::constant(1.0), 20, 64, 1e-3, 7);
    CHECK_FALSE(rep.bounded);
    CHECK_FALSE(rep.threshold_backward.has_value());
    CHECK(rep.violations > 0);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->norm_backward > rep.bound);
    CHECK(rep.verdict() == "refuted-at-horizon");
}

TEST_CASE("series check input validation") {
    auto f = SampledFunction::hat(DyadicIndex::integer(0), -2, 2, 4);
    auto rho = Weight::exp_abs(1.0);
    CHECK_THROWS_AS(check_unconditional_series(f, rho, 0, 64, 1e-3, 7),
                    invalid_input_error);
    CHECK_THROWS_AS(check_unconditional_series(f, rho, 10, 1, 1e-3, 7),
                    invalid_input_error);
    CHECK_THROWS_AS(check_unconditional_series(f, rho, 10, 64, 0.0, 7),
                    invalid_input_error);

    auto lifted = SampledFunction::from_callable(-2, 2, 4, [](double) { return 1.0; });
    CHECK_THROWS_AS(check_unconditional_series(lifted, rho, 10, 64, 1e-3, 7),
                    invalid_input_error);

    auto silent = SampledFunction::zero(-2, 2, 4);
    auto rep = check_unconditional_series(silent, rho, 10, 64, 1e-3, 7);
    CHECK(rep.bounded);
    CHECK(rep.threshold_backward == 1);
}
