#include "doctest.h"

#include <cmath>
#include <random>

#include "lindyn/sampled.hpp"

using namespace lindyn;
using doctest::Approx;

TEST_CASE("sampled windows validate and interpolate linearly") {
    auto f = SampledFunction::from_callable(0, 2, 2, [](double x) { return x * x; });
    REQUIRE(f.node_count() == 9);
    CHECK(f.value_at(0.25) == 0.0625);
    // between nodes the interpolant is the chord, not the parabola
    CHECK(f.value_at(0.375) == Approx((0.0625 + 0.25) / 2));
    CHECK(f.value_at(-1.0) == 0.0);
    CHECK(f.value_at(3.0) == 0.0);

    CHECK_THROWS_AS(SampledFunction::zero(2, 2, 3), invalid_input_error);
    CHECK_THROWS_AS(SampledFunction::zero(0, 1, 27), invalid_input_error);
    CHECK_THROWS_AS(SampledFunction::zero(-1, 1, 3, Domain::HalfLine), invalid_input_error);
}

TEST_CASE("materialized hats agree with hat_eval at every node") {
    for (auto idx : {DyadicIndex::integer(1), DyadicIndex(0, 1, 1), DyadicIndex(-2, 3, 5)}) {
        auto f = SampledFunction::hat(idx, -3, 3, 3);
        for (std::size_t j = 0; j < f.node_count(); ++j) {
            double x = -3.0 + static_cast<double>(j) * std::exp2(-3);
            CHECK(f.values[j] == hat_eval(idx, x));
        }
    }
    CHECK_THROWS_AS(SampledFunction::hat(DyadicIndex(0, 4, 7), -1, 1, 3), resolution_error);
}

TEST_CASE("translation relabels the window") {
    auto f = SampledFunction::from_callable(0, 2, 1, [](double x) { return x; });
    auto g = f.translate(1);
    CHECK(g.lo == -1);
    CHECK(g.hi == 1);
    CHECK(g.value_at(-0.5) == 0.5);
    CHECK(g.value_at(1.0) == 2.0);

    auto h = SampledFunction::from_callable(0, 2, 1, [](double x) { return x; },
                                            Domain::HalfLine)
                 .translate(1);
    CHECK(h.lo == 0);
    CHECK(h.hi == 1);
    CHECK(h.value_at(0.0) == 1.0);

    auto sum = SampledFunction::zero(0, 2, 1);
    CHECK_THROWS_AS(sum.add_scaled(SampledFunction::zero(0, 1, 1), 1.0),
                    inconsistency_error);
}

TEST_CASE("interpolation coefficients recover single hats exactly") {
    DyadicIndex idx(1, 2, 1);
    auto f = SampledFunction::hat(idx, -2, 2, 3);
    auto a = schauder_coefficients(f);
    REQUIRE(a.support_size() == 1);
    CHECK(a.at(idx) == 1.0);
}

TEST_CASE("affine data has no coefficients past level zero") {
    auto f = SampledFunction::from_callable(-2, 2, 3, [](double x) { return 2.0 * x - 1.0; });
    auto a = schauder_coefficients(f);
    for (const auto& [i, v] : a.entries) {
        CHECK(i.is_integer());
        CHECK(v == 2.0 * static_cast<double>(i.k) - 1.0);
    }
}

TEST_CASE("coefficient round trip is exact on dyadic node data") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> grid(-4096, 4096);
    for (int rep = 0; rep < 20; ++rep) {
        auto f = SampledFunction::zero(-2, 2, 4);
        for (auto& v : f.values) v = static_cast<double>(grid(rng)) * std::exp2(-12);
        auto a = schauder_coefficients(f);
        auto g = schauder_reconstruct(a, -2, 2, 4);
        REQUIRE(g.node_count() == f.node_count());
        for (std::size_t j = 0; j < f.node_count(); ++j) CHECK(g.values[j] == f.values[j]);
    }
}

TEST_CASE("reconstruction rejects data the grid cannot carry") {
    SparseSeq a(Universe::ZDyadic);
    a.set(DyadicIndex(5, 0, 0), 1.0);
    CHECK_THROWS_AS(schauder_reconstruct(a, -2, 2, 3), window_error);
    SparseSeq b(Universe::ZDyadic);
    b.set(DyadicIndex(0, 4, 7), 1.0);
    CHECK_THROWS_AS(schauder_reconstruct(b, -2, 2, 3), resolution_error);
    auto f = SampledFunction::zero(-2, 2, 3);
    CHECK_THROWS_AS(schauder_coefficients(f, 4), resolution_error);
}

TEST_CASE("unit cell averages integrate the interpolant exactly") {
    auto one = SampledFunction::from_callable(0, 2, 2, [](double) { return 1.0; });
    auto x1 = discretize_unit_cells(one);
    CHECK(x1.at(DyadicIndex::integer(0)) == 1.0);
    CHECK(x1.at(DyadicIndex::integer(1)) == 1.0);

    auto ramp = SampledFunction::from_callable(0, 1, 3, [](double x) { return x; });
    CHECK(discretize_unit_cells(ramp).at(DyadicIndex::integer(0)) == 0.5);

    auto tent = SampledFunction::hat(DyadicIndex::integer(0), -2, 2, 2);
    auto xt = discretize_unit_cells(tent);
    CHECK(xt.at(DyadicIndex::integer(-1)) == 0.5);
    CHECK(xt.at(DyadicIndex::integer(0)) == 0.5);
    CHECK(xt.at(DyadicIndex::integer(-2)) == 0.0);
}

TEST_CASE("weighted norms freeze step weights cell by cell") {
    auto f = SampledFunction::from_callable(0, 2, 2, [](double) { return 1.0; });
    auto rho = Weight::from_integer_samples(0, {1.0, 2.0, 4.0});
    CHECK(f.weighted_sup_norm(rho) == 4.0);
    CHECK(f.weighted_sup_norm(Weight::constant(2.0)) == 2.0);

    auto ramp = SampledFunction::from_callable(0, 1, 3, [](double x) { return x; });
    CHECK(ramp.weighted_lp_norm(Weight::constant(1.0), 2.0) ==
          Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(ramp.weighted_lp_norm(Weight::from_integer_samples(0, {4.0, 1.0}), 2.0) ==
          Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

    auto h = SampledFunction::from_callable(0, 1, 2, [](double) { return 1.0; },
                                            Domain::HalfLine);
    CHECK_THROWS_AS(h.weighted_sup_norm(Weight::constant(1.0)), inconsistency_error);
}
