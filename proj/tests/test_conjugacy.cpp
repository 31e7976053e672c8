#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "lindyn/conjugacy.hpp"

using namespace lindyn;
using doctest::Approx;

namespace {

std::vector<Weight> step_weights() {
    return {Weight::constant(1.0), Weight::exp_abs(1.0).step_normalized(),
            Weight::exp_abs(1.0, Domain::FullLine, 2.0).step_normalized()};
}

SampledFunction random_function(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    auto f = SampledFunction::zero(-6, 6, 6);
    for (auto& v : f.values) v = val(rng);
    return f;
}

SparseSeq random_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    SparseSeq a(Universe::ZDyadic);
    for (const auto& i : wn_set(3, Domain::FullLine)) a.set(i, val(rng));
    return a;
}

} // namespace

TEST_CASE("analysis scales interpolation coefficients by the cell weight") {
    auto f = SampledFunction::hat(DyadicIndex(0, 1, 1), -2, 2, 3);
    auto rho = Weight::from_integer_samples(-2, {1.0, 2.0, 4.0, 8.0});
    auto a = analysis_apply(f, rho);
    REQUIRE(a.support_size() == 1);
    CHECK(a.at(DyadicIndex(0, 1, 1)) == 4.0); // coefficient 1 times rho(0)

    auto g = SampledFunction::hat(DyadicIndex::integer(-1), -2, 2, 3);
    CHECK(analysis_apply(g, rho).at(DyadicIndex::integer(-1)) == 2.0);
}

TEST_CASE("analysis norm stays within twice the weighted sup norm") {
    std::mt19937_64 rng(23);
    for (const auto& rho : step_weights())
        for (int rep = 0; rep < 20; ++rep) {
            auto f = random_function(rng);
            CHECK(sup_norm(analysis_apply(f, rho)) <=
                  2.0 * f.weighted_sup_norm(rho) + 1e-12);
        }
}

TEST_CASE("synthesis materializes the level-damped expansion") {
    auto rho = Weight::constant(1.0);
    auto a = SparseSeq::unit(Universe::ZDyadic, DyadicIndex(0, 1, 1), 1.0);
    auto f = synthesis_apply(a, rho, -2, 2, 3);
    CHECK(f.value_at(0.5) == Approx(0.5));  // 2^-1 at the peak
    CHECK(f.value_at(0.25) == Approx(0.25));
    CHECK(f.value_at(1.0) == 0.0);

    // scaling by 1/rho(k) undoes the analysis scaling
    auto table = Weight::from_integer_samples(-2, {1.0, 2.0, 4.0, 8.0});
    auto g = synthesis_apply(a, table, -2, 2, 3);
    CHECK(g.value_at(0.5) == Approx(0.125)); // 2^-1 / rho(0)
}

TEST_CASE("synthesis norm respects the sandwich bound") {
    std::mt19937_64 rng(29);
    for (const auto& rho : step_weights()) {
        const double B = fit_step_constants(rho, -6.0, 6.0).B;
        for (int rep = 0; rep < 20; ++rep) {
            auto a = random_coefficients(rng);
            auto f = synthesis_apply(a, rho, -6, 6, 6);
            CHECK(f.weighted_sup_norm(rho) <= (B + 4.0) * sup_norm(a) + 1e-12);
        }
    }
}

TEST_CASE("analysis intertwines translation with the weighted shift") {
    std::mt19937_64 rng(31);
    for (const auto& rho : step_weights())
        for (int rep = 0; rep < 10; ++rep) {
            auto rep_f = random_function(rng);
            auto d = verify_analysis_diagram(rep_f, rho, 4, 1e-12);
            CHECK(d.commutes);
            CHECK(d.compared > 0);
            CHECK(d.verdict() == "commutes");
        }
}

TEST_CASE("synthesis intertwines the weighted shift with translation") {
    std::mt19937_64 rng(37);
    for (const auto& rho : step_weights())
        for (int rep = 0; rep < 10; ++rep) {
            auto a = random_coefficients(rng);
            auto d = verify_synthesis_diagram(a, rho, -6, 6, 6, 1e-12);
            CHECK(d.commutes);
            CHECK(d.compared > 0);
        }
}

TEST_CASE("analysis after synthesis is the diagonal level damping") {
    std::mt19937_64 rng(41);
    for (const auto& rho : step_weights())
        for (int rep = 0; rep < 10; ++rep) {
            auto a = random_coefficients(rng);
            auto d = verify_round_trip_diagonal(a, rho, -6, 6, 6, 1e-12);
            CHECK(d.commutes);
        }
}

TEST_CASE("mismatched domains are rejected") {
    auto f = SampledFunction::zero(0, 2, 2, Domain::HalfLine);
    CHECK_THROWS_AS(analysis_apply(f, Weight::constant(1.0)), inconsistency_error);
    auto a = SparseSeq::unit(Universe::NDyadic, DyadicIndex::integer(0), 1.0);
    CHECK_THROWS_AS(synthesis_apply(a, Weight::constant(1.0), 0, 2, 2),
                    inconsistency_error);
}
