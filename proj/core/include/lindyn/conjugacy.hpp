#pragma once

#include <cstdint>
#include <string>

#include "lindyn/sampled.hpp"
#include "lindyn/shifts.hpp"
#include "lindyn/sparse_seq.hpp"
#include "lindyn/weight.hpp"

namespace lindyn {

/// Coefficient-side picture of a weighted function: the interpolation
/// coefficients scaled by rho at the integer part, a_{k+tau} -> rho(k) a_{k+tau}.
SparseSeq analysis_apply(const SampledFunction& f, const Weight& rho, int max_level = -1);

/// Function-side picture of a sequence: sum over levels n of
/// 2^-n (a_{k+tau} / rho(k)) hat_{k+tau}, materialized on [lo, hi]. Every entry
/// peak must lie inside the window and at a level the grid resolves.
SampledFunction synthesis_apply(const SparseSeq& a, const Weight& rho, std::int64_t lo,
                                std::int64_t hi, int grid_level);

struct DiagramReport {
    double max_abs_dev = 0.0;
    std::size_t compared = 0;
    double tol = 0.0;
    bool commutes = false;
    std::string verdict() const { return commutes ? "commutes" : "deviates"; }
};

/// Compares analysis(T_1 f) against B_w(analysis f) on every index both sides
/// resolve: the translated window loses its top cell.
DiagramReport verify_analysis_diagram(const SampledFunction& f, const Weight& rho,
                                      int max_level, double tol);

/// Compares synthesis(B_w a) against T_1(synthesis a) at every node of the
/// translated window.
DiagramReport verify_synthesis_diagram(const SparseSeq& a, const Weight& rho, std::int64_t lo,
                                       std::int64_t hi, int grid_level, double tol);

/// analysis(synthesis(a)) against the diagonal scaling 2^-level(i) a_i.
DiagramReport verify_round_trip_diagonal(const SparseSeq& a, const Weight& rho, std::int64_t lo,
                                         std::int64_t hi, int grid_level, double tol);

} // namespace lindyn
