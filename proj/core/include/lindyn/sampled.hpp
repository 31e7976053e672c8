#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lindyn/dyadic.hpp"
#include "lindyn/errors.hpp"
#include "lindyn/sparse_seq.hpp"
#include "lindyn/weight.hpp"

namespace lindyn {

/// Piecewise linear function sampled at the nodes of the dyadic grid 2^-level
/// inside an integer window [lo, hi]. Norms treat the function as 0 outside
/// the window, which is exact for the compactly supported objects the library
/// builds (hats and their finite combinations).
struct SampledFunction {
    Domain domain = Domain::FullLine;
    std::int64_t lo = 0, hi = 0;
    int level = 0;
    std::vector<double> values;

    static SampledFunction zero(std::int64_t lo, std::int64_t hi, int level,
                                Domain domain = Domain::FullLine);
    static SampledFunction from_callable(std::int64_t lo, std::int64_t hi, int level,
                                         const std::function<double(double)>& f,
                                         Domain domain = Domain::FullLine);
    /// Basis hat materialized on the grid. Node evaluations are exact: dyadic
    /// node minus dyadic peak stays a short binary fraction.
    static SampledFunction hat(const DyadicIndex& idx, std::int64_t lo, std::int64_t hi,
                               int level, Domain domain = Domain::FullLine);

    std::size_t node_count() const { return values.size(); }
    double node(std::size_t j) const;
    /// Piecewise linear value; 0 outside the window, exact at grid nodes.
    double value_at(double x) const;
    /// x -> f(x + t). Relabels the window; on the half line nodes pushed below
    /// the origin are dropped.
    SampledFunction translate(std::int64_t t) const;
    SampledFunction& add_scaled(const SampledFunction& g, double c);
    SampledFunction& scale(double c);

    double sup_norm() const;
    /// sup |f(x)| rho(x) over the window. Step weights are handled cell by
    /// cell, so the result is exact for exact node data.
    double weighted_sup_norm(const Weight& rho) const;
    /// (integral of |f|^p rho)^(1/p) over the window, with the exact closed
    /// form of each linear segment; rho is frozen at segment midpoints, which
    /// is the exact cell value for step weights.
    double weighted_lp_norm(const Weight& rho, double p) const;
};

/// Interpolation coefficients of f against the dyadic hat system:
/// a_k = f(k) and a_{k+tau} = f(k+tau) - (f(k+tau^-) + f(k+tau^+)) / 2.
/// Emits every index the grid resolves up to max_level (-1 = grid level).
SparseSeq schauder_coefficients(const SampledFunction& f, int max_level = -1);

/// Inverse of schauder_coefficients on node values: integer nodes take a_k,
/// every finer node refines v = (v_left + v_right) / 2 + a level by level.
/// Entries must sit at peaks inside [lo, hi] and at levels the grid resolves.
SampledFunction schauder_reconstruct(const SparseSeq& a, std::int64_t lo, std::int64_t hi,
                                     int level, Domain domain = Domain::FullLine);

/// x_k = integral of f over [k, k+1] for every integer cell of the window;
/// exact for the piecewise linear interpolant.
SparseSeq discretize_unit_cells(const SampledFunction& f);

} // namespace lindyn
