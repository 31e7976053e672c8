#include "lindyn/conjugacy.hpp"

#include <algorithm>
#include <cmath>

namespace lindyn {

SparseSeq analysis_apply(const SampledFunction& f, const Weight& rho, int max_level) {
    if (rho.domain != f.domain) throw inconsistency_error("weight domain does not match");
    SparseSeq a = schauder_coefficients(f, max_level);
    SparseSeq out(a.universe);
    for (const auto& [idx, v] : a.entries)
        out.set(idx, rho.eval(static_cast<double>(idx.k)) * v);
    return out;
}

SampledFunction synthesis_apply(const SparseSeq& a, const Weight& rho, std::int64_t lo,
                                std::int64_t hi, int grid_level) {
    const Domain dom = (a.universe == Universe::N || a.universe == Universe::NDyadic)
                           ? Domain::HalfLine
                           : Domain::FullLine;
    if (rho.domain != dom) throw inconsistency_error("weight domain does not match");
    SparseSeq scaled(a.universe);
    for (const auto& [idx, v] : a.entries)
        scaled.set(idx, std::ldexp(v / rho.eval(static_cast<double>(idx.k)), -idx.level));
    return schauder_reconstruct(scaled, lo, hi, grid_level, dom);
}

namespace {

DiagramReport finish(double dev, std::size_t compared, double tol) {
    DiagramReport r;
    r.max_abs_dev = dev;
    r.compared = compared;
    r.tol = tol;
    r.commutes = dev <= tol;
    return r;
}

} // namespace

DiagramReport verify_analysis_diagram(const SampledFunction& f, const Weight& rho,
                                      int max_level, double tol) {
    const SampledFunction tf = f.translate(1);
    const SparseSeq lhs = analysis_apply(tf, rho, max_level);
    const SparseSeq rhs = weighted_backward_shift_apply(rho, analysis_apply(f, rho, max_level));

    // both sides are defined for integer parts in [tf.lo, tf.hi], minus the top
    // cell for fractional indices
    auto comparable = [&](const DyadicIndex& i) {
        if (i.k < tf.lo || i.k > tf.hi) return false;
        return i.level == 0 || i.k < tf.hi;
    };
    double dev = 0.0;
    std::size_t compared = 0;
    auto visit = [&](const DyadicIndex& i) {
        if (!comparable(i)) return;
        dev = std::max(dev, std::abs(lhs.at(i) - rhs.at(i)));
        ++compared;
    };
    for (const auto& [i, v] : lhs.entries) { (void)v; visit(i); }
    for (const auto& [i, v] : rhs.entries) {
        (void)v;
        if (lhs.entries.count(i) == 0) visit(i);
    }
    return finish(dev, compared, tol);
}

DiagramReport verify_synthesis_diagram(const SparseSeq& a, const Weight& rho, std::int64_t lo,
                                       std::int64_t hi, int grid_level, double tol) {
    const SampledFunction pa = synthesis_apply(a, rho, lo, hi, grid_level);
    const SampledFunction lhs_fn = pa.translate(1);
    const SparseSeq shifted = weighted_backward_shift_apply(rho, a);
    const SampledFunction rhs_fn =
        synthesis_apply(shifted, rho, lhs_fn.lo, lhs_fn.hi, grid_level);
    double dev = 0.0;
    for (std::size_t j = 0; j < lhs_fn.values.size(); ++j)
        dev = std::max(dev, std::abs(lhs_fn.values[j] - rhs_fn.values[j]));
    return finish(dev, lhs_fn.values.size(), tol);
}

DiagramReport verify_round_trip_diagonal(const SparseSeq& a, const Weight& rho, std::int64_t lo,
                                         std::int64_t hi, int grid_level, double tol) {
    const SampledFunction pa = synthesis_apply(a, rho, lo, hi, grid_level);
    const SparseSeq back = analysis_apply(pa, rho, grid_level);
    double dev = 0.0;
    std::size_t compared = 0;
    auto expected = [&](const DyadicIndex& i) { return std::ldexp(a.at(i), -i.level); };
    for (const auto& [i, v] : back.entries) {
        dev = std::max(dev, std::abs(v - expected(i)));
        ++compared;
    }
    for (const auto& [i, v] : a.entries) {
        (void)v;
        if (back.entries.count(i) == 0) {
            dev = std::max(dev, std::abs(expected(i)));
            ++compared;
        }
    }
    return finish(dev, compared, tol);
}

} // namespace lindyn
