#include "lindyn/shifts.hpp"

#include <algorithm>
#include <cmath>

namespace lindyn {

double PseudoShift::psi(int p) const {
    double m = 0.0;
    for (const auto& t : exhaustion(p)) m = std::max(m, std::abs(g(t)));
    return m;
}

PseudoShift backward_shift_family(const Weight& rho, Universe universe, std::int64_t k_lo,
                                  std::int64_t k_hi) {
    if (k_lo >= k_hi) throw invalid_input_error("ratio window needs k_lo < k_hi");
    if (!rho.is_step) throw invalid_input_error("backward shift families need a step weight");
    const bool half = universe == Universe::N || universe == Universe::NDyadic;
    if (half && k_lo < 0) k_lo = 0;
    if (half != (rho.domain == Domain::HalfLine))
        throw inconsistency_error("weight domain does not match the index universe");

    double max_jump = 0.0;
    for (std::int64_t k = k_lo; k < k_hi; ++k)
        max_jump = std::max(max_jump, std::abs(rho.log_eval(static_cast<double>(k)) -
                                               rho.log_eval(static_cast<double>(k + 1))));
    PseudoShift T;
    T.universe = universe;
    T.ratio_R = std::max(std::exp(max_jump), 1.0 + 1e-9);
    T.log_b = [rho](std::int64_t n, const DyadicIndex& s) {
        return rho.log_eval(static_cast<double>(s.k)) -
               rho.log_eval(static_cast<double>(s.k + n));
    };
    T.phi = [](std::int64_t n, const DyadicIndex& s) { return s.plus_int(n); };
    T.phi_inv = [universe](std::int64_t n, const DyadicIndex& i) -> std::optional<DyadicIndex> {
        DyadicIndex s = i.plus_int(-n);
        if (!universe_contains(universe, s)) return std::nullopt;
        return s;
    };
    T.g = [](const DyadicIndex& s) { return static_cast<double>(s.k); };
    const Domain dom = half ? Domain::HalfLine : Domain::FullLine;
    T.exhaustion = [dom](int p) { return wn_set(p, dom); };
    return T;
}

SparseSeq pseudo_shift_apply(const PseudoShift& T, const SparseSeq& x, std::int64_t n) {
    SparseSeq out(x.universe);
    for (const auto& [i, v] : x.entries) {
        auto s = T.phi_inv(n, i);
        if (!s) continue;
        out.set(*s, std::exp(T.log_b(n, *s)) * v);
    }
    return out;
}

LogSeq pseudo_shift_apply(const PseudoShift& T, const LogSeq& x, std::int64_t n) {
    LogSeq out(x.universe);
    for (const auto& [i, v] : x.entries) {
        if (v.is_zero()) continue;
        auto s = T.phi_inv(n, i);
        if (!s) continue;
        out.set(*s, LogScalar::from_log(v.sign, v.log_abs + T.log_b(n, *s)));
    }
    return out;
}

SparseSeq backward_shift_apply(const SparseSeq& x) {
    SparseSeq out(x.universe);
    for (const auto& [i, v] : x.entries) {
        DyadicIndex j = i.plus_int(-1);
        if (!universe_contains(x.universe, j)) continue;
        out.set(j, v);
    }
    return out;
}

SparseSeq weighted_backward_shift_apply(const Weight& rho, const SparseSeq& x) {
    return weighted_backward_shift_apply(
        [&rho](const DyadicIndex& i) {
            return std::exp(rho.log_eval(static_cast<double>(i.k)) -
                            rho.log_eval(static_cast<double>(i.k + 1)));
        },
        x);
}

SparseSeq weighted_backward_shift_apply(const std::function<double(const DyadicIndex&)>& w,
                                        const SparseSeq& x) {
    SparseSeq out(x.universe);
    for (const auto& [i, v] : x.entries) {
        DyadicIndex j = i.plus_int(-1);
        if (!universe_contains(x.universe, j)) continue;
        out.set(j, w(j) * v);
    }
    return out;
}

std::function<double(const DyadicIndex&)> lpv_shift_weights(const Weight& v, double p) {
    if (!(p > 0.0)) throw invalid_input_error("p must be positive");
    return [v, p](const DyadicIndex& i) {
        return std::exp((v.log_eval(static_cast<double>(i.k)) -
                         v.log_eval(static_cast<double>(i.k + 1))) /
                        p);
    };
}

SparseSeq lpv_isometry_apply(const Weight& v, double p, const SparseSeq& x) {
    if (!(p > 0.0)) throw invalid_input_error("p must be positive");
    SparseSeq out(x.universe);
    for (const auto& [i, val] : x.entries)
        out.set(i, std::exp(v.log_eval(static_cast<double>(i.k)) / p) * val);
    return out;
}

} // namespace lindyn
