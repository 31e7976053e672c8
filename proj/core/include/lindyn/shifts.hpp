#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lindyn/dyadic.hpp"
#include "lindyn/errors.hpp"
#include "lindyn/sparse_seq.hpp"
#include "lindyn/weight.hpp"

namespace lindyn {

/// A family T_n x = (b_s^n x_{phi_n(s)})_s of weighted pseudo-shifts, described by
/// callbacks so index sets stay lazy. Weights live in log scale throughout: the
/// products b_s^n reach far outside double range over long horizons.
struct PseudoShift {
    Universe universe = Universe::Z;
    /// Collision ratio bound: R^-|n-m| <= b_s^n / b_t^m whenever phi_n(s) = phi_m(t).
    double ratio_R = 1.0;

    std::function<double(std::int64_t, const DyadicIndex&)> log_b;
    std::function<DyadicIndex(std::int64_t, const DyadicIndex&)> phi;
    /// Inverse of phi_n on its image; empty when the index has no preimage.
    std::function<std::optional<DyadicIndex>(std::int64_t, const DyadicIndex&)> phi_inv;
    /// Index spread scale: |n - m| <= |g(s) - g(t)| on collisions.
    std::function<double(const DyadicIndex&)> g;
    /// Exhaustion W_p of the index universe.
    std::function<std::vector<DyadicIndex>(int)> exhaustion;

    double b(std::int64_t n, const DyadicIndex& s) const { return std::exp(log_b(n, s)); }
    /// max |g(t)| over W_p.
    double psi(int p) const;
};

/// Power family of the weighted backward shift read off a step weight:
/// b_s^n = rho(k)/rho(k+n) for s = k + tau, phi_n(s) = s + n, g(s) = k,
/// W_p the dyadic exhaustion sets. ratio_R is fitted over integer steps in
/// [k_lo, k_hi] and must stay above 1 for the family to be usable.
PseudoShift backward_shift_family(const Weight& rho, Universe universe, std::int64_t k_lo,
                                  std::int64_t k_hi);

/// T_n x evaluated sparsely: entries at s = phi_inv(n, i) over the support of x.
SparseSeq pseudo_shift_apply(const PseudoShift& T, const SparseSeq& x, std::int64_t n);
LogSeq pseudo_shift_apply(const PseudoShift& T, const LogSeq& x, std::int64_t n);

/// Plain backward shift (B x)_i = x_{i+1}.
SparseSeq backward_shift_apply(const SparseSeq& x);

/// (B_w x)_i = w(i) x_{i+1} with w_{k+tau} = rho(k)/rho(k+1).
SparseSeq weighted_backward_shift_apply(const Weight& rho, const SparseSeq& x);

/// Shift weights w(k + tau) = (v(k)/v(k+1))^(1/p) linking the plain and the
/// v-weighted p-summable pictures.
std::function<double(const DyadicIndex&)> lpv_shift_weights(const Weight& v, double p);

/// (B_w x)_i = w(i) x_{i+1} with explicit weights.
SparseSeq weighted_backward_shift_apply(const std::function<double(const DyadicIndex&)>& w,
                                        const SparseSeq& x);

/// Diagonal intertwiner x_k -> v(k)^(1/p) x_k.
SparseSeq lpv_isometry_apply(const Weight& v, double p, const SparseSeq& x);

} // namespace lindyn
