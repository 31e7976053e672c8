#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "lindyn/dyadic.hpp"
#include "lindyn/errors.hpp"

namespace lindyn {

/// Index universes a sequence can live over. Z / N restrict to integer indices;
/// the Dyadic variants allow integer-plus-dyadic indices (closed under shifts by 1).
enum class Universe { Z, N, ZDyadic, NDyadic };

bool universe_contains(Universe u, const DyadicIndex& idx);
bool universe_is_integer(Universe u);
const char* universe_name(Universe u);
Universe universe_from_name(const std::string& name);

/// Finitely supported sequence, canonical form: no explicit zeros, ordered support.
struct SparseSeq {
    Universe universe = Universe::Z;
    std::map<DyadicIndex, double> entries;

    SparseSeq() = default;
    explicit SparseSeq(Universe u) : universe(u) {}

    static SparseSeq unit(Universe u, const DyadicIndex& idx, double v = 1.0);

    double at(const DyadicIndex& idx) const {
        auto it = entries.find(idx);
        return it == entries.end() ? 0.0 : it->second;
    }
    void set(const DyadicIndex& idx, double v);
    std::size_t support_size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

double sup_norm(const SparseSeq& x);
double sup_distance(const SparseSeq& x, const SparseSeq& y);

/// (sum_i |x_i|^p v(i))^(1/p); the sum is accumulated directly, the weight via callback.
double weighted_p_norm(const SparseSeq& x,
                       const std::function<double(const DyadicIndex&)>& v, double p);

/// Scalar stored as sign and natural log of the magnitude, for values far outside
/// double range. sign == 0 encodes an exact zero.
struct LogScalar {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static LogScalar zero() { return {}; }
    static LogScalar from_double(double v);
    static LogScalar from_log(int sign, double log_abs);

    /// Collapses to double; may under- or overflow to 0 / +-inf by design.
    double to_double() const;
    bool is_zero() const { return sign == 0; }
};

/// Finitely supported sequence with log-scale magnitudes. Used where entry sizes
/// leave double range (orbit constructions over long horizons).
struct LogSeq {
    Universe universe = Universe::Z;
    std::map<DyadicIndex, LogScalar> entries;

    LogSeq() = default;
    explicit LogSeq(Universe u) : universe(u) {}

    LogScalar at(const DyadicIndex& idx) const {
        auto it = entries.find(idx);
        return it == entries.end() ? LogScalar::zero() : it->second;
    }
    void set(const DyadicIndex& idx, LogScalar v);
    std::size_t support_size() const { return entries.size(); }
};

LogSeq log_seq_from_sparse(const SparseSeq& x);
SparseSeq sparse_from_log_seq(const LogSeq& x); // entries may underflow to 0 and drop

/// Max over support of log|x_i| (-inf when empty).
double log_sup_norm(const LogSeq& x);

} // namespace lindyn
