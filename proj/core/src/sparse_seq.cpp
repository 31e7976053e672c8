#include "lindyn/sparse_seq.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace lindyn {

bool universe_contains(Universe u, const DyadicIndex& idx) {
    switch (u) {
        case Universe::Z: return idx.is_integer();
        case Universe::N: return idx.is_integer() && idx.k >= 0;
        case Universe::ZDyadic: return true;
        case Universe::NDyadic: return idx.k >= 0;
    }
    return false;
}

bool universe_is_integer(Universe u) { return u == Universe::Z || u == Universe::N; }

const char* universe_name(Universe u) {
    switch (u) {
        case Universe::Z: return "Z";
        case Universe::N: return "N";
        case Universe::ZDyadic: return "Z+D";
        case Universe::NDyadic: return "N+D";
    }
    return "?";
}

Universe universe_from_name(const std::string& name) {
    if (name == "Z") return Universe::Z;
    if (name == "N") return Universe::N;
    if (name == "Z+D") return Universe::ZDyadic;
    if (name == "N+D") return Universe::NDyadic;
    throw invalid_input_error("unknown index universe: " + name);
}

SparseSeq SparseSeq::unit(Universe u, const DyadicIndex& idx, double v) {
    SparseSeq s(u);
    s.set(idx, v);
    return s;
}

void SparseSeq::set(const DyadicIndex& idx, double v) {
    if (!universe_contains(universe, idx))
        throw invalid_input_error("index outside sequence universe");
    if (v == 0.0)
        entries.erase(idx);
    else
        entries[idx] = v;
}

double sup_norm(const SparseSeq& x) {
    double m = 0.0;
    for (const auto& [idx, v] : x.entries) m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const SparseSeq& x, const SparseSeq& y) {
    double m = 0.0;
    for (const auto& [idx, v] : x.entries) m = std::max(m, std::abs(v - y.at(idx)));
    for (const auto& [idx, v] : y.entries)
        if (!x.entries.count(idx)) m = std::max(m, std::abs(v));
    return m;
}

double weighted_p_norm(const SparseSeq& x,
                       const std::function<double(const DyadicIndex&)>& v, double p) {
    if (p <= 0.0) throw invalid_input_error("p-norm requires p > 0");
    double sum = 0.0;
    for (const auto& [idx, val] : x.entries) sum += std::pow(std::abs(val), p) * v(idx);
    return std::pow(sum, 1.0 / p);
}

LogScalar LogScalar::from_double(double v) {
    if (v == 0.0) return zero();
    LogScalar s;
    s.sign = v > 0.0 ? 1 : -1;
    s.log_abs = std::log(std::abs(v));
    return s;
}

LogScalar LogScalar::from_log(int sign, double log_abs) {
    if (sign == 0) return zero();
    LogScalar s;
    s.sign = sign > 0 ? 1 : -1;
    s.log_abs = log_abs;
    return s;
}

double LogScalar::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

void LogSeq::set(const DyadicIndex& idx, LogScalar v) {
    if (!universe_contains(universe, idx))
        throw invalid_input_error("index outside sequence universe");
    if (v.is_zero())
        entries.erase(idx);
    else
        entries[idx] = v;
}

LogSeq log_seq_from_sparse(const SparseSeq& x) {
    LogSeq out(x.universe);
    for (const auto& [idx, v] : x.entries) out.set(idx, LogScalar::from_double(v));
    return out;
}

SparseSeq sparse_from_log_seq(const LogSeq& x) {
    SparseSeq out(x.universe);
    for (const auto& [idx, v] : x.entries) out.set(idx, v.to_double());
    return out;
}

double log_sup_norm(const LogSeq& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [idx, v] : x.entries) m = std::max(m, v.log_abs);
    return m;
}

} // namespace lindyn
