#include "lindyn/sampled.hpp"

#include <algorithm>
#include <cmath>

namespace lindyn {

namespace {

constexpr int kMaxGridLevel = 26;
constexpr std::int64_t kMaxNodes = (std::int64_t{1} << 26) + 1;

void validate_window(std::int64_t lo, std::int64_t hi, int level, Domain domain) {
    if (lo >= hi) throw invalid_input_error("window needs lo < hi");
    if (level < 0 || level > kMaxGridLevel) throw invalid_input_error("grid level out of range");
    if (domain == Domain::HalfLine && lo < 0)
        throw invalid_input_error("half-line window starts below 0");
    if (((hi - lo) << level) + 1 > kMaxNodes) throw invalid_input_error("grid too large");
}

std::int64_t node_total(std::int64_t lo, std::int64_t hi, int level) {
    return ((hi - lo) << level) + 1;
}

} // namespace

SampledFunction SampledFunction::zero(std::int64_t lo, std::int64_t hi, int level,
                                      Domain domain) {
    validate_window(lo, hi, level, domain);
    SampledFunction f;
    f.domain = domain;
    f.lo = lo;
    f.hi = hi;
    f.level = level;
    f.values.assign(static_cast<std::size_t>(node_total(lo, hi, level)), 0.0);
    return f;
}

SampledFunction SampledFunction::from_callable(std::int64_t lo, std::int64_t hi, int level,
                                               const std::function<double(double)>& fn,
                                               Domain domain) {
    SampledFunction f = zero(lo, hi, level, domain);
    for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] = fn(f.node(j));
    return f;
}

SampledFunction SampledFunction::hat(const DyadicIndex& idx, std::int64_t lo, std::int64_t hi,
                                     int level, Domain domain) {
    if (idx.level > level) throw resolution_error("grid too coarse for the requested hat");
    SampledFunction f = zero(lo, hi, level, domain);
    for (std::size_t j = 0; j < f.values.size(); ++j)
        f.values[j] = hat_eval(idx, f.node(j), domain);
    return f;
}

double SampledFunction::node(std::size_t j) const {
    return static_cast<double>(lo) + std::ldexp(static_cast<double>(j), -level);
}

double SampledFunction::value_at(double x) const {
    const double u = std::ldexp(x - static_cast<double>(lo), level);
    if (u < 0.0 || u > static_cast<double>(values.size() - 1)) return 0.0;
    const double fj = std::floor(u);
    const std::size_t j = static_cast<std::size_t>(fj);
    if (j + 1 >= values.size()) return values.back();
    const double frac = u - fj;
    if (frac == 0.0) return values[j];
    return values[j] + frac * (values[j + 1] - values[j]);
}

SampledFunction SampledFunction::translate(std::int64_t t) const {
    SampledFunction f = *this;
    f.lo -= t;
    f.hi -= t;
    if (domain == Domain::FullLine || f.lo >= 0) return f;
    if (f.hi <= 0) return zero(0, 1, level, domain);
    const std::size_t drop = static_cast<std::size_t>((-f.lo) << level);
    f.values.erase(f.values.begin(), f.values.begin() + static_cast<std::ptrdiff_t>(drop));
    f.lo = 0;
    return f;
}

SampledFunction& SampledFunction::add_scaled(const SampledFunction& g, double c) {
    if (lo != g.lo || hi != g.hi || level != g.level || domain != g.domain)
        throw inconsistency_error("add_scaled needs matching windows and grids");
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += c * g.values[j];
    return *this;
}

SampledFunction& SampledFunction::scale(double c) {
    for (double& v : values) v *= c;
    return *this;
}

double SampledFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::weighted_sup_norm(const Weight& rho) const {
    if (rho.domain != domain) throw inconsistency_error("weight domain does not match");
    double m = 0.0;
    if (rho.is_step) {
        const std::int64_t per_cell = std::int64_t{1} << level;
        for (std::int64_t s = lo; s < hi; ++s) {
            double cell = 0.0;
            const std::size_t j0 = static_cast<std::size_t>((s - lo) << level);
            for (std::int64_t j = 0; j <= per_cell; ++j)
                cell = std::max(cell, std::abs(values[j0 + static_cast<std::size_t>(j)]));
            m = std::max(m, cell * rho.eval(static_cast<double>(s)));
        }
        if (values.back() != 0.0 && rho.in_window(static_cast<double>(hi)))
            m = std::max(m, std::abs(values.back()) * rho.eval(static_cast<double>(hi)));
        return m;
    }
    for (std::size_t j = 0; j < values.size(); ++j)
        m = std::max(m, std::abs(values[j]) * rho.eval(node(j)));
    return m;
}

double SampledFunction::weighted_lp_norm(const Weight& rho, double p) const {
    if (rho.domain != domain) throw inconsistency_error("weight domain does not match");
    if (!(p >= 1.0)) throw invalid_input_error("p must be >= 1");
    const double h = std::ldexp(1.0, -level);
    auto seg = [p](double a, double b) {
        if (a == b) return std::pow(std::abs(a), p);
        auto F = [p](double u) {
            const double m = std::pow(std::abs(u), p + 1.0) / (p + 1.0);
            return u < 0.0 ? -m : m;
        };
        return (F(b) - F(a)) / (b - a);
    };
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        const double mid = node(j) + 0.5 * h;
        total += h * seg(values[j], values[j + 1]) * rho.eval(mid);
    }
    return std::pow(total, 1.0 / p);
}

SparseSeq schauder_coefficients(const SampledFunction& f, int max_level) {
    const int top = max_level < 0 ? f.level : max_level;
    if (top > f.level) throw resolution_error("grid too coarse for the requested level");
    SparseSeq a(f.domain == Domain::FullLine ? Universe::ZDyadic : Universe::NDyadic);
    auto node_value = [&](std::int64_t steps_from_lo) {
        return f.values[static_cast<std::size_t>(steps_from_lo)];
    };
    for (std::int64_t k = f.lo; k <= f.hi; ++k)
        a.set(DyadicIndex::integer(k), node_value((k - f.lo) << f.level));
    for (int n = 1; n <= top; ++n) {
        const std::int64_t half = std::int64_t{1} << (f.level - n); // grid steps in 2^-n
        for (std::int64_t k = f.lo; k < f.hi; ++k)
            for (std::int64_t num = 1; num < (std::int64_t{1} << n); num += 2) {
                const std::int64_t mid = ((k - f.lo) << f.level) + num * half;
                const double v =
                    node_value(mid) - 0.5 * (node_value(mid - half) + node_value(mid + half));
                a.set(DyadicIndex(k, n, num), v);
            }
    }
    return a;
}

SampledFunction schauder_reconstruct(const SparseSeq& a, std::int64_t lo, std::int64_t hi,
                                     int level, Domain domain) {
    SampledFunction f = SampledFunction::zero(lo, hi, level, domain);
    for (const auto& [idx, v] : a.entries) {
        (void)v;
        if (idx.level > level) throw resolution_error("grid too coarse for a coefficient");
        if (idx.k < lo || idx.k > hi || (idx.level > 0 && idx.k >= hi))
            throw window_error("coefficient peak outside the window");
    }
    auto at = [&](std::int64_t steps) -> double& {
        return f.values[static_cast<std::size_t>(steps)];
    };
    for (std::int64_t k = lo; k <= hi; ++k)
        at((k - lo) << level) = a.at(DyadicIndex::integer(k));
    for (int n = 1; n <= level; ++n) {
        const std::int64_t half = std::int64_t{1} << (level - n);
        for (std::int64_t k = lo; k < hi; ++k)
            for (std::int64_t num = 1; num < (std::int64_t{1} << n); num += 2) {
                const std::int64_t mid = ((k - lo) << level) + num * half;
                at(mid) = 0.5 * (at(mid - half) + at(mid + half)) + a.at(DyadicIndex(k, n, num));
            }
    }
    return f;
}

SparseSeq discretize_unit_cells(const SampledFunction& f) {
    SparseSeq x(f.domain == Domain::FullLine ? Universe::Z : Universe::N);
    const double h = std::ldexp(1.0, -f.level);
    const std::int64_t per_cell = std::int64_t{1} << f.level;
    for (std::int64_t k = f.lo; k < f.hi; ++k) {
        const std::size_t j0 = static_cast<std::size_t>((k - f.lo) << f.level);
        double cell = 0.0;
        for (std::int64_t j = 0; j < per_cell; ++j)
            cell += 0.5 * (f.values[j0 + static_cast<std::size_t>(j)] +
                           f.values[j0 + static_cast<std::size_t>(j) + 1]);
        x.set(DyadicIndex::integer(k), cell * h);
    }
    return x;
}

} // namespace lindyn
