#include "lindyn/dyadic.hpp"

#include <algorithm>
#include <cmath>

namespace lindyn {

namespace {

constexpr int kMaxLevel = 48;

void check_level(int level) {
    if (level < 0 || level > kMaxLevel)
        throw resolution_error("dyadic level out of range [0, 48]: " + std::to_string(level));
}

} // namespace

DyadicRational::DyadicRational(std::int64_t n, int lev) : num(n), level(lev) {
    check_level(lev);
    while (level > 0 && (num & 1) == 0) {
        num >>= 1;
        --level;
    }
    if (num == 0) level = 0;
}

double DyadicRational::value() const {
    return static_cast<double>(num) * std::exp2(-level);
}

DyadicRational DyadicRational::plus_int(std::int64_t m) const {
    return DyadicRational(num + (m << level), level);
}

DyadicRational DyadicRational::minus(const DyadicRational& o) const {
    int lev = std::max(level, o.level);
    check_level(lev);
    return DyadicRational((num << (lev - level)) - (o.num << (lev - o.level)), lev);
}

bool DyadicRational::operator<(const DyadicRational& o) const {
    int lev = std::max(level, o.level);
    return (num << (lev - level)) < (o.num << (lev - o.level));
}

DyadicIndex::DyadicIndex(std::int64_t k_, int level_, std::int64_t num_)
    : k(k_), level(level_), num(num_) {
    check_level(level);
    if (level == 0) {
        if (num != 0) throw invalid_input_error("integer index must have num == 0");
    } else {
        if ((num & 1) == 0 || num < 1 || num >= (std::int64_t{1} << level))
            throw invalid_input_error("dyadic index numerator must be odd in [1, 2^level)");
    }
}

double DyadicIndex::value() const {
    return static_cast<double>(k) + static_cast<double>(num) * std::exp2(-level);
}

DyadicRational DyadicIndex::point() const {
    return DyadicRational(num + (k << level), level);
}

DyadicRational DyadicIndex::tau_left() const {
    if (level == 0) throw invalid_input_error("tau_left undefined for integer index");
    return DyadicRational((num - 1) + (k << level), level);
}

DyadicRational DyadicIndex::tau_right() const {
    if (level == 0) throw invalid_input_error("tau_right undefined for integer index");
    return DyadicRational((num + 1) + (k << level), level);
}

bool DyadicIndex::operator<(const DyadicIndex& o) const {
    if (k != o.k) return k < o.k;
    int lev = std::max(level, o.level);
    return (num << (lev - level)) < (o.num << (lev - o.level));
}

std::vector<DyadicRational> dn_set(int n) {
    check_level(n);
    if (n == 0) return {DyadicRational(0, 0)};
    std::vector<DyadicRational> out;
    out.reserve(std::size_t{1} << (n - 1));
    for (std::int64_t j = 1; j < (std::int64_t{1} << n); j += 2) out.emplace_back(j, n);
    return out;
}

std::vector<DyadicRational> dtilde_set(int n) {
    check_level(n);
    std::vector<DyadicRational> out;
    out.reserve(std::size_t{1} << n);
    for (int h = 0; h <= n; ++h) {
        auto dh = dn_set(h);
        out.insert(out.end(), dh.begin(), dh.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

int basis_block(const DyadicIndex& idx, Domain domain) {
    if (domain == Domain::HalfLine) {
        if (idx.k < 0) throw invalid_input_error("half-line index with negative integer part");
        return idx.level + static_cast<int>(idx.k);
    }
    return idx.level + static_cast<int>(idx.k < 0 ? -idx.k : idx.k);
}

std::vector<DyadicIndex> basis_block_elements(int n, Domain domain) {
    std::vector<DyadicIndex> out;
    if (n == 0) return {DyadicIndex::integer(0)};
    if (domain == Domain::HalfLine) {
        // block n: bases h = 0..n carrying the midpoints of level n-h
        for (int h = 0; h <= n; ++h)
            for (const auto& tau : dn_set(n - h))
                out.emplace_back(h, tau.level, tau.level == 0 ? 0 : tau.num);
    } else {
        // left family: bases -n..0 carrying midpoints of level 0..n,
        // right family: bases 1..n carrying midpoints of level n-1..0
        for (int h = 0; h <= n; ++h)
            for (const auto& tau : dn_set(h))
                out.emplace_back(-n + h, tau.level, tau.level == 0 ? 0 : tau.num);
        for (int h = 1; h <= n; ++h)
            for (const auto& tau : dn_set(n - h))
                out.emplace_back(h, tau.level, tau.level == 0 ? 0 : tau.num);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::uint64_t dn_size(int n) { return n == 0 ? 1 : (std::uint64_t{1} << (n - 1)); }

std::uint64_t tau_pos(const DyadicIndex& idx) {
    return idx.level == 0 ? 0 : static_cast<std::uint64_t>((idx.num - 1) / 2);
}

} // namespace

std::uint64_t basis_rank(const DyadicIndex& idx, Domain domain) {
    const int n = basis_block(idx, domain);
    if (n > 60) throw resolution_error("basis rank overflows past block 60");
    if (domain == Domain::HalfLine) {
        // blocks 0..n-1 hold 2^m elements each
        std::uint64_t start = (std::uint64_t{1} << n) - 1;
        std::uint64_t off = 0;
        for (int h = 0; h < static_cast<int>(idx.k); ++h) off += dn_size(n - h);
        return start + off + tau_pos(idx);
    }
    // full line: |block 0| = 1, |block m| = 3*2^(m-1)
    std::uint64_t start = n == 0 ? 0 : 3 * ((std::uint64_t{1} << (n - 1)) - 1) + 1;
    if (idx.k <= 0) {
        std::uint64_t off = idx.level == 0 ? 0 : (std::uint64_t{1} << (idx.level - 1));
        return start + off + tau_pos(idx);
    }
    std::uint64_t off = std::uint64_t{1} << n; // whole left family
    for (int h = 1; h < static_cast<int>(idx.k); ++h) off += dn_size(n - h);
    return start + off + tau_pos(idx);
}

std::vector<DyadicIndex> basis_prefix(std::uint64_t count, Domain domain) {
    std::vector<DyadicIndex> out;
    out.reserve(count);
    for (int n = 0; out.size() < count; ++n) {
        auto block = basis_block_elements(n, domain);
        for (const auto& idx : block) {
            if (out.size() == count) break;
            out.push_back(idx);
        }
    }
    return out;
}

std::vector<DyadicIndex> wn_set(int n, Domain domain) {
    check_level(n);
    std::vector<DyadicIndex> out;
    const std::int64_t k_lo = domain == Domain::HalfLine ? 0 : -static_cast<std::int64_t>(n);
    for (std::int64_t k = k_lo; k <= n; ++k)
        for (const auto& tau : dtilde_set(n))
            out.emplace_back(k, tau.level, tau.level == 0 ? 0 : tau.num);
    std::sort(out.begin(), out.end());
    return out;
}

double hat_eval(const DyadicIndex& idx, double x, Domain domain) {
    if (domain == Domain::HalfLine && x < 0.0) return 0.0;
    if (domain == Domain::HalfLine && idx.k == 0 && idx.level == 0) {
        // half tent at the origin
        double v = 1.0 - x;
        return v > 0.0 ? v : 0.0;
    }
    const double scale = std::exp2(idx.level);
    const double u = scale * (x - idx.value());
    const double v = 1.0 - (u < 0.0 ? -u : u);
    return v > 0.0 ? v : 0.0;
}

} // namespace lindyn
