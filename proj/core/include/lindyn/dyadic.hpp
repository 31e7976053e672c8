#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lindyn/errors.hpp"

namespace lindyn {

enum class Domain { FullLine, HalfLine };

/// Exact dyadic rational num / 2^level. Normalized: num odd, or (num, level) == (0, 0).
/// Index arithmetic stays in integers; doubles only appear at evaluation time.
struct DyadicRational {
    std::int64_t num = 0;
    int level = 0;

    DyadicRational() = default;
    DyadicRational(std::int64_t n, int lev);

    static DyadicRational integer(std::int64_t k) { return DyadicRational(k, 0); }

    double value() const;
    bool is_integer() const { return level == 0; }

    DyadicRational plus_int(std::int64_t m) const;
    DyadicRational minus(const DyadicRational& o) const;

    bool operator==(const DyadicRational& o) const { return num == o.num && level == o.level; }
    bool operator!=(const DyadicRational& o) const { return !(*this == o); }
    bool operator<(const DyadicRational& o) const;
    bool operator<=(const DyadicRational& o) const { return *this < o || *this == o; }
};

/// Basis index k + tau with k integer and tau = num/2^level in [0,1),
/// num odd for level >= 1 and tau = 0 encoded as level == num == 0.
/// level caps at 48 so all comparisons stay exact in 64-bit arithmetic.
struct DyadicIndex {
    std::int64_t k = 0;
    int level = 0;
    std::int64_t num = 0;

    DyadicIndex() = default;
    DyadicIndex(std::int64_t k_, int level_, std::int64_t num_);

    static DyadicIndex integer(std::int64_t k) { return DyadicIndex(k, 0, 0); }

    bool is_integer() const { return level == 0; }
    double value() const;
    DyadicRational point() const;         // k + tau as a dyadic rational
    DyadicRational tau_left() const;      // k + tau - 2^-level (level >= 1)
    DyadicRational tau_right() const;     // k + tau + 2^-level (level >= 1)
    DyadicIndex plus_int(std::int64_t m) const { return DyadicIndex(k + m, level, num); }

    bool operator==(const DyadicIndex& o) const {
        return k == o.k && level == o.level && num == o.num;
    }
    bool operator!=(const DyadicIndex& o) const { return !(*this == o); }
    bool operator<(const DyadicIndex& o) const; // order by real value
};

struct DyadicIndexHash {
    std::size_t operator()(const DyadicIndex& i) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(i.k) * 0x9e3779b97f4a7c15ull;
        h ^= (static_cast<std::uint64_t>(i.level) + 0x517cc1b727220a95ull) + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(i.num) * 0xbf58476d1ce4e5b9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Midpoints of level n: {0} for n == 0, odd numerators j/2^n for n >= 1.
std::vector<DyadicRational> dn_set(int n);

/// All dyadic points of level <= n in [0,1): size 2^n.
std::vector<DyadicRational> dtilde_set(int n);

/// Block number of the basis ordering: level + |k| on the full line, level + k on the half line.
int basis_block(const DyadicIndex& idx, Domain domain);

/// All indices of one block, sorted by value.
std::vector<DyadicIndex> basis_block_elements(int n, Domain domain);

/// Global rank: blocks in increasing order, usual order inside a block. Bijective onto
/// {0, 1, 2, ...}; rank 0 is the index 0.
std::uint64_t basis_rank(const DyadicIndex& idx, Domain domain);

/// First `count` indices of the ordering.
std::vector<DyadicIndex> basis_prefix(std::uint64_t count, Domain domain);

/// Exhaustion set number n: integers -n..n (0..n on the half line) plus all dyadic
/// shifts of level <= n. Size (2n+1)*2^n on the full line.
std::vector<DyadicIndex> wn_set(int n, Domain domain);

/// Tent function max{0, 1-|x|} scaled to the index: peak 1 at k+tau, support of width
/// 2^(1-level) (width 2 for integer indices). On the half line the index 0 uses the
/// half tent max{0, 1-x} on x >= 0.
double hat_eval(const DyadicIndex& idx, double x, Domain domain = Domain::FullLine);

} // namespace lindyn
