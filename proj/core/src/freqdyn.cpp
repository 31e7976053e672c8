#include "lindyn/freqdyn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "lindyn/errors.hpp"

namespace lindyn {
namespace {

constexpr double kLogSlack = 1e-9;

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return std::string(buf);
}

std::string str(const DyadicIndex& s) {
    if (s.level == 0) return std::to_string(s.k);
    return fmt("%lld+%lld/2^%d", static_cast<long long>(s.k), static_cast<long long>(s.num),
               s.level);
}

void record(ConditionVerdict& v, std::string witness) {
    ++v.violation_count;
    if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back(std::move(witness));
}

void settle(ConditionVerdict& v) { v.holds = v.violation_count == 0; }

void density_condition(const FrequencySets& fs, double min_density,
                       std::vector<DensityEstimate>& out, ConditionVerdict& v) {
    for (int p = 1; p <= fs.p_max(); ++p) {
        out.push_back(lower_density(fs.E[p - 1], fs.horizon));
        if (!(out.back().value > min_density))
            record(v, fmt("E_%d density proxy %.3g at m=%lld is not above %.3g", p,
                          out.back().value, static_cast<long long>(out.back().argmin),
                          min_density));
    }
    settle(v);
}

std::vector<double> canonical_alpha(const PseudoShift& T, const std::vector<double>& psi) {
    std::vector<double> alpha;
    alpha.reserve(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j)
        alpha.push_back(j == 0 ? 2.0
                               : 4.0 * alpha.back() * std::pow(T.ratio_R, 2.0 * psi[j]) + 1.0);
    return alpha;
}

std::int64_t thinning_stride(double psi) {
    return 2 * static_cast<std::int64_t>(std::floor(psi)) + 3;
}

std::vector<std::int64_t> thin_by_stride(const std::vector<std::int64_t>& e,
                                         std::int64_t stride) {
    std::vector<std::int64_t> out;
    for (std::size_t j = 0; j < e.size(); j += static_cast<std::size_t>(stride))
        out.push_back(e[j]);
    return out;
}

} // namespace

DensityEstimate lower_density(const std::vector<std::int64_t>& a, std::int64_t horizon) {
    if (horizon < 1) throw invalid_input_error("lower_density: horizon must be >= 1");
    std::int64_t prev = 0;
    for (std::int64_t n : a) {
        if (n < 1) throw invalid_input_error("lower_density: elements must be >= 1");
        if (n <= prev)
            throw invalid_input_error("lower_density: the list must be strictly increasing");
        prev = n;
    }
    const std::int64_t lo = (horizon + 1) / 2;
    std::size_t idx = 0;
    std::int64_t count = 0;
    while (idx < a.size() && a[idx] < lo) {
        ++count;
        ++idx;
    }
    std::int64_t best_c = -1, best_m = 1;
    for (std::int64_t m = lo; m <= horizon; ++m) {
        while (idx < a.size() && a[idx] <= m) {
            ++count;
            ++idx;
        }
        if (best_c < 0 || static_cast<__int128>(count) * best_m <
                              static_cast<__int128>(best_c) * m) {
            best_c = count;
            best_m = m;
        }
    }
    DensityEstimate out;
    out.value = static_cast<double>(best_c) / static_cast<double>(best_m);
    out.argmin = best_m;
    out.horizon = horizon;
    return out;
}

double continuous_lower_density(std::vector<std::pair<double, double>> intervals,
                                double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw invalid_input_error("continuous_lower_density: horizon must be positive");
    for (const auto& [a, b] : intervals)
        if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b <= a)
            throw invalid_input_error(
                "continuous_lower_density: intervals must satisfy 0 <= a < b");
    std::sort(intervals.begin(), intervals.end());
    std::vector<double> prefix(intervals.size() + 1, 0.0);
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (i > 0 && intervals[i].first < intervals[i - 1].second)
            throw invalid_input_error("continuous_lower_density: intervals overlap");
        prefix[i + 1] = prefix[i] + (intervals[i].second - intervals[i].first);
    }
    auto measure_upto = [&](double t) {
        std::size_t j = 0;
        while (j < intervals.size() && intervals[j].first < t) ++j;
        if (j == 0) return 0.0;
        return prefix[j - 1] + std::min(intervals[j - 1].second, t) - intervals[j - 1].first;
    };
    // m(t)/t cannot decrease inside an interval and falls on gaps, so the window
    // minimum sits at a window edge or just before an interval opens.
    std::vector<double> candidates = {horizon / 2.0, horizon};
    for (const auto& [a, b] : intervals) {
        (void)b;
        if (a > horizon / 2.0 && a < horizon) candidates.push_back(a);
    }
    double best = std::numeric_limits<double>::infinity();
    for (double t : candidates) best = std::min(best, measure_upto(t) / t);
    return std::min(best, 1.0);
}

void FrequencySets::validate() const {
    if (E.empty()) throw invalid_input_error("frequency sets: empty family");
    if (M.size() != E.size())
        throw invalid_input_error("frequency sets: one M(p) per set is required");
    if (horizon < 1) throw invalid_input_error("frequency sets: horizon must be >= 1");
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (!(M[i] > 0.0) || !std::isfinite(M[i]))
            throw invalid_input_error("frequency sets: M(p) must be positive and finite");
        std::int64_t prev = 0;
        for (std::int64_t n : E[i]) {
            if (n < 1) throw invalid_input_error("frequency sets: elements must be >= 1");
            if (n <= prev)
                throw invalid_input_error("frequency sets: sets must be strictly increasing");
            if (n > horizon)
                throw invalid_input_error("frequency sets: element beyond the horizon");
            prev = n;
        }
    }
}

FrequencySets generate_frequency_sets(int p_max, std::int64_t horizon, std::int64_t spacing,
                                      std::vector<double> M) {
    if (p_max < 1) throw invalid_input_error("generate_frequency_sets: p_max must be >= 1");
    if (spacing < 1) throw invalid_input_error("generate_frequency_sets: spacing must be >= 1");
    if (horizon < 1) throw invalid_input_error("generate_frequency_sets: horizon must be >= 1");
    if (static_cast<int>(M.size()) != p_max)
        throw invalid_input_error("generate_frequency_sets: one M(p) per set is required");
    for (double m : M)
        if (!(m > 0.0) || !std::isfinite(m))
            throw invalid_input_error("generate_frequency_sets: M(p) must be positive");

    const std::int64_t modulus = spacing * (p_max + 1);
    FrequencySets fs;
    fs.horizon = horizon;
    fs.M = std::move(M);
    fs.E.resize(p_max);
    for (int p = 1; p <= p_max; ++p)
        for (std::int64_t n = p * spacing; n <= horizon; n += modulus)
            fs.E[p - 1].push_back(n);

    // re-verify the claims the congruence layout is supposed to deliver
    std::vector<std::pair<std::int64_t, int>> merged;
    for (int p = 1; p <= p_max; ++p) {
        if (fs.E[p - 1].empty())
            throw generation_error(fmt("E_%d is empty: horizon %lld is below %lld", p,
                                       static_cast<long long>(horizon),
                                       static_cast<long long>(p * spacing)));
        for (std::size_t j = 1; j < fs.E[p - 1].size(); ++j)
            if (fs.E[p - 1][j] - fs.E[p - 1][j - 1] != modulus)
                throw generation_error(fmt("E_%d gap differs from the modulus %lld", p,
                                           static_cast<long long>(modulus)));
        for (std::int64_t n : fs.E[p - 1]) merged.emplace_back(n, p);
        const DensityEstimate d = lower_density(fs.E[p - 1], horizon);
        if (!(d.value > 0.0))
            throw generation_error(
                fmt("E_%d has zero density proxy: horizon %lld is too small for the "
                    "modulus %lld",
                    p, static_cast<long long>(horizon), static_cast<long long>(modulus)));
    }
    std::sort(merged.begin(), merged.end());
    for (std::size_t j = 1; j < merged.size(); ++j)
        if (merged[j].second != merged[j - 1].second &&
            merged[j].first - merged[j - 1].first < spacing)
            throw generation_error(fmt("E_%d and E_%d come within %lld of each other",
                                       merged[j - 1].second, merged[j].second,
                                       static_cast<long long>(merged[j].first -
                                                              merged[j - 1].first)));
    return fs;
}

ShiftFhReport check_pseudo_shift_fh(const PseudoShift& T, const FrequencySets& fs,
                                    const ShiftFhParams& params) {
    fs.validate();
    ShiftFhReport rep;
    rep.horizon = fs.horizon;
    const int pmax = fs.p_max();

    density_condition(fs, params.min_density, rep.densities, rep.density);

    std::vector<std::vector<DyadicIndex>> W(pmax);
    for (int p = 1; p <= pmax; ++p) W[p - 1] = T.exhaustion(p);

    // (b) shifted exhaustion sets from distinct frequency sets never meet
    std::unordered_map<DyadicIndex, std::pair<int, std::int64_t>, DyadicIndexHash> seen;
    for (int p = 1; p <= pmax; ++p)
        for (std::int64_t n : fs.E[p - 1])
            for (const DyadicIndex& s : W[p - 1]) {
                const DyadicIndex i = T.phi(n, s);
                auto [it, fresh] = seen.emplace(i, std::make_pair(p, n));
                if (!fresh && it->second.first != p)
                    record(rep.separation,
                           fmt("phi_%lld(W_%d) meets phi_%lld(W_%d) at %s",
                               static_cast<long long>(n), p,
                               static_cast<long long>(it->second.second), it->second.first,
                               str(i).c_str()));
            }
    settle(rep.separation);

    // (c) b_s^n runs away along each E_p: terminal floor plus quartile growth
    const double log_floor = std::log(params.growth_floor);
    const double log_factor = std::log(params.growth_factor);
    for (int p = 1; p <= pmax; ++p) {
        const auto& E = fs.E[p - 1];
        if (E.empty()) continue;
        for (const DyadicIndex& s : W[p - 1]) {
            std::vector<double> lb;
            lb.reserve(E.size());
            for (std::int64_t n : E) lb.push_back(T.log_b(n, s));
            if (!(lb.back() >= log_floor)) {
                record(rep.growth,
                       fmt("b at n=%lld, s=%s is %.6g, below the floor %.3g",
                           static_cast<long long>(E.back()), str(s).c_str(),
                           std::exp(lb.back()), params.growth_floor));
                continue;
            }
            if (lb.size() >= 4) {
                const std::size_t q = lb.size() / 4;
                const double head = *std::max_element(lb.begin(), lb.begin() + q);
                const double tail = *std::min_element(lb.end() - q, lb.end());
                if (!(tail >= head + log_factor))
                    record(rep.growth,
                           fmt("b along E_%d at s=%s grows by %.3g < factor %.3g", p,
                               str(s).c_str(), std::exp(tail - head), params.growth_factor));
            }
        }
    }
    settle(rep.growth);

    // (d) colliding orbit weights from different times stay dominated:
    //     b_s^n / b_t^m <= 1 / (M(p) M(q)) whenever phi_n(s) = phi_m(t), n != m
    std::vector<double> logM(pmax);
    for (int p = 1; p <= pmax; ++p) logM[p - 1] = std::log(fs.M[p - 1]);
    for (int q = 1; q <= pmax; ++q)
        for (std::int64_t m : fs.E[q - 1])
            for (const DyadicIndex& t : W[q - 1]) {
                const DyadicIndex i = T.phi(m, t);
                const double log_bm = T.log_b(m, t);
                for (int p = 1; p <= pmax; ++p)
                    for (std::int64_t n : fs.E[p - 1]) {
                        if (n == m) continue;
                        const auto s = T.phi_inv(n, i);
                        if (!s) continue;
                        if (T.log_b(n, *s) - log_bm > -(logM[p - 1] + logM[q - 1]) + kLogSlack)
                            record(rep.domination,
                                   fmt("b_s^n / b_t^m = %.6g at n=%lld, m=%lld, t=%s exceeds "
                                       "1/(M(%d)M(%d))",
                                       std::exp(T.log_b(n, *s) - log_bm),
                                       static_cast<long long>(n), static_cast<long long>(m),
                                       str(t).c_str(), p, q));
                    }
            }
    settle(rep.domination);
    return rep;
}

C0FhReport check_c0_translation_fh(const Weight& rho, const FrequencySets& fs,
                                   std::int64_t horizon, const C0FhParams& params) {
    fs.validate();
    if (horizon < 1)
        throw invalid_input_error("check_c0_translation_fh: horizon must be >= 1");
    C0FhReport rep;
    rep.horizon = horizon;
    const int pmax = fs.p_max();
    const bool half = rho.domain == Domain::HalfLine;
    const std::int64_t k_lo = half ? 0 : -horizon;

    // hypothesis: adjacent ratios of the weight stay bounded on the window
    double max_dlog = 0.0;
    for (std::int64_t k = k_lo; k < horizon; ++k) {
        const double d = rho.log_eval(static_cast<double>(k + 1)) -
                         rho.log_eval(static_cast<double>(k));
        if (!std::isfinite(d))
            throw hypothesis_error(fmt("adjacent weight ratio at k=%lld is not finite",
                                       static_cast<long long>(k)));
        max_dlog = std::max(max_dlog, std::abs(d));
    }
    rep.fitted_ratio = std::exp(max_dlog);
    if (!(rep.fitted_ratio < params.ratio_cap))
        throw hypothesis_error(fmt("adjacent weight ratio %.3g reaches the cap %.3g",
                                   rep.fitted_ratio, params.ratio_cap));

    density_condition(fs, params.min_density, rep.densities, rep.density);

    // (b) the fattened sets E_p + [-p, p] are pairwise disjoint
    std::unordered_map<std::int64_t, std::pair<int, std::int64_t>> seen;
    for (int p = 1; p <= pmax; ++p) {
        const std::int64_t off_lo = half ? 0 : -p;
        for (std::int64_t n : fs.E[p - 1])
            for (std::int64_t k = off_lo; k <= p; ++k) {
                auto [it, fresh] = seen.emplace(n + k, std::make_pair(p, n));
                if (!fresh && it->second.first != p)
                    record(rep.separation,
                           fmt("E_%d + [%lld, %d] meets E_%d around %lld", p,
                               static_cast<long long>(off_lo), p, it->second.first,
                               static_cast<long long>(n + k)));
            }
    }
    settle(rep.separation);

    // (c) rho vanishes along each E_p: last-quartile max below the tolerance
    const double log_tol = std::log(params.decay_tol);
    for (int p = 1; p <= pmax; ++p) {
        const auto& E = fs.E[p - 1];
        if (E.empty()) continue;
        const std::size_t q = std::max<std::size_t>(1, E.size() / 4);
        double worst = -std::numeric_limits<double>::infinity();
        std::int64_t worst_n = E.back();
        for (std::size_t j = E.size() - q; j < E.size(); ++j) {
            const double v = rho.log_eval(static_cast<double>(E[j]));
            if (v > worst) {
                worst = v;
                worst_n = E[j];
            }
        }
        if (!(worst < log_tol))
            record(rep.decay, fmt("rho(%lld) = %.6g stays above %.3g along E_%d",
                                  static_cast<long long>(worst_n), std::exp(worst),
                                  params.decay_tol, p));
    }
    settle(rep.decay);

    // (d) rho(m - n) <= 1 / (M(p) M(q)) across distinct times
    std::vector<double> logM(pmax);
    for (int p = 1; p <= pmax; ++p) logM[p - 1] = std::log(fs.M[p - 1]);
    for (int p = 1; p <= pmax; ++p)
        for (int q = 1; q <= pmax; ++q)
            for (std::int64_t n : fs.E[p - 1])
                for (std::int64_t m : fs.E[q - 1]) {
                    if (n == m) continue;
                    if (half && m < n) continue;
                    if (rho.log_eval(static_cast<double>(m - n)) >
                        -(logM[p - 1] + logM[q - 1]) + kLogSlack)
                        record(rep.domination,
                               fmt("rho(%lld) = %.6g exceeds 1/(M(%d)M(%d)) for n=%lld, "
                                   "m=%lld",
                                   static_cast<long long>(m - n),
                                   rho.eval(static_cast<double>(m - n)), p, q,
                                   static_cast<long long>(n), static_cast<long long>(m)));
                }
    settle(rep.domination);

    // derived step bound rho(k + n) <= M^|k| rho(n) with the fitted ratio
    const double log_ratio = std::log(rep.fitted_ratio);
    for (int p = 1; p <= pmax; ++p)
        for (std::int64_t n : fs.E[p - 1])
            for (std::int64_t k = (half ? 0 : -pmax); k <= pmax; ++k) {
                const double lhs = rho.log_eval(static_cast<double>(n + k));
                const double rhs = std::abs(static_cast<double>(k)) * log_ratio +
                                   rho.log_eval(static_cast<double>(n));
                if (lhs > rhs + kLogSlack * (1.0 + std::abs(static_cast<double>(k))))
                    record(rep.step_bound,
                           fmt("rho(%lld%+lld) breaks the M^|k| rho(n) bound",
                               static_cast<long long>(n), static_cast<long long>(k)));
            }
    settle(rep.step_bound);
    return rep;
}

std::vector<SparseSeq> default_dense_targets(const PseudoShift& T, int p_max) {
    if (p_max < 1) throw invalid_input_error("default_dense_targets: p_max must be >= 1");
    std::vector<SparseSeq> targets;
    targets.reserve(p_max);
    for (int p = 1; p <= p_max; ++p) {
        SparseSeq y(T.universe);
        const double amp = std::pow(T.ratio_R, static_cast<double>(p - 1));
        for (const DyadicIndex& s : T.exhaustion(p - 1)) y.set(s, amp);
        targets.push_back(std::move(y));
    }
    return targets;
}

double orbit_distance(const PseudoShift& T, const LogSeq& x, std::int64_t n,
                      const SparseSeq& y) {
    const LogSeq tx = pseudo_shift_apply(T, x, n);
    double dist = 0.0;
    for (const auto& [i, v] : tx.entries)
        dist = std::max(dist, std::abs(v.to_double() - y.at(i)));
    for (const auto& [i, v] : y.entries)
        if (!tx.entries.count(i)) dist = std::max(dist, std::abs(v));
    return dist;
}

FhVector construct_fh_vector(const PseudoShift& T, const FrequencySets& fs,
                             const std::vector<SparseSeq>& targets, std::int64_t horizon) {
    fs.validate();
    if (horizon < 1) throw invalid_input_error("construct_fh_vector: horizon must be >= 1");
    const int pmax = fs.p_max();
    if (static_cast<int>(targets.size()) != pmax)
        throw invalid_input_error("construct_fh_vector: one target per set is required");
    if (!(T.ratio_R > 1.0))
        throw invalid_input_error("construct_fh_vector: the ratio constant must exceed 1");
    const double logR = std::log(T.ratio_R);

    FhVector out;
    out.x = LogSeq(T.universe);
    ConstructionTrace& tr = out.trace;
    tr.horizon = horizon;
    tr.max_log_entry = -std::numeric_limits<double>::infinity();

    std::vector<std::vector<DyadicIndex>> W(pmax);
    for (int p = 1; p <= pmax; ++p) {
        W[p - 1] = T.exhaustion(p);
        tr.psi.push_back(T.psi(p));
        tr.stride.push_back(thinning_stride(tr.psi.back()));
    }
    tr.alpha = canonical_alpha(T, tr.psi);

    for (int p = 1; p <= pmax; ++p) {
        if (!(std::log(fs.M[p - 1]) >= 4.0 * p * logR - kLogSlack))
            throw invalid_input_error(fmt("construct_fh_vector: M(%d) = %.6g sits below "
                                          "R^%d = %.6g",
                                          p, fs.M[p - 1], 4 * p,
                                          std::pow(T.ratio_R, 4.0 * p)));
        const SparseSeq& y = targets[p - 1];
        if (y.universe != T.universe)
            throw invalid_input_error(fmt("construct_fh_vector: target %d universe mismatch", p));
        std::unordered_set<DyadicIndex, DyadicIndexHash> wset(W[p - 1].begin(), W[p - 1].end());
        double norm = 0.0;
        for (const auto& [i, v] : y.entries) {
            if (!wset.count(i))
                throw invalid_input_error(
                    fmt("construct_fh_vector: target %d has support outside W_%d at %s", p, p,
                        str(i).c_str()));
            norm = std::max(norm, std::abs(v));
        }
        tr.target_norm.push_back(norm);
        if (!(norm < std::pow(T.ratio_R, static_cast<double>(p))))
            throw invalid_input_error(fmt("construct_fh_vector: target %d has norm %.6g, not "
                                          "below R^%d",
                                          p, norm, p));
    }

    // growth filter to E_p', then stride thinning to G_p
    for (int p = 1; p <= pmax; ++p) {
        std::vector<std::int64_t> ep;
        for (std::int64_t n : fs.E[p - 1]) {
            if (n > horizon) break;
            bool big = true;
            for (const DyadicIndex& s : W[p - 1])
                if (!(T.log_b(n, s) > 4.0 * p * logR)) {
                    big = false;
                    break;
                }
            if (big) ep.push_back(n);
        }
        std::vector<std::int64_t> g = thin_by_stride(ep, tr.stride[p - 1]);
        if (g.empty())
            throw horizon_error(fmt("construct_fh_vector: G_%d is empty at horizon %lld", p,
                                    static_cast<long long>(horizon)));
        tr.E_prime.push_back(std::move(ep));
        tr.G.push_back(std::move(g));
    }

    for (int p = 1; p <= pmax; ++p)
        for (std::int64_t n : tr.G[p - 1])
            for (const auto& [s, ys] : targets[p - 1].entries) {
                const DyadicIndex i = T.phi(n, s);
                if (!out.x.at(i).is_zero())
                    throw inconsistency_error(
                        fmt("construct_fh_vector: index %s assigned twice (p=%d, n=%lld); "
                            "the separation hypothesis fails on these sets",
                            str(i).c_str(), p, static_cast<long long>(n)));
                const double lv = std::log(std::abs(ys)) - T.log_b(n, s);
                if (!(lv <= -3.0 * p * logR + kLogSlack))
                    throw inconsistency_error(
                        fmt("construct_fh_vector: entry at p=%d, n=%lld breaks the R^-%d "
                            "tail bound",
                            p, static_cast<long long>(n), 3 * p));
                out.x.set(i, LogScalar::from_log(ys >= 0.0 ? 1 : -1, lv));
                tr.max_log_entry = std::max(tr.max_log_entry, lv);
            }
    tr.support_size = out.x.support_size();

    for (int p = 1; p <= pmax; ++p) {
        double err = 0.0;
        for (std::int64_t n : tr.G[p - 1])
            err = std::max(err, orbit_distance(T, out.x, n, targets[p - 1]));
        tr.orbit_error.push_back(err);
        tr.orbit_error_bound.push_back(std::pow(T.ratio_R, -static_cast<double>(p)));
    }
    return out;
}

ExtractionResult extract_frequency_sets(const PseudoShift& T, const LogSeq& x,
                                        const ExtractionParams& params) {
    if (params.p_max < 1)
        throw invalid_input_error("extract_frequency_sets: p_max must be >= 1");
    if (params.horizon < 1)
        throw invalid_input_error("extract_frequency_sets: horizon must be >= 1");
    if (x.universe != T.universe)
        throw invalid_input_error("extract_frequency_sets: universe mismatch");
    const int pmax = params.p_max;

    ExtractionResult out;
    for (int p = 1; p <= pmax; ++p) out.psi.push_back(T.psi(p));
    if (params.alpha.empty()) {
        out.alpha = canonical_alpha(T, out.psi);
    } else {
        if (static_cast<int>(params.alpha.size()) != pmax)
            throw invalid_input_error("extract_frequency_sets: one alpha per level is required");
        for (int p = 1; p <= pmax; ++p) {
            const double need =
                p == 1 ? 2.0
                       : 4.0 * params.alpha[p - 2] * std::pow(T.ratio_R, 2.0 * out.psi[p - 1]);
            const bool ok = p == 1 ? params.alpha[0] == 2.0 : params.alpha[p - 1] > need;
            if (!ok)
                throw invalid_input_error(
                    fmt("extract_frequency_sets: alpha_%d = %.6g violates the ladder "
                        "(needs %s %.6g)",
                        p, params.alpha[p - 1], p == 1 ? "=" : ">", need));
        }
        out.alpha = params.alpha;
    }

    std::vector<std::vector<DyadicIndex>> W(pmax);
    std::vector<std::unordered_set<DyadicIndex, DyadicIndexHash>> wsets(pmax);
    for (int p = 1; p <= pmax; ++p) {
        W[p - 1] = T.exhaustion(p);
        wsets[p - 1].insert(W[p - 1].begin(), W[p - 1].end());
    }

    struct Entry {
        DyadicIndex i;
        int sign;
        double log_abs;
    };
    std::vector<Entry> supp;
    supp.reserve(x.support_size());
    for (const auto& [i, v] : x.entries) supp.push_back({i, v.sign, v.log_abs});

    const int nthreads = std::max(1, params.threads);
    std::vector<std::vector<std::vector<std::int64_t>>> parts(
        nthreads, std::vector<std::vector<std::int64_t>>(pmax));
    auto work = [&](int tid, std::int64_t n_lo, std::int64_t n_hi) {
        std::vector<double> dist(pmax);
        std::vector<std::size_t> hits(pmax);
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            std::fill(dist.begin(), dist.end(), 0.0);
            std::fill(hits.begin(), hits.end(), 0);
            for (const Entry& e : supp) {
                const auto s = T.phi_inv(n, e.i);
                if (!s) continue;
                const double v = e.sign * std::exp(e.log_abs + T.log_b(n, *s));
                for (int p = 0; p < pmax; ++p) {
                    if (wsets[p].count(*s)) {
                        dist[p] = std::max(dist[p], std::abs(v - out.alpha[p]));
                        ++hits[p];
                    } else {
                        dist[p] = std::max(dist[p], std::abs(v));
                    }
                }
            }
            for (int p = 0; p < pmax; ++p) {
                double d = dist[p];
                if (hits[p] < W[p].size()) d = std::max(d, out.alpha[p]);
                if (d < 1.0 / (p + 1)) parts[tid][p].push_back(n);
            }
        }
    };
    if (nthreads == 1) {
        work(0, 1, params.horizon);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (params.horizon + nthreads - 1) / nthreads;
        for (int tid = 0; tid < nthreads; ++tid) {
            const std::int64_t lo = 1 + tid * chunk;
            const std::int64_t hi = std::min<std::int64_t>(params.horizon, lo + chunk - 1);
            if (lo > hi) break;
            pool.emplace_back(work, tid, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    out.F.assign(pmax, {});
    for (int tid = 0; tid < nthreads; ++tid)
        for (int p = 0; p < pmax; ++p)
            out.F[p].insert(out.F[p].end(), parts[tid][p].begin(), parts[tid][p].end());

    out.sets.horizon = params.horizon;
    out.all_nonempty = true;
    for (int p = 1; p <= pmax; ++p) {
        out.sets.E.push_back(thin_by_stride(out.F[p - 1], thinning_stride(out.psi[p - 1])));
        out.sets.M.push_back(static_cast<double>(p));
        out.densities.push_back(lower_density(out.sets.E.back(), params.horizon));
        if (out.sets.E.back().empty()) out.all_nonempty = false;
    }

    // re-verify the two-sided estimate alpha_p/2 <= |b_s^n x_{phi_n(s)}| < 2 alpha_p
    for (int p = 1; p <= pmax; ++p)
        for (std::int64_t n : out.sets.E[p - 1])
            for (const DyadicIndex& s : W[p - 1]) {
                const LogScalar xv = x.at(T.phi(n, s));
                const double va =
                    xv.is_zero() ? 0.0 : std::exp(xv.log_abs + T.log_b(n, s));
                if (!(va >= out.alpha[p - 1] / 2.0 && va < 2.0 * out.alpha[p - 1])) {
                    ++out.claim_violations;
                    if (out.first_violation.empty())
                        out.first_violation =
                            fmt("|b_s^n x| = %.6g at n=%lld, s=%s leaves [alpha_%d/2, "
                                "2 alpha_%d)",
                                va, static_cast<long long>(n), str(s).c_str(), p, p);
                }
            }
    return out;
}

SeriesCheckReport check_unconditional_series(const SampledFunction& f, const Weight& rho,
                                             int trials, std::int64_t horizon, double eps,
                                             std::uint64_t seed) {
    if (trials < 1) throw invalid_input_error("series check: trials must be >= 1");
    if (horizon < 2) throw invalid_input_error("series check: horizon must be >= 2");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw invalid_input_error("series check: eps must be positive");
    if (f.domain != rho.domain) throw invalid_input_error("series check: domain mismatch");
    if (f.values.empty() || f.values.front() != 0.0 || f.values.back() != 0.0)
        throw invalid_input_error("series check: the function must vanish at the window edges");

    SeriesCheckReport rep;
    rep.eps = eps;
    rep.bound = 2.0 * eps;
    rep.horizon = horizon;
    rep.seed = seed;
    const bool half = f.domain == Domain::HalfLine;

    // support data: nonzero nodes, and per-cell sup of |f| for step weights
    std::vector<std::pair<double, double>> nodes; // (x, |f(x)|)
    for (std::size_t j = 0; j < f.node_count(); ++j)
        if (f.values[j] != 0.0) nodes.emplace_back(f.node(j), std::abs(f.values[j]));
    if (nodes.empty()) {
        rep.threshold_backward = 1;
        rep.threshold_forward = 1;
        rep.trials = static_cast<std::size_t>(trials);
        rep.bounded = true;
        return rep;
    }
    // overlap count of integer translates of the support fixes the per-translate
    // budget: k translates of level eps/k' keep every sum below 2 eps
    const double width = nodes.back().first - nodes.front().first;
    const double k_overlap = std::floor(width) + 1.0;
    const double eps_translate = 2.0 * eps / k_overlap;

    struct Cell {
        std::int64_t s;
        double fmax;
    };
    std::vector<Cell> cells;
    for (std::int64_t s = f.lo; s < f.hi; ++s) {
        const std::size_t j_lo = static_cast<std::size_t>((s - f.lo) << f.level);
        const std::size_t j_hi = static_cast<std::size_t>((s + 1 - f.lo) << f.level);
        double m = 0.0;
        for (std::size_t j = j_lo; j <= j_hi; ++j) m = std::max(m, std::abs(f.values[j]));
        if (m > 0.0) cells.push_back({s, m});
    }

    auto envelope = [&](std::int64_t t, bool backward) {
        double worst = 0.0;
        if (rho.is_step) {
            for (const Cell& c : cells) {
                const double arg = backward ? static_cast<double>(c.s - t)
                                            : static_cast<double>(c.s + t);
                if (half && arg < 0.0) continue;
                worst = std::max(worst, c.fmax * rho.eval(arg));
            }
        } else {
            for (const auto& [xj, vj] : nodes) {
                const double arg = backward ? xj - static_cast<double>(t)
                                            : xj + static_cast<double>(t);
                if (half && arg < 0.0) continue;
                worst = std::max(worst, vj * rho.eval(arg));
            }
        }
        return worst;
    };
    auto find_threshold = [&](bool backward) {
        std::optional<std::int64_t> t0;
        for (std::int64_t t = horizon; t >= 1; --t) {
            if (envelope(t, backward) <= eps_translate)
                t0 = t;
            else
                break;
        }
        return t0;
    };
    rep.threshold_backward = find_threshold(true);
    rep.threshold_forward = find_threshold(false);

    const std::int64_t lo_n =
        std::max(rep.threshold_backward.value_or(1), rep.threshold_forward.value_or(1));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> pick(lo_n, horizon);
    std::uniform_int_distribution<int> size_dist(1, 32);
    for (int trial = 0; trial < trials; ++trial) {
        std::set<std::int64_t> fset;
        const int want = size_dist(rng);
        for (int j = 0; j < want; ++j) fset.insert(pick(rng));
        const std::vector<std::int64_t> F(fset.begin(), fset.end());
        const std::int64_t n_max = F.back();

        const std::int64_t lo_T = half ? std::max<std::int64_t>(0, f.lo - n_max)
                                       : f.lo - n_max;
        const SampledFunction gT = SampledFunction::from_callable(
            lo_T, f.hi, f.level,
            [&](double xx) {
                double sum = 0.0;
                for (std::int64_t n : F) sum += f.value_at(xx + static_cast<double>(n));
                return sum;
            },
            f.domain);
        const SampledFunction gS = SampledFunction::from_callable(
            f.lo, f.hi + n_max, f.level,
            [&](double xx) {
                double sum = 0.0;
                for (std::int64_t n : F) sum += f.value_at(xx - static_cast<double>(n));
                return sum;
            },
            f.domain);
        const double norm_T = gT.weighted_sup_norm(rho);
        const double norm_S = gS.weighted_sup_norm(rho);
        rep.max_norm_backward = std::max(rep.max_norm_backward, norm_T);
        rep.max_norm_forward = std::max(rep.max_norm_forward, norm_S);
        if (norm_T > rep.bound || norm_S > rep.bound) {
            ++rep.violations;
            if (!rep.witness) rep.witness = SeriesTrial{F, norm_T, norm_S};
        }
    }
    rep.trials = static_cast<std::size_t>(trials);
    rep.bounded =
        rep.threshold_backward && rep.threshold_forward && rep.violations == 0;
    return rep;
}

} // namespace lindyn
