#include "lindyn/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace lindyn {

namespace {

void check_domain(Domain domain, double x) {
    if (domain == Domain::HalfLine && x < 0.0)
        throw invalid_input_error("half-line weight evaluated at negative x");
}

} // namespace

double Weight::eval(double x) const {
    check_domain(domain, x);
    if (!in_window(x)) throw window_error("weight evaluated outside its sampled window");
    return eval_fn(x);
}

double Weight::log_eval(double x) const {
    check_domain(domain, x);
    if (!in_window(x)) throw window_error("weight evaluated outside its sampled window");
    return log_eval_fn(x);
}

bool Weight::in_window(double x) const {
    if (window_lo && x < *window_lo) return false;
    if (window_hi && x > *window_hi) return false;
    return true;
}

Weight Weight::constant(double c, Domain domain) {
    if (!(c > 0.0) || !std::isfinite(c)) throw invalid_weight_error("constant weight must be positive");
    Weight w;
    w.domain = domain;
    w.is_step = true; // constant on every cell
    const double lc = std::log(c);
    w.eval_fn = [c](double) { return c; };
    w.log_eval_fn = [lc](double) { return lc; };
    return w;
}

Weight Weight::exp_abs(double rate, Domain domain, double base) {
    if (!(base > 0.0)) throw invalid_weight_error("exp_abs base must be positive");
    Weight w;
    w.domain = domain;
    const double lb = std::log(base);
    if (base == 2.0) {
        w.eval_fn = [rate](double x) { return std::exp2(-rate * std::abs(x)); };
    } else {
        w.eval_fn = [rate, lb](double x) { return std::exp(-rate * std::abs(x) * lb); };
    }
    w.log_eval_fn = [rate, lb](double x) { return -rate * std::abs(x) * lb; };
    return w;
}

Weight Weight::exp_linear(double rate, Domain domain) {
    Weight w;
    w.domain = domain;
    w.eval_fn = [rate](double x) { return std::exp(rate * x); };
    w.log_eval_fn = [rate](double x) { return rate * x; };
    return w;
}

Weight Weight::exp_square(double rate, Domain domain) {
    Weight w;
    w.domain = domain;
    w.eval_fn = [rate](double x) { return std::exp(rate * x * x); };
    w.log_eval_fn = [rate](double x) { return rate * x * x; };
    return w;
}

Weight Weight::cauchy(Domain domain) {
    Weight w;
    w.domain = domain;
    w.eval_fn = [](double x) { return 1.0 / (1.0 + x * x); };
    w.log_eval_fn = [](double x) { return -std::log1p(x * x); };
    return w;
}

Weight Weight::from_integer_samples(std::int64_t start, std::vector<double> values,
                                    Domain domain) {
    if (values.empty()) throw invalid_input_error("empty sample table");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw invalid_weight_error("weight samples must be positive and finite");
    auto table = std::make_shared<std::vector<double>>(std::move(values));
    auto logs = std::make_shared<std::vector<double>>();
    logs->reserve(table->size());
    for (double v : *table) logs->push_back(std::log(v));

    Weight w;
    w.domain = domain;
    w.is_step = true;
    w.window_lo = static_cast<double>(start);
    // last sampled cell is [start+n-1, start+n)
    w.window_hi = static_cast<double>(start) + static_cast<double>(table->size());
    auto cell = [start, n = static_cast<std::int64_t>(table->size())](double x) {
        std::int64_t k = static_cast<std::int64_t>(std::floor(x)) - start;
        if (k == n && x == std::floor(x)) k = n - 1; // right window edge
        if (k < 0 || k >= n) throw window_error("step weight evaluated outside table");
        return static_cast<std::size_t>(k);
    };
    w.eval_fn = [table, cell](double x) { return (*table)[cell(x)]; };
    w.log_eval_fn = [logs, cell](double x) { return (*logs)[cell(x)]; };
    return w;
}

Weight Weight::step_normalized() const {
    if (is_step) return *this;
    Weight w = *this;
    w.is_step = true;
    auto ev = eval_fn;
    auto lev = log_eval_fn;
    w.eval_fn = [ev](double x) { return ev(std::floor(x)); };
    w.log_eval_fn = [lev](double x) { return lev(std::floor(x)); };
    return w;
}

Weight weight_from_shift_weights(std::int64_t start, const std::vector<double>& w,
                                 Domain domain) {
    if (w.empty()) throw invalid_input_error("empty shift-weight table");
    if (start > 0) throw invalid_input_error("shift-weight table must start at k <= 0");
    for (double v : w)
        if (!(v > 0.0) || !std::isfinite(v))
            throw invalid_weight_error("shift weights must be positive and finite");

    // exact path when every w_k is a power of two
    bool pow2 = true;
    for (double v : w) {
        int e = 0;
        if (std::frexp(v, &e) != 0.5) { pow2 = false; break; }
    }

    const std::int64_t n = static_cast<std::int64_t>(w.size());
    auto wk = [&](std::int64_t k) { return w[static_cast<std::size_t>(k - start)]; };

    // rho(0) = w_0, rho(k) = 1/(w_1..w_k) for k >= 1, rho(k) = w_k..w_0 for k <= -1
    std::vector<double> values(static_cast<std::size_t>(n));
    auto put = [&](std::int64_t k, double v) { values[static_cast<std::size_t>(k - start)] = v; };

    if (pow2) {
        // exponents are small integers, exp2 of an integer is exact
        auto exp_at = [&](std::int64_t k) {
            int ex = 0;
            std::frexp(wk(k), &ex);
            return static_cast<std::int64_t>(ex - 1);
        };
        std::int64_t acc = 0;
        for (std::int64_t k = 1; k < start + n; ++k) {
            acc += exp_at(k);
            put(k, std::exp2(static_cast<double>(-acc)));
        }
        acc = 0;
        for (std::int64_t k = 0; k >= start; --k) {
            acc += exp_at(k);
            put(k, std::exp2(static_cast<double>(acc)));
        }
        return Weight::from_integer_samples(start, values, domain);
    }

    double acc = 0.0;
    for (std::int64_t k = 1; k < start + n; ++k) {
        acc -= std::log(wk(k));
        put(k, std::exp(acc));
    }
    acc = 0.0;
    for (std::int64_t k = 0; k >= start; --k) {
        acc += std::log(wk(k));
        put(k, std::exp(acc));
    }
    return Weight::from_integer_samples(start, values, domain);
}

namespace {

struct GridRange {
    double lo = 0.0, hi = 0.0;
};

GridRange sample_range(const Weight& w, double horizon) {
    double lo = w.domain == Domain::HalfLine ? 0.0 : -horizon;
    double hi = horizon;
    if (w.window_lo) lo = std::max(lo, *w.window_lo);
    if (w.window_hi) hi = std::min(hi, *w.window_hi);
    if (!(lo < hi)) throw invalid_input_error("empty sampling range for weight check");
    return {lo, hi};
}

} // namespace

AdmissibilityReport check_admissibility(const Weight& w, double grid_step, double horizon) {
    if (!(grid_step > 0.0) || !(horizon > grid_step))
        throw invalid_input_error("admissibility check needs 0 < grid_step < horizon");
    AdmissibilityReport rep;
    rep.horizon = horizon;
    rep.grid_step = grid_step;

    const GridRange r = sample_range(w, horizon);
    std::vector<double> taus;
    for (double tau = r.lo; tau <= r.hi + 1e-12; tau += grid_step) taus.push_back(tau);

    // pair (tau, t) is usable when tau + t stays inside the evaluable range
    auto max_t = [&](double tau) { return r.hi - tau; };

    // global fit: omega = max over pairs of log-ratio / t, then M from the residual max
    double omega = -std::numeric_limits<double>::infinity();
    for (double tau : taus) {
        const double ltau = w.log_eval(tau);
        for (double t = grid_step; t <= max_t(tau) + 1e-12; t += grid_step)
            omega = std::max(omega, (ltau - w.log_eval(tau + t)) / t);
    }
    if (!std::isfinite(omega)) omega = 0.0;
    double max_resid = 0.0;
    for (double tau : taus) {
        const double ltau = w.log_eval(tau);
        for (double t = grid_step; t <= max_t(tau) + 1e-12; t += grid_step)
            max_resid = std::max(max_resid, (ltau - w.log_eval(tau + t)) - omega * t);
    }
    rep.fitted_omega = omega;
    rep.fitted_M = std::exp(max_resid);

    // refutation scan: fix the smallest unit-scale t and track the required log M
    // along tau towards each end of the window, against a fit on the bulk
    const double t0 = std::max(grid_step, 1.0);
    double omega_bulk = -std::numeric_limits<double>::infinity();
    const double bulk_lo = r.lo + (r.hi - r.lo) * 0.25;
    const double bulk_hi = r.hi - (r.hi - r.lo) * 0.25;
    for (double tau : taus) {
        if (tau < bulk_lo || tau > bulk_hi) continue;
        const double ltau = w.log_eval(tau);
        for (double t = grid_step; t <= max_t(tau) + 1e-12; t += grid_step)
            omega_bulk = std::max(omega_bulk, (ltau - w.log_eval(tau + t)) / t);
    }
    if (std::isfinite(omega_bulk)) {
        auto scan_tail = [&](bool towards_hi) {
            std::vector<AdmissibilityWitness> trail;
            double prev = -std::numeric_limits<double>::infinity();
            bool monotone = true;
            const std::size_t nq = taus.size() / 4;
            for (std::size_t j = 0; j < nq; ++j) {
                const std::size_t i = towards_hi ? taus.size() - nq + j : nq - 1 - j;
                const double tau = taus[i];
                if (tau + t0 > r.hi + 1e-12) continue;
                const double resid = (w.log_eval(tau) - w.log_eval(tau + t0)) - omega_bulk * t0;
                if (resid < prev - 1e-9) monotone = false;
                prev = resid;
                trail.push_back({tau, t0, w.log_eval(tau) - w.log_eval(tau + t0)});
            }
            if (!monotone || trail.size() < 4) return;
            const double growth = (trail.back().log_ratio - omega_bulk * t0) -
                                  (trail.front().log_ratio - omega_bulk * t0);
            if (growth >= std::log(100.0)) {
                rep.admissible = false;
                rep.witness = trail.back();
                rep.witness_family = trail;
            }
        };
        rep.admissible = true;
        scan_tail(false);
        if (rep.admissible) scan_tail(true);
    } else {
        rep.admissible = true;
    }

    if (rep.witness) {
        // re-fit constants on the bulk so the witness is a genuine violation of them
        rep.fitted_omega = omega_bulk;
        double resid_bulk = 0.0;
        for (double tau : taus) {
            if (tau < bulk_lo || tau > bulk_hi) continue;
            const double ltau = w.log_eval(tau);
            for (double t = grid_step; t <= max_t(tau) + 1e-12; t += grid_step)
                resid_bulk = std::max(resid_bulk, (ltau - w.log_eval(tau + t)) - omega_bulk * t);
        }
        rep.fitted_M = std::exp(resid_bulk);
    }

    const StepConstants sc = fit_step_constants(w, r.lo, r.hi);
    rep.fitted_A = sc.A;
    rep.fitted_B = sc.B;
    return rep;
}

StepConstants fit_step_constants(const Weight& w, double lo, double hi, int substeps) {
    if (substeps < 1) throw invalid_input_error("substeps must be >= 1");
    StepConstants out;
    double logA = std::numeric_limits<double>::infinity();
    double logB = -std::numeric_limits<double>::infinity();
    const std::int64_t s_lo = static_cast<std::int64_t>(std::ceil(lo));
    const std::int64_t s_hi = static_cast<std::int64_t>(std::floor(hi)) - 1;
    for (std::int64_t s = s_lo; s <= s_hi; ++s) {
        const double lrs = w.log_eval(static_cast<double>(s));
        const double lrs1 = w.log_eval(static_cast<double>(s + 1));
        for (int j = 0; j <= substeps; ++j) {
            const double x = static_cast<double>(s) + static_cast<double>(j) / substeps;
            const double lx = w.log_eval(x);
            logA = std::min(logA, lx - lrs);
            logB = std::max(logB, lx - lrs1);
        }
    }
    if (!std::isfinite(logA) || !std::isfinite(logB))
        throw invalid_input_error("window too small to fit step constants");
    out.A = std::exp(logA);
    out.B = std::exp(logB);
    return out;
}

std::vector<HypercyclicVerdict> check_hypercyclic_translation(const Weight& w,
                                                              const std::vector<double>& thetas,
                                                              double horizon, double tol) {
    if (!(tol > 0.0)) throw invalid_input_error("tolerance must be positive");
    for (double th : thetas)
        if (!(horizon > std::abs(th)))
            throw invalid_input_error("horizon must exceed |theta|");
    const double ltol = std::log(tol);
    std::vector<HypercyclicVerdict> out;
    for (double th : thetas) {
        HypercyclicVerdict v;
        v.theta = th;
        for (double t = 0.5; t <= horizon + 1e-12; t += 0.5) {
            bool ok = true;
            const double xp = t + th;
            const double xm = -t + th;
            if (w.in_window(xp) && !(w.domain == Domain::HalfLine && xp < 0.0))
                ok = ok && w.log_eval(xp) < ltol;
            else
                ok = false;
            if (w.domain == Domain::FullLine) {
                if (w.in_window(xm))
                    ok = ok && w.log_eval(xm) < ltol;
                else
                    ok = false;
            }
            if (ok) v.witness_times.push_back(t);
        }
        v.consistent = v.witness_times.size() >= 2 &&
                       v.witness_times.back() >= 0.9 * horizon;
        out.push_back(std::move(v));
    }
    return out;
}

ChaosC0Report check_chaos_c0(const Weight& w, double tol, double horizon) {
    if (!(tol > 0.0) || !(horizon > 1.0))
        throw invalid_input_error("chaos check needs tol > 0 and horizon > 1");
    ChaosC0Report rep;
    rep.tol = tol;
    rep.horizon = horizon;
    rep.consistent = true;
    const double ltol = std::log(tol);
    const GridRange r = sample_range(w, horizon);
    auto probe = [&](double x) {
        if (x < r.lo || x > r.hi) return;
        if (w.log_eval(x) >= ltol && rep.consistent) {
            rep.consistent = false;
            rep.witness_x = x;
        }
    };
    for (double a = horizon / 2.0; a <= horizon + 1e-12 && rep.consistent; a += 0.25) {
        probe(a);
        if (w.domain == Domain::FullLine) probe(-a);
    }
    return rep;
}

ChaosLpReport check_chaos_lp(const Weight& w, double l, double eps, double P_max,
                             std::int64_t k_cut) {
    if (!(eps > 0.0) || !(P_max > 0.0)) throw invalid_input_error("need eps > 0 and P_max > 0");
    ChaosLpReport rep;
    rep.l = l;
    rep.eps = eps;
    rep.P_max = P_max;
    constexpr double kOverflow = 1e12;
    for (double P = 0.5; P <= P_max + 1e-12; P += 0.5) {
        ChaosLpScanPoint pt;
        pt.P = P;
        double prev_pos = 0.0, prev_neg = 0.0, last_pos = 0.0, last_neg = 0.0;
        for (std::int64_t k = 1; k <= k_cut; ++k) {
            const double xp = l + static_cast<double>(k) * P;
            const double xn = l - static_cast<double>(k) * P;
            double tp = 0.0, tn = 0.0;
            if (w.in_window(xp) && !(w.domain == Domain::HalfLine && xp < 0.0))
                tp = w.eval(xp);
            if (w.in_window(xn) && !(w.domain == Domain::HalfLine && xn < 0.0))
                tn = w.eval(xn);
            pt.sum += tp + tn;
            if (k == k_cut - 1) { prev_pos = tp; prev_neg = tn; }
            if (k == k_cut) { last_pos = tp; last_neg = tn; }
            if (pt.sum > kOverflow) {
                pt.divergent = true;
                break;
            }
        }
        if (!pt.divergent) {
            auto tail = [](double prev, double last) {
                if (last <= 0.0) return 0.0;
                if (!(prev > 0.0) || last >= prev) return std::numeric_limits<double>::infinity();
                const double ratio = last / prev;
                return last * ratio / (1.0 - ratio);
            };
            pt.tail_bound = tail(prev_pos, last_pos) + tail(prev_neg, last_neg);
        }
        rep.scan.push_back(pt);
        if (!pt.divergent && std::isfinite(pt.tail_bound) && pt.sum + pt.tail_bound < eps) {
            rep.witness_P = P;
            rep.sum_at_witness = pt.sum;
            rep.tail_bound_at_witness = pt.tail_bound;
            break;
        }
    }
    return rep;
}

FhLpReport check_fh_lp(const Weight& w, std::int64_t K, double tail_tol) {
    if (K < 2) throw invalid_input_error("K must be >= 2");
    FhLpReport rep;
    rep.K = K;
    rep.tail_tol = tail_tol;
    const std::int64_t k_lo = w.domain == Domain::HalfLine ? 0 : -K;
    for (std::int64_t k = k_lo; k <= K; ++k) {
        const double x = static_cast<double>(k);
        if (!w.in_window(x)) throw window_error("summability check exceeds weight window");
        const double v = w.eval(x);
        rep.partial_sum += v;
        if (std::abs(k) > K / 2) rep.tail += v;
    }
    // integral over the window: exact for step weights, trapezoid otherwise
    if (w.is_step) {
        for (std::int64_t k = k_lo; k <= K - 1; ++k)
            rep.integral_estimate += w.eval(static_cast<double>(k));
    } else {
        const int sub = 16;
        const double h = 1.0 / sub;
        for (std::int64_t k = k_lo; k <= K - 1; ++k)
            for (int j = 0; j < sub; ++j) {
                const double a = static_cast<double>(k) + j * h;
                rep.integral_estimate += 0.5 * (w.eval(a) + w.eval(a + h)) * h;
            }
    }
    rep.convergent = rep.tail < tail_tol;
    return rep;
}

} // namespace lindyn
