#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/dyadic.hpp"
#include "lindyn/errors.hpp"

namespace lindyn {

/// Strictly positive weight function on the line or half line. Evaluation is
/// log-first: eval() may legitimately underflow to 0 for products past 2^-1000,
/// so every decision inside the library compares log values instead.
struct Weight {
    Domain domain = Domain::FullLine;
    bool is_step = false;
    /// Evaluable x-range for table-backed weights; families are unbounded.
    std::optional<double> window_lo, window_hi;

    std::function<double(double)> eval_fn;
    std::function<double(double)> log_eval_fn;

    double eval(double x) const;
    double log_eval(double x) const;
    bool in_window(double x) const;

    /// rho(x) = c.
    static Weight constant(double c, Domain domain = Domain::FullLine);
    /// rho(x) = base^(-rate * |x|); base 2 keeps evaluations at integers exact.
    static Weight exp_abs(double rate, Domain domain = Domain::FullLine,
                          double base = 2.718281828459045);
    /// rho(x) = e^(rate * x).
    static Weight exp_linear(double rate, Domain domain = Domain::FullLine);
    /// rho(x) = e^(rate * x^2).
    static Weight exp_square(double rate, Domain domain = Domain::FullLine);
    /// rho(x) = 1 / (1 + x^2).
    static Weight cauchy(Domain domain = Domain::FullLine);
    /// Step weight from integer samples rho(start), rho(start+1), ...; extended as
    /// rho(x) = rho(floor(x)) inside the sampled window, error outside.
    static Weight from_integer_samples(std::int64_t start, std::vector<double> values,
                                       Domain domain = Domain::FullLine);

    /// rho~(x) = rho(floor(x)).
    Weight step_normalized() const;
};

/// rho(k) = (w_1 ... w_k)^-1 for k >= 1 and rho(k) = w_k w_{k+1} ... w_0 for k <= 0,
/// extended as a step weight. Accumulation runs in log space; all-power-of-two
/// inputs take an exact integer-exponent path so unit products give rho == 1 exactly.
Weight weight_from_shift_weights(std::int64_t start, const std::vector<double>& w,
                                 Domain domain = Domain::FullLine);

struct AdmissibilityWitness {
    double tau = 0.0, t = 0.0;
    double log_ratio = 0.0; // log rho(tau) - log rho(tau + t)
};

/// Fit of rho(tau) <= M e^(omega t) rho(tau + t) over a sampled grid, plus the
/// unit-length sandwich constants A rho(s) <= rho(x) <= B rho(s+1) for x in [s, s+1].
struct AdmissibilityReport {
    bool admissible = false; // admissible-at-horizon when true, refuted otherwise
    double fitted_M = 1.0, fitted_omega = 0.0;
    double fitted_A = 1.0, fitted_B = 1.0;
    std::optional<AdmissibilityWitness> witness;       // a genuine violation of the fit
    std::vector<AdmissibilityWitness> witness_family;  // growing-ratio trail behind it
    double horizon = 0.0, grid_step = 0.0;
    std::string verdict() const { return admissible ? "admissible-at-horizon" : "refuted"; }
};

/// Fits (M, omega) on the sampled grid and scans for a ratio trend no finite pair can
/// cover (required M growing without bound along a tau-sequence at fixed t).
AdmissibilityReport check_admissibility(const Weight& w, double grid_step, double horizon);

struct StepConstants {
    double A = 1.0, B = 1.0;
};

/// Constants of the unit sandwich A rho(s) <= rho(x) <= B rho(s+1), fitted over
/// integer s in the window with substeps per unit interval.
StepConstants fit_step_constants(const Weight& w, double lo, double hi, int substeps = 8);

struct HypercyclicVerdict {
    double theta = 0.0;
    bool consistent = false; // consistent-at-horizon
    std::vector<double> witness_times;
    std::string verdict() const {
        return consistent ? "consistent-at-horizon" : "not-witnessed-at-horizon";
    }
};

/// Orbit of the translation family passes near delta-like data iff rho decays along
/// +-t + theta; scans integer-and-half times up to the horizon for witnesses.
std::vector<HypercyclicVerdict> check_hypercyclic_translation(const Weight& w,
                                                              const std::vector<double>& thetas,
                                                              double horizon, double tol);

struct ChaosC0Report {
    bool consistent = false; // rho < tol on the whole sampled tail
    std::optional<double> witness_x;
    double tol = 0.0, horizon = 0.0;
    std::string verdict() const {
        return consistent ? "consistent-at-horizon" : "refuted-at-horizon";
    }
};

/// Checks rho(x) < tol for every sampled |x| in [horizon/2, horizon].
ChaosC0Report check_chaos_c0(const Weight& w, double tol, double horizon);

struct ChaosLpScanPoint {
    double P = 0.0;
    double sum = 0.0, tail_bound = 0.0;
    bool divergent = false;
};

struct ChaosLpReport {
    std::optional<double> witness_P;
    double sum_at_witness = 0.0, tail_bound_at_witness = 0.0;
    std::vector<ChaosLpScanPoint> scan;
    double l = 0.0, eps = 0.0, P_max = 0.0;
    std::string verdict() const {
        return witness_P ? "witnessed" : "not-witnessed-at-cutoff";
    }
};

/// Searches P <= P_max with sum_{k != 0} rho(l + kP) < eps (truncated sum plus a
/// geometric tail bound when the terms decay at the cutoff).
ChaosLpReport check_chaos_lp(const Weight& w, double l, double eps, double P_max,
                             std::int64_t k_cut = 4000);

struct FhLpReport {
    bool convergent = false; // convergent-at-horizon vs divergent-at-horizon
    double partial_sum = 0.0;
    double integral_estimate = 0.0;
    double tail = 0.0; // sum over the outer half of the window
    std::int64_t K = 0;
    double tail_tol = 0.0;
    std::string verdict() const {
        return convergent ? "convergent-at-horizon" : "divergent-at-horizon";
    }
};

/// Partial sums of rho over integers |k| <= K (0..K on the half line) with a
/// Cauchy-tail convergence verdict, plus an integral estimate over the window
/// (exact cell sums for step weights, composite trapezoid otherwise).
FhLpReport check_fh_lp(const Weight& w, std::int64_t K, double tail_tol = 1e-4);

} // namespace lindyn
