#include "lindyn/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lindyn/conjugacy.hpp"
#include "lindyn/errors.hpp"
#include "lindyn/shifts.hpp"

namespace lindyn {
namespace {

using json = nlohmann::ordered_json;

const char* const kCommands[] = {"check-weight",     "check-fh",      "build-vector",
                                 "extract-sets",     "verify-conjugacy", "simulate-orbit",
                                 "series-check"};

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw config_error(where + ": expected a JSON object");
}

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<const char*> allowed) {
    expect_object(j, where);
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) throw config_error(where + ": unknown key '" + it.key() + "'");
    }
}

Weight parse_weight_spec(const json& j) {
    expect_keys(j, "weight_spec",
                {"family", "rate", "base", "c", "domain", "start", "values", "step"});
    if (!j.contains("family")) throw config_error("weight_spec: missing 'family'");
    const std::string family = j.at("family").get<std::string>();
    const std::string dom_name = j.value("domain", "full");
    Domain domain;
    if (dom_name == "full")
        domain = Domain::FullLine;
    else if (dom_name == "half")
        domain = Domain::HalfLine;
    else
        throw config_error("weight_spec: domain must be 'full' or 'half'");

    Weight w;
    if (family == "constant") {
        w = Weight::constant(j.value("c", 1.0), domain);
    } else if (family == "exp-abs") {
        w = Weight::exp_abs(j.value("rate", 1.0), domain,
                            j.value("base", 2.718281828459045));
    } else if (family == "exp-linear") {
        if (!j.contains("rate")) throw config_error("weight_spec: exp-linear needs 'rate'");
        w = Weight::exp_linear(j.at("rate").get<double>(), domain);
    } else if (family == "exp-square") {
        if (!j.contains("rate")) throw config_error("weight_spec: exp-square needs 'rate'");
        w = Weight::exp_square(j.at("rate").get<double>(), domain);
    } else if (family == "cauchy") {
        w = Weight::cauchy(domain);
    } else if (family == "table") {
        if (!j.contains("start") || !j.contains("values"))
            throw config_error("weight_spec: table needs 'start' and 'values'");
        w = Weight::from_integer_samples(j.at("start").get<std::int64_t>(),
                                         j.at("values").get<std::vector<double>>(), domain);
    } else if (family == "shift-weights") {
        if (!j.contains("start") || !j.contains("values"))
            throw config_error("weight_spec: shift-weights needs 'start' and 'values'");
        w = weight_from_shift_weights(j.at("start").get<std::int64_t>(),
                                      j.at("values").get<std::vector<double>>(), domain);
    } else {
        throw config_error("weight_spec: unknown family '" + family + "'");
    }
    if (j.value("step", false) && !w.is_step) w = w.step_normalized();
    return w;
}

ShiftSpec parse_shift_spec(const json& j, const Weight& w) {
    expect_keys(j, "shift_spec", {"kind", "universe", "k_lo", "k_hi"});
    const std::string kind = j.value("kind", "backward-from-weight");
    if (kind != "backward-from-weight")
        throw config_error("shift_spec: unknown kind '" + kind + "'");
    const bool half = w.domain == Domain::HalfLine;
    ShiftSpec s;
    s.universe = j.contains("universe")
                     ? universe_from_name(j.at("universe").get<std::string>())
                     : (half ? Universe::NDyadic : Universe::ZDyadic);
    double lo = half ? 0.0 : -64.0, hi = half ? 128.0 : 64.0;
    if (w.window_lo) lo = std::max(lo, std::ceil(*w.window_lo));
    if (w.window_hi) hi = std::min(hi, std::floor(*w.window_hi) - 1.0);
    s.k_lo = j.value("k_lo", static_cast<std::int64_t>(lo));
    s.k_hi = j.value("k_hi", static_cast<std::int64_t>(hi));
    if (s.k_lo > s.k_hi) throw config_error("shift_spec: k_lo must not exceed k_hi");
    return s;
}

FrequencySets parse_frequency_spec(const json& j, std::int64_t default_horizon) {
    expect_keys(j, "frequency_spec", {"kind", "p_max", "spacing", "M", "sets", "horizon"});
    const std::string kind = j.value("kind", "arithmetic");
    const std::int64_t horizon = j.value("horizon", default_horizon);
    if (!j.contains("M")) throw config_error("frequency_spec: missing 'M'");
    std::vector<double> M = j.at("M").get<std::vector<double>>();
    if (kind == "arithmetic") {
        if (!j.contains("spacing")) throw config_error("frequency_spec: missing 'spacing'");
        const int p_max = j.value("p_max", static_cast<int>(M.size()));
        if (static_cast<int>(M.size()) != p_max)
            throw config_error("frequency_spec: M must list one constant per set");
        return generate_frequency_sets(p_max, horizon, j.at("spacing").get<std::int64_t>(),
                                       std::move(M));
    }
    if (kind == "explicit") {
        if (!j.contains("sets")) throw config_error("frequency_spec: missing 'sets'");
        FrequencySets fs;
        fs.E = j.at("sets").get<std::vector<std::vector<std::int64_t>>>();
        fs.M = std::move(M);
        fs.horizon = horizon;
        fs.validate();
        return fs;
    }
    throw config_error("frequency_spec: unknown kind '" + kind + "'");
}

SampledFunction parse_function_spec(const json& j, Domain domain) {
    expect_keys(j, "function_spec", {"kind", "k", "level", "num", "window", "grid_level"});
    const std::string kind = j.value("kind", "hat");
    if (kind != "hat") throw config_error("function_spec: unknown kind '" + kind + "'");
    const DyadicIndex idx(j.value("k", static_cast<std::int64_t>(0)), j.value("level", 0),
                          j.value("num", static_cast<std::int64_t>(0)));
    std::int64_t lo = idx.k - 2, hi = idx.k + 2;
    if (j.contains("window")) {
        const auto w = j.at("window").get<std::vector<std::int64_t>>();
        if (w.size() != 2) throw config_error("function_spec: window must be [lo, hi]");
        lo = w[0];
        hi = w[1];
    }
    if (domain == Domain::HalfLine) lo = std::max<std::int64_t>(0, lo);
    return SampledFunction::hat(idx, lo, hi, j.value("grid_level", 4), domain);
}

DyadicIndex parse_index(const json& e, const std::string& where) {
    if (!e.contains("k")) throw config_error(where + ": missing 'k'");
    return DyadicIndex(e.at("k").get<std::int64_t>(), e.value("level", 0),
                       e.value("num", static_cast<std::int64_t>(0)));
}

std::vector<SparseSeq> parse_targets(const json& t, Universe universe) {
    if (t.is_string()) {
        if (t.get<std::string>() == "default") return {};
        throw config_error("targets: expected 'default' or an array of entry lists");
    }
    std::vector<SparseSeq> targets;
    for (const json& list : t) {
        SparseSeq y(universe);
        for (const json& e : list) {
            expect_keys(e, "target entry", {"k", "level", "num", "value"});
            y.set(parse_index(e, "target entry"), e.at("value").get<double>());
        }
        targets.push_back(std::move(y));
    }
    return targets;
}

LogSeq parse_logseq(const json& j) {
    expect_keys(j, "vector", {"universe", "entries"});
    if (!j.contains("universe") || !j.contains("entries"))
        throw config_error("vector: needs 'universe' and 'entries'");
    LogSeq x(universe_from_name(j.at("universe").get<std::string>()));
    for (const json& e : j.at("entries")) {
        expect_keys(e, "vector entry", {"k", "level", "num", "sign", "log_abs"});
        x.set(parse_index(e, "vector entry"),
              LogScalar::from_log(e.at("sign").get<int>(), e.at("log_abs").get<double>()));
    }
    return x;
}

LogSeq load_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("vector_file: cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw config_error("vector_file '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.contains("result") && j.at("result").contains("vector"))
        return parse_logseq(j.at("result").at("vector"));
    if (j.contains("vector")) return parse_logseq(j.at("vector"));
    return parse_logseq(j);
}

json index_json(const DyadicIndex& i) {
    return json{{"k", i.k}, {"level", i.level}, {"num", i.num}};
}

json to_json(const SparseSeq& x) {
    json entries = json::array();
    for (const auto& [i, v] : x.entries) {
        json e = index_json(i);
        e["value"] = v;
        entries.push_back(std::move(e));
    }
    return json{{"universe", universe_name(x.universe)}, {"entries", std::move(entries)}};
}

json to_json(const LogSeq& x) {
    json entries = json::array();
    for (const auto& [i, v] : x.entries) {
        json e = index_json(i);
        e["sign"] = v.sign;
        e["log_abs"] = v.log_abs;
        entries.push_back(std::move(e));
    }
    return json{{"universe", universe_name(x.universe)}, {"entries", std::move(entries)}};
}

json to_json(const FrequencySets& fs) {
    return json{{"horizon", fs.horizon}, {"M", fs.M}, {"E", fs.E}};
}

json to_json(const DensityEstimate& d) {
    return json{{"value", d.value}, {"argmin", d.argmin}, {"horizon", d.horizon}};
}

json to_json(const ConditionVerdict& v) {
    return json{{"holds", v.holds},
                {"violations", v.violation_count},
                {"witnesses", v.witnesses}};
}

json densities_json(const std::vector<DensityEstimate>& ds) {
    json a = json::array();
    for (const auto& d : ds) a.push_back(to_json(d));
    return a;
}

struct PipelineOut {
    int exit_code = 0;
    std::string verdict;
    json result;
    std::optional<std::string> csv;
};

PseudoShift build_shift(const ExperimentConfig& c) {
    const Weight& w = *c.weight;
    const ShiftSpec s = c.shift.value_or(ShiftSpec{});
    const Weight step = w.is_step ? w : w.step_normalized();
    return backward_shift_family(step, s.universe, s.k_lo, s.k_hi);
}

PipelineOut run_check_weight(const ExperimentConfig& c) {
    const Weight& w = *c.weight;
    const auto ar = check_admissibility(w, c.grid_step, static_cast<double>(c.horizon));

    double lo = w.domain == Domain::HalfLine ? 0.0
                                             : -std::min<double>(256.0, c.horizon);
    double hi = std::min<double>(256.0, c.horizon);
    if (w.window_lo) lo = std::max(lo, *w.window_lo);
    if (w.window_hi) hi = std::min(hi, *w.window_hi - 1.0);
    const StepConstants sc = fit_step_constants(w, lo, hi);

    PipelineOut out;
    json adm{{"verdict", ar.verdict()},       {"fitted_M", ar.fitted_M},
             {"fitted_omega", ar.fitted_omega}, {"fitted_A", ar.fitted_A},
             {"fitted_B", ar.fitted_B},       {"grid_step", ar.grid_step}};
    if (ar.witness)
        adm["witness"] = json{{"tau", ar.witness->tau},
                              {"t", ar.witness->t},
                              {"log_ratio", ar.witness->log_ratio}};
    out.result["admissibility"] = std::move(adm);
    out.result["step_constants"] =
        json{{"A", sc.A}, {"B", sc.B}, {"window", {lo, hi}}};

    bool ok = ar.admissible;
    out.verdict = ar.verdict();
    if (!c.thetas.empty()) {
        json thetas = json::array();
        for (const auto& v : check_hypercyclic_translation(w, c.thetas,
                                                           static_cast<double>(c.horizon),
                                                           c.eps)) {
            thetas.push_back(json{{"theta", v.theta},
                                  {"verdict", v.verdict()},
                                  {"witness_times", v.witness_times}});
            if (!v.consistent) {
                ok = false;
                if (ar.admissible) out.verdict = v.verdict();
            }
        }
        out.result["hypercyclic"] = std::move(thetas);
    }
    out.exit_code = ok ? 0 : 1;
    return out;
}

PipelineOut run_check_fh(const ExperimentConfig& c) {
    const Weight& w = *c.weight;
    PipelineOut out;
    if (c.mode == "lp") {
        const FhLpReport r = check_fh_lp(w, c.K, c.tail_tol);
        out.result = json{{"mode", "lp"},
                          {"K", r.K},
                          {"partial_sum", r.partial_sum},
                          {"integral_estimate", r.integral_estimate},
                          {"tail", r.tail},
                          {"tail_tol", r.tail_tol}};
        out.verdict = r.verdict();
        out.exit_code = r.convergent ? 0 : 1;
        return out;
    }
    if (c.mode == "c0") {
        if (!c.frequency) throw config_error("check-fh c0 mode needs frequency_spec");
        C0FhParams params;
        params.decay_tol = c.decay_tol;
        const C0FhReport r = check_c0_translation_fh(w, *c.frequency, c.horizon, params);
        out.result = json{{"mode", "c0"},
                          {"fitted_ratio", r.fitted_ratio},
                          {"densities", densities_json(r.densities)},
                          {"density", to_json(r.density)},
                          {"separation", to_json(r.separation)},
                          {"decay", to_json(r.decay)},
                          {"domination", to_json(r.domination)},
                          {"step_bound", to_json(r.step_bound)},
                          {"sets", to_json(*c.frequency)}};
        out.verdict = r.verdict();
        out.exit_code = r.consistent() ? 0 : 1;
        return out;
    }
    if (c.mode == "shift") {
        if (!c.frequency) throw config_error("check-fh shift mode needs frequency_spec");
        const PseudoShift T = build_shift(c);
        const ShiftFhReport r = check_pseudo_shift_fh(T, *c.frequency);
        out.result = json{{"mode", "shift"},
                          {"ratio_R", T.ratio_R},
                          {"densities", densities_json(r.densities)},
                          {"density", to_json(r.density)},
                          {"separation", to_json(r.separation)},
                          {"growth", to_json(r.growth)},
                          {"domination", to_json(r.domination)},
                          {"sets", to_json(*c.frequency)}};
        out.verdict = r.verdict();
        out.exit_code = r.consistent() ? 0 : 1;
        return out;
    }
    throw config_error("check-fh: unknown mode '" + c.mode + "'");
}

PipelineOut run_series_check(const ExperimentConfig& c, std::uint64_t seed) {
    const SeriesCheckReport r =
        check_unconditional_series(*c.function, *c.weight, c.trials, c.horizon, c.eps, seed);
    PipelineOut out;
    out.result = json{{"eps", r.eps},
                      {"bound", r.bound},
                      {"trials", r.trials},
                      {"violations", r.violations},
                      {"max_norm_backward", r.max_norm_backward},
                      {"max_norm_forward", r.max_norm_forward}};
    out.result["threshold_backward"] =
        r.threshold_backward ? json(*r.threshold_backward) : json();
    out.result["threshold_forward"] =
        r.threshold_forward ? json(*r.threshold_forward) : json();
    if (r.witness)
        out.result["witness"] = json{{"F", r.witness->F},
                                     {"norm_backward", r.witness->norm_backward},
                                     {"norm_forward", r.witness->norm_forward}};
    out.verdict = r.verdict();
    out.exit_code = r.bounded ? 0 : 1;
    return out;
}

PipelineOut run_verify_conjugacy(const ExperimentConfig& c, std::uint64_t seed) {
    const Weight& w = *c.weight;
    const bool half = w.domain == Domain::HalfLine;
    std::int64_t lo = half ? 0 : -8, hi = half ? 16 : 8;
    if (w.window_lo) lo = std::max(lo, static_cast<std::int64_t>(std::ceil(*w.window_lo)));
    if (w.window_hi) hi = std::min(hi, static_cast<std::int64_t>(std::floor(*w.window_hi)));
    if (hi - lo < 4) throw config_error("verify-conjugacy: weight window is too narrow");
    const int grid_level = 6, coeff_level = 3;
    const Universe universe = half ? Universe::NDyadic : Universe::ZDyadic;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<DyadicIndex> pool = wn_set(3, w.domain);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    struct Agg {
        double max_dev = 0.0;
        std::size_t compared = 0;
        bool commutes = true;
        void add(const DiagramReport& r) {
            max_dev = std::max(max_dev, r.max_abs_dev);
            compared += r.compared;
            commutes = commutes && r.commutes;
        }
        json dump(double tol) const {
            return json{{"max_abs_dev", max_dev},
                        {"compared", compared},
                        {"tol", tol},
                        {"verdict", commutes ? "commutes" : "deviates"}};
        }
    } analysis, synthesis, diagonal;

    for (int t = 0; t < c.trials; ++t) {
        SampledFunction f = SampledFunction::zero(lo, hi, coeff_level, w.domain);
        for (auto& v : f.values) v = u(rng);
        analysis.add(verify_analysis_diagram(f, w, coeff_level, c.tol));

        SparseSeq a(universe);
        for (int j = 0; j < 8; ++j) a.set(pool[pick(rng)], u(rng));
        synthesis.add(verify_synthesis_diagram(a, w, lo, hi, grid_level, c.tol));
        diagonal.add(verify_round_trip_diagonal(a, w, lo, hi, grid_level, c.tol));
    }

    PipelineOut out;
    out.result = json{{"trials", c.trials},
                      {"analysis", analysis.dump(c.tol)},
                      {"synthesis", synthesis.dump(c.tol)},
                      {"diagonal", diagonal.dump(c.tol)}};
    const bool ok = analysis.commutes && synthesis.commutes && diagonal.commutes;
    out.verdict = ok ? "commutes" : "deviates";
    out.exit_code = ok ? 0 : 1;
    return out;
}

json trace_json(const ConstructionTrace& tr) {
    json g = json::array(), e = json::array();
    for (const auto& v : tr.G) g.push_back(v);
    for (const auto& v : tr.E_prime) e.push_back(v);
    return json{{"alpha", tr.alpha},
                {"psi", tr.psi},
                {"stride", tr.stride},
                {"E_prime", std::move(e)},
                {"G", std::move(g)},
                {"target_norm", tr.target_norm},
                {"orbit_error", tr.orbit_error},
                {"orbit_error_bound", tr.orbit_error_bound},
                {"support_size", tr.support_size},
                {"max_log_entry", tr.max_log_entry},
                {"horizon", tr.horizon}};
}

PipelineOut run_build_vector(const ExperimentConfig& c) {
    const PseudoShift T = build_shift(c);
    const FrequencySets& fs = *c.frequency;
    const std::vector<SparseSeq> targets =
        c.targets.empty() ? default_dense_targets(T, fs.p_max()) : c.targets;
    const FhVector v = construct_fh_vector(T, fs, targets, c.horizon);

    bool within = true;
    for (std::size_t p = 0; p < v.trace.orbit_error.size(); ++p)
        within = within && v.trace.orbit_error[p] <= v.trace.orbit_error_bound[p];

    std::string csv = "# schema=1\nn,p,distance\n";
    for (int p = 1; p <= fs.p_max(); ++p)
        for (std::int64_t n : v.trace.G[p - 1])
            csv += std::to_string(n) + "," + std::to_string(p) + "," +
                   csv_num(orbit_distance(T, v.x, n, targets[p - 1])) + "\n";

    json target_list = json::array();
    for (const SparseSeq& y : targets) target_list.push_back(to_json(y));

    PipelineOut out;
    out.result = json{{"ratio_R", T.ratio_R},
                      {"sets", to_json(fs)},
                      {"targets", std::move(target_list)},
                      {"trace", trace_json(v.trace)},
                      {"vector", to_json(v.x)}};
    out.verdict = within ? "constructed-within-bounds" : "orbit-error-exceeds-bound";
    out.exit_code = within ? 0 : 1;
    out.csv = std::move(csv);
    return out;
}

PipelineOut run_extract_sets(const ExperimentConfig& c, int threads) {
    const PseudoShift T = build_shift(c);
    if (!c.vector) throw config_error("extract-sets needs 'vector' or 'vector_file'");
    ExtractionParams params;
    params.p_max = c.p_max;
    params.horizon = c.horizon;
    params.alpha = c.alpha;
    params.threads = threads;
    const ExtractionResult r = extract_frequency_sets(T, *c.vector, params);

    std::vector<std::size_t> f_sizes;
    for (const auto& f : r.F) f_sizes.push_back(f.size());
    std::string csv = "# schema=1\np,n\n";
    for (int p = 1; p <= c.p_max; ++p)
        for (std::int64_t n : r.sets.E[p - 1])
            csv += std::to_string(p) + "," + std::to_string(n) + "\n";

    PipelineOut out;
    out.result = json{{"ratio_R", T.ratio_R},
                      {"alpha", r.alpha},
                      {"psi", r.psi},
                      {"hit_counts", f_sizes},
                      {"sets", to_json(r.sets)},
                      {"densities", densities_json(r.densities)},
                      {"claim_violations", r.claim_violations}};
    if (!r.first_violation.empty()) out.result["first_violation"] = r.first_violation;
    out.verdict = r.verdict();
    out.exit_code = out.verdict == "recovered-at-horizon" ? 0 : 1;
    out.csv = std::move(csv);
    return out;
}

PipelineOut run_simulate_orbit(const ExperimentConfig& c) {
    const PseudoShift T = build_shift(c);
    if (!c.vector) throw config_error("simulate-orbit needs 'vector' or 'vector_file'");
    const std::vector<SparseSeq> targets =
        c.targets.empty() ? default_dense_targets(T, c.p_max) : c.targets;
    const int pmax = static_cast<int>(targets.size());

    std::vector<double> best(pmax, std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> best_n(pmax, 0);
    std::vector<std::int64_t> hits(pmax, 0);
    std::string csv = "# schema=1\nn,p,distance\n";
    for (std::int64_t n = 1; n <= c.horizon; ++n) {
        const LogSeq tx = pseudo_shift_apply(T, *c.vector, n);
        for (int p = 0; p < pmax; ++p) {
            double d = 0.0;
            for (const auto& [i, v] : tx.entries)
                d = std::max(d, std::abs(v.to_double() - targets[p].at(i)));
            for (const auto& [i, v] : targets[p].entries)
                if (!tx.entries.count(i)) d = std::max(d, std::abs(v));
            csv += std::to_string(n) + "," + std::to_string(p + 1) + "," + csv_num(d) + "\n";
            if (d < best[p]) {
                best[p] = d;
                best_n[p] = n;
            }
            if (d < c.eps) ++hits[p];
        }
    }

    PipelineOut out;
    json per = json::array();
    for (int p = 0; p < pmax; ++p)
        per.push_back(json{{"p", p + 1},
                           {"min_distance", best[p]},
                           {"argmin_n", best_n[p]},
                           {"times_within_eps", hits[p]}});
    out.result = json{{"ratio_R", T.ratio_R}, {"targets", pmax}, {"closest", std::move(per)}};
    out.verdict = "scanned-to-horizon";
    out.exit_code = 0;
    out.csv = std::move(csv);
    return out;
}

ExperimentConfig parse_config_impl(const json& j) {
    expect_keys(j, "config",
                {"command", "seed", "threads", "horizon", "mode", "trials", "p_max", "K", "p",
                 "thetas", "tolerances", "weight_spec", "shift_spec", "frequency_spec",
                 "function_spec", "targets", "vector", "vector_file", "alpha", "output"});
    ExperimentConfig c;
    if (!j.contains("command")) throw config_error("config: missing 'command'");
    c.command = j.at("command").get<std::string>();
    bool known = false;
    for (const char* cmd : kCommands) known = known || c.command == cmd;
    if (!known) throw config_error("config: unknown command '" + c.command + "'");

    c.seed = j.value("seed", static_cast<std::uint64_t>(1));
    c.threads = j.value("threads", 1);
    if (c.threads < 1 || c.threads > 256)
        throw config_error("config: threads must be in [1, 256]");
    c.horizon = j.value("horizon", static_cast<std::int64_t>(10000));
    if (c.horizon < 1) throw config_error("config: horizon must be positive");
    c.mode = j.value("mode", "lp");
    c.trials = j.value("trials", 100);
    if (c.trials < 1) throw config_error("config: trials must be positive");
    c.p_max = j.value("p_max", 3);
    if (c.p_max < 1) throw config_error("config: p_max must be positive");
    c.K = j.value("K", static_cast<std::int64_t>(100));
    if (c.K < 1) throw config_error("config: K must be positive");
    c.lp_exponent = j.value("p", 2.0);
    if (!(c.lp_exponent >= 1.0)) throw config_error("config: p must be at least 1");

    const json tols = j.value("tolerances", json::object());
    expect_keys(tols, "tolerances", {"eps", "tol", "decay_tol", "tail_tol", "grid_step"});
    c.eps = tols.value("eps", 1e-3);
    c.tol = tols.value("tol", 1e-9);
    c.decay_tol = tols.value("decay_tol", 1e-6);
    c.tail_tol = tols.value("tail_tol", 1e-4);
    c.grid_step = tols.value("grid_step", 0.25);
    for (double v : {c.eps, c.tol, c.decay_tol, c.tail_tol, c.grid_step})
        if (!(v > 0.0)) throw config_error("config: tolerances must be positive");

    if (j.contains("thetas")) c.thetas = j.at("thetas").get<std::vector<double>>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<std::vector<double>>();

    if (j.contains("weight_spec")) c.weight = parse_weight_spec(j.at("weight_spec"));
    if (!c.weight) throw config_error(c.command + ": missing weight_spec");

    const bool needs_shift = c.command == "build-vector" || c.command == "extract-sets" ||
                             c.command == "simulate-orbit" ||
                             (c.command == "check-fh" && c.mode == "shift");
    if (needs_shift)
        c.shift = parse_shift_spec(j.value("shift_spec", json::object()), *c.weight);

    const bool needs_frequency = c.command == "build-vector" ||
                                 (c.command == "check-fh" &&
                                  (c.mode == "c0" || c.mode == "shift"));
    if (j.contains("frequency_spec"))
        c.frequency = parse_frequency_spec(j.at("frequency_spec"), c.horizon);
    if (needs_frequency && !c.frequency)
        throw config_error(c.command + ": missing frequency_spec");

    if (c.command == "series-check")
        c.function = parse_function_spec(j.value("function_spec", json::object()),
                                         c.weight->domain);

    if (j.contains("targets")) {
        const Universe u = c.shift ? c.shift->universe
                                   : (c.weight->domain == Domain::HalfLine
                                          ? Universe::NDyadic
                                          : Universe::ZDyadic);
        c.targets = parse_targets(j.at("targets"), u);
    }

    if (j.contains("vector") && j.contains("vector_file"))
        throw config_error("config: give either 'vector' or 'vector_file', not both");
    if (j.contains("vector")) c.vector = parse_logseq(j.at("vector"));
    if (j.contains("vector_file"))
        c.vector = load_vector_file(j.at("vector_file").get<std::string>());
    if ((c.command == "extract-sets" || c.command == "simulate-orbit") && !c.vector)
        throw config_error(c.command + ": missing 'vector' or 'vector_file'");

    const json outputs = j.value("output", json::object());
    expect_keys(outputs, "output", {"report", "csv"});
    c.report_name = outputs.value("report", c.command + "-report.json");
    c.csv_name = outputs.value("csv", c.command + ".csv");

    json echo = json::object();
    for (const char* key : {"mode", "trials", "p_max", "K", "p", "thetas", "weight_spec",
                            "shift_spec", "frequency_spec", "function_spec", "targets",
                            "vector_file", "alpha"})
        if (j.contains(key)) echo[key] = j.at(key);
    if (j.contains("vector")) echo["vector"] = "inline";
    c.echo = echo.dump();
    return c;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return parse_config_impl(j);
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed config: ") + e.what());
    }
}

RunResult run_experiment(const ExperimentConfig& config,
                         std::optional<std::uint64_t> seed_override,
                         std::optional<int> threads_override) {
    const std::uint64_t seed = seed_override.value_or(config.seed);
    const int threads = threads_override.value_or(config.threads);
    if (threads < 1 || threads > 256) throw config_error("threads must be in [1, 256]");

    PipelineOut piped;
    if (config.command == "check-weight")
        piped = run_check_weight(config);
    else if (config.command == "check-fh")
        piped = run_check_fh(config);
    else if (config.command == "build-vector")
        piped = run_build_vector(config);
    else if (config.command == "extract-sets")
        piped = run_extract_sets(config, threads);
    else if (config.command == "verify-conjugacy")
        piped = run_verify_conjugacy(config, seed);
    else if (config.command == "simulate-orbit")
        piped = run_simulate_orbit(config);
    else if (config.command == "series-check")
        piped = run_series_check(config, seed);
    else
        throw config_error("unknown command '" + config.command + "'");

    json report;
    report["command"] = config.command;
    report["seed"] = seed;
    report["horizon"] = config.horizon;
    report["tolerances"] = json{{"eps", config.eps},
                                {"tol", config.tol},
                                {"decay_tol", config.decay_tol},
                                {"tail_tol", config.tail_tol},
                                {"grid_step", config.grid_step}};
    report["inputs"] = config.echo.empty() ? json::object() : json::parse(config.echo);
    report["result"] = std::move(piped.result);
    report["verdict"] = piped.verdict;
    report["exit"] = piped.exit_code;

    RunResult out;
    out.exit_code = piped.exit_code;
    out.verdict = piped.verdict;
    out.report_json = report.dump(2) + "\n";
    out.report_name =
        config.report_name.empty() ? config.command + "-report.json" : config.report_name;
    out.csv = std::move(piped.csv);
    out.csv_name = config.csv_name.empty() ? config.command + ".csv" : config.csv_name;
    return out;
}

RunResult run_experiment_text(const std::string& config_text,
                              std::optional<std::uint64_t> seed_override,
                              std::optional<int> threads_override) {
    return run_experiment(parse_experiment_config(config_text), seed_override,
                          threads_override);
}

} // namespace lindyn
