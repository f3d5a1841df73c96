#include "ptqkd/report.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace ptqkd {

std::string num9(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

namespace {

std::string fixed3(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
    return std::string(buf, res.ptr);
}

std::string opt9(const std::optional<double>& v) {
    return v ? num9(*v) : std::string();
}

bool standard_accounting(const RunConfig& cfg) {
    return cfg.null_policy == NullPolicy::count_wrong && cfg.fallback == FallbackPolicy::none;
}

} // namespace

const char* null_policy_name(NullPolicy p) {
    return p == NullPolicy::count_wrong ? "count-wrong" : "loss";
}

const char* fallback_name(FallbackPolicy p) {
    return p == FallbackPolicy::none ? "none" : "random-guess";
}

const char* resend_name(ResendPolicy p) {
    return p == ResendPolicy::invert_preparation ? "invert-preparation" : "reencode";
}

std::vector<TargetRow> targets_for(const RunConfig& cfg) {
    std::vector<TargetRow> rows;
    const std::string& name = cfg.strategy.name;
    const double eta = cfg.eta;
    const bool scaled = standard_accounting(cfg);
    const bool accuracy_target_applies = scaled || eta == 1.0;
    std::string at_eta = " at eta=" + num9(eta);

    if (name == "none") {
        rows.push_back({"qber", 0.0, "noiseless channel without interception"});
        return rows;
    }
    if (name == "hermitian") {
        if (accuracy_target_applies)
            rows.push_back({"eve_accuracy", 0.75 * (scaled ? eta : 1.0),
                            "3/4 intercept-resend baseline" + at_eta});
        if (eta == 1.0)
            rows.push_back({"qber", 0.25, "1/4 induced error rate"});
        return rows;
    }
    if (name == "approach1") {
        if (accuracy_target_applies)
            rows.push_back({"eve_accuracy", 5.0 / 6.0 * (scaled ? eta : 1.0),
                            "5*eta/6 discriminator figure" + at_eta});
        rows.push_back({"unambiguous_rate", 0.25 * eta, "1/4 of intercepts" + at_eta});
        return rows;
    }
    if (name == "approach2") {
        if (accuracy_target_applies)
            rows.push_back({"eve_accuracy", 5.0 / 6.0 * (scaled ? eta : 1.0),
                            "5*eta/6" + at_eta});
        return rows;
    }
    if (name == "approach3") {
        double alpha = cfg.strategy.alpha.value_or(alpha_opt());
        if (accuracy_target_applies && std::abs(alpha - alpha_opt()) < 1e-9)
            rows.push_back({"eve_accuracy", 5.0 / 6.0 * (scaled ? eta : 1.0),
                            "5*eta/6 at the optimal alpha" + at_eta});
        return rows;
    }
    return rows;
}

std::vector<DiscrepancyRow> discrepancies_for(const RunConfig& cfg, const RunStats& stats,
                                              const std::vector<TargetRow>& targets) {
    std::vector<DiscrepancyRow> rows;

    // The exclusion strategy cannot reach its nominal figure: one two-outcome
    // measurement only ever pins the excluded state; the conclusive branch is
    // a 2:1 guess. Enumerated accuracy is 3/4 at eta=1; always reported.
    if (cfg.strategy.name == "approach1" && stats.exact_accuracy) {
        double claimed = 5.0 / 6.0 * (standard_accounting(cfg) ? cfg.eta : 1.0);
        rows.push_back({"eve_accuracy", *stats.exact_accuracy, claimed,
                        "single-measurement exclusion rule attains 3/4 at eta=1, not 5*eta/6; "
                        "the higher figure presumes conclusive identification that one "
                        "two-outcome measurement cannot provide"});
    }

    for (const TargetRow& t : targets) {
        if (t.metric == "eve_accuracy" && stats.eve_accuracy) {
            if (t.value < stats.eve_interval.lo || t.value > stats.eve_interval.hi) {
                if (cfg.strategy.name == "approach1")
                    continue; // already reported above with the explanation
                rows.push_back({t.metric, *stats.eve_accuracy, t.value,
                                "sampled 95% interval excludes the target"});
            }
        } else if (t.metric == "qber" && stats.qber && stats.sifted_count > 0) {
            auto hits = static_cast<std::uint64_t>(std::llround(*stats.qber *
                                                   static_cast<double>(stats.sifted_count)));
            Interval iv = wilson_interval(hits, stats.sifted_count);
            if (t.value < iv.lo || t.value > iv.hi)
                rows.push_back({t.metric, *stats.qber, t.value,
                                "sampled 95% interval excludes the target"});
        } else if (t.metric == "unambiguous_rate" && stats.unambiguous_rate) {
            auto hits = static_cast<std::uint64_t>(std::llround(*stats.unambiguous_rate *
                                                   static_cast<double>(stats.n)));
            Interval iv = wilson_interval(hits, stats.n);
            if (t.value < iv.lo || t.value > iv.hi)
                rows.push_back({t.metric, *stats.unambiguous_rate, t.value,
                                "sampled 95% interval excludes the target"});
        }
    }
    return rows;
}

namespace {

nlohmann::ordered_json config_echo(const RunConfig& cfg, const std::string& format) {
    nlohmann::ordered_json j;
    j["strategy"] = cfg.strategy.name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    if (cfg.strategy.name != "none")
        for (const auto& [key, value] : make_strategy(cfg.strategy).params)
            params[key] = value;
    j["params"] = params;
    j["qubits"] = cfg.qubits;
    j["eta"] = cfg.eta;
    j["null_policy"] = null_policy_name(cfg.null_policy);
    j["fallback"] = fallback_name(cfg.fallback);
    j["resend"] = resend_name(cfg.resend);
    j["seed"] = cfg.seed;
    j["format"] = format;
    return j;
}

nlohmann::ordered_json stats_json(const RunStats& s) {
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["sifted_count"] = s.sifted_count;
    j["lost_count"] = s.lost_count;
    j["sifted_fraction"] = s.sifted_fraction;
    j["qber"] = s.qber ? nlohmann::ordered_json(*s.qber) : nlohmann::ordered_json(nullptr);
    if (s.eve_accuracy) {
        j["eve_accuracy"] = {{"value", *s.eve_accuracy},
                             {"lo", s.eve_interval.lo},
                             {"hi", s.eve_interval.hi}};
    }
    if (s.all_positions_accuracy)
        j["all_positions_accuracy"] = *s.all_positions_accuracy;
    if (s.unambiguous_rate)
        j["unambiguous_rate"] = *s.unambiguous_rate;
    if (s.exact_accuracy)
        j["exact_accuracy"] = *s.exact_accuracy;
    return j;
}

} // namespace

std::string run_report_json(const RunConfig& cfg, const RunStats& stats,
                            const std::string& format) {
    nlohmann::ordered_json j;
    j["command"] = "run";
    j["config"] = config_echo(cfg, format);
    j["results"] = stats_json(stats);

    std::vector<TargetRow> targets = targets_for(cfg);
    nlohmann::ordered_json jt = nlohmann::ordered_json::array();
    for (const TargetRow& t : targets)
        jt.push_back({{"metric", t.metric}, {"value", t.value}, {"label", t.label}});
    j["targets"] = jt;

    nlohmann::ordered_json jd = nlohmann::ordered_json::array();
    for (const DiscrepancyRow& d : discrepancies_for(cfg, stats, targets))
        jd.push_back({{"metric", d.metric},
                      {"implemented", d.implemented},
                      {"target", d.target},
                      {"note", d.note}});
    j["discrepancies"] = jd;
    return j.dump(2) + "\n";
}

std::string run_report_csv(const RunConfig& cfg, const RunStats& stats) {
    std::string out =
        "strategy,qubits,eta,seed,n,sifted_fraction,qber,eve_accuracy,lo,hi,"
        "all_positions_accuracy,unambiguous_rate,exact_accuracy\n";
    out += cfg.strategy.name;
    out += ',' + std::to_string(cfg.qubits);
    out += ',' + num9(cfg.eta);
    out += ',' + std::to_string(cfg.seed);
    out += ',' + std::to_string(stats.n);
    out += ',' + num9(stats.sifted_fraction);
    out += ',' + opt9(stats.qber);
    out += ',' + opt9(stats.eve_accuracy);
    if (stats.eve_accuracy) {
        out += ',' + num9(stats.eve_interval.lo);
        out += ',' + num9(stats.eve_interval.hi);
    } else {
        out += ",,";
    }
    out += ',' + opt9(stats.all_positions_accuracy);
    out += ',' + opt9(stats.unambiguous_rate);
    out += ',' + opt9(stats.exact_accuracy);
    out += '\n';
    return out;
}

namespace {

std::string alpha_row(const SweepRow& r, char sep, const char* missing) {
    std::string line = num9(r.x);
    line += sep;
    line += r.feasible ? "1" : "0";
    auto cell = [&](const std::optional<double>& v) {
        line += sep;
        line += v ? num9(*v) : missing;
    };
    cell(r.tau);
    cell(r.exact);
    cell(r.sampled);
    if (r.sampled) {
        line += sep;
        line += num9(r.interval.lo);
        line += sep;
        line += num9(r.interval.hi);
    } else {
        line += sep;
        line += missing;
        line += sep;
        line += missing;
    }
    return line;
}

std::string eta_row(const SweepRow& r, char sep, const char* missing) {
    std::string line = num9(r.x);
    auto cell = [&](const std::optional<double>& v) {
        line += sep;
        line += v ? num9(*v) : missing;
    };
    cell(r.exact);
    cell(r.sampled);
    if (r.sampled) {
        line += sep;
        line += num9(r.interval.lo);
        line += sep;
        line += num9(r.interval.hi);
    } else {
        line += sep;
        line += missing;
        line += sep;
        line += missing;
    }
    return line;
}

} // namespace

std::string sweep_alpha_csv(const std::vector<SweepRow>& rows) {
    std::string out = "alpha,feasible,tau,exact,sampled,lo,hi\n";
    for (const SweepRow& r : rows)
        out += alpha_row(r, ',', "") + "\n";
    return out;
}

std::string sweep_eta_csv(const EtaSweep& sweep) {
    std::string out = "eta,exact,sampled,lo,hi\n";
    for (const SweepRow& r : sweep.rows)
        out += eta_row(r, ',', "") + "\n";
    out += "# eta*=";
    out += sweep.threshold ? fixed3(*sweep.threshold) : "none";
    out += '\n';
    return out;
}

std::string sweep_alpha_gnuplot(const std::vector<SweepRow>& rows) {
    std::string out = "# alpha feasible tau exact sampled lo hi\n";
    for (const SweepRow& r : rows)
        out += alpha_row(r, ' ', "nan") + "\n";
    return out;
}

std::string sweep_eta_gnuplot(const EtaSweep& sweep) {
    std::string out = "# eta exact sampled lo hi\n";
    for (const SweepRow& r : sweep.rows)
        out += eta_row(r, ' ', "nan") + "\n";
    out += "# eta*=";
    out += sweep.threshold ? fixed3(*sweep.threshold) : "none";
    out += '\n';
    return out;
}

} // namespace ptqkd
