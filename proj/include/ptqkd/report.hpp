#pragma once

#include "ptqkd/montecarlo.hpp"

#include <string>
#include <vector>

namespace ptqkd {

// Locale-independent decimal formatting, 9 significant digits (CSV cells).
std::string num9(double v);

const char* null_policy_name(NullPolicy p);
const char* fallback_name(FallbackPolicy p);
const char* resend_name(ResendPolicy p);

// Reference values the run is expected to reproduce, evaluated at the run's
// efficiency under the count-null-as-wrong accounting.
struct TargetRow {
    std::string metric;
    double value;
    std::string label;
};

struct DiscrepancyRow {
    std::string metric;
    double implemented;
    double target;
    std::string note;
};

std::vector<TargetRow> targets_for(const RunConfig& cfg);
std::vector<DiscrepancyRow> discrepancies_for(const RunConfig& cfg, const RunStats& stats,
                                              const std::vector<TargetRow>& targets);

// format: "json" or "csv" (echoed into the JSON report).
std::string run_report_json(const RunConfig& cfg, const RunStats& stats,
                            const std::string& format = "json");
std::string run_report_csv(const RunConfig& cfg, const RunStats& stats);

std::string sweep_alpha_csv(const std::vector<SweepRow>& rows);
std::string sweep_eta_csv(const EtaSweep& sweep);
std::string sweep_alpha_gnuplot(const std::vector<SweepRow>& rows);
std::string sweep_eta_gnuplot(const EtaSweep& sweep);

} // namespace ptqkd
