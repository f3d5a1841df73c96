#pragma once

#include "ptqkd/eve.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptqkd {

// Strategy label plus the parameters a caller chose to pin; unset fields take
// the per-strategy defaults.
struct StrategySpec {
    std::string name = "none"; // none | hermitian | approach1 | approach2 | approach3
    std::optional<double> alpha;
    std::optional<double> rho;
    std::optional<double> sigma;
    std::optional<double> epsilon;
};

// Builds the strategy and rejects parameters that do not belong to it.
Strategy make_strategy(const StrategySpec& spec);

struct RunConfig {
    std::uint64_t qubits = 1000000;
    StrategySpec strategy;
    double eta = 1.0;
    NullPolicy null_policy = NullPolicy::count_wrong;
    FallbackPolicy fallback = FallbackPolicy::none;
    ResendPolicy resend = ResendPolicy::invert_preparation;
    std::uint64_t seed = 42;
    // Performance hint only: results are bit-identical for any worker count
    // and the value is deliberately left out of report echoes.
    unsigned workers = 0; // 0 = hardware concurrency
};

struct Interval {
    double lo{};
    double hi{};
};

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double confidence = 0.95);

struct RunStats {
    std::uint64_t n{};
    std::uint64_t sifted_count{};
    std::uint64_t lost_count{};
    double sifted_fraction{};
    std::optional<double> qber;                    // empty when the sift is empty
    std::optional<double> eve_accuracy;            // on sifted positions
    Interval eve_interval;                         // Wilson 95% around eve_accuracy
    std::optional<double> all_positions_accuracy;  // on delivered positions
    std::optional<double> unambiguous_rate;        // over all intercepts
    std::optional<double> exact_accuracy;          // enumeration value for the strategy
};

RunStats simulate(const RunConfig& cfg);

struct SweepRow {
    double x{};
    bool feasible = true;
    std::optional<double> tau; // alpha sweeps only
    std::optional<double> exact;
    std::optional<double> sampled;
    Interval interval;
};

// Approach-3 accuracy versus alpha on an inclusive steps-point grid;
// infeasible grid points produce empty rows rather than errors.
std::vector<SweepRow> sweep_alpha(double from, double to, int steps, const RunConfig& cfg);

struct EtaSweep {
    std::vector<SweepRow> rows;
    // Linear-interpolated eta where the exact accuracy crosses 3/4.
    std::optional<double> threshold;
};

EtaSweep sweep_eta(double from, double to, int steps, const RunConfig& cfg);

} // namespace ptqkd
