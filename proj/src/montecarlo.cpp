#include "ptqkd/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ptqkd {

Strategy make_strategy(const StrategySpec& spec) {
    auto reject = [&](const std::optional<double>& field, const char* flag) {
        if (field)
            throw std::invalid_argument(std::string(flag) + " does not apply to strategy '" +
                                        spec.name + "'");
    };
    if (spec.name == "none" || spec.name == "hermitian") {
        reject(spec.alpha, "--alpha");
        reject(spec.rho, "--rho");
        reject(spec.sigma, "--sigma");
        reject(spec.epsilon, "--epsilon");
        if (spec.name == "none")
            return Strategy{}; // callers check the name; empty plans never run
        return hermitian_strategy();
    }
    if (spec.name == "approach1") {
        reject(spec.alpha, "--alpha");
        reject(spec.rho, "--rho");
        reject(spec.sigma, "--sigma");
        return approach1_strategy(spec.epsilon.value_or(1e-3));
    }
    if (spec.name == "approach2") {
        reject(spec.sigma, "--sigma");
        reject(spec.epsilon, "--epsilon");
        return approach2_strategy(spec.alpha.value_or(std::numbers::pi / 4),
                                  spec.rho.value_or(3 * std::numbers::pi / 4));
    }
    if (spec.name == "approach3") {
        reject(spec.rho, "--rho");
        reject(spec.epsilon, "--epsilon");
        return approach3_strategy(spec.alpha.value_or(alpha_opt()),
                                  spec.sigma.value_or(std::numbers::pi / 4));
    }
    throw std::invalid_argument("unknown strategy '" + spec.name +
                                "' (expected none, hermitian, approach1, approach2, approach3)");
}

namespace {

double probit(double p) {
    // Newton iterations on erf; plenty for the confidence levels in use.
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("probit: p must be in (0, 1)");
    double x = 0.0;
    for (int i = 0; i < 60; ++i) {
        double err = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)) - p;
        double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        double step = err / pdf;
        x -= step;
        if (std::abs(step) < 1e-15)
            break;
    }
    return x;
}

struct Counters {
    std::uint64_t sifted = 0;
    std::uint64_t lost = 0;
    std::uint64_t bob_err_sifted = 0;
    std::uint64_t eve_correct_sifted = 0;
    std::uint64_t eve_correct_delivered = 0;
    std::uint64_t unambiguous = 0;

    void add(const Counters& o) {
        sifted += o.sifted;
        lost += o.lost;
        bob_err_sifted += o.bob_err_sifted;
        eve_correct_sifted += o.eve_correct_sifted;
        eve_correct_delivered += o.eve_correct_delivered;
        unambiguous += o.unambiguous;
    }
};

void accumulate(Counters& c, const QubitRecord& rec, bool has_eve) {
    if (rec.lost) {
        ++c.lost;
        if (has_eve && rec.eve_tag == Tag::unambiguous)
            ++c.unambiguous; // cannot happen with the shipped policies, kept for symmetry
        return;
    }
    bool sifted = rec.b == rec.c;
    if (sifted) {
        ++c.sifted;
        if (rec.bob_bit != static_cast<std::int8_t>(rec.a))
            ++c.bob_err_sifted;
    }
    if (has_eve) {
        if (rec.eve_tag == Tag::unambiguous)
            ++c.unambiguous;
        bool correct = rec.eve_bit == static_cast<std::int8_t>(rec.a);
        if (correct) {
            ++c.eve_correct_delivered;
            if (sifted)
                ++c.eve_correct_sifted;
        }
    }
}

} // namespace

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double confidence) {
    if (n == 0)
        throw std::domain_error("wilson_interval: n must be positive");
    if (hits > n)
        throw std::domain_error("wilson_interval: hits exceed n");
    double z = std::abs(confidence - 0.95) < 1e-12 ? 1.959963984540054
                                                   : probit(0.5 + confidence / 2.0);
    double nn = static_cast<double>(n);
    double p = static_cast<double>(hits) / nn;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (p + z2 / (2.0 * nn)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    double lo = center - half;
    double hi = center + half;
    // the exact bounds at the degenerate counts; cancellation leaves ~1e-18
    if (hits == 0) lo = 0.0;
    if (hits == n) hi = 1.0;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

RunStats simulate(const RunConfig& cfg) {
    if (cfg.qubits < 1)
        throw std::invalid_argument("simulate: need at least one qubit");

    Strategy strategy;
    const Strategy* eve = nullptr;
    if (cfg.strategy.name != "none") {
        strategy = apply_efficiency(make_strategy(cfg.strategy),
                                    {cfg.eta, cfg.null_policy, cfg.fallback});
        strategy.resend = cfg.resend;
        eve = &strategy;
    }

    MasterRng master(cfg.seed);
    const std::uint64_t n = cfg.qubits;
    unsigned workers = cfg.workers != 0 ? cfg.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (static_cast<std::uint64_t>(workers) > n) workers = static_cast<unsigned>(n);

    Counters total;
    if (workers == 1) {
        for (std::uint64_t i = 0; i < n; ++i)
            accumulate(total, simulate_qubit(master, i, eve), eve != nullptr);
    } else {
        std::vector<Counters> parts(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = n / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t begin = chunk * w;
            std::uint64_t end = w + 1 == workers ? n : chunk * (w + 1);
            pool.emplace_back([&, w, begin, end] {
                Counters local;
                for (std::uint64_t i = begin; i < end; ++i)
                    accumulate(local, simulate_qubit(master, i, eve), eve != nullptr);
                parts[w] = local;
            });
        }
        for (std::thread& th : pool)
            th.join();
        for (const Counters& part : parts)
            total.add(part);
    }

    RunStats stats;
    stats.n = n;
    stats.sifted_count = total.sifted;
    stats.lost_count = total.lost;
    stats.sifted_fraction = static_cast<double>(total.sifted) / static_cast<double>(n);
    if (total.sifted > 0)
        stats.qber = static_cast<double>(total.bob_err_sifted) / static_cast<double>(total.sifted);
    if (eve) {
        if (total.sifted > 0) {
            stats.eve_accuracy =
                static_cast<double>(total.eve_correct_sifted) / static_cast<double>(total.sifted);
            stats.eve_interval = wilson_interval(total.eve_correct_sifted, total.sifted);
        }
        std::uint64_t delivered = n - total.lost;
        if (delivered > 0)
            stats.all_positions_accuracy =
                static_cast<double>(total.eve_correct_delivered) / static_cast<double>(delivered);
        stats.unambiguous_rate = static_cast<double>(total.unambiguous) / static_cast<double>(n);
        stats.exact_accuracy = exact_accuracy(strategy);
    }
    return stats;
}

std::vector<SweepRow> sweep_alpha(double from, double to, int steps, const RunConfig& cfg) {
    if (!(from < to) || steps < 2)
        throw std::invalid_argument("sweep_alpha: need from < to and at least 2 grid points");
    if (cfg.strategy.name != "approach3")
        throw std::invalid_argument("sweep_alpha: only strategy approach3 sweeps alpha");

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double alpha = from + (to - from) * static_cast<double>(i) / (steps - 1);
        SweepRow row;
        row.x = alpha;
        RunConfig point = cfg;
        point.strategy.alpha = alpha;
        try {
            Strategy probe = apply_efficiency(make_strategy(point.strategy),
                                              {cfg.eta, cfg.null_policy, cfg.fallback});
            row.tau = probe.params.at("tau");
            row.exact = exact_accuracy(probe);
        } catch (const std::domain_error&) {
            // no evolution-time solution (or alpha outside the metric domain)
            row.feasible = false;
            rows.push_back(row);
            continue;
        }
        RunStats stats = simulate(point);
        row.sampled = stats.eve_accuracy;
        row.interval = stats.eve_interval;
        rows.push_back(row);
    }
    return rows;
}

EtaSweep sweep_eta(double from, double to, int steps, const RunConfig& cfg) {
    if (!(from < to) || steps < 2)
        throw std::invalid_argument("sweep_eta: need from < to and at least 2 grid points");
    if (!(from >= 0.0 && to <= 1.0))
        throw std::invalid_argument("sweep_eta: eta grid must stay within [0, 1]");
    if (cfg.strategy.name == "none")
        throw std::invalid_argument("sweep_eta: pick an eavesdropping strategy");

    EtaSweep sweep;
    sweep.rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double eta = from + (to - from) * static_cast<double>(i) / (steps - 1);
        RunConfig point = cfg;
        point.eta = eta;
        Strategy probe = apply_efficiency(make_strategy(point.strategy),
                                          {eta, cfg.null_policy, cfg.fallback});
        SweepRow row;
        row.x = eta;
        row.exact = exact_accuracy(probe);
        RunStats stats = simulate(point);
        row.sampled = stats.eve_accuracy;
        row.interval = stats.eve_interval;
        sweep.rows.push_back(row);
    }

    const double target = 0.75;
    for (std::size_t i = 0; i + 1 < sweep.rows.size(); ++i) {
        double e0 = *sweep.rows[i].exact;
        double e1 = *sweep.rows[i + 1].exact;
        if ((e0 - target) * (e1 - target) <= 0.0 && e0 != e1) {
            double x0 = sweep.rows[i].x;
            double x1 = sweep.rows[i + 1].x;
            sweep.threshold = x0 + (target - e0) * (x1 - x0) / (e1 - e0);
            break;
        }
    }
    return sweep;
}

} // namespace ptqkd
