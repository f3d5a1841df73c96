// ptqkd: BB84 intercept-resend simulator with PT-symmetric discriminator
// strategies. Subcommands: verify, run, sweep-alpha, sweep-eta, angles.

#include <CLI11.hpp>

#include "ptqkd/bb84.hpp"
#include "ptqkd/eve.hpp"
#include "ptqkd/montecarlo.hpp"
#include "ptqkd/report.hpp"
#include "ptqkd/verify.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StrategyFlags {
    std::string name = "none";
    double alpha = 0.0, rho = 0.0, sigma = 0.0, epsilon = 0.0;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* rho_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* epsilon_opt = nullptr;

    ptqkd::StrategySpec spec() const {
        ptqkd::StrategySpec s;
        s.name = name;
        if (alpha_opt && alpha_opt->count() > 0) s.alpha = alpha;
        if (rho_opt && rho_opt->count() > 0) s.rho = rho;
        if (sigma_opt && sigma_opt->count() > 0) s.sigma = sigma;
        if (epsilon_opt && epsilon_opt->count() > 0) s.epsilon = epsilon;
        return s;
    }
};

void add_strategy_params(CLI::App* cmd, StrategyFlags& f, bool with_alpha = true,
                         bool with_rho = true, bool with_sigma = true, bool with_epsilon = true) {
    if (with_alpha)
        f.alpha_opt = cmd->add_option("--alpha", f.alpha, "Metric parameter (approach1/2/3)");
    if (with_rho) f.rho_opt = cmd->add_option("--rho", f.rho, "Gate angle (approach2)");
    if (with_sigma) f.sigma_opt = cmd->add_option("--sigma", f.sigma, "Gate angle (approach3)");
    if (with_epsilon)
        f.epsilon_opt = cmd->add_option("--epsilon", f.epsilon, "pi/2 - alpha offset (approach1)");
}

void add_policy_flags(CLI::App* cmd, ptqkd::RunConfig& cfg) {
    static const std::map<std::string, ptqkd::NullPolicy> null_map{
        {"wrong", ptqkd::NullPolicy::count_wrong}, {"loss", ptqkd::NullPolicy::loss}};
    static const std::map<std::string, ptqkd::FallbackPolicy> fb_map{
        {"none", ptqkd::FallbackPolicy::none}, {"coin", ptqkd::FallbackPolicy::random_guess}};
    static const std::map<std::string, ptqkd::ResendPolicy> rs_map{
        {"invert", ptqkd::ResendPolicy::invert_preparation},
        {"reencode", ptqkd::ResendPolicy::reencode}};
    cmd->add_option("--null", cfg.null_policy, "Null-outcome accounting")
        ->transform(CLI::CheckedTransformer(null_map, CLI::ignore_case))
        ->default_str("wrong");
    cmd->add_option("--fallback", cfg.fallback, "Replace undecided bits with a coin flip")
        ->transform(CLI::CheckedTransformer(fb_map, CLI::ignore_case))
        ->default_str("none");
    cmd->add_option("--resend", cfg.resend, "What Eve forwards after a conclusive outcome")
        ->transform(CLI::CheckedTransformer(rs_map, CLI::ignore_case))
        ->default_str("invert");
}

void add_seed_flag(CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "RNG seed")->envname("PTQKD_SEED")->capture_default_str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

int cmd_verify(std::uint64_t seed, int samples) {
    const auto results = ptqkd::run_verification(seed, samples);
    int passed = 0;
    for (const auto& r : results) {
        if (r.pass) ++passed;
        std::printf("[%s] %-28s max_err %-12.3g samples %d\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_err, r.samples);
    }
    std::printf("%d/%zu checks passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int cmd_run(const ptqkd::RunConfig& cfg, const std::string& format,
            const std::string& transcript_path) {
    const ptqkd::RunStats stats = ptqkd::simulate(cfg);
    if (format == "csv")
        emit(ptqkd::run_report_csv(cfg, stats), "");
    else
        emit(ptqkd::run_report_json(cfg, stats, format), "");
    if (!transcript_path.empty()) {
        const ptqkd::Strategy eve =
            cfg.strategy.name == "none"
                ? ptqkd::Strategy{}
                : ptqkd::apply_efficiency(ptqkd::make_strategy(cfg.strategy),
                                          {cfg.eta, cfg.null_policy, cfg.fallback});
        ptqkd::Strategy eve_cfg = eve;
        eve_cfg.resend = cfg.resend;
        const ptqkd::MasterRng rng(cfg.seed);
        const ptqkd::Transcript t = ptqkd::run_protocol(
            cfg.qubits, cfg.strategy.name == "none" ? nullptr : &eve_cfg, rng);
        emit(ptqkd::to_json(t), transcript_path);
    }
    return 0;
}

int cmd_angles(double alpha, double rho) {
    const auto rows = ptqkd::approach2_cosine_table(alpha, rho);
    std::printf("%-14s %-16s %-36s %s\n", "pair", "closed_form", "direct", "difference");
    for (const auto& row : rows) {
        const std::string direct = ptqkd::num9(row.direct.real()) +
                                   (row.direct.imag() < 0 ? "" : "+") +
                                   ptqkd::num9(row.direct.imag()) + "i";
        // Closed forms carry a convention-dependent overall sign per pair, so
        // the reconciliation column compares magnitudes.
        const double diff = std::abs(row.closed_form) - std::abs(row.direct);
        std::printf("%-14s %-16s %-36s %.3g\n", row.pair.c_str(),
                    ptqkd::num9(row.closed_form).c_str(), direct.c_str(), diff);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BB84 intercept-resend attacks with PT-symmetric state discrimination"};
    app.require_subcommand(1);

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run the algebraic identity suite");
    std::uint64_t verify_seed = 2024;
    int verify_samples = 1000;
    add_seed_flag(verify, verify_seed);
    verify->add_option("--samples", verify_samples, "Random samples per check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // run ---------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Simulate the protocol and report statistics");
    ptqkd::RunConfig run_cfg;
    StrategyFlags run_strategy;
    std::string run_format = "json";
    std::string transcript_path;
    run->add_option("--strategy", run_strategy.name, "none|hermitian|approach1|approach2|approach3")
        ->check(CLI::IsMember({"none", "hermitian", "approach1", "approach2", "approach3"}))
        ->capture_default_str();
    run->add_option("--qubits", run_cfg.qubits, "Number of transmitted qubits")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--eta", run_cfg.eta, "Discriminator efficiency in [0, 1]")
        ->capture_default_str();
    add_strategy_params(run, run_strategy);
    add_policy_flags(run, run_cfg);
    add_seed_flag(run, run_cfg.seed);
    run->add_option("--format", run_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    run->add_option("--workers", run_cfg.workers, "Worker threads (0 = hardware)");
    run->add_option("--transcript", transcript_path, "Also write the full per-qubit transcript (JSON) to this file");

    // sweep-alpha -------------------------------------------------------------
    auto* sweep_a = app.add_subcommand("sweep-alpha", "Approach-3 accuracy over an alpha grid (CSV)");
    ptqkd::RunConfig sa_cfg;
    sa_cfg.qubits = 100000;
    sa_cfg.strategy.name = "approach3";
    StrategyFlags sa_strategy;
    sa_strategy.name = "approach3";
    double sa_from = 0.3, sa_to = 1.5;
    int sa_steps = 60;
    std::string sa_out, sa_gnuplot;
    sweep_a->add_option("--from", sa_from, "Grid start")->capture_default_str();
    sweep_a->add_option("--to", sa_to, "Grid end (inclusive)")->capture_default_str();
    sweep_a->add_option("--steps", sa_steps, "Number of grid points")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    sweep_a->add_option("--qubits", sa_cfg.qubits, "Qubits per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_a->add_option("--eta", sa_cfg.eta, "Discriminator efficiency in [0, 1]")
        ->capture_default_str();
    add_strategy_params(sweep_a, sa_strategy, /*alpha=*/false, /*rho=*/false,
                        /*sigma=*/true, /*epsilon=*/false);
    add_policy_flags(sweep_a, sa_cfg);
    add_seed_flag(sweep_a, sa_cfg.seed);
    sweep_a->add_option("--workers", sa_cfg.workers, "Worker threads (0 = hardware)");
    sweep_a->add_option("--out", sa_out, "Write the CSV here instead of stdout");
    sweep_a->add_option("--gnuplot", sa_gnuplot, "Also write a gnuplot-ready data file here");

    // sweep-eta ---------------------------------------------------------------
    auto* sweep_e = app.add_subcommand("sweep-eta", "Accuracy over an efficiency grid (CSV)");
    ptqkd::RunConfig se_cfg;
    se_cfg.qubits = 100000;
    StrategyFlags se_strategy;
    se_strategy.name = "approach2";
    double se_from = 0.8, se_to = 1.0;
    int se_steps = 21;
    std::string se_out, se_gnuplot;
    sweep_e->add_option("--strategy", se_strategy.name, "hermitian|approach1|approach2|approach3")
        ->check(CLI::IsMember({"hermitian", "approach1", "approach2", "approach3"}))
        ->capture_default_str();
    sweep_e->add_option("--from", se_from, "Grid start")->capture_default_str();
    sweep_e->add_option("--to", se_to, "Grid end (inclusive)")->capture_default_str();
    sweep_e->add_option("--steps", se_steps, "Number of grid points")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    sweep_e->add_option("--qubits", se_cfg.qubits, "Qubits per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_strategy_params(sweep_e, se_strategy);
    add_policy_flags(sweep_e, se_cfg);
    add_seed_flag(sweep_e, se_cfg.seed);
    sweep_e->add_option("--workers", se_cfg.workers, "Worker threads (0 = hardware)");
    sweep_e->add_option("--out", se_out, "Write the CSV here instead of stdout");
    sweep_e->add_option("--gnuplot", se_gnuplot, "Also write a gnuplot-ready data file here");

    // angles ------------------------------------------------------------------
    auto* angles = app.add_subcommand(
        "angles", "Pairwise CPT cosines of the gate-rotated protocol states, two ways");
    double ang_alpha = kPi / 4.0;
    double ang_rho = 3.0 * kPi / 4.0;
    angles->add_option("--alpha", ang_alpha, "Metric parameter")->capture_default_str();
    angles->add_option("--rho", ang_rho, "Gate angle")->capture_default_str();

    try {
        app.parse(argc, argv);

        if (*verify) return cmd_verify(verify_seed, verify_samples);

        if (*run) {
            run_cfg.strategy = run_strategy.spec();
            return cmd_run(run_cfg, run_format, transcript_path);
        }

        if (*sweep_a) {
            sa_cfg.strategy = sa_strategy.spec();
            sa_cfg.strategy.name = "approach3";
            const auto rows = ptqkd::sweep_alpha(sa_from, sa_to, sa_steps, sa_cfg);
            emit(ptqkd::sweep_alpha_csv(rows), sa_out);
            if (!sa_gnuplot.empty()) emit(ptqkd::sweep_alpha_gnuplot(rows), sa_gnuplot);
            return 0;
        }

        if (*sweep_e) {
            se_cfg.strategy = se_strategy.spec();
            const auto sweep = ptqkd::sweep_eta(se_from, se_to, se_steps, se_cfg);
            emit(ptqkd::sweep_eta_csv(sweep), se_out);
            if (!se_gnuplot.empty()) emit(ptqkd::sweep_eta_gnuplot(sweep), se_gnuplot);
            return 0;
        }

        if (*angles) return cmd_angles(ang_alpha, ang_rho);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
