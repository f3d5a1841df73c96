#include "ptqkd/verify.hpp"

#include "ptqkd/bb84.hpp"
#include "ptqkd/eve.hpp"
#include "ptqkd/ptcore.hpp"
#include "ptqkd/qmath.hpp"
#include "ptqkd/rng.hpp"

#include <cmath>
#include <limits>

namespace ptqkd {

namespace {

constexpr double kTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

Mat2 hamiltonian(const PtParams& p) {
    const Complex phase{std::cos(p.theta), std::sin(p.theta)};
    return {p.r * phase, Complex{p.s, 0.0}, Complex{p.s, 0.0}, p.r * std::conj(phase)};
}

// Unbroken-phase parameter draw with theta free (so r*cos(theta) != 0) and
// both signs of s exercised.
PtParams random_params(Rng& rng, double* alpha_out = nullptr) {
    const double alpha = -1.4 + 2.8 * rng.uniform();
    const double mag = 0.3 + 1.7 * rng.uniform();
    const double s = rng.bit() ? mag : -mag;
    const double theta = 0.15 + (kPi - 0.3) * rng.uniform();
    if (alpha_out) *alpha_out = alpha;
    return {s * std::sin(alpha) / std::sin(theta), s, theta};
}

StateVec random_state(Rng& rng) {
    StateVec v{Complex{rng.uniform() - 0.5, rng.uniform() - 0.5},
               Complex{rng.uniform() - 0.5, rng.uniform() - 0.5}};
    if (herm_norm(v) < 0.1) v.a0 += Complex{0.5, 0.0};
    return herm_normalize(v);
}

struct Acc {
    double worst = 0.0;
    int n = 0;
    void see(double err) {
        if (err > worst) worst = err;
        ++n;
    }
    CheckResult done(std::string name, double tol = kTol) const {
        return {std::move(name), worst <= tol, worst, n};
    }
};

CheckResult check_commutator(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        const PtParams p = random_params(rng);
        const CptMetric m(alpha_of(p));
        const Mat2 c = c_operator(m);
        const Mat2 h = hamiltonian(p);
        acc.see(max_abs_diff(mat_mul(c, h), mat_mul(h, c)));
    }
    return acc.done("commutator-CH");
}

CheckResult check_c_squared(Rng& rng, int samples) {
    Acc acc;
    const Mat2 id = mat_identity();
    for (int i = 0; i < samples; ++i) {
        const CptMetric m(-1.5 + 3.0 * rng.uniform());
        const Mat2 c = c_operator(m);
        acc.see(max_abs_diff(mat_mul(c, c), id));
    }
    return acc.done("C-squared-identity");
}

CheckResult check_h_decomposition(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        const PtParams p = random_params(rng);
        const CptMetric m(alpha_of(p));
        const Mat2 rebuilt = mat_add(mat_scale(Complex{p.r * std::cos(p.theta), 0.0}, mat_identity()),
                                     mat_scale(Complex{omega_of(p), 0.0}, c_operator(m)));
        acc.see(max_abs_diff(hamiltonian(p), rebuilt));
    }
    return acc.done("H-decomposition");
}

CheckResult check_cpt_involution(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        const CptMetric m(-1.5 + 3.0 * rng.uniform());
        const StateVec v = random_state(rng);
        const StateVec twice = cpt_map(m, cpt_map(m, v));
        acc.see(std::abs(twice.a0 - v.a0));
        acc.see(std::abs(twice.a1 - v.a1));
    }
    return acc.done("cpt-involution");
}

CheckResult check_cpt_antilinearity(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        const CptMetric m(-1.5 + 3.0 * rng.uniform());
        const StateVec u = random_state(rng);
        const StateVec v = random_state(rng);
        const Complex lam{rng.uniform() - 0.5, rng.uniform() - 0.5};
        const StateVec lhs = cpt_map(m, {lam * u.a0 + v.a0, lam * u.a1 + v.a1});
        const StateVec mu = cpt_map(m, u);
        const StateVec mv = cpt_map(m, v);
        acc.see(std::abs(lhs.a0 - (std::conj(lam) * mu.a0 + mv.a0)));
        acc.see(std::abs(lhs.a1 - (std::conj(lam) * mu.a1 + mv.a1)));
    }
    return acc.done("cpt-antilinearity");
}

CheckResult check_metric_positivity(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        const CptMetric m(-1.5 + 3.0 * rng.uniform());
        const StateVec v = random_state(rng);
        const Complex sq = cpt_inner(m, v, v);
        // Must be real and strictly positive for nonzero states.
        acc.see(std::abs(sq.imag()));
        acc.see(sq.real() > kTol ? 0.0 : 1.0);
    }
    return acc.done("metric-positivity");
}

void see_pair(Acc& acc, const MeasurementPair& pair) {
    acc.see(max_abs_diff(mat_add(pair.p_plus, pair.p_minus), mat_identity()));
    acc.see(max_abs_diff(mat_mul(pair.p_plus, pair.p_plus), pair.p_plus));
    acc.see(max_abs_diff(mat_mul(pair.p_minus, pair.p_minus), pair.p_minus));
}

CheckResult check_pair_completeness(Rng& rng, int samples) {
    Acc acc;
    const Strategy shipped[] = {hermitian_strategy(), approach1_strategy(),
                                approach2_strategy(), approach3_strategy()};
    for (const Strategy& s : shipped)
        for (const MeasurementPlan& plan : s.plans) see_pair(acc, plan.pair);
    // Random-alpha CPT pairs built from the diag(1, i) reference states, which
    // stay CPT-orthogonal at every alpha.
    const Mat2 g = approach1_gate();
    const StateVec t01 = mat_apply(g, encode(0, Basis::diagonal));
    const StateVec t11 = mat_apply(g, encode(1, Basis::diagonal));
    for (int i = 0; i < samples; ++i) {
        const CptMetric m(-1.5 + 3.0 * rng.uniform());
        see_pair(acc, make_cpt_pair(m, t01, t11));
    }
    return acc.done("pair-completeness");
}

CheckResult check_born_normalization(Rng& rng, int samples) {
    Acc acc;
    const Strategy shipped[] = {hermitian_strategy(), approach1_strategy(),
                                approach2_strategy(), approach3_strategy()};
    for (int i = 0; i < samples; ++i) {
        const Strategy& s = shipped[static_cast<std::size_t>(rng.next() % 4u)];
        for (const MeasurementPlan& plan : s.plans) {
            const StateVec v = random_state(rng);
            const double p_plus = outcome_plus_probability(plan.pair, v);
            const MeasurementPair swapped{plan.pair.p_minus, plan.pair.p_plus, plan.pair.metric};
            const double p_minus = outcome_plus_probability(swapped, v);
            acc.see(p_plus >= 0.0 && p_plus <= 1.0 ? 0.0 : 1.0);
            acc.see(p_minus >= 0.0 && p_minus <= 1.0 ? 0.0 : 1.0);
            acc.see(std::abs(p_plus + p_minus - 1.0));
        }
    }
    return acc.done("born-normalization");
}

CheckResult check_evolution_cpt_norm(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        double alpha = 0.0;
        const PtParams p = random_params(rng, &alpha);
        const CptMetric m(alpha);
        const double t = 3.0 * rng.uniform();
        const Mat2 u = evolution_operator(p, t);
        const StateVec v = random_state(rng);
        const StateVec w = random_state(rng);
        const Complex before = cpt_inner(m, v, w);
        const Complex after = cpt_inner(m, mat_apply(u, v), mat_apply(u, w));
        acc.see(std::abs(after - before));
    }
    return acc.done("evolution-cpt-norm");
}

CheckResult check_herm_norm_witness() {
    // At alpha = 0.8, omega = 1, t = 1 the Hermitian norm of the evolved basis
    // state |0> grows by a factor well above 3: non-unitarity is not a
    // numerical artifact. Pass when the witnessed gap stays macroscopic.
    const PtParams p = params_from_alpha(0.8, 1.0);
    const Mat2 u = evolution_operator(p, 1.0);
    const StateVec v{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    const StateVec uv = mat_apply(u, v);
    const double gap = std::abs(herm_norm(uv) * herm_norm(uv) - 1.0);
    return {"herm-norm-not-conserved", gap > 1.0, gap, 1};
}

CheckResult check_evolved_metric(Rng& rng, int samples) {
    Acc acc;
    for (int i = 0; i < samples; ++i) {
        const double alpha = -1.4 + 2.8 * rng.uniform();
        const double mag = 0.1 + 1.9 * rng.uniform();
        const double omega = rng.bit() ? mag : -mag;
        const double t = 3.0 * rng.uniform();
        const Mat2 u = evolution_operator(params_from_alpha(alpha, omega), t);
        const double c2 = std::cos(alpha) * std::cos(alpha);
        const Mat2 product = mat_scale(Complex{c2, 0.0}, mat_mul(mat_adjoint(u), u));
        acc.see(max_abs_diff(evolved_metric(alpha, omega, t), product));
    }
    return acc.done("evolved-metric-identity");
}

CheckResult check_hadamard_basis() {
    Acc acc;
    const double k = 1.0 / std::sqrt(2.0);
    const Mat2 h{Complex{k, 0.0}, Complex{k, 0.0}, Complex{k, 0.0}, Complex{-k, 0.0}};
    for (int bit = 0; bit < 2; ++bit) {
        const StateVec lhs = encode(bit, Basis::diagonal);
        const StateVec rhs = mat_apply(h, encode(bit, Basis::computational));
        acc.see(std::abs(lhs.a0 - rhs.a0));
        acc.see(std::abs(lhs.a1 - rhs.a1));
    }
    return acc.done("hadamard-basis");
}

CheckResult check_gate1_orthogonality(Rng& rng, int samples) {
    Acc acc;
    const Mat2 g = approach1_gate();
    const StateVec t01 = mat_apply(g, encode(0, Basis::diagonal));
    const StateVec t11 = mat_apply(g, encode(1, Basis::diagonal));
    for (int i = 0; i < samples; ++i) {
        const CptMetric m(-1.5 + 3.0 * rng.uniform());
        acc.see(std::abs(cpt_cosine(m, t01, t11)));
    }
    return acc.done("gate1-orthogonality");
}

CheckResult check_gate2_orthogonality(Rng& rng, int samples) {
    Acc acc;
    const StateVec psi00 = encode(0, Basis::computational);
    const StateVec psi11 = encode(1, Basis::diagonal);
    for (int i = 0; i < samples; ++i) {
        // Solve 1 + sin(alpha)(cos(rho) - sin(rho)) = 0 for alpha given rho,
        // then the g(rho)-transformed pair must come out CPT-orthogonal.
        const double rho = (0.55 + 0.4 * rng.uniform()) * kPi;
        const double sa = 1.0 / (std::sin(rho) - std::cos(rho));
        if (!(sa < 1.0 - 1e-6)) continue;
        const CptMetric m(std::asin(sa));
        const Mat2 g = approach2_gate(rho);
        acc.see(std::abs(cpt_cosine(m, mat_apply(g, psi00), mat_apply(g, psi11))));
    }
    // The operating point of the shipped strategy.
    const CptMetric m(kPi / 4.0);
    const Mat2 g = approach2_gate(3.0 * kPi / 4.0);
    acc.see(std::abs(cpt_cosine(m, mat_apply(g, psi00), mat_apply(g, psi11))));
    return acc.done("gate2-orthogonality");
}

CheckResult check_gate3_orthogonality(Rng& rng, int samples) {
    Acc acc;
    const double sigma = kPi / 4.0;
    const Mat2 g = approach3_gate();
    const StateVec psi00 = encode(0, Basis::computational);
    const StateVec psi11 = encode(1, Basis::diagonal);
    for (int i = 0; i < samples; ++i) {
        const double alpha = alpha_opt() + (1.5 - alpha_opt()) * rng.uniform();
        const double tau = approach3_time(alpha, sigma, 1.0);
        const Mat2 u = evolution_operator(params_from_alpha(alpha, 1.0), tau);
        const StateVec s0 = herm_normalize(mat_apply(u, mat_apply(g, psi00)));
        const StateVec s1 = herm_normalize(mat_apply(u, mat_apply(g, psi11)));
        acc.see(std::abs(herm_inner(s0, s1)));
    }
    return acc.done("gate3-evolved-orthogonality");
}

CheckResult check_singular_guard() {
    int probes = 0;
    int failures = 0;
    const auto must_throw = [&](double alpha) {
        ++probes;
        try {
            CptMetric m(alpha);
            (void)m;
            ++failures;
        } catch (const SingularMetricError&) {
        }
    };
    must_throw(kPi / 2.0);
    must_throw(-kPi / 2.0);
    must_throw(kPi / 2.0 - 1e-10);
    must_throw(std::numeric_limits<double>::quiet_NaN());
    ++probes;
    try {
        CptMetric m(kPi / 2.0 - 1e-8);
        (void)m;
    } catch (const SingularMetricError&) {
        ++failures;
    }
    return {"singular-metric-guard", failures == 0, static_cast<double>(failures), probes};
}

} // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, int samples) {
    Rng rng(mix64(seed ^ 0x5ec5ec5ec5ec5ec5ull));
    std::vector<CheckResult> out;
    out.push_back(check_commutator(rng, samples));
    out.push_back(check_c_squared(rng, samples));
    out.push_back(check_h_decomposition(rng, samples));
    out.push_back(check_cpt_involution(rng, samples));
    out.push_back(check_cpt_antilinearity(rng, samples));
    out.push_back(check_metric_positivity(rng, samples));
    out.push_back(check_pair_completeness(rng, samples));
    out.push_back(check_born_normalization(rng, samples));
    out.push_back(check_evolution_cpt_norm(rng, samples));
    out.push_back(check_herm_norm_witness());
    out.push_back(check_evolved_metric(rng, samples));
    out.push_back(check_hadamard_basis());
    out.push_back(check_gate1_orthogonality(rng, samples));
    out.push_back(check_gate2_orthogonality(rng, samples));
    out.push_back(check_gate3_orthogonality(rng, samples));
    out.push_back(check_singular_guard());
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace ptqkd
