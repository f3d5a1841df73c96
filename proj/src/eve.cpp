#include "ptqkd/eve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptqkd {

namespace {

constexpr double kPi = std::numbers::pi;

StateVec psi(Bb84State s) { return state_vector(s); }

int data_bit(Bb84State s) { return static_cast<int>(s) & 1; }

constexpr Bb84State kAllStates[4] = {Bb84State::psi00, Bb84State::psi10,
                                     Bb84State::psi01, Bb84State::psi11};

} // namespace

double alpha_opt() {
    return std::asin(std::numbers::sqrt2 - 1.0);
}

Mat2 approach1_gate() {
    return {1.0, 0.0, 0.0, Complex(0.0, 1.0)};
}

Mat2 approach2_gate(double rho) {
    // Rz(rho) composed with the quarter turn R2(pi/2); this is the gate that
    // realizes the closed-form cosine table (see README on conventions).
    Complex em = std::exp(Complex(0.0, -rho / 2));
    Complex ep = std::exp(Complex(0.0, rho / 2));
    const double k = 1.0 / std::numbers::sqrt2;
    return {k * em, Complex(0.0, k) * em, Complex(0.0, k) * ep, k * ep};
}

Mat2 approach3_gate() {
    // Unitary sending psi00 -> (cos(pi/8), -i sin(pi/8)) and
    // psi11 -> (cos(3pi/8), -i sin(3pi/8)).
    double c = std::cos(kPi / 8);
    double s = std::sin(kPi / 8);
    return {c, s, Complex(0.0, -s), Complex(0.0, c)};
}

Strategy hermitian_strategy() {
    Strategy s;
    s.name = "hermitian";
    for (Basis basis : {Basis::computational, Basis::diagonal}) {
        MeasurementPlan plan;
        plan.weight = 0.5;
        plan.prep = mat_identity();
        plan.prep_inv = mat_identity();
        plan.pair = make_hermitian_pair(encode(0, basis), encode(1, basis));
        s.plans.push_back(plan);
    }
    return s;
}

Strategy approach1_strategy(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.1))
        throw std::invalid_argument("approach1_strategy: epsilon must be in (0, 0.1]");
    CptMetric metric(kPi / 2 - epsilon);
    Mat2 gate = approach1_gate();

    MeasurementPlan plan;
    plan.prep = gate;
    plan.prep_inv = mat_inverse(gate);
    plan.pair = make_cpt_pair(metric, mat_apply(gate, psi(Bb84State::psi01)),
                              mat_apply(gate, psi(Bb84State::psi11)));
    plan.bit_on_plus = 0; // Bayes-optimal fixed guess: posterior favors bit 0 at 2:1
    plan.bit_on_minus = 1;
    plan.tag_on_plus = Tag::conclusive;
    plan.tag_on_minus = Tag::unambiguous; // only psi11 can produce -1

    Strategy s;
    s.name = "approach1";
    s.plans.push_back(plan);
    s.params = {{"alpha", kPi / 2 - epsilon}, {"epsilon", epsilon}};
    return s;
}

Strategy approach2_strategy(double alpha, double rho) {
    CptMetric metric(alpha);
    Mat2 gate = approach2_gate(rho);
    StateVec t00 = mat_apply(gate, psi(Bb84State::psi00));
    StateVec t11 = mat_apply(gate, psi(Bb84State::psi11));
    if (std::abs(cpt_cosine(metric, t00, t11)) > 1e-9)
        throw std::invalid_argument(
            "approach2_strategy: transformed psi00 and psi11 are not CPT-orthogonal at "
            "these angles; pick (alpha, rho) with cos(psi00', psi11') = 0");

    MeasurementPlan plan;
    plan.prep = gate;
    plan.prep_inv = mat_inverse(gate);
    plan.pair = make_cpt_pair(metric, t00, t11);

    Strategy s;
    s.name = "approach2";
    s.plans.push_back(plan);
    s.params = {{"alpha", alpha}, {"rho", rho}};
    return s;
}

Strategy approach3_strategy(double alpha, double sigma) {
    if (std::abs(sigma - kPi / 4) > 1e-12)
        throw std::invalid_argument(
            "approach3_strategy: only sigma = pi/4 admits a unitary preparation "
            "(cos(sigma) must preserve the 1/sqrt(2) overlap)");
    const double omega = 1.0;
    double tau = approach3_time(alpha, sigma, omega); // throws below the boundary
    PtParams params = params_from_alpha(alpha, omega);
    Mat2 prep = mat_mul(evolution_operator(params, tau), approach3_gate());

    StateVec e0 = herm_normalize(mat_apply(prep, psi(Bb84State::psi00)));
    StateVec e1 = herm_normalize(mat_apply(prep, psi(Bb84State::psi11)));
    if (std::abs(herm_inner(e0, e1)) > 1e-9)
        throw std::invalid_argument("approach3_strategy: evolved reference states failed "
                                    "the orthogonality check");

    MeasurementPlan plan;
    plan.prep = prep;
    plan.prep_inv = mat_inverse(prep);
    plan.pair = make_hermitian_pair(e0, e1);

    Strategy s;
    s.name = "approach3";
    s.plans.push_back(plan);
    s.params = {{"alpha", alpha}, {"sigma", sigma}, {"tau", tau}, {"omega", omega}};
    return s;
}

Strategy apply_efficiency(Strategy base, const EfficiencyModel& model) {
    if (!(model.eta >= 0.0 && model.eta <= 1.0))
        throw std::invalid_argument("apply_efficiency: eta must be in [0, 1]");
    base.efficiency = model;
    return base;
}

EveOutcome intercept(const Strategy& s, const StateVec& state, Rng& rng) {
    // Fixed draw order (eta, fallback/null draws | plan, measurement, resend
    // basis) keeps per-qubit streams replayable.
    const EfficiencyModel& eff = s.efficiency;
    if (eff.eta < 1.0 && rng.uniform() >= eff.eta) {
        int bit = eff.fallback == FallbackPolicy::random_guess ? rng.bit() : -1;
        if (eff.null_policy == NullPolicy::loss)
            return {bit, Tag::inconclusive_null, std::nullopt};
        int resend_bit = rng.bit(); // drawn before the basis: keeps replay order fixed
        Basis resend_basis = rng.bit() ? Basis::diagonal : Basis::computational;
        return {bit, Tag::inconclusive_null, encode(resend_bit, resend_basis)};
    }

    const MeasurementPlan* plan = &s.plans.front();
    if (s.plans.size() > 1) {
        double u = rng.uniform();
        double acc = 0.0;
        for (const MeasurementPlan& p : s.plans) {
            acc += p.weight;
            if (u < acc) {
                plan = &p;
                break;
            }
        }
    }

    StateVec transformed = mat_apply(plan->prep, state);
    MeasureResult r = cpt_measure(plan->pair, transformed, rng);
    int bit = r.outcome > 0 ? plan->bit_on_plus : plan->bit_on_minus;
    Tag tag = r.outcome > 0 ? plan->tag_on_plus : plan->tag_on_minus;

    StateVec out;
    if (s.resend == ResendPolicy::invert_preparation)
        out = herm_normalize(mat_apply(plan->prep_inv, r.collapsed));
    else
        out = encode(bit, rng.bit() ? Basis::diagonal : Basis::computational);
    return {bit, tag, out};
}

namespace {

// Base accuracy/unambiguous-rate enumeration at eta = 1.
double enumerate(const Strategy& s, bool unambiguous_rate) {
    double total = 0.0;
    for (const MeasurementPlan& plan : s.plans) {
        for (Bb84State in : kAllStates) {
            StateVec t = mat_apply(plan.prep, psi(in));
            double pp = outcome_plus_probability(plan.pair, t);
            double pm = 1.0 - pp;
            if (unambiguous_rate) {
                double u = 0.0;
                if (plan.tag_on_plus == Tag::unambiguous) u += pp;
                if (plan.tag_on_minus == Tag::unambiguous) u += pm;
                total += plan.weight * 0.25 * u;
            } else {
                double correct = 0.0;
                if (plan.bit_on_plus == data_bit(in)) correct += pp;
                if (plan.bit_on_minus == data_bit(in)) correct += pm;
                total += plan.weight * 0.25 * correct;
            }
        }
    }
    return total;
}

} // namespace

double exact_accuracy(const Strategy& s) {
    double base = enumerate(s, false);
    const EfficiencyModel& eff = s.efficiency;
    switch (eff.null_policy) {
        case NullPolicy::count_wrong: {
            double acc = eff.eta * base;
            if (eff.fallback == FallbackPolicy::random_guess)
                acc += (1.0 - eff.eta) * 0.5;
            return acc;
        }
        case NullPolicy::loss:
            // Nulled qubits never reach the sifted key, so the per-sifted-bit
            // accuracy is the base value regardless of eta.
            return base;
    }
    return base;
}

double exact_unambiguous_rate(const Strategy& s) {
    return s.efficiency.eta * enumerate(s, true);
}

QubitRecord simulate_qubit(const MasterRng& rng, std::uint64_t index, const Strategy* eve) {
    Rng stream = rng.substream(index);
    QubitRecord rec{};
    rec.a = static_cast<std::uint8_t>(stream.bit());
    rec.b = static_cast<std::uint8_t>(stream.bit());
    rec.c = static_cast<std::uint8_t>(stream.bit());
    rec.eve_bit = -1;
    rec.eve_tag = Tag::conclusive;
    rec.lost = false;

    StateVec flying = encode(rec.a, static_cast<Basis>(rec.b));
    if (eve) {
        EveOutcome out = intercept(*eve, flying, stream);
        rec.eve_bit = static_cast<std::int8_t>(out.inferred_bit);
        rec.eve_tag = out.tag;
        if (!out.resend) {
            rec.lost = true;
            rec.bob_bit = -1;
            return rec;
        }
        flying = *out.resend;
    }
    rec.bob_bit = static_cast<std::int8_t>(
        measure_in_basis(flying, static_cast<Basis>(rec.c), stream).bit);
    return rec;
}

std::vector<CosineRow> approach2_cosine_table(double alpha, double rho) {
    CptMetric metric(alpha);
    Mat2 gate = approach2_gate(rho);
    double sa = std::sin(alpha);
    double sr = std::sin(rho);
    double cr = std::cos(rho);

    auto transformed = [&](Bb84State s) { return mat_apply(gate, psi(s)); };
    StateVec t00 = transformed(Bb84State::psi00);
    StateVec t10 = transformed(Bb84State::psi10);
    StateVec t01 = transformed(Bb84State::psi01);
    StateVec t11 = transformed(Bb84State::psi11);

    std::vector<CosineRow> rows;
    rows.push_back({"psi00,psi10", cpt_cosine(metric, t00, t10),
                    sa * sr / std::sqrt(1.0 - cr * cr * sa * sa)});
    rows.push_back({"psi00,psi01", cpt_cosine(metric, t00, t01),
                    (1.0 + sa * (sr + cr)) /
                        std::sqrt(2.0 * (1.0 + cr * sa) * (1.0 + sr * sa))});
    rows.push_back({"psi00,psi11", cpt_cosine(metric, t00, t11),
                    (1.0 + sa * (cr - sr)) /
                        std::sqrt(2.0 * (1.0 + cr * sa) * (1.0 - sr * sa))});
    rows.push_back({"psi10,psi11", cpt_cosine(metric, t10, t11),
                    (1.0 - sa * (sr + cr)) /
                        std::sqrt(2.0 * (1.0 - cr * sa) * (1.0 - sr * sa))});
    rows.push_back({"psi01,psi11", cpt_cosine(metric, t01, t11),
                    sa * cr / std::sqrt(1.0 - sr * sr * sa * sa)});
    rows.push_back({"psi10,psi01", cpt_cosine(metric, t10, t01),
                    (1.0 + sa * (sr - cr)) /
                        std::sqrt(2.0 * (1.0 - cr * sa) * (1.0 + sr * sa))});
    return rows;
}

} // namespace ptqkd
