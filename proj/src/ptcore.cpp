#include "ptqkd/ptcore.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ptqkd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularGuard = 1e-9; // reject |alpha| >= pi/2 - this

thread_local std::uint64_t g_measurements = 0;

} // namespace

namespace detail {
std::uint64_t measurement_count() { return g_measurements; }
void reset_measurement_count() { g_measurements = 0; }
void bump_measurement_count() { ++g_measurements; }
} // namespace detail

CptMetric::CptMetric(double alpha) : alpha_(alpha) {
    if (!(std::abs(alpha) < kPi / 2 - kSingularGuard))
        throw SingularMetricError("CptMetric: alpha = " + std::to_string(alpha) +
                                  " is at/beyond the PT-symmetry breaking point");
}

double alpha_of(const PtParams& p) {
    if (p.s == 0.0)
        throw std::invalid_argument("alpha_of: coupling s must be nonzero");
    double arg = (p.r / p.s) * std::sin(p.theta);
    if (!(std::abs(arg) < 1.0))
        throw BrokenPhaseError("alpha_of: |(r/s) sin(theta)| >= 1, PT phase is broken");
    return std::asin(arg);
}

double omega_of(const PtParams& p) {
    return p.s * std::cos(alpha_of(p));
}

PtParams params_from_alpha(double alpha, double omega) {
    CptMetric guard(alpha); // reuse the singular-alpha check
    (void)guard;
    if (omega == 0.0)
        throw std::invalid_argument("params_from_alpha: omega must be nonzero");
    double s = omega / std::cos(alpha);
    return {s * std::sin(alpha), s, kPi / 2};
}

Mat2 c_operator(const CptMetric& m) {
    double ca = std::cos(m.alpha());
    Complex is(0.0, std::sin(m.alpha()));
    return {is / ca, 1.0 / ca, 1.0 / ca, -is / ca};
}

StateVec cpt_map(const CptMetric& m, const StateVec& v) {
    // C.P.conj(v); P swaps the amplitudes, conj implements the transposition
    // convention of the inner product.
    double ca = std::cos(m.alpha());
    Complex is(0.0, std::sin(m.alpha()));
    Complex p0 = std::conj(v.a1);
    Complex p1 = std::conj(v.a0);
    return {(is * p0 + p1) / ca, (p0 - is * p1) / ca};
}

Complex cpt_inner(const CptMetric& m, const StateVec& u, const StateVec& v) {
    StateVec w = cpt_map(m, u);
    return w.a0 * v.a0 + w.a1 * v.a1;
}

double cpt_norm(const CptMetric& m, const StateVec& v) {
    double n2 = cpt_inner(m, v, v).real();
    return n2 > 0.0 ? std::sqrt(n2) : 0.0;
}

StateVec cpt_normalize(const CptMetric& m, const StateVec& v) {
    double n = cpt_norm(m, v);
    if (n < 1e-150)
        throw std::invalid_argument("cpt_normalize: vector has (near-)zero CPT norm");
    return {v.a0 / n, v.a1 / n};
}

Mat2 cpt_projector(const CptMetric& m, const StateVec& v) {
    StateVec bra = cpt_map(m, v);
    Complex n = bra.a0 * v.a0 + bra.a1 * v.a1;
    if (std::abs(n) < 1e-150)
        throw std::invalid_argument("cpt_projector: vector has zero CPT norm");
    return {v.a0 * bra.a0 / n, v.a0 * bra.a1 / n, v.a1 * bra.a0 / n, v.a1 * bra.a1 / n};
}

Complex cpt_cosine(const CptMetric& m, const StateVec& u, const StateVec& v) {
    double nu = cpt_inner(m, u, u).real();
    double nv = cpt_inner(m, v, v).real();
    if (nu <= 0.0 || nv <= 0.0)
        throw std::invalid_argument("cpt_cosine: both vectors need positive CPT norm");
    return cpt_inner(m, u, v) / std::sqrt(nu * nv);
}

namespace {

void validate_pair(const MeasurementPair& pair, const char* who) {
    Mat2 sum = mat_add(pair.p_plus, pair.p_minus);
    if (!approx_eq(sum, mat_identity()))
        throw std::invalid_argument(std::string(who) + ": projectors do not sum to identity "
                                    "(the outcome states are not orthogonal in the pair metric)");
    if (!approx_eq(mat_mul(pair.p_plus, pair.p_plus), pair.p_plus) ||
        !approx_eq(mat_mul(pair.p_minus, pair.p_minus), pair.p_minus))
        throw std::invalid_argument(std::string(who) + ": projector not idempotent");
}

} // namespace

MeasurementPair make_cpt_pair(const CptMetric& m, const StateVec& v_plus, const StateVec& v_minus) {
    MeasurementPair pair{cpt_projector(m, v_plus), cpt_projector(m, v_minus), m};
    validate_pair(pair, "make_cpt_pair");
    return pair;
}

MeasurementPair make_hermitian_pair(const StateVec& v_plus, const StateVec& v_minus) {
    MeasurementPair pair{herm_projector(v_plus), herm_projector(v_minus), std::nullopt};
    validate_pair(pair, "make_hermitian_pair");
    return pair;
}

double outcome_plus_probability(const MeasurementPair& pair, const StateVec& state) {
    Complex den, num;
    if (pair.metric) {
        StateVec bra = cpt_map(*pair.metric, state);
        StateVec ps = mat_apply(pair.p_plus, state);
        den = bra.a0 * state.a0 + bra.a1 * state.a1;
        num = bra.a0 * ps.a0 + bra.a1 * ps.a1;
    } else {
        den = herm_inner(state, state);
        num = herm_inner(state, mat_apply(pair.p_plus, state));
    }
    if (den.real() <= 0.0)
        throw std::invalid_argument("outcome_plus_probability: state has nonpositive norm "
                                    "under the pair metric");
    double p = num.real() / den.real();
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

MeasureResult cpt_measure(const MeasurementPair& pair, const StateVec& state, Rng& rng) {
    detail::bump_measurement_count();
    double p = outcome_plus_probability(pair, state);
    int outcome;
    if (p >= 1.0 - kDefaultTol)
        outcome = +1; // certain outcomes bypass the draw so collapse never divides by ~0
    else if (p <= kDefaultTol)
        outcome = -1;
    else
        outcome = rng.uniform() < p ? +1 : -1;

    StateVec post = mat_apply(outcome > 0 ? pair.p_plus : pair.p_minus, state);
    StateVec collapsed = pair.metric ? cpt_normalize(*pair.metric, post) : herm_normalize(post);
    return {outcome, collapsed};
}

Mat2 evolution_operator(const PtParams& p, double t) {
    double alpha = alpha_of(p);
    double omega = p.s * std::cos(alpha);
    double ca = std::cos(alpha);
    double wt = omega * t;
    Complex phase = std::exp(Complex(0.0, -p.r * std::cos(p.theta) * t));
    Complex off(0.0, -std::sin(wt));
    return {phase * std::cos(wt - alpha) / ca, phase * off / ca,
            phase * off / ca, phase * std::cos(wt + alpha) / ca};
}

Mat2 evolved_metric(double alpha, double omega, double t) {
    CptMetric guard(alpha);
    (void)guard;
    double wt = omega * t;
    double s2 = std::sin(wt) * std::sin(wt);
    Complex off(0.0, 2.0 * s2 * std::sin(alpha));
    double d0 = std::cos(wt - alpha) * std::cos(wt - alpha) + s2;
    double d1 = std::cos(wt + alpha) * std::cos(wt + alpha) + s2;
    return {d0, -off, off, d1};
}

double approach3_time(double alpha, double sigma, double omega) {
    if (omega == 0.0)
        throw std::invalid_argument("approach3_time: omega must be nonzero");
    double sa = std::sin(alpha);
    double ca = std::cos(alpha);
    double cs = std::cos(sigma);
    double den = 2.0 * sa - 2.0 * sa * sa * cs;
    if (den <= 0.0)
        throw std::domain_error("approach3_time: nonpositive denominator (need sin(alpha) > 0)");
    double rhs = ca * ca * cs / den;
    if (rhs < 0.0)
        throw std::domain_error("approach3_time: negative right-hand side");
    if (rhs > 1.0 + 1e-12)
        throw NoSolutionError("approach3_time: no solution, alpha below the feasibility boundary");
    if (rhs > 1.0) rhs = 1.0; // boundary case within rounding of the optimum
    return std::asin(std::sqrt(rhs)) / omega;
}

} // namespace ptqkd
