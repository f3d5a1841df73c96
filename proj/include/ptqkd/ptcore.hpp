#pragma once

#include "ptqkd/qmath.hpp"
#include "ptqkd/rng.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace ptqkd {

// Parameters are outside the unbroken PT phase (|r sin(theta)/s| >= 1).
struct BrokenPhaseError : std::domain_error {
    using std::domain_error::domain_error;
};

// alpha at or beyond the symmetry-breaking point, where the C operator and
// the metric blow up.
struct SingularMetricError : std::domain_error {
    using std::domain_error::domain_error;
};

// The Approach-3 orthogonality condition has no evolution-time solution.
struct NoSolutionError : std::domain_error {
    using std::domain_error::domain_error;
};

// H = [[r e^{i theta}, s], [s, r e^{-i theta}]]
struct PtParams {
    double r{};
    double s{};
    double theta{};
};

// Guarded wrapper for the metric parameter: sin(alpha) = (r/s) sin(theta).
class CptMetric {
public:
    explicit CptMetric(double alpha); // throws SingularMetricError near |alpha| = pi/2
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

double alpha_of(const PtParams& p); // throws BrokenPhaseError, std::invalid_argument (s = 0)
// omega = s*cos(alpha). Signed with s so that H = r*cos(theta)*I + omega*C
// holds identically; equals the positive root sqrt(s^2 - r^2 sin^2 theta)
// whenever s > 0.
double omega_of(const PtParams& p);
// Convenience parametrization used by the attack strategies: theta = pi/2,
// s = omega/cos(alpha), r = s*sin(alpha) (the r*cos(theta) part is a global
// phase and is left at zero).
PtParams params_from_alpha(double alpha, double omega);

Mat2 c_operator(const CptMetric& m);
// The antilinear map v -> C.P.conj(v); its output contracted with a second
// vector gives the CPT inner product.
StateVec cpt_map(const CptMetric& m, const StateVec& v);
Complex cpt_inner(const CptMetric& m, const StateVec& u, const StateVec& v);
double cpt_norm(const CptMetric& m, const StateVec& v);
StateVec cpt_normalize(const CptMetric& m, const StateVec& v);
Mat2 cpt_projector(const CptMetric& m, const StateVec& v); // |v><v|/<v|v> in the CPT metric
Complex cpt_cosine(const CptMetric& m, const StateVec& u, const StateVec& v);

// A two-outcome measurement. metric set: Born rule and collapse use the CPT
// inner product; metric empty: plain Hermitian measurement.
struct MeasurementPair {
    Mat2 p_plus;
    Mat2 p_minus;
    std::optional<CptMetric> metric;
};

// Both constructors validate completeness (p+ + p- = 1) and idempotence.
MeasurementPair make_cpt_pair(const CptMetric& m, const StateVec& v_plus, const StateVec& v_minus);
MeasurementPair make_hermitian_pair(const StateVec& v_plus, const StateVec& v_minus);

double outcome_plus_probability(const MeasurementPair& pair, const StateVec& state);

struct MeasureResult {
    int outcome; // +1 or -1
    StateVec collapsed;
};

MeasureResult cpt_measure(const MeasurementPair& pair, const StateVec& state, Rng& rng);

Mat2 evolution_operator(const PtParams& p, double t); // closed-form e^{-iHt}
// cos^2(alpha) * e^{+iH^dag t} e^{-iHt} in closed form; the identity test
// against the operator product is the regression gate for the omega choice.
Mat2 evolved_metric(double alpha, double omega, double t);

// Smallest positive tau with sin^2(omega tau) = cos^2(a) cos(s) / (2 sin(a) - 2 sin^2(a) cos(s)).
// Throws NoSolutionError when the right-hand side exceeds 1 (alpha below the
// feasibility boundary) and std::domain_error for nonpositive denominators.
double approach3_time(double alpha, double sigma, double omega);

namespace detail {
// Test instrumentation: thread-local count of Born-rule measurements
// performed (cpt_measure and measure_in_basis). Lets tests audit the
// one-measurement-per-qubit discipline.
std::uint64_t measurement_count();
void reset_measurement_count();
void bump_measurement_count();
} // namespace detail

} // namespace ptqkd
