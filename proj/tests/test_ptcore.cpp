#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptqkd/bb84.hpp"
#include "ptqkd/ptcore.hpp"

#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace ptqkd;

namespace {

constexpr double kPi = std::numbers::pi;

StateVec from_oracle(const oracle::V2& v) {
    return {v[0], v[1]};
}

oracle::V2 to_oracle(const StateVec& v) {
    return {v.a0, v.a1};
}

StateVec rand_state(Rng& rng) {
    return herm_normalize({Complex{rng.uniform() - 0.5, rng.uniform() - 0.5},
                           Complex{rng.uniform() + 0.2, rng.uniform() - 0.5}});
}

} // namespace

TEST_CASE("alpha_of inverts the defining relation and rejects bad parameters") {
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const double alpha = -1.4 + 2.8 * rng.uniform();
        const double s = (rng.bit() ? 1.0 : -1.0) * (0.3 + 1.7 * rng.uniform());
        const double theta = 0.2 + (kPi - 0.4) * rng.uniform();
        const PtParams p{s * std::sin(alpha) / std::sin(theta), s, theta};
        CHECK(alpha_of(p) == doctest::Approx(alpha).epsilon(1e-12));
    }
    CHECK_THROWS_AS(alpha_of(PtParams{1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(alpha_of(PtParams{2.0, 1.0, kPi / 2}), BrokenPhaseError);
    CHECK_THROWS_AS(alpha_of(PtParams{1.0, 1.0, kPi / 2}), BrokenPhaseError); // |arg| = 1 boundary
}

TEST_CASE("omega keeps the sign of s so the Hamiltonian decomposition closes") {
    const PtParams pos{0.4, 1.1, kPi / 2};
    const PtParams neg{0.4, -1.1, kPi / 2};
    CHECK(omega_of(pos) > 0.0);
    CHECK(omega_of(neg) < 0.0);
    CHECK(omega_of(pos) == doctest::Approx(-omega_of(neg)).epsilon(1e-15));
    // magnitude agrees with the positive root
    const double root = std::sqrt(1.1 * 1.1 - 0.4 * 0.4);
    CHECK(std::abs(omega_of(pos)) == doctest::Approx(root).epsilon(1e-14));
}

TEST_CASE("params_from_alpha round-trips through alpha_of and omega_of") {
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const double alpha = -1.45 + 2.9 * rng.uniform();
        const double omega = (rng.bit() ? 1.0 : -1.0) * (0.1 + 2.0 * rng.uniform());
        const PtParams p = params_from_alpha(alpha, omega);
        CHECK(p.theta == kPi / 2);
        CHECK(alpha_of(p) == doctest::Approx(alpha).epsilon(1e-12));
        CHECK(omega_of(p) == doctest::Approx(omega).epsilon(1e-12));
    }
    CHECK_THROWS_AS(params_from_alpha(0.3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(params_from_alpha(kPi / 2, 1.0), SingularMetricError);
}

TEST_CASE("metric guard rejects the breaking point but admits the interior") {
    CHECK_NOTHROW(CptMetric(0.0));
    CHECK_NOTHROW(CptMetric(1.5));
    CHECK_NOTHROW(CptMetric(-1.5));
    CHECK_NOTHROW(CptMetric(kPi / 2 - 1e-8));
    CHECK_THROWS_AS(CptMetric(kPi / 2), SingularMetricError);
    CHECK_THROWS_AS(CptMetric(-kPi / 2), SingularMetricError);
    CHECK_THROWS_AS(CptMetric(kPi / 2 - 1e-10), SingularMetricError);
    CHECK_THROWS_AS(CptMetric(3.0), SingularMetricError);
    CHECK_THROWS_AS(CptMetric(std::numeric_limits<double>::quiet_NaN()), SingularMetricError);
}

TEST_CASE("C operator matches its closed form at pi/6") {
    const CptMetric m(kPi / 6);
    const Mat2 c = c_operator(m);
    const double inv_ca = 1.0 / std::cos(kPi / 6); // 1.1547005383792515
    CHECK(approx_eq(c.m00, Complex{0.0, 0.5 * inv_ca}));
    CHECK(approx_eq(c.m01, Complex{inv_ca, 0.0}));
    CHECK(approx_eq(c.m10, Complex{inv_ca, 0.0}));
    CHECK(approx_eq(c.m11, Complex{0.0, -0.5 * inv_ca}));
}

TEST_CASE("cpt_map pins: the diag(1,i) image of psi01 maps to a scaled (1, -i)") {
    Rng rng(23);
    const double k = 1.0 / std::numbers::sqrt2;
    const StateVec t01{k, Complex{0.0, k}};
    for (int i = 0; i < 50; ++i) {
        const double alpha = -1.45 + 2.9 * rng.uniform();
        const CptMetric m(alpha);
        const double pref = (1.0 + std::sin(alpha)) / (std::numbers::sqrt2 * std::cos(alpha));
        const StateVec got = cpt_map(m, t01);
        CHECK(approx_eq(got, StateVec{pref, Complex{0.0, -pref}}, 1e-12));
    }
}

TEST_CASE("cpt_inner agrees with the explicit metric-matrix oracle") {
    Rng rng(24);
    for (int i = 0; i < 300; ++i) {
        const double alpha = -1.45 + 2.9 * rng.uniform();
        const CptMetric m(alpha);
        const StateVec u = rand_state(rng);
        const StateVec v = rand_state(rng);
        const Complex lib = cpt_inner(m, u, v);
        const Complex ref = oracle::inner(alpha, to_oracle(u), to_oracle(v));
        CHECK(std::abs(lib - ref) < 1e-12);
        // positivity and conjugate symmetry
        CHECK(cpt_inner(m, u, u).real() > 0.0);
        CHECK(std::abs(cpt_inner(m, u, u).imag()) < 1e-14);
        CHECK(std::abs(cpt_inner(m, v, u) - std::conj(lib)) < 1e-12);
    }
}

TEST_CASE("cpt projectors are metric-idempotent and complete for orthogonal pairs") {
    Rng rng(25);
    const double k = 1.0 / std::numbers::sqrt2;
    const StateVec t01{k, Complex{0.0, k}};
    const StateVec t11{k, Complex{0.0, -k}};
    for (int i = 0; i < 100; ++i) {
        const double alpha = -1.45 + 2.9 * rng.uniform();
        const CptMetric m(alpha);
        const Mat2 p = cpt_projector(m, t01);
        CHECK(max_abs_diff(mat_mul(p, p), p) < 1e-12);
        const MeasurementPair pair = make_cpt_pair(m, t01, t11);
        CHECK(max_abs_diff(mat_add(pair.p_plus, pair.p_minus), mat_identity()) < 1e-12);
    }
    // non-orthogonal pair: psi00 and psi01 under a generic metric
    const CptMetric m(0.4);
    CHECK_THROWS_AS(make_cpt_pair(m, StateVec{1.0, 0.0}, StateVec{k, k}), std::invalid_argument);
    CHECK_THROWS_AS(make_hermitian_pair(StateVec{1.0, 0.0}, StateVec{k, k}),
                    std::invalid_argument);
}

TEST_CASE("cpt_cosine agrees with the oracle and vanishes only on orthogonal pairs") {
    Rng rng(26);
    for (int i = 0; i < 200; ++i) {
        const double alpha = -1.45 + 2.9 * rng.uniform();
        const CptMetric m(alpha);
        const StateVec u = rand_state(rng);
        const StateVec v = rand_state(rng);
        const Complex lib = cpt_cosine(m, u, v);
        const oracle::C num = oracle::inner(alpha, to_oracle(u), to_oracle(v));
        const double nu = oracle::inner(alpha, to_oracle(u), to_oracle(u)).real();
        const double nv = oracle::inner(alpha, to_oracle(v), to_oracle(v)).real();
        CHECK(std::abs(lib - num / std::sqrt(nu * nv)) < 1e-12);
        CHECK(std::abs(lib) <= 1.0 + 1e-12);
    }
}

TEST_CASE("outcome probabilities match the overlap oracle and clamp to [0,1]") {
    Rng rng(27);
    const double k = 1.0 / std::numbers::sqrt2;
    const StateVec t01{k, Complex{0.0, k}};
    const StateVec t11{k, Complex{0.0, -k}};
    for (int i = 0; i < 200; ++i) {
        const double alpha = -1.45 + 2.9 * rng.uniform();
        const CptMetric m(alpha);
        const MeasurementPair pair = make_cpt_pair(m, t01, t11);
        const StateVec v = rand_state(rng);
        const double p = outcome_plus_probability(pair, v);
        const double ref = oracle::born_plus(alpha, to_oracle(t01), to_oracle(v));
        CHECK(p == doctest::Approx(ref).epsilon(1e-10));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("cpt_measure: certain outcomes skip the draw; uncertain ones follow Born") {
    const CptMetric m(0.9);
    const double k = 1.0 / std::numbers::sqrt2;
    const StateVec t01{k, Complex{0.0, k}};
    const StateVec t11{k, Complex{0.0, -k}};
    const MeasurementPair pair = make_cpt_pair(m, t01, t11);

    Rng rng(28);
    const auto before = rng.draws();
    MeasureResult sure = cpt_measure(pair, t01, rng);
    CHECK(sure.outcome == 1);
    CHECK(rng.draws() == before); // p = 1: deterministic branch consumes nothing
    CHECK(std::abs(std::abs(cpt_cosine(m, sure.collapsed, t01)) - 1.0) < 1e-12);
    CHECK(cpt_norm(m, sure.collapsed) == doctest::Approx(1.0).epsilon(1e-12));

    MeasureResult anti = cpt_measure(pair, t11, rng);
    CHECK(anti.outcome == -1);
    CHECK(rng.draws() == before);

    // mixed state: frequencies track the exact probability
    const StateVec probe =
        herm_normalize({t01.a0 + 1.5 * t11.a0, t01.a1 + 1.5 * t11.a1});
    const double p = outcome_plus_probability(pair, probe);
    REQUIRE(p > 0.05);
    REQUIRE(p < 0.95);
    int plus = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
        if (cpt_measure(pair, probe, rng).outcome == 1) ++plus;
    const double freq = static_cast<double>(plus) / n;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(freq - p) < 4.5 * sigma);
}

TEST_CASE("measurement instrumentation counts Born evaluations") {
    const CptMetric m(0.5);
    const double k = 1.0 / std::numbers::sqrt2;
    const MeasurementPair pair =
        make_cpt_pair(m, StateVec{k, Complex{0.0, k}}, StateVec{k, Complex{0.0, -k}});
    Rng rng(29);
    detail::reset_measurement_count();
    CHECK(detail::measurement_count() == 0);
    (void)cpt_measure(pair, rand_state(rng), rng);
    (void)cpt_measure(pair, rand_state(rng), rng);
    CHECK(detail::measurement_count() == 2);
    detail::reset_measurement_count();
}

TEST_CASE("evolution operator: identity at t=0, group law, unit determinant") {
    Rng rng(30);
    for (int i = 0; i < 100; ++i) {
        const double alpha = -1.4 + 2.8 * rng.uniform();
        const double omega = (rng.bit() ? 1.0 : -1.0) * (0.2 + 1.8 * rng.uniform());
        const PtParams p = params_from_alpha(alpha, omega);
        CHECK(max_abs_diff(evolution_operator(p, 0.0), mat_identity()) < 1e-12);
        const double t1 = 2.0 * rng.uniform() - 1.0;
        const double t2 = 2.0 * rng.uniform() - 1.0;
        const Mat2 u12 = evolution_operator(p, t1 + t2);
        const Mat2 comp = mat_mul(evolution_operator(p, t1), evolution_operator(p, t2));
        CHECK(max_abs_diff(u12, comp) < 1e-10);
        CHECK(std::abs(mat_det(evolution_operator(p, t1)) - Complex{1.0, 0.0}) < 1e-10);
    }
}

TEST_CASE("evolution operator solves the Schrodinger equation (finite differences)") {
    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        const double alpha = -1.2 + 2.4 * rng.uniform();
        const double s = (rng.bit() ? 1.0 : -1.0) * (0.4 + 1.2 * rng.uniform());
        const double theta = 0.3 + (kPi - 0.6) * rng.uniform();
        const PtParams p{s * std::sin(alpha) / std::sin(theta), s, theta};
        const Complex phase{std::cos(p.theta), std::sin(p.theta)};
        const Mat2 h{p.r * phase, Complex{p.s, 0.0}, Complex{p.s, 0.0}, p.r * std::conj(phase)};

        const double t = 1.5 * rng.uniform();
        const double dt = 1e-6;
        const Mat2 up = evolution_operator(p, t + dt);
        const Mat2 um = evolution_operator(p, t - dt);
        const Mat2 deriv = mat_scale(1.0 / (2.0 * dt), mat_sub(up, um));
        const Mat2 expect = mat_scale(Complex{0.0, -1.0}, mat_mul(h, evolution_operator(p, t)));
        CHECK(max_abs_diff(deriv, expect) < 1e-5);
    }
}

TEST_CASE("evolution matches the independent oracle for the alpha parametrization") {
    Rng rng(32);
    for (int i = 0; i < 100; ++i) {
        const double alpha = -1.4 + 2.8 * rng.uniform();
        const double t = 3.0 * rng.uniform();
        const Mat2 lib = evolution_operator(params_from_alpha(alpha, 1.0), t);
        const oracle::M2 ref = oracle::evolution(alpha, t);
        CHECK(std::abs(lib.m00 - ref[0]) < 1e-12);
        CHECK(std::abs(lib.m01 - ref[1]) < 1e-12);
        CHECK(std::abs(lib.m10 - ref[2]) < 1e-12);
        CHECK(std::abs(lib.m11 - ref[3]) < 1e-12);
    }
}

TEST_CASE("evolved metric equals cos^2(alpha) U^dag U; the unsigned-omega fault is caught") {
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        const double alpha = -1.4 + 2.8 * rng.uniform();
        const double omega = (rng.bit() ? 1.0 : -1.0) * (0.1 + 1.9 * rng.uniform());
        const double t = 3.0 * rng.uniform();
        const PtParams p = params_from_alpha(alpha, omega);
        const Mat2 u = evolution_operator(p, t);
        const double c2 = std::cos(alpha) * std::cos(alpha);
        const Mat2 product = mat_scale(Complex{c2, 0.0}, mat_mul(mat_adjoint(u), u));
        CHECK(max_abs_diff(evolved_metric(alpha, omega, t), product) < 1e-11);
    }

    // Deliberate fault: feeding s in place of omega = s*cos(alpha) must break
    // the identity by a macroscopic margin, or the regression gate is dead.
    const double alpha = 0.7;
    const PtParams p = params_from_alpha(alpha, 1.0);
    const Mat2 u = evolution_operator(p, 1.0);
    const double c2 = std::cos(alpha) * std::cos(alpha);
    const Mat2 product = mat_scale(Complex{c2, 0.0}, mat_mul(mat_adjoint(u), u));
    CHECK(max_abs_diff(evolved_metric(alpha, p.s, 1.0), product) > 1e-3);
}

TEST_CASE("approach3_time: pinned value, defining identity, scaling, and errors") {
    // rhs(pi/3, pi/4) frozen from the offline evaluation
    const double rhs = 0.26329931618554536;
    const double tau = approach3_time(kPi / 3, kPi / 4, 1.0);
    CHECK(std::sin(tau) * std::sin(tau) == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(tau == doctest::Approx(std::asin(std::sqrt(rhs))).epsilon(1e-12));

    // identity sin^2(omega tau) = rhs on a feasible grid, against the oracle rhs
    for (double alpha = 0.45; alpha < 1.5; alpha += 0.05) {
        const double t1 = approach3_time(alpha, kPi / 4, 1.0);
        CHECK(std::sin(t1) * std::sin(t1) ==
              doctest::Approx(oracle::a3_rhs(alpha, kPi / 4)).epsilon(1e-10));
        CHECK(approach3_time(alpha, kPi / 4, 2.0) == doctest::Approx(t1 / 2.0).epsilon(1e-12));
    }

    const double a_opt = std::asin(std::numbers::sqrt2 - 1.0);
    CHECK_NOTHROW(approach3_time(a_opt, kPi / 4, 1.0));
    CHECK_THROWS_AS(approach3_time(a_opt - 1e-6, kPi / 4, 1.0), NoSolutionError);
    CHECK_THROWS_AS(approach3_time(0.2, kPi / 4, 1.0), NoSolutionError);
    CHECK_THROWS_AS(approach3_time(-0.3, kPi / 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(approach3_time(1.0, 2.0, 1.0), std::domain_error); // cos(sigma) < 0
    CHECK_THROWS_AS(approach3_time(1.0, kPi / 4, 0.0), std::invalid_argument);
}
