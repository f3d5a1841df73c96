#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptqkd/bb84.hpp"
#include "ptqkd/eve.hpp"
#include "ptqkd/montecarlo.hpp"
#include "ptqkd/report.hpp"
#include "ptqkd/verify.hpp"

namespace py = pybind11;
using namespace ptqkd;

PYBIND11_MODULE(_ptqkd, m) {
    m.doc() = "BB84 intercept-resend simulation with PT-symmetric state discrimination";

    // --- numeric primitives -------------------------------------------------
    py::class_<StateVec>(m, "StateVec")
        .def(py::init<>())
        .def(py::init([](Complex a0, Complex a1) { return StateVec{a0, a1}; }),
             py::arg("a0"), py::arg("a1"))
        .def_readwrite("a0", &StateVec::a0)
        .def_readwrite("a1", &StateVec::a1)
        .def("__repr__", [](const StateVec& v) {
            return "StateVec((" + std::to_string(v.a0.real()) + (v.a0.imag() < 0 ? "" : "+") +
                   std::to_string(v.a0.imag()) + "j), (" + std::to_string(v.a1.real()) +
                   (v.a1.imag() < 0 ? "" : "+") + std::to_string(v.a1.imag()) + "j))";
        });

    py::class_<Mat2>(m, "Mat2")
        .def(py::init<>())
        .def(py::init([](Complex m00, Complex m01, Complex m10, Complex m11) {
                 return Mat2{m00, m01, m10, m11};
             }),
             py::arg("m00"), py::arg("m01"), py::arg("m10"), py::arg("m11"))
        .def_readwrite("m00", &Mat2::m00)
        .def_readwrite("m01", &Mat2::m01)
        .def_readwrite("m10", &Mat2::m10)
        .def_readwrite("m11", &Mat2::m11);

    m.def("mat_apply", &mat_apply);
    m.def("mat_mul", &mat_mul);
    m.def("mat_adjoint", &mat_adjoint);
    m.def("mat_identity", &mat_identity);
    m.def("mat_inverse", &mat_inverse);
    m.def("herm_inner", &herm_inner);
    m.def("herm_norm", &herm_norm);
    m.def("herm_normalize", &herm_normalize);

    // --- RNG -----------------------------------------------------------------
    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &Rng::next)
        .def("uniform", &Rng::uniform)
        .def("bit", &Rng::bit)
        .def("draws", &Rng::draws);

    py::class_<MasterRng>(m, "MasterRng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("seed", &MasterRng::seed)
        .def("substream", &MasterRng::substream, py::arg("index"));

    // --- PT core ---------------------------------------------------------------
    py::register_exception<BrokenPhaseError>(m, "BrokenPhaseError", PyExc_ValueError);
    py::register_exception<SingularMetricError>(m, "SingularMetricError", PyExc_ValueError);
    py::register_exception<NoSolutionError>(m, "NoSolutionError", PyExc_ValueError);

    py::class_<PtParams>(m, "PtParams")
        .def(py::init<>())
        .def(py::init([](double r, double s, double theta) { return PtParams{r, s, theta}; }),
             py::arg("r"), py::arg("s"), py::arg("theta"))
        .def_readwrite("r", &PtParams::r)
        .def_readwrite("s", &PtParams::s)
        .def_readwrite("theta", &PtParams::theta);

    py::class_<CptMetric>(m, "CptMetric")
        .def(py::init<double>(), py::arg("alpha"))
        .def_property_readonly("alpha", &CptMetric::alpha);

    py::class_<MeasurementPair>(m, "MeasurementPair")
        .def_readwrite("p_plus", &MeasurementPair::p_plus)
        .def_readwrite("p_minus", &MeasurementPair::p_minus)
        .def_readwrite("metric", &MeasurementPair::metric);

    py::class_<MeasureResult>(m, "MeasureResult")
        .def_readonly("outcome", &MeasureResult::outcome)
        .def_readonly("collapsed", &MeasureResult::collapsed);

    m.def("alpha_of", &alpha_of);
    m.def("omega_of", &omega_of);
    m.def("params_from_alpha", &params_from_alpha, py::arg("alpha"), py::arg("omega"));
    m.def("c_operator", &c_operator);
    m.def("cpt_map", &cpt_map);
    m.def("cpt_inner", &cpt_inner);
    m.def("cpt_norm", &cpt_norm);
    m.def("cpt_normalize", &cpt_normalize);
    m.def("cpt_projector", &cpt_projector);
    m.def("cpt_cosine", &cpt_cosine);
    m.def("make_cpt_pair", &make_cpt_pair);
    m.def("make_hermitian_pair", &make_hermitian_pair);
    m.def("outcome_plus_probability", &outcome_plus_probability);
    m.def("cpt_measure", &cpt_measure, py::arg("pair"), py::arg("state"), py::arg("rng"));
    m.def("evolution_operator", &evolution_operator, py::arg("params"), py::arg("t"));
    m.def("evolved_metric", &evolved_metric, py::arg("alpha"), py::arg("omega"), py::arg("t"));
    m.def("approach3_time", &approach3_time, py::arg("alpha"), py::arg("sigma"), py::arg("omega"));

    // --- protocol ---------------------------------------------------------------
    py::enum_<Basis>(m, "Basis")
        .value("computational", Basis::computational)
        .value("diagonal", Basis::diagonal);

    py::enum_<Bb84State>(m, "Bb84State")
        .value("psi00", Bb84State::psi00)
        .value("psi10", Bb84State::psi10)
        .value("psi01", Bb84State::psi01)
        .value("psi11", Bb84State::psi11);

    py::enum_<Tag>(m, "Tag")
        .value("conclusive", Tag::conclusive)
        .value("unambiguous", Tag::unambiguous)
        .value("inconclusive_null", Tag::inconclusive_null);

    py::class_<MeasuredBit>(m, "MeasuredBit")
        .def_readonly("bit", &MeasuredBit::bit)
        .def_readonly("collapsed", &MeasuredBit::collapsed);

    m.def("bb84_state", &bb84_state, py::arg("a"), py::arg("b"));
    m.def("state_vector", &state_vector);
    m.def("encode", &encode, py::arg("a"), py::arg("b"));
    m.def("measure_in_basis", &measure_in_basis, py::arg("state"), py::arg("basis"), py::arg("rng"));

    py::class_<Transcript>(m, "Transcript")
        .def_readonly("a", &Transcript::a)
        .def_readonly("b", &Transcript::b)
        .def_readonly("c", &Transcript::c)
        .def_readonly("bob_bits", &Transcript::bob_bits)
        .def_readonly("eve_bits", &Transcript::eve_bits)
        .def_readonly("eve_tags", &Transcript::eve_tags)
        .def_readonly("lost", &Transcript::lost);

    py::class_<SiftResult>(m, "SiftResult")
        .def_readonly("alice_key", &SiftResult::alice_key)
        .def_readonly("bob_key", &SiftResult::bob_key)
        .def_readonly("eve_key", &SiftResult::eve_key)
        .def_readonly("sifted_fraction", &SiftResult::sifted_fraction)
        .def_readonly("qber", &SiftResult::qber);

    m.def("sift", &sift);
    m.def("transcript_json", static_cast<std::string (*)(const Transcript&)>(&to_json));
    m.def("sift_json", static_cast<std::string (*)(const SiftResult&)>(&to_json));

    // --- eavesdropper -------------------------------------------------------------
    py::enum_<NullPolicy>(m, "NullPolicy")
        .value("count_wrong", NullPolicy::count_wrong)
        .value("loss", NullPolicy::loss);

    py::enum_<FallbackPolicy>(m, "FallbackPolicy")
        .value("none", FallbackPolicy::none)
        .value("random_guess", FallbackPolicy::random_guess);

    py::enum_<ResendPolicy>(m, "ResendPolicy")
        .value("invert_preparation", ResendPolicy::invert_preparation)
        .value("reencode", ResendPolicy::reencode);

    py::class_<EfficiencyModel>(m, "EfficiencyModel")
        .def(py::init<>())
        .def(py::init([](double eta, NullPolicy np, FallbackPolicy fb) {
                 return EfficiencyModel{eta, np, fb};
             }),
             py::arg("eta") = 1.0, py::arg("null_policy") = NullPolicy::count_wrong,
             py::arg("fallback") = FallbackPolicy::none)
        .def_readwrite("eta", &EfficiencyModel::eta)
        .def_readwrite("null_policy", &EfficiencyModel::null_policy)
        .def_readwrite("fallback", &EfficiencyModel::fallback);

    py::class_<MeasurementPlan>(m, "MeasurementPlan")
        .def_readwrite("weight", &MeasurementPlan::weight)
        .def_readwrite("prep", &MeasurementPlan::prep)
        .def_readwrite("prep_inv", &MeasurementPlan::prep_inv)
        .def_readwrite("pair", &MeasurementPlan::pair)
        .def_readwrite("bit_on_plus", &MeasurementPlan::bit_on_plus)
        .def_readwrite("bit_on_minus", &MeasurementPlan::bit_on_minus);

    py::class_<Strategy>(m, "Strategy")
        .def_readonly("name", &Strategy::name)
        .def_readonly("plans", &Strategy::plans)
        .def_readwrite("resend", &Strategy::resend)
        .def_readwrite("efficiency", &Strategy::efficiency)
        .def_readonly("params", &Strategy::params);

    py::class_<EveOutcome>(m, "EveOutcome")
        .def_readonly("inferred_bit", &EveOutcome::inferred_bit)
        .def_readonly("tag", &EveOutcome::tag)
        .def_readonly("resend", &EveOutcome::resend);

    m.def("alpha_opt", &alpha_opt);
    m.def("approach1_gate", &approach1_gate);
    m.def("approach2_gate", &approach2_gate, py::arg("rho"));
    m.def("approach3_gate", &approach3_gate);
    m.def("hermitian_strategy", &hermitian_strategy);
    m.def("approach1_strategy", &approach1_strategy, py::arg("epsilon") = 1e-3);
    m.def("approach2_strategy", &approach2_strategy,
          py::arg("alpha") = 0.7853981633974483, py::arg("rho") = 2.356194490192345);
    m.def("approach3_strategy", &approach3_strategy,
          py::arg("alpha") = alpha_opt(), py::arg("sigma") = 0.7853981633974483);
    m.def("apply_efficiency", &apply_efficiency, py::arg("base"), py::arg("model"));
    m.def("intercept", &intercept, py::arg("strategy"), py::arg("state"), py::arg("rng"));
    m.def("exact_accuracy", &exact_accuracy);
    m.def("exact_unambiguous_rate", &exact_unambiguous_rate);

    py::class_<CosineRow>(m, "CosineRow")
        .def_readonly("pair", &CosineRow::pair)
        .def_readonly("direct", &CosineRow::direct)
        .def_readonly("closed_form", &CosineRow::closed_form);

    m.def("approach2_cosine_table", &approach2_cosine_table, py::arg("alpha"), py::arg("rho"));

    m.def(
        "run_protocol",
        [](std::uint64_t l, const Strategy* eve, const MasterRng& rng) {
            return run_protocol(l, eve, rng);
        },
        py::arg("l"), py::arg("eve").none(true), py::arg("rng"));

    // --- Monte Carlo -----------------------------------------------------------
    py::class_<StrategySpec>(m, "StrategySpec")
        .def(py::init<>())
        .def_readwrite("name", &StrategySpec::name)
        .def_readwrite("alpha", &StrategySpec::alpha)
        .def_readwrite("rho", &StrategySpec::rho)
        .def_readwrite("sigma", &StrategySpec::sigma)
        .def_readwrite("epsilon", &StrategySpec::epsilon);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("qubits", &RunConfig::qubits)
        .def_readwrite("strategy", &RunConfig::strategy)
        .def_readwrite("eta", &RunConfig::eta)
        .def_readwrite("null_policy", &RunConfig::null_policy)
        .def_readwrite("fallback", &RunConfig::fallback)
        .def_readwrite("resend", &RunConfig::resend)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("workers", &RunConfig::workers);

    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi);

    py::class_<RunStats>(m, "RunStats")
        .def_readonly("n", &RunStats::n)
        .def_readonly("sifted_count", &RunStats::sifted_count)
        .def_readonly("lost_count", &RunStats::lost_count)
        .def_readonly("sifted_fraction", &RunStats::sifted_fraction)
        .def_readonly("qber", &RunStats::qber)
        .def_readonly("eve_accuracy", &RunStats::eve_accuracy)
        .def_readonly("eve_interval", &RunStats::eve_interval)
        .def_readonly("all_positions_accuracy", &RunStats::all_positions_accuracy)
        .def_readonly("unambiguous_rate", &RunStats::unambiguous_rate)
        .def_readonly("exact_accuracy", &RunStats::exact_accuracy);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("x", &SweepRow::x)
        .def_readonly("feasible", &SweepRow::feasible)
        .def_readonly("tau", &SweepRow::tau)
        .def_readonly("exact", &SweepRow::exact)
        .def_readonly("sampled", &SweepRow::sampled)
        .def_readonly("interval", &SweepRow::interval);

    py::class_<EtaSweep>(m, "EtaSweep")
        .def_readonly("rows", &EtaSweep::rows)
        .def_readonly("threshold", &EtaSweep::threshold);

    m.def("make_strategy", &make_strategy);
    m.def("wilson_interval", &wilson_interval, py::arg("hits"), py::arg("n"),
          py::arg("confidence") = 0.95);
    m.def("simulate", &simulate, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_alpha", &sweep_alpha, py::arg("start"), py::arg("stop"), py::arg("steps"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("sweep_eta", &sweep_eta, py::arg("start"), py::arg("stop"), py::arg("steps"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());

    // --- reports ------------------------------------------------------------------
    m.def("run_report_json", &run_report_json, py::arg("config"), py::arg("stats"),
          py::arg("format") = "json");
    m.def("run_report_csv", &run_report_csv, py::arg("config"), py::arg("stats"));
    m.def("sweep_alpha_csv", &sweep_alpha_csv);
    m.def("sweep_eta_csv", &sweep_eta_csv);
    m.def("sweep_alpha_gnuplot", &sweep_alpha_gnuplot);
    m.def("sweep_eta_gnuplot", &sweep_eta_gnuplot);

    // --- verification ----------------------------------------------------------
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("max_err", &CheckResult::max_err)
        .def_readonly("samples", &CheckResult::samples)
        .def("__repr__", [](const CheckResult& r) {
            return "CheckResult(" + r.name + (r.pass ? ", pass" : ", FAIL") + ")";
        });

    m.def("run_verification", &run_verification, py::arg("seed") = 2024,
          py::arg("samples") = 1000);
    m.def("all_passed", &all_passed);
}
