#pragma once

#include "ptqkd/bb84.hpp"
#include "ptqkd/ptcore.hpp"

#include <map>
#include <string>
#include <vector>

namespace ptqkd {

struct EveOutcome {
    int inferred_bit; // 0/1, or -1 when undecided
    Tag tag;
    std::optional<StateVec> resend; // empty: the qubit is lost
};

// What happens on a discriminator null: score it as a miss and forward a
// uniformly random protocol state, or drop the qubit from the channel.
enum class NullPolicy : int { count_wrong = 0, loss = 1 };

// Optionally replace undecided bits with a fair coin.
enum class FallbackPolicy : int { none = 0, random_guess = 1 };

// What Eve sends on a conclusive measurement: the collapsed state mapped back
// through the inverse of her preparation map, or a fresh encoding of the
// inferred bit in a random basis.
enum class ResendPolicy : int { invert_preparation = 0, reencode = 1 };

struct EfficiencyModel {
    double eta = 1.0;
    NullPolicy null_policy = NullPolicy::count_wrong;
    FallbackPolicy fallback = FallbackPolicy::none;
};

// One weighted branch of a strategy: transform the flying qubit by `prep`,
// measure with `pair`, read the bit off the outcome.
struct MeasurementPlan {
    double weight = 1.0;
    Mat2 prep;
    Mat2 prep_inv;
    MeasurementPair pair;
    int bit_on_plus = 0;
    int bit_on_minus = 1;
    Tag tag_on_plus = Tag::conclusive;
    Tag tag_on_minus = Tag::conclusive;
};

struct Strategy {
    std::string name;
    std::vector<MeasurementPlan> plans; // weights sum to 1
    ResendPolicy resend = ResendPolicy::invert_preparation;
    EfficiencyModel efficiency;
    std::map<std::string, double> params; // resolved parameters, echoed in reports
};

double alpha_opt(); // arcsin(sqrt(2) - 1): smallest alpha with an Approach-3 solution

Mat2 approach1_gate();           // diag(1, i)
Mat2 approach2_gate(double rho); // Rz(rho) . R2(pi/2)
Mat2 approach3_gate();           // the sigma = pi/4 preparation unitary

// Random intercept basis, Hermitian measurement, resend the collapsed state.
Strategy hermitian_strategy();
// Single CPT measurement at alpha = pi/2 - epsilon after the diag(1, i) gate;
// outcome -1 pins bit 1 unambiguously, +1 takes the Bayes-optimal guess 0.
Strategy approach1_strategy(double epsilon = 1e-3);
// CPT measurement in the gate-rotated pair; at the default angles the two
// reference states are exactly CPT-orthogonal and the outcome is the bit.
Strategy approach2_strategy(double alpha = 0.7853981633974483 /* pi/4 */,
                            double rho = 2.356194490192345 /* 3pi/4 */);
// Non-unitary evolution for the orthogonalizing time, then a Hermitian
// measurement on the evolved reference states.
Strategy approach3_strategy(double alpha = alpha_opt(),
                            double sigma = 0.7853981633974483 /* pi/4 */);

Strategy apply_efficiency(Strategy base, const EfficiencyModel& model);

EveOutcome intercept(const Strategy& s, const StateVec& state, Rng& rng);

// Average P(inferred bit = data bit) over the four equiprobable inputs, from
// exact Born probabilities (no sampling), including the efficiency model.
double exact_accuracy(const Strategy& s);
// Fraction of intercepts tagged unambiguous, same enumeration.
double exact_unambiguous_rate(const Strategy& s);

// Per-qubit protocol step shared by run_protocol and the Monte Carlo engine;
// index selects the qubit's dedicated random substream.
struct QubitRecord {
    std::uint8_t a, b, c;
    std::int8_t bob_bit; // -1 when lost
    std::int8_t eve_bit; // -1 when undecided or no Eve
    Tag eve_tag;
    bool lost;
};

QubitRecord simulate_qubit(const MasterRng& rng, std::uint64_t index, const Strategy* eve);

// The six pairwise CPT cosines between gate-transformed protocol states,
// both directly and from the closed-form expressions (which are fixed up to
// an overall sign per pair).
struct CosineRow {
    std::string pair;
    Complex direct;
    double closed_form;
};

std::vector<CosineRow> approach2_cosine_table(double alpha, double rho);

} // namespace ptqkd
