#pragma once

#include "ptqkd/qmath.hpp"
#include "ptqkd/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptqkd {

enum class Basis : int { computational = 0, diagonal = 1 };

// The four protocol states psi_{ab}: first index data bit, second basis bit.
enum class Bb84State : int { psi00 = 0, psi10 = 1, psi01 = 2, psi11 = 3 };

Bb84State bb84_state(int a, Basis b);
StateVec state_vector(Bb84State s);
StateVec encode(int a, Basis b);

struct MeasuredBit {
    int bit;
    StateVec collapsed;
};

MeasuredBit measure_in_basis(const StateVec& state, Basis basis, Rng& rng);

enum class Tag : int { conclusive = 0, unambiguous = 1, inconclusive_null = 2 };

struct Strategy; // eve.hpp

struct Transcript {
    std::vector<std::uint8_t> a; // Alice's data bits
    std::vector<std::uint8_t> b; // Alice's bases
    std::vector<std::uint8_t> c; // Bob's bases
    std::vector<std::int8_t> bob_bits;   // -1 where the qubit was lost
    std::vector<std::int8_t> eve_bits;   // empty without Eve; -1 = undecided
    std::vector<Tag> eve_tags;           // empty without Eve
    std::vector<std::uint8_t> lost;
};

struct SiftResult {
    std::vector<std::uint8_t> alice_key;
    std::vector<std::uint8_t> bob_key;
    std::vector<std::int8_t> eve_key; // empty without Eve; -1 = undecided
    double sifted_fraction{};
    std::optional<double> qber; // empty when the sift is empty
};

Transcript run_protocol(std::uint64_t l, const Strategy* eve, const MasterRng& rng);
SiftResult sift(const Transcript& t);

std::string to_json(const Transcript& t);
std::string to_json(const SiftResult& r);

} // namespace ptqkd
