#include "ptqkd/bb84.hpp"

#include "ptqkd/ptcore.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <stdexcept>

namespace ptqkd {

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

Bb84State bb84_state(int a, Basis b) {
    if (a != 0 && a != 1)
        throw std::invalid_argument("bb84_state: bit must be 0 or 1");
    return static_cast<Bb84State>(a + 2 * static_cast<int>(b));
}

StateVec state_vector(Bb84State s) {
    switch (s) {
        case Bb84State::psi00: return {1.0, 0.0};
        case Bb84State::psi10: return {0.0, 1.0};
        case Bb84State::psi01: return {kInvSqrt2, kInvSqrt2};
        case Bb84State::psi11: return {kInvSqrt2, -kInvSqrt2};
    }
    throw std::invalid_argument("state_vector: bad state");
}

StateVec encode(int a, Basis b) {
    return state_vector(bb84_state(a, b));
}

MeasuredBit measure_in_basis(const StateVec& state, Basis basis, Rng& rng) {
    detail::bump_measurement_count();
    double n2 = std::norm(state.a0) + std::norm(state.a1);
    if (n2 <= 0.0)
        throw std::invalid_argument("measure_in_basis: zero state");
    double p0;
    if (basis == Basis::computational) {
        p0 = std::norm(state.a0) / n2;
    } else {
        Complex amp = (state.a0 + state.a1) * kInvSqrt2;
        p0 = std::norm(amp) / n2;
    }
    int bit;
    if (p0 >= 1.0 - kDefaultTol)
        bit = 0;
    else if (p0 <= kDefaultTol)
        bit = 1;
    else
        bit = rng.uniform() < p0 ? 0 : 1;
    return {bit, encode(bit, basis)};
}

SiftResult sift(const Transcript& t) {
    SiftResult r;
    const std::size_t l = t.a.size();
    const bool has_eve = !t.eve_bits.empty();
    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < l; ++i) {
        if (t.b[i] != t.c[i] || t.lost[i])
            continue;
        r.alice_key.push_back(t.a[i]);
        r.bob_key.push_back(static_cast<std::uint8_t>(t.bob_bits[i]));
        if (has_eve)
            r.eve_key.push_back(t.eve_bits[i]);
        if (t.a[i] != static_cast<std::uint8_t>(t.bob_bits[i]))
            ++mismatches;
    }
    r.sifted_fraction = l == 0 ? 0.0 : static_cast<double>(r.alice_key.size()) / static_cast<double>(l);
    if (!r.alice_key.empty())
        r.qber = static_cast<double>(mismatches) / static_cast<double>(r.alice_key.size());
    return r;
}

namespace {

const char* tag_name(Tag t) {
    switch (t) {
        case Tag::conclusive: return "conclusive";
        case Tag::unambiguous: return "unambiguous";
        case Tag::inconclusive_null: return "inconclusive-null";
    }
    return "?";
}

nlohmann::ordered_json bit_array(const std::vector<std::int8_t>& bits) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::int8_t v : bits) {
        if (v < 0)
            arr.push_back(nullptr);
        else
            arr.push_back(static_cast<int>(v));
    }
    return arr;
}

} // namespace

std::string to_json(const Transcript& t) {
    nlohmann::ordered_json j;
    j["a"] = t.a;
    j["b"] = t.b;
    j["c"] = t.c;
    j["bob_bits"] = bit_array(t.bob_bits);
    if (!t.eve_bits.empty()) {
        j["eve_bits"] = bit_array(t.eve_bits);
        nlohmann::ordered_json tags = nlohmann::ordered_json::array();
        for (Tag tag : t.eve_tags)
            tags.push_back(tag_name(tag));
        j["eve_tags"] = tags;
    }
    j["lost"] = t.lost;
    return j.dump();
}

std::string to_json(const SiftResult& r) {
    nlohmann::ordered_json j;
    j["alice_key"] = r.alice_key;
    j["bob_key"] = r.bob_key;
    if (!r.eve_key.empty())
        j["eve_key"] = bit_array(r.eve_key);
    j["sifted_fraction"] = r.sifted_fraction;
    if (r.qber)
        j["qber"] = *r.qber;
    else
        j["qber"] = nullptr;
    return j.dump();
}

} // namespace ptqkd
