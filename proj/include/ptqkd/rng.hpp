#pragma once

#include <cstdint>

namespace ptqkd {

// SplitMix64 stream. Small state, full-period, good avalanche -- plenty for
// measurement coins, and cheap enough to construct one per qubit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        ++draws_;
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 significant bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    int bit() { return static_cast<int>(next() >> 63); }

    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

// SplitMix64 finalizer, used to decorrelate substream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Counter-based master source: substream(i) yields an independent stream for
// trial i derived only from (seed, i). Workers can process any partition of
// the index space and still reproduce a single-threaded run bit for bit.
class MasterRng {
public:
    explicit MasterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    Rng substream(std::uint64_t index) const {
        return Rng(mix64(seed_ ^ mix64(index + 0x9E3779B97F4A7C15ull)));
    }

private:
    std::uint64_t seed_;
};

} // namespace ptqkd
