#include "ptqkd/bb84.hpp"
#include "ptqkd/eve.hpp"

#include <stdexcept>

namespace ptqkd {

Transcript run_protocol(std::uint64_t l, const Strategy* eve, const MasterRng& rng) {
    if (l < 1)
        throw std::invalid_argument("run_protocol: need at least one qubit");
    Transcript t;
    t.a.resize(l);
    t.b.resize(l);
    t.c.resize(l);
    t.bob_bits.resize(l);
    t.lost.resize(l);
    if (eve) {
        t.eve_bits.resize(l);
        t.eve_tags.resize(l);
    }
    for (std::uint64_t i = 0; i < l; ++i) {
        QubitRecord rec = simulate_qubit(rng, i, eve);
        t.a[i] = rec.a;
        t.b[i] = rec.b;
        t.c[i] = rec.c;
        t.bob_bits[i] = rec.bob_bit;
        t.lost[i] = rec.lost ? 1 : 0;
        if (eve) {
            t.eve_bits[i] = rec.eve_bit;
            t.eve_tags[i] = rec.eve_tag;
        }
    }
    return t;
}

} // namespace ptqkd
