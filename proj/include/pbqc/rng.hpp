// Counter-based seeded random generator (splitmix64 in counter mode).
// Every stochastic operation in the library takes one of these explicitly,
// so a run is fully determined by its seed. derive() produces independent
// child streams for per-trial use.
#pragma once

#include <cstdint>

namespace pbqc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    int uniform_int(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    // independent child stream; does not consume from this generator
    Rng derive(std::uint64_t stream) const {
        std::uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ull + stream * 0xd1342543de82ef95ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace pbqc
