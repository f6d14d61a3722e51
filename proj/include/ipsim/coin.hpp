#pragma once

#include <cstdint>

namespace ipsim {

/// Counter-based fair-coin source. Every draw is a pure function of
/// (seed, trial, draw index), so trials can run in parallel and replays
/// are bitwise identical on every platform.
class CoinSource {
public:
    CoinSource(std::uint64_t seed, std::uint64_t trial)
        : seed_(seed), trial_(trial) {}

    int flip() {
        std::uint64_t z = seed_;
        z += 0x9e3779b97f4a7c15ULL * (trial_ + 1);
        z += 0xbf58476d1ce4e5b9ULL * (counter_ + 1);
        ++counter_;
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<int>((z >> 32) & 1u);
    }

    std::uint64_t draws() const { return counter_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t trial() const { return trial_; }

private:
    std::uint64_t seed_;
    std::uint64_t trial_;
    std::uint64_t counter_ = 0;
};

} // namespace ipsim
