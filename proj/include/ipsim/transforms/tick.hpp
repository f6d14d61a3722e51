#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "ipsim/coin.hpp"

namespace ipsim {

/// Parameters of the coin-flip timer subroutine: each call flips one red
/// coin and p(n) = c * n^t blue coins.
struct TickParams {
    int c = 1;
    int t = 1;

    std::uint64_t p(std::uint64_t n) const {
        std::uint64_t v = static_cast<std::uint64_t>(c);
        for (int i = 0; i < t; ++i) v *= n;
        if (v < 1) throw std::invalid_argument("tick wants p(n) >= 1");
        return v;
    }
};

enum class TickResult { running, reset, timeout };

/// The Boolean accumulator: true while every red coin since the last reset
/// came out heads (vacuously true at the start).
struct TickState {
    bool all_reds_heads = true;
};

/// One timer tick. Flips one red coin (folding it into the accumulator) and
/// p blue coins; any blue tails keeps the timer running, all-heads blues
/// either reset the accumulator (when a red tails was recorded) or announce
/// the timeout.
TickResult tick(TickState& state, std::uint64_t p, const std::function<int()>& flip);

inline TickResult tick(TickState& state, std::uint64_t p, CoinSource& coins) {
    return tick(state, p, [&coins] { return coins.flip(); });
}

/// Exact expected number of calls until timeout, from the two-state
/// absorbing chain of the subroutine: (1+q)/q^2 with q = 2^-p.
/// Grows like 4^p — see the acceptance suite for the measured comparison
/// against the doubly-exponential figure quoted for this construction.
double tick_expected_timeout_calls(std::uint64_t p);

} // namespace ipsim
