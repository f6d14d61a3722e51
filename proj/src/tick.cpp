#include "ipsim/transforms/tick.hpp"

#include <cmath>

namespace ipsim {

TickResult tick(TickState& state, std::uint64_t p, const std::function<int()>& flip) {
    if (p < 1) throw std::invalid_argument("tick wants p >= 1");
    state.all_reds_heads = state.all_reds_heads && flip() == 1; // red coin
    bool blues_all_heads = true;
    for (std::uint64_t i = 0; i < p; ++i)
        if (flip() == 0) blues_all_heads = false; // keep the coin count fixed
    if (!blues_all_heads) return TickResult::running;
    if (!state.all_reds_heads) {
        state.all_reds_heads = true;
        return TickResult::reset;
    }
    return TickResult::timeout;
}

double tick_expected_timeout_calls(std::uint64_t p) {
    const double q = std::ldexp(1.0, -static_cast<int>(p)); // 2^-p
    return (1.0 + q) / (q * q);
}

} // namespace ipsim
