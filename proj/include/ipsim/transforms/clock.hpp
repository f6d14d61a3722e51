#pragma once

#include <cstdint>

#include "ipsim/machine.hpp"

namespace ipsim {

/// Parameters of the random-walk alarm clock M_{t,c,n0}. The premature-halt
/// probability is tuned through n0 (the length threshold below which the
/// machine stalls deterministically); the implied bound is 1/n0.
struct ClockParams {
    int t = 1;
    int c = 1;
    std::uint64_t n0 = 8;

    double epsilon_premature() const { return 1.0 / static_cast<double>(n0); }
    std::uint64_t f(std::uint64_t n) const {
        std::uint64_t v = static_cast<std::uint64_t>(c);
        for (int i = 0; i < t; ++i) v *= n;
        return v;
    }
    void check() const;

    /// Smallest n0 satisfying n0 > 1/eps for a target premature bound.
    static ClockParams for_error(int t, int c, double eps);
};

/// Emits the clock as a flat private-coin PFA with no communication:
/// a short-input stall stage, a deterministic sweep stage for t = 1, and
/// otherwise batches of t gambler's-ruin walks with c-1 pause steps per
/// move, repeating until a batch ends with every walk at the right marker.
///
/// Exact step counts under the engine's one-transition-per-step semantics:
///   n <  n0          : halts after n + 2 + f(n) steps (all seeds)
///   n >= n0, t = 1   : halts after 2*n0 + c*n + 2 steps (all seeds)
///   n >= n0, t >= 2  : expected t*(n+1)^t*(c*n+2) + 2*n0 + 2 steps
///
/// State-name scheme (stable, used by trace inspectors): "chk*" check phase,
/// "stall*" short-input stall, "ret*"/"swp*" t=1 sweep, "rst*" head resets,
/// "wlk*" walk flip states (the only private-coin states), "wps*" walk
/// pauses. A walk ends exactly when a transition from a "wlk" state lands
/// the head on position 0 or n+1.
MachineSpec build_poly_clock(const ClockParams& params);

std::uint64_t clock_runtime_t1(const ClockParams& params, std::uint64_t n);
std::uint64_t clock_runtime_short(const ClockParams& params, std::uint64_t n);
double clock_expected_runtime(const ClockParams& params, std::uint64_t n);

/// True for the walk flip states of an emitted clock (name-based).
bool clock_is_walk_flip_state(const MachineSpec& clock, StateId q);

} // namespace ipsim
