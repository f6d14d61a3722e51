#pragma once

#include <cstdint>
#include <string>

#include "ipsim/engine.hpp"

namespace ipsim {

/// One index-manipulation walk of the head-encoding machine and its cost in
/// automaton transitions: halving walks the head to the marker at full speed
/// with the auxiliary at half speed (x steps), doubling walks at half speed
/// with the auxiliary at full speed (2x steps).
struct HeadWalk {
    long index;
    std::uint64_t steps;
};
HeadWalk halve_walk(long x);
HeadWalk double_walk(long x);

/// Interprets a deterministic Turing machine (a MachineSpec with no coins
/// and no communication) as the (c+5)-head finite automaton that encodes
/// the machine's work tape in the positions of heads h_1..h_c: bit i of
/// cell j contributes 2^j to head i's index. Heads h_alpha and h_beta
/// mirror the input and work heads; h_gamma, h_delta, h_epsilon are
/// auxiliaries that rest on the left marker between procedures.
///
/// Preconditions: |Phi| <= 2^c with the blank coded 0, and the run must
/// stay within floor(log2(n+2)) work cells (checked while simulating).
class HartmanisMachine : public TrialRunner {
public:
    HartmanisMachine(MachineSpec tm, int c);

    int head_count() const { return c_ + 5; }
    const MachineSpec& source() const { return tm_; }

    struct Report {
        Verdict verdict = Verdict::cutoff;
        std::uint64_t tm_steps = 0;    // simulated machine transitions
        std::uint64_t steps = 0;       // automaton transitions (total head moves)
        bool aux_at_zero_after_each_cycle = true;
        bool encoding_consistent = true; // head indices matched the tape everywhere
        std::vector<long> final_positions;
    };
    Report execute(const std::string& input, std::uint64_t max_tm_steps) const;

    /// Worst-case automaton transitions for one simulated step on length-n
    /// input: (2c + 3/2) n + 2c + 2, rounded up.
    std::uint64_t per_step_bound(std::uint64_t n) const;

    std::string describe() const override { return "hartmanis(c=" + std::to_string(c_) + ")"; }
    TrialOutcome run(const std::string& input, const ProverStrategy&, CoinSource,
                     std::uint64_t cutoff) const override;

private:
    MachineSpec tm_;
    int c_;
};

} // namespace ipsim
