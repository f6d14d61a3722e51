#pragma once

#include <memory>

#include "ipsim/engine.hpp"
#include "ipsim/transforms/tick.hpp"

namespace ipsim {

/// Derandomizes a verifier with at most r private coins: 2^r deterministic
/// copies of it run in parallel, each hardwired to one coin string.
/// f_n bounds the steps a copy may take between communications before it is
/// known to loop; g_n = f_n^(2^r) caps the segments of a stage (the number
/// of distinct collective configurations).
struct V2Params {
    int r = 1;
    BigInt f_n = 0;
    BigInt g_n = 0;
    TickParams tick;

    void check() const;
    int sim_count() const { return 1 << r; }

    /// f_n from the exact configuration count of the hardwired sim machine
    /// with work budget s, and g_n = f_n^(2^r).
    static V2Params derive(const MachineSpec& v1, std::uint64_t n, std::uint64_t s, int r,
                           TickParams tick);
};

/// The deterministic copy of v1 that consumes `bits` in place of its private
/// coins: states are (q, remaining postfix), transitions that consumed a
/// private bit step the postfix, and exhausted-postfix coin states reject.
MachineSpec hardwire_private_coins(const MachineSpec& v1, const std::vector<int>& bits);

enum class SimLabel { running, waiting_comm, waiting_coin, halted_accept, halted_reject, looping };

const char* sim_label_name(SimLabel label);

struct V2SimLog {
    SimLabel label = SimLabel::running;
    std::uint64_t noncomm_steps = 0; // value of the counter when labeled/ended
};

struct V2Detailed {
    TrialOutcome outcome;
    std::vector<V2SimLog> sims;
    BigInt max_segments = 0;
    std::uint64_t stages = 0;
    std::uint64_t ticks = 0;
    bool partition_violation = false;
    int selected_sim = -1;
    // per-exchange block assignment of every sim, for refinement checks
    std::vector<std::vector<int>> partition_history;
};

/// Executable composite running the public-coin simulation of v1: stages
/// delimited by public coin flips, segments by communication exchanges,
/// per-sim loop detection at f_n steps, partition-consistency checks on
/// every prover message (tuple format "t(s0;...;s_{2^r-1})" over Gamma
/// names), one timer tick per stage, and a final r-coin selection.
class V2Runner : public TrialRunner {
public:
    V2Runner(MachineSpec v1, V2Params params);

    std::string describe() const override;
    TrialOutcome run(const std::string& input, const ProverStrategy& prover,
                     CoinSource coins, std::uint64_t cutoff) const override;
    V2Detailed run_detailed(const std::string& input, const ProverStrategy& prover,
                            CoinSource coins, std::uint64_t cutoff) const;

    const MachineSpec& source() const { return v1_; }
    const V2Params& params() const { return params_; }
    const std::vector<MachineSpec>& sim_specs() const { return sim_specs_; }

private:
    MachineSpec v1_;
    V2Params params_;
    std::vector<MachineSpec> sim_specs_;
};

std::string encode_tuple(const std::vector<std::string>& symbols);
std::optional<std::vector<std::string>> parse_tuple(const std::string& msg, std::size_t count);

/// The faithful strategy: replays the composite's deterministic protocol
/// from the public record and answers each waiting sim with what `p1` would
/// send to the source verifier at the corresponding point, fillers (blanks)
/// elsewhere.
std::unique_ptr<ProverStrategy> v2_honest_prover(const MachineSpec& v1, const V2Params& params,
                                                 std::shared_ptr<const ProverStrategy> p1);

} // namespace ipsim
