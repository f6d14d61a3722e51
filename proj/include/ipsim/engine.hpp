#pragma once

#include <optional>
#include <string>

#include "ipsim/coin.hpp"
#include "ipsim/machine.hpp"
#include "ipsim/prover.hpp"
#include "ipsim/transcript.hpp"

namespace ipsim {

enum class Verdict { accept, reject, cutoff };

const char* verdict_name(Verdict v);

/// Result of one seeded trial. verdict == cutoff iff steps hit the bound.
struct TrialOutcome {
    Verdict verdict = Verdict::cutoff;
    std::uint64_t steps = 0;
    std::uint64_t private_coins_used = 0;
    std::uint64_t public_coins_used = 0;
    Transcript transcript;
};

/// Mutable state of one verifier run (configuration plus bookkeeping).
struct RunState {
    std::string input;
    std::vector<Sym> input_syms;
    Configuration cfg;
    Transcript transcript;
    std::uint64_t steps = 0;
    std::uint64_t pri_used = 0;
    std::uint64_t pub_used = 0;

    Sym scanned_input() const {
        if (cfg.input_pos == 0) return kLeftEnd;
        if (cfg.input_pos == static_cast<long>(input_syms.size()) + 1) return kRightEnd;
        return input_syms[static_cast<size_t>(cfg.input_pos - 1)];
    }
};

RunState begin_run(const MachineSpec& spec, const std::string& input);

/// One verifier transition with the coin outcomes supplied by the caller
/// (pass kNoCoin for roles the state does not have; mismatches throw).
/// Appends the emitted transcript events, performs the prover overwrite for
/// communication states, and returns the halting verdict if the step halts.
std::optional<Verdict> verifier_step_with_bits(const MachineSpec& spec, RunState& rs,
                                               int pri_bit, int pub_bit,
                                               const ProverStrategy& prover);

/// One verifier transition, drawing coins from the source per the state's
/// role flags.
std::optional<Verdict> verifier_step(const MachineSpec& spec, RunState& rs,
                                     CoinSource& coins, const ProverStrategy& prover);

/// Runs the verifier from the initial configuration until a verdict or
/// `cutoff` steps. Identical (seed, trial, prover, input) give identical
/// outcomes.
TrialOutcome run_trial(const MachineSpec& spec, const ProverStrategy& prover,
                       const std::string& input, CoinSource coins, std::uint64_t cutoff);

/// Anything that can execute seeded trials: flat machine specs and the
/// interpreted composites emitted by the transformations. Implementations
/// keep all per-run state local to the call, so a runner can serve many
/// concurrent trials.
class TrialRunner {
public:
    virtual ~TrialRunner() = default;
    virtual std::string describe() const = 0;
    virtual TrialOutcome run(const std::string& input, const ProverStrategy& prover,
                             CoinSource coins, std::uint64_t cutoff) const = 0;
};

class MachineRunner : public TrialRunner {
public:
    explicit MachineRunner(MachineSpec spec) : spec_(std::move(spec)) {}
    std::string describe() const override { return "verifier"; }
    TrialOutcome run(const std::string& input, const ProverStrategy& prover,
                     CoinSource coins, std::uint64_t cutoff) const override {
        return run_trial(spec_, prover, input, coins, cutoff);
    }
    const MachineSpec& spec() const { return spec_; }

private:
    MachineSpec spec_;
};

} // namespace ipsim
