#pragma once

#include <optional>

#include "ipsim/multihead.hpp"
#include "ipsim/transforms/clock.hpp"

namespace ipsim {

/// Parameters of the single-head simulation: r private bits select the mode
/// of each of the m rounds (head i is tracked with probability p = 2^-r,
/// the clock runs with the remaining probability), and the clock parameters
/// tune the timer rounds.
struct V3Params {
    int r = 3;
    int m = 2;
    ClockParams clock;

    double p() const { return 1.0 / static_cast<double>(1u << r); }
    double p_head(int k) const { return k * p(); }
    double p_timer(int k) const { return 1.0 - p_head(k); }
    void check(int k) const;
};

/// Test instrumentation only: pins the mode of every round
/// (0..k-1 track head i+1, k runs the timer).
struct V3Options {
    std::optional<int> forced_mode;
};

inline constexpr int kTimerMode = -1; // round-log marker, set to k in logs

struct V3RoundLog {
    int mode = 0;          // 0..k-1 = tracked head, k = timer
    bool passed = false;   // simulation reached acceptance this round
    bool mismatch = false; // tracked head contradicted a claim
    bool timer_fired = false;
    std::uint64_t sim_steps = 0;
};

/// Executable composite. The verifier keeps one input head of its own,
/// flips one public coin per simulated step, and relies on the prover for
/// claimed head readings of the simulated machine (message format
/// "c(s1;...;sk)" or "c(s1;...;sk;p)" with the simulated prover's response
/// appended when the previous simulated step communicated). In timer mode
/// the clock advances one step per simulated step.
class V3Runner : public TrialRunner {
public:
    V3Runner(MultiheadVerifier v2, V3Params params, V3Options options = {});

    std::string describe() const override;
    TrialOutcome run(const std::string& input, const ProverStrategy& prover,
                     CoinSource coins, std::uint64_t cutoff) const override;

    struct Detailed {
        TrialOutcome outcome;
        std::vector<V3RoundLog> rounds;
    };
    Detailed run_detailed(const std::string& input, const ProverStrategy& prover,
                          CoinSource coins, std::uint64_t cutoff) const;

    const MultiheadVerifier& source() const { return v2_; }
    const V3Params& params() const { return params_; }
    const MachineSpec& clock_machine() const { return clock_; }

private:
    MultiheadVerifier v2_;
    V3Params params_;
    V3Options options_;
    MachineSpec clock_;
};

/// Claim-message helpers shared by the runner and the bundled provers.
std::string encode_claims(const MultiheadVerifier& v2, const std::vector<Sym>& scans,
                          const std::optional<std::string>& p2_symbol);
struct ParsedClaims {
    std::vector<Sym> scans;
    std::optional<std::string> p2_symbol;
};
std::optional<ParsedClaims> parse_claims(const MultiheadVerifier& v2, const std::string& msg);

/// The truthful strategy: replays the simulated machine's real execution
/// from the public record and reports the actual head readings, consulting
/// `p2` for the simulated prover's responses when needed.
std::unique_ptr<ProverStrategy> v3_honest_prover(
    const MultiheadVerifier& v2, std::shared_ptr<const ProverStrategy> p2 = nullptr);

/// Honest except that the claim for `head` is replaced by `fake` from the
/// start; used by the soundness tests.
std::unique_ptr<ProverStrategy> v3_head_liar(const MultiheadVerifier& v2, int head,
                                             const std::string& fake);

/// Repeats one claim message forever (the "still walking" loop inducer).
std::unique_ptr<ProverStrategy> v3_frozen_claims(const MultiheadVerifier& v2,
                                                 std::vector<Sym> scans);

} // namespace ipsim
