#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipsim/engine.hpp"

namespace ipsim {

/// Constant-space verifier with k independent input heads; no work tape.
/// Some states may flip public coins and/or write to the communication cell
/// (public flippers must communicate). Scan combinations without an entry
/// reject. Used as the source machine of the single-head simulation and as
/// the target of the head-encoding of logarithmic-space machines.
struct MultiheadVerifier {
    std::vector<std::string> states;
    StateId initial = 0;
    StateId accept = 0;
    StateId reject = 0;
    std::vector<std::string> input_alphabet;
    std::vector<std::string> comm_alphabet{"_"};
    int heads = 1;
    std::vector<std::uint8_t> pub, com;

    struct Key {
        StateId state;
        std::vector<Sym> scans;
        Sym comm = kBlank; // communication-cell symbol being read
        int pub = kNoCoin;
        bool operator<(const Key& o) const {
            return std::tie(state, scans, comm, pub) <
                   std::tie(o.state, o.scans, o.comm, o.pub);
        }
    };
    struct Rhs {
        StateId next;
        std::optional<Sym> comm_write; // present iff the state communicates
        std::vector<int> dirs;
    };
    std::map<Key, Rhs> delta;

    StateId add_state(const std::string& name);
    StateId state_id(const std::string& name) const;
    Sym input_id(const std::string& name) const;
    std::string input_name(Sym s) const;
    bool flips_pub(StateId q) const { return pub[static_cast<size_t>(q)] != 0; }
    bool communicates(StateId q) const { return com[static_cast<size_t>(q)] != 0; }
    bool is_halting(StateId q) const { return q == accept || q == reject; }
};

std::vector<Violation> validate_multihead(const MultiheadVerifier& m);

/// Direct execution with真 head positions (no prover tricks): coins from the
/// source, prover consulted on communication steps. Deterministic machines
/// ignore both.
TrialOutcome run_multihead(const MultiheadVerifier& m, const std::string& input,
                           const ProverStrategy& prover, CoinSource coins,
                           std::uint64_t cutoff);

class MultiheadRunner : public TrialRunner {
public:
    explicit MultiheadRunner(MultiheadVerifier m) : m_(std::move(m)) {}
    std::string describe() const override { return "multihead"; }
    TrialOutcome run(const std::string& input, const ProverStrategy& prover,
                     CoinSource coins, std::uint64_t cutoff) const override {
        return run_multihead(m_, input, prover, coins, cutoff);
    }
    const MultiheadVerifier& machine() const { return m_; }

private:
    MultiheadVerifier m_;
};

} // namespace ipsim
