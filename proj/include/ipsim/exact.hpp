#pragma once

#include <string>

#include "ipsim/engine.hpp"

namespace ipsim {

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExactResult {
    BigRat p_accept = 0;
    BigRat p_reject = 0;
    BigRat p_alive = 0; // mass not yet halted after `cutoff` steps
};

struct ExactOptions {
    std::size_t max_support = 1u << 20; // belief-state budget (distinct histories)
};

/// Exact acceptance oracle: propagates the full probability distribution over
/// (configuration, transcript) pairs step by step for `cutoff` steps,
/// splitting mass 1/2 per coin. The prover must be deterministic — it is
/// evaluated once per distinct observable history. The three components sum
/// to exactly 1. Throws BudgetError when the belief support outgrows the
/// configured budget (callers fall back to Monte Carlo).
ExactResult exact_acceptance(const MachineSpec& spec, const ProverStrategy& prover,
                             const std::string& input, std::uint64_t cutoff,
                             const ExactOptions& options = {});

} // namespace ipsim
