#pragma once

#include <map>
#include <memory>
#include <string>

#include "ipsim/exact.hpp"

namespace ipsim {

struct OptimalProverResult {
    std::map<std::string, std::string> responses; // encoded history -> symbol
    BigRat value = 0;                             // achieved acceptance probability
    std::uint64_t evaluations = 0;

    std::unique_ptr<ProverStrategy> strategy() const;
};

struct OptimalProverOptions {
    std::uint64_t node_budget = 200000;  // exact evaluations allowed
    std::size_t max_support = 1u << 18;  // belief budget per evaluation
};

/// Exhaustive search over deterministic response functions on the transcript
/// tree reachable within `horizon` steps, each candidate scored with the
/// exact propagation truncated at the horizon (alive mass counts as
/// non-accepting). Ties break toward the lexicographically smallest response
/// sequence in decision-point discovery order. Throws BudgetError when the
/// tree outgrows the budget.
OptimalProverResult optimal_bounded_prover(const MachineSpec& spec, const std::string& input,
                                           std::uint64_t horizon,
                                           const OptimalProverOptions& options = {});

} // namespace ipsim
