#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipsim/machine.hpp"

namespace ipsim {

/// How prover responses are modeled when building the configuration graph.
/// Adversarial: every Gamma symbol is a possible overwrite.
enum class ProverModel { adversarial };

struct WorstCaseReport {
    bool bounded = true;
    std::uint64_t max_steps = 0;          // longest run over all inputs (bounded)
    std::string witness_input;            // input exhibiting the cycle (unbounded)
    std::vector<Configuration> witness_cycle;
};

/// Builds the configuration graph of a constant-space verifier over every
/// input of length n, with coin outcomes and prover responses as
/// nondeterministic edges. A reachable configuration on a cycle makes the
/// worst-case runtime unbounded (the cycle is returned as the witness);
/// otherwise the longest path is the exact worst-case step count.
WorstCaseReport analyze_worst_case(const MachineSpec& v, std::uint64_t n,
                                   ProverModel model = ProverModel::adversarial);

} // namespace ipsim
