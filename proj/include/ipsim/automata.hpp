#pragma once

#include <string>

#include "ipsim/machine.hpp"

namespace ipsim {

/// kNFA acceptance: true iff q_acc is reachable from the initial
/// configuration of the finite graph over (state, k head positions).
/// Moves that would push a head past an endmarker produce no successor.
bool knfa_accepts(const KnfaSpec& m, const std::string& input);

/// 2AFA acceptance: least fixpoint of the AND/OR labeling over the
/// configuration graph, computed as a backward attractor. Configurations
/// from which acceptance cannot be forced in finitely many steps are false.
/// Universal dead-ends are true, existential dead-ends false; successors
/// outside [0, n+1] are excluded.
bool tafa_accepts(const TafaSpec& m, const std::string& input);

/// Reference evaluator for tests: iterates the labeling function to its
/// fixpoint over the full configuration set. Independent of tafa_accepts.
bool tafa_accepts_naive(const TafaSpec& m, const std::string& input);

/// Views a 2AFA with no universal states as a 1-head kNFA.
KnfaSpec tafa_as_knfa(const TafaSpec& m);

} // namespace ipsim
