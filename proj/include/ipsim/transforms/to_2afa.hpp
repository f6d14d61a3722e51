#pragma once

#include "ipsim/machine.hpp"
#include "ipsim/transforms/maj.hpp"

namespace ipsim {

/// Sizes of the state sets materialized by constpub_to_2afa, computed from
/// the defining products (used by the structural tests).
struct To2afaCounts {
    std::uint64_t main_states = 0; // sum over S of |Q_V| * |Gamma| * |prefix(S)|
    std::uint64_t flip_states = 0; // sum over S of |Q_pub| * |Gamma| * |prefix(S) \ {lambda}|
    std::uint64_t total() const { return 1 + main_states + flip_states + 2; }
};
To2afaCounts to_2afa_counts(const MachineSpec& v, int r);

/// Builds the alternating automaton that decides whether some prefix-free
/// coin-sequence set with probability mass above 1/2 leads the public-coin
/// verifier to acceptance: the initial existential move guesses the set,
/// universal states branch over the coin outcomes consistent with it,
/// existential states supply the prover responses, and every unspecified
/// move rejects.
///
/// Requires a constant-space verifier with no private coins; branches that
/// flip more public coins than the guessed set covers reject.
TafaSpec constpub_to_2afa(const MachineSpec& v, int r);

} // namespace ipsim
