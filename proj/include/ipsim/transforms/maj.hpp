#pragma once

#include <set>
#include <string>

#include "ipsim/machine.hpp"

namespace ipsim {

using CoinSequence = std::string;              // over '0'/'1'; "" is lambda
using CoinSequenceSet = std::set<CoinSequence>;

/// All prefix-free subsets S of {0,1}^{<=r} whose sequence probabilities
/// sum to more than 1/2 (the empty sequence has probability 1).
/// Enumeration is exact; r > 3 is outside the enumeration budget.
std::set<CoinSequenceSet> enumerate_maj(int r);

/// All prefixes (including lambda and the members) of the sequences in S.
CoinSequenceSet prefixes_of(const CoinSequenceSet& s);

/// Proper prefixes only.
CoinSequenceSet proper_prefixes_of(const CoinSequenceSet& s);

bool is_prefix_free(const CoinSequenceSet& s);

/// Sum of 2^-|x| over the set, as an exact pair (num, den = 2^r).
BigRat sequence_set_probability(const CoinSequenceSet& s);

} // namespace ipsim
