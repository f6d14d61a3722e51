#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ipsim {

enum class EventKind { verifier_write, prover_write, public_coin };

struct TranscriptEvent {
    EventKind kind;
    std::string symbol; // communication symbol, empty for coins
    int bit = 0;        // coin outcome, 0 for writes
    std::uint64_t step = 0;

    bool operator==(const TranscriptEvent&) const = default;
};

using Transcript = std::vector<TranscriptEvent>;

/// Canonical one-line encoding, e.g. "V:a P:b C:1". Used as scripted-prover
/// table keys and when hashing observable histories.
std::string encode_transcript(const Transcript& t);

std::string encode_event(const TranscriptEvent& e);

/// Public-coin outcomes in order of appearance.
std::vector<int> public_coin_history(const Transcript& t);

} // namespace ipsim
