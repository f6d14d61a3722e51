#include "ipsim/transcript.hpp"

#include <sstream>

namespace ipsim {

std::string encode_event(const TranscriptEvent& e) {
    switch (e.kind) {
    case EventKind::verifier_write: return "V:" + e.symbol;
    case EventKind::prover_write: return "P:" + e.symbol;
    case EventKind::public_coin: return e.bit ? "C:1" : "C:0";
    }
    return "?";
}

std::string encode_transcript(const Transcript& t) {
    std::string out;
    for (const auto& e : t) {
        if (!out.empty()) out += ' ';
        out += encode_event(e);
    }
    return out;
}

std::vector<int> public_coin_history(const Transcript& t) {
    std::vector<int> bits;
    for (const auto& e : t)
        if (e.kind == EventKind::public_coin) bits.push_back(e.bit);
    return bits;
}

} // namespace ipsim
