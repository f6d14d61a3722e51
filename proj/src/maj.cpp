#include "ipsim/transforms/maj.hpp"

namespace ipsim {

CoinSequenceSet prefixes_of(const CoinSequenceSet& s) {
    CoinSequenceSet out;
    for (const auto& x : s)
        for (size_t len = 0; len <= x.size(); ++len) out.insert(x.substr(0, len));
    return out;
}

CoinSequenceSet proper_prefixes_of(const CoinSequenceSet& s) {
    CoinSequenceSet out;
    for (const auto& x : s)
        for (size_t len = 0; len < x.size(); ++len) out.insert(x.substr(0, len));
    return out;
}

bool is_prefix_free(const CoinSequenceSet& s) {
    auto proper = proper_prefixes_of(s);
    for (const auto& x : s)
        if (proper.count(x)) return false;
    return true;
}

BigRat sequence_set_probability(const CoinSequenceSet& s) {
    BigRat sum = 0;
    for (const auto& x : s) sum += BigRat(1, BigInt(1) << x.size());
    return sum;
}

std::set<CoinSequenceSet> enumerate_maj(int r) {
    if (r < 0) throw MachineError("enumerate_maj wants r >= 0");
    if (r > 3) throw MachineError("enumerate_maj: r beyond the enumeration budget (r <= 3)");

    std::vector<CoinSequence> all;
    for (int len = 0; len <= r; ++len)
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
            CoinSequence x(static_cast<size_t>(len), '0');
            for (int i = 0; i < len; ++i)
                if (bits & (1u << i)) x[static_cast<size_t>(i)] = '1';
            all.push_back(x);
        }

    std::set<CoinSequenceSet> out;
    const size_t count = all.size(); // 2^{r+1} - 1 <= 15
    for (std::uint64_t mask = 1; mask < (1ull << count); ++mask) {
        CoinSequenceSet s;
        for (size_t i = 0; i < count; ++i)
            if (mask & (1ull << i)) s.insert(all[i]);
        if (!is_prefix_free(s)) continue;
        if (sequence_set_probability(s) <= BigRat(1, 2)) continue;
        out.insert(std::move(s));
    }
    return out;
}

} // namespace ipsim
