#include <doctest.h>

#include <cmath>

#include "ipsim/transforms/maj.hpp"

using namespace ipsim;

namespace {

// Independent brute force: grow subsets recursively over the listed
// sequences, checking the prefix-free and majority conditions directly.
void collect(const std::vector<CoinSequence>& all, size_t from, CoinSequenceSet& acc,
             std::set<CoinSequenceSet>& out) {
    if (from == all.size()) {
        if (acc.empty()) return;
        double mass = 0;
        for (const auto& x : acc) mass += std::pow(0.5, static_cast<double>(x.size()));
        if (mass <= 0.5) return;
        for (const auto& a : acc)
            for (const auto& b : acc)
                if (a != b && b.rfind(a, 0) == 0) return; // a is a prefix of b
        out.insert(acc);
        return;
    }
    collect(all, from + 1, acc, out);
    acc.insert(all[from]);
    collect(all, from + 1, acc, out);
    acc.erase(all[from]);
}

std::set<CoinSequenceSet> brute_force_maj(int r) {
    std::vector<CoinSequence> all;
    for (int len = 0; len <= r; ++len)
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
            CoinSequence x(static_cast<size_t>(len), '0');
            for (int i = 0; i < len; ++i)
                if (bits & (1u << i)) x[static_cast<size_t>(i)] = '1';
            all.push_back(x);
        }
    std::set<CoinSequenceSet> out;
    CoinSequenceSet acc;
    collect(all, 0, acc, out);
    return out;
}

} // namespace

TEST_CASE("Maj_0 holds only the lone-lambda set") {
    auto maj = enumerate_maj(0);
    REQUIRE(maj.size() == 1);
    CHECK(*maj.begin() == CoinSequenceSet{""});
}

TEST_CASE("Maj_1 is {{lambda}, {0, 1}}") {
    auto maj = enumerate_maj(1);
    CHECK(maj == std::set<CoinSequenceSet>{{""}, {"0", "1"}});
}

TEST_CASE("Maj_2 matches the independent brute force") {
    CHECK(enumerate_maj(2) == brute_force_maj(2));
    CHECK(enumerate_maj(3) == brute_force_maj(3));
}

TEST_CASE("every member is prefix-free with mass above one half") {
    for (int r = 0; r <= 3; ++r)
        for (const auto& s : enumerate_maj(r)) {
            CHECK(is_prefix_free(s));
            CHECK(sequence_set_probability(s) > BigRat(1, 2));
            for (const auto& x : s) CHECK(x.size() <= static_cast<size_t>(r));
        }
}

TEST_CASE("prefix helpers cover members, lambda and nothing else") {
    CoinSequenceSet s{"0", "10"};
    CHECK(prefixes_of(s) == CoinSequenceSet{"", "0", "1", "10"});
    CHECK(proper_prefixes_of(s) == CoinSequenceSet{"", "1"});
}

TEST_CASE("the enumeration budget stops at r = 3") {
    CHECK_THROWS_AS(enumerate_maj(4), MachineError);
    CHECK_THROWS_AS(enumerate_maj(-1), MachineError);
}
