#include <doctest.h>

#include <random>
#include <set>

#include "ipsim/transforms/analyze.hpp"
#include "generators.hpp"
#include "machines.hpp"

using namespace ipsim;

namespace {

// Layered breadth-first oracle: simulates every coin/prover choice for up to
// count_configurations + 1 steps. A configuration alive past the bound means
// a path long enough to repeat one, i.e. unbounded worst-case time.
struct OracleVerdict {
    bool bounded;
    std::uint64_t max_steps;
};

OracleVerdict exhaustive_oracle(const MachineSpec& v, std::uint64_t n) {
    const std::uint64_t limit = count_configurations(v, n, 0).convert_to<std::uint64_t>() + 1;
    OracleVerdict out{true, 0};

    const int sigma = static_cast<int>(v.input_alphabet.size());
    std::vector<Sym> w(n, 0);
    auto next_word = [&]() -> bool {
        for (size_t i = w.size(); i-- > 0;) {
            if (++w[i] < sigma) return true;
            w[i] = 0;
        }
        return false;
    };

    if (v.is_halting(v.initial)) return out;

    do {
        using Node = std::tuple<StateId, long, Sym>; // state, pos, cell
        std::set<Node> layer{{v.initial, 0, kBlank}};
        for (std::uint64_t step = 1; step <= limit && !layer.empty(); ++step) {
            std::set<Node> next;
            bool halted_here = false;
            for (const auto& [q, pos, cell] : layer) {
                Sym s = pos == 0 ? kLeftEnd
                                 : (pos == static_cast<long>(n) + 1
                                        ? kRightEnd
                                        : w[static_cast<size_t>(pos - 1)]);
                const std::vector<int> pris =
                    v.flips_pri(q) ? std::vector<int>{0, 1} : std::vector<int>{kNoCoin};
                const std::vector<int> pubs =
                    v.flips_pub(q) ? std::vector<int>{0, 1} : std::vector<int>{kNoCoin};
                for (int bpri : pris)
                    for (int bpub : pubs) {
                        const auto& rhs = v.delta.at(DeltaKey{q, s, kBlank, cell, bpri, bpub});
                        long npos = pos + rhs.d_in;
                        if (v.is_halting(rhs.next) || npos < 0 ||
                            npos > static_cast<long>(n) + 1) {
                            halted_here = true;
                            continue;
                        }
                        if (v.communicates(q)) {
                            for (Sym g = 0; g < static_cast<Sym>(v.comm_alphabet.size()); ++g)
                                next.insert({rhs.next, npos, g});
                        } else {
                            next.insert({rhs.next, npos, cell});
                        }
                    }
            }
            if (halted_here) out.max_steps = std::max(out.max_steps, step);
            if (step == limit && !next.empty()) return {false, 0};
            layer = std::move(next);
        }
    } while (n > 0 && next_word());
    return out;
}

} // namespace

TEST_CASE("a deterministic self-loop is an unbounded witness") {
    auto m = testmachines::self_loop();
    auto rep = analyze_worst_case(m, 2);
    CHECK(!rep.bounded);
    REQUIRE(!rep.witness_cycle.empty());
    CHECK(rep.witness_cycle.front().state == m.state_id("q0"));
}

TEST_CASE("a one-pass scanner is bounded by n + 2") {
    auto m = testmachines::verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri:
pub:
com:
q0 > * * -> qa _ 0 0
q0 * * * -> q0 _ +1 0
)");
    REQUIRE(validate(m).empty());
    auto rep = analyze_worst_case(m, 5);
    CHECK(rep.bounded);
    CHECK(rep.max_steps == 7);
}

TEST_CASE("coin-dependent cycles count as unbounded") {
    // flips a coin every visit; one outcome loops, the other accepts
    auto m = testmachines::verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0
work: _
comm: _
pri: q0
pub:
com:
q0 * * * pri=0 -> q0 _ 0 0
q0 * * * pri=1 -> qa _ 0 0
)");
    auto rep = analyze_worst_case(m, 1);
    CHECK(!rep.bounded);
}

TEST_CASE("the analyzer rejects machines that use the work tape") {
    auto m = testmachines::verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0
work: _ x
comm: _
pri:
pub:
com:
q0 * * * -> qa x 0 0
)");
    CHECK_THROWS_AS(analyze_worst_case(m, 1), MachineError);
}

TEST_CASE("verdicts agree with the exhaustive path oracle on random machines") {
    std::mt19937_64 rng(777);
    testgen::VerifierGenOptions opt;
    opt.min_live = 2;
    opt.max_live = 2; // plus the two halting states: 4-state machines
    int bounded_seen = 0, unbounded_seen = 0;
    for (int round = 0; round < 100; ++round) {
        auto m = testgen::random_verifier(rng, opt);
        for (std::uint64_t n : {0ull, 2ull, 4ull}) {
            auto fast = analyze_worst_case(m, n);
            auto slow = exhaustive_oracle(m, n);
            REQUIRE(fast.bounded == slow.bounded);
            if (fast.bounded) {
                REQUIRE(fast.max_steps == slow.max_steps);
                ++bounded_seen;
            } else {
                ++unbounded_seen;
            }
        }
    }
    // the sample must exercise both verdicts to mean anything
    CHECK(bounded_seen > 0);
    CHECK(unbounded_seen > 0);
}

TEST_CASE("bounds never exceed the configuration count") {
    std::mt19937_64 rng(101);
    testgen::VerifierGenOptions opt;
    opt.min_live = 2;
    opt.max_live = 3;
    for (int round = 0; round < 30; ++round) {
        auto m = testgen::random_verifier(rng, opt);
        auto rep = analyze_worst_case(m, 3);
        if (rep.bounded)
            CHECK(BigInt(rep.max_steps) <= count_configurations(m, 3, 0));
    }
}
