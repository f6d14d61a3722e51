#include <doctest.h>

#include <functional>

#include "ipsim/exact.hpp"
#include "ipsim/transforms/privatize.hpp"
#include "machines.hpp"

using namespace ipsim;

namespace {

/// One public-only coin state communicating its flip.
MachineSpec pub_coin_verifier() {
    return testmachines::verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri:
pub: q0
com: q0
q0 * * * pub=0 -> qr _ _ 0 0
q0 * * * pub=1 -> qa _ _ 0 0
)");
}

/// Flips both kinds of coin in one state; accepts iff they agree.
MachineSpec both_coins_verifier() {
    return testmachines::verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri: q0
pub: q0
com: q0
q0 * * * pri=0 pub=0 -> qa _ _ 0 0
q0 * * * pri=0 pub=1 -> qr _ _ 0 0
q0 * * * pri=1 pub=0 -> qr _ _ 0 0
q0 * * * pri=1 pub=1 -> qa _ _ 0 0
)");
}

/// Public coin, then the prover must echo the outcome to reach acceptance.
MachineSpec echo_coin_verifier() {
    return testmachines::verifier(R"(kind verifier
states: q0 chk qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _ e0 e1
pri:
pub: q0
com: q0
q0 * * * pub=0 -> chk _ _ 0 0
q0 * * * pub=1 -> chk _ _ 0 0
chk * * e0 -> qa _ 0 0
chk * * e1 -> qa _ 0 0
chk * * * -> qr _ 0 0
)");
}

/// Echoes the last public coin as e0/e1; blank before any coin.
class EchoCoinProver : public ProverStrategy {
public:
    std::string name() const override { return "echo-coin"; }
    std::string respond(const std::string&, const Transcript& t) const override {
        auto bits = public_coin_history(t);
        if (bits.empty()) return "_";
        return bits.back() ? "e1" : "e0";
    }
};

struct CoupledCounts {
    std::uint64_t v1_len = 0, v2_len = 0;
    std::uint64_t v1_pub = 0, v2_introduced = 0;
    Verdict v1_verdict, v2_verdict;
};

// Mirrors one v1 coin sequence on the privatized machine: inherited private
// coins reuse the v1 private bits, introduced private coins consume the v1
// public bits at the same protocol points.
CoupledCounts couple(const MachineSpec& v1, const PrivatizeResult& pr,
                     const ProverStrategy& p1, const ProverStrategy& p2,
                     const std::string& input, const std::vector<int>& bits,
                     std::uint64_t cap) {
    CoupledCounts out;
    const MachineSpec& v2 = pr.machine;

    size_t cursor = 0;
    auto draw = [&]() { return cursor < bits.size() ? bits[cursor++] : 0; };

    RunState r1 = begin_run(v1, input);
    std::optional<Verdict> d1;
    std::vector<std::pair<int, int>> steps1; // (pri, pub) bits per v1 step
    while (!d1 && r1.steps < cap) {
        int pri = v1.flips_pri(r1.cfg.state) ? draw() : kNoCoin;
        int pub = v1.flips_pub(r1.cfg.state) ? draw() : kNoCoin;
        if (pub != kNoCoin) ++out.v1_pub;
        steps1.push_back({pri, pub});
        d1 = verifier_step_with_bits(v1, r1, pri, pub, p1);
    }
    REQUIRE(d1.has_value());
    out.v1_len = r1.steps;
    out.v1_verdict = *d1;

    RunState r2 = begin_run(v2, input);
    std::optional<Verdict> d2;
    size_t i = 0;
    std::vector<std::uint8_t> rebranded(v2.states.size(), 0), intermediate(v2.states.size(), 0);
    for (StateId q : pr.rebranded) rebranded[static_cast<size_t>(q)] = 1;
    for (StateId q : pr.intermediates) intermediate[static_cast<size_t>(q)] = 1;
    while (!d2 && r2.steps < cap && i < steps1.size()) {
        auto [pri, pub] = steps1[i];
        const StateId q = r2.cfg.state;
        if (intermediate[static_cast<size_t>(q)]) {
            // second half of a split step: feed the public outcome privately
            ++out.v2_introduced;
            d2 = verifier_step_with_bits(v2, r2, pub, kNoCoin, p2);
            ++i;
        } else if (rebranded[static_cast<size_t>(q)]) {
            ++out.v2_introduced;
            d2 = verifier_step_with_bits(v2, r2, pub, kNoCoin, p2);
            ++i;
        } else if (v2.flips_pri(q) && pub != kNoCoin && pri != kNoCoin) {
            // first half of a split step: the original private flip
            d2 = verifier_step_with_bits(v2, r2, pri, kNoCoin, p2);
            // stay on the same v1 step for the second half
        } else {
            d2 = verifier_step_with_bits(v2, r2, pri, kNoCoin, p2);
            ++i;
        }
    }
    REQUIRE(d2.has_value());
    out.v2_len = r2.steps;
    out.v2_verdict = *d2;
    return out;
}

void check_coupled(const MachineSpec& v1, const ProverStrategy& p1, const std::string& input,
                   std::uint64_t horizon) {
    auto pr = privatize_coins(v1);
    REQUIRE(validate(pr.machine).empty());
    auto p1_shared = std::shared_ptr<const ProverStrategy>(&p1, [](const ProverStrategy*) {});
    PrivatizedProverAdapter p2(p1_shared);

    // enumerate every coin sequence the v1 run can consume within the horizon
    std::vector<int> bits;
    std::function<void(size_t)> go = [&](size_t depth) {
        auto c = couple(v1, pr, p1, p2, input, bits, horizon);
        CHECK(c.v1_verdict == c.v2_verdict);
        CHECK(c.v2_len <= 2 * c.v1_len);
        CHECK(c.v2_introduced == c.v1_pub);
        if (depth >= 12) return;
        bits.push_back(0);
        go(depth + 1);
        bits.back() = 1;
        go(depth + 1);
        bits.pop_back();
    };
    // depth-first over prefixes; duplicate leaves only repeat checks
    go(0);
}

} // namespace

TEST_CASE("a public-only flipper privatizes with |Gamma2| = 3|Gamma1|") {
    auto v1 = pub_coin_verifier();
    auto pr = privatize_coins(v1);
    CHECK(validate(pr.machine).empty());
    CHECK(pr.machine.comm_alphabet.size() == 3 * v1.comm_alphabet.size());
    for (size_t q = 0; q < pr.machine.states.size(); ++q)
        CHECK(!pr.machine.flips_pub(static_cast<StateId>(q)));
    CHECK(pr.rebranded.size() == 1);
    CHECK(pr.intermediates.empty());
}

TEST_CASE("a both-coins state splits through buffer states") {
    auto v1 = both_coins_verifier();
    auto pr = privatize_coins(v1);
    CHECK(validate(pr.machine).empty());
    CHECK(pr.intermediates.size() == 2); // (q0, 0) and (q0, 1)
    for (StateId s : pr.intermediates) {
        CHECK(pr.machine.flips_pri(s));
        CHECK(pr.machine.communicates(s));
    }
}

TEST_CASE("exact acceptance is preserved under the translated prover") {
    ConstantProver blank;
    EchoCoinProver echo;

    struct Case {
        MachineSpec v1;
        const ProverStrategy* prover;
    };
    Case cases[] = {{pub_coin_verifier(), &blank},
                    {both_coins_verifier(), &blank},
                    {echo_coin_verifier(), &echo}};
    for (auto& [v1, p1] : cases) {
        auto pr = privatize_coins(v1);
        auto p1_shared =
            std::shared_ptr<const ProverStrategy>(p1, [](const ProverStrategy*) {});
        PrivatizedProverAdapter p2(p1_shared);
        auto e1 = exact_acceptance(v1, *p1, "01", 50);
        auto e2 = exact_acceptance(pr.machine, p2, "01", 100);
        CHECK(e1.p_accept == e2.p_accept);
        CHECK(e1.p_reject == e2.p_reject);
        CHECK(e1.p_alive == 0);
        CHECK(e2.p_alive == 0);
    }
}

TEST_CASE("per-trace: verdicts match, length at most doubles, flips pair up") {
    ConstantProver blank;
    EchoCoinProver echo;
    check_coupled(pub_coin_verifier(), blank, "0", 50);
    check_coupled(both_coins_verifier(), blank, "0", 50);
    check_coupled(echo_coin_verifier(), echo, "10", 50);
}

TEST_CASE("pair symbols decode back to symbol and bit") {
    CHECK(split_pair_symbol("x|1") == std::make_pair(std::string("x"), 1));
    CHECK(split_pair_symbol("_|0") == std::make_pair(std::string("_"), 0));
    CHECK(!split_pair_symbol("plain"));
    CHECK(!split_pair_symbol("x|2"));
}
