#include <doctest.h>

#include "ipsim/parse.hpp"

using namespace ipsim;

TEST_CASE("smallest legal machine: one transition on the left endmarker") {
    auto parsed = parse_machine(R"(kind verifier
states: q0 qacc qrej
initial: q0
input:
work:
comm:
pri:
pub:
com:
q0 < _ _ -> qacc _ 0 0
)");
    const auto& m = std::get<MachineSpec>(parsed);
    CHECK(m.states.size() == 3);
    CHECK(m.delta.size() == 1);
    CHECK(m.accept == m.state_id("qacc"));
    CHECK(m.reject == m.state_id("qrej"));
}

TEST_CASE("a public state outside com: is rejected at parse time") {
    CHECK_THROWS_WITH_AS(parse_machine(R"(kind verifier
states: q0 qacc qrej
initial: q0
input: 0
work:
comm:
pri:
pub: q0
com:
)"),
                         doctest::Contains("public state must communicate"), ParseError);
}

TEST_CASE("duplicate delta entries are rejected") {
    CHECK_THROWS_WITH_AS(parse_machine(R"(kind verifier
states: q0 qacc qrej
initial: q0
input:
work:
comm:
pri:
pub:
com:
q0 < _ _ -> qacc _ 0 0
q0 < _ _ -> qrej _ 0 0
)"),
                         doctest::Contains("duplicate delta entry"), ParseError);
}

TEST_CASE("wildcards expand and explicit entries take precedence") {
    auto parsed = parse_machine(R"(kind verifier
states: q0 qacc qrej
initial: q0
input: 0 1
work:
comm:
pri:
pub:
com:
q0 * _ _ -> q0 _ +1 0
q0 > _ _ -> qacc _ 0 0
)");
    const auto& m = std::get<MachineSpec>(parsed);
    // scan symbols: 0, 1, <, > -> four entries total
    CHECK(m.delta.size() == 4);
    DeltaKey at_end{0, kRightEnd, kBlank, kBlank, kNoCoin, kNoCoin};
    CHECK(m.delta.at(at_end).next == m.accept);
    DeltaKey at_zero{0, m.input_id("0"), kBlank, kBlank, kNoCoin, kNoCoin};
    CHECK(m.delta.at(at_zero).next == 0);
    CHECK(validate(m).empty());
}

TEST_CASE("syntax errors carry line numbers") {
    try {
        parse_machine("kind verifier\nstates: q0 qacc qrej\ninitial: q0\nbogus line here\n");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("unknown state references are rejected") {
    CHECK_THROWS_WITH_AS(parse_machine(R"(kind verifier
states: q0 qacc qrej
initial: q0
input:
work:
comm:
pri:
pub:
com:
q0 < _ _ -> nowhere _ 0 0
)"),
                         doctest::Contains("unknown state"), ParseError);
}

TEST_CASE("serializer and parser are inverse on validated specs") {
    const std::string text = R"(kind verifier
states: q0 q1 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _ m
comm: _ g
pri: q0
pub: q1
com: q1
q0 * * * pri=0 -> q1 _ +1 0
q0 * * * pri=1 -> qr _ 0 0
q1 * * * pub=0 -> qa _ g 0 0
q1 * * * pub=1 -> qr _ _ 0 0
)";
    auto m = std::get<MachineSpec>(parse_machine(text));
    REQUIRE(validate(m).empty());
    std::string canonical = serialize_machine(m);
    auto m2 = std::get<MachineSpec>(parse_machine(canonical));
    CHECK(m.states == m2.states);
    CHECK(m.input_alphabet == m2.input_alphabet);
    CHECK(m.work_alphabet == m2.work_alphabet);
    CHECK(m.comm_alphabet == m2.comm_alphabet);
    CHECK(m.pri == m2.pri);
    CHECK(m.pub == m2.pub);
    CHECK(m.com == m2.com);
    CHECK(m.delta == m2.delta);
    // canonical form is a fixpoint
    CHECK(serialize_machine(m2) == canonical);
}

TEST_CASE("knfa documents parse with per-head scan tuples") {
    auto parsed = parse_machine(R"(kind knfa
states: q0 q1 qacc qrej
initial: q0
input: 0 1
heads: 2
q0 < < -> q1 +1 0
q1 > < -> qacc 0 0
q1 0 < -> q1 +1 0
)");
    const auto& m = std::get<KnfaSpec>(parsed);
    CHECK(m.heads == 2);
    CHECK(validate_knfa(m).empty());
    auto round = std::get<KnfaSpec>(parse_machine(serialize_machine(m)));
    CHECK(round.delta == m.delta);
}

TEST_CASE("2afa documents need an exhaustive exists/forall partition") {
    const std::string good = R"(kind 2afa
states: q0 u qacc qrej
initial: q0
input: 0
exists: q0
forall: u
q0 < -> u +1
u 0 -> qacc 0
u 0 -> qrej 0
)";
    auto m = std::get<TafaSpec>(parse_machine(good));
    CHECK(validate_tafa(m).empty());
    CHECK(m.universal[static_cast<size_t>(m.state_id("u"))] == 1);
    auto round = std::get<TafaSpec>(parse_machine(serialize_machine(m)));
    CHECK(round.delta == m.delta);

    CHECK_THROWS_WITH_AS(parse_machine(R"(kind 2afa
states: q0 u qacc qrej
initial: q0
input: 0
exists: q0
forall:
)"),
                         doctest::Contains("exactly one of exists:/forall:"), ParseError);
}
