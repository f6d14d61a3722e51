#include <doctest.h>

#include "ipsim/machine.hpp"
#include "ipsim/parse.hpp"

using namespace ipsim;

namespace {

MachineSpec fair_coin() {
    auto parsed = parse_machine(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri: q0
pub:
com:
q0 * * * pri=0 -> qr _ 0 0
q0 * * * pri=1 -> qa _ 0 0
)");
    return std::get<MachineSpec>(parsed);
}

} // namespace

TEST_CASE("count_configurations matches the closed form") {
    MachineSpec m;
    m.add_state("a");
    m.add_state("b");
    m.add_state("qacc");
    m.add_state("qrej");
    m.accept = 2;
    m.reject = 3;
    m.add_work_symbol("_");
    m.add_comm_symbol("_");
    m.add_comm_symbol("x");
    // |Q|=4, n=3, s=0, |Phi|=1, |Gamma|=2 -> 4*5*1*1*2
    CHECK(count_configurations(m, 3, 0) == 40);

    MachineSpec m2;
    m2.add_state("a");
    m2.add_state("b");
    m2.accept = 0;
    m2.reject = 1;
    m2.add_work_symbol("_");
    m2.add_work_symbol("w");
    m2.add_comm_symbol("_");
    // |Q|=2, n=0, s=1, |Phi|=2, |Gamma|=1 -> 2*2*2*2*1
    CHECK(count_configurations(m2, 0, 1) == 16);
}

TEST_CASE("count_configurations is monotone in each argument") {
    auto m = fair_coin();
    for (std::uint64_t n = 0; n < 6; ++n)
        for (std::uint64_t s = 0; s < 4; ++s) {
            CHECK(count_configurations(m, n, s) < count_configurations(m, n + 1, s));
            CHECK(count_configurations(m, n, s) < count_configurations(m, n, s + 1));
        }
}

TEST_CASE("validate accepts the fair-coin verifier") {
    auto m = fair_coin();
    CHECK(validate(m).empty());
    CHECK(is_constant_space(m));
}

TEST_CASE("validate flags a coin-flipping halting state") {
    auto m = fair_coin();
    m.pri[static_cast<size_t>(m.accept)] = 1;
    auto v = validate(m);
    REQUIRE(!v.empty());
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("halting state flips coins") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate flags a public state outside Q_com") {
    auto m = fair_coin();
    m.pub[0] = 1; // q0 now flips public coins but never communicates
    auto v = validate(m);
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("public state must communicate") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("validate flags a Q_pri entry missing the private bit") {
    auto m = fair_coin();
    // Re-shape one entry to drop its private bit.
    DeltaKey bad{0, kLeftEnd, kBlank, kBlank, kNoCoin, kNoCoin};
    m.delta.emplace(bad, DeltaRhs{m.accept, kBlank, std::nullopt, 0, 0});
    auto v = validate(m);
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("missing the private-bit argument") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("validate flags a non-total delta") {
    auto m = fair_coin();
    DeltaKey k{0, kLeftEnd, kBlank, kBlank, 0, kNoCoin};
    m.delta.erase(k);
    auto v = validate(m);
    bool found = false;
    for (const auto& viol : v)
        if (viol.message.find("delta is not total") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("initial_configuration starts on the left endmarker") {
    auto m = fair_coin();
    auto cfg = initial_configuration(m, "01");
    CHECK(cfg.state == m.initial);
    CHECK(cfg.input_pos == 0);
    CHECK(cfg.work_pos == 0);
    CHECK(cfg.comm_cell == kBlank);
    CHECK(cfg.work_tape.empty());

    auto empty_cfg = initial_configuration(m, "");
    CHECK(empty_cfg.input_pos == 0);

    CHECK_THROWS_AS(initial_configuration(m, "0x1"), MachineError);
}

TEST_CASE("work tape trims trailing blanks so configurations compare structurally") {
    Configuration a, b;
    a.work_write(3, kBlank);
    CHECK(a == b);
    a.work_write(2, 1);
    CHECK(a != b);
    b.work_write(2, 1);
    CHECK(a == b);
    CHECK(a.work_at(17) == kBlank);
}
