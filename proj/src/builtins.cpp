#include "ipsim/builtins.hpp"

#include "ipsim/transforms/clock.hpp"

namespace ipsim {

namespace {

const char* kCoin = R"(kind verifier
states: q0 qacc qrej
initial: q0
input: 0 1
work: _
comm: _
pri: q0
pub:
com:
q0 * * * pri=0 -> qrej _ 0 0
q0 * * * pri=1 -> qacc _ 0 0
)";

const char* kPubCoin = R"(kind verifier
states: q0 qacc qrej
initial: q0
input: 0 1
work: _
comm: _
pri:
pub: q0
com: q0
q0 * * * pub=0 -> qrej _ _ 0 0
q0 * * * pub=1 -> qacc _ _ 0 0
)";

const char* kBothCoins = R"(kind verifier
states: q0 qacc qrej
initial: q0
input: 0 1
work: _
comm: _
pri: q0
pub: q0
com: q0
q0 * * * pri=0 pub=0 -> qacc _ _ 0 0
q0 * * * pri=0 pub=1 -> qrej _ _ 0 0
q0 * * * pri=1 pub=0 -> qrej _ _ 0 0
q0 * * * pri=1 pub=1 -> qacc _ _ 0 0
)";

// Asks for the common first/last symbol, then flips one public coin to pick
// which end to check. Verifies { w : the first and last symbols agree }.
const char* kFirstLast = R"(kind verifier
states: q0 rd c0 c1 f0 f1 l0 l1 lb0 lb1 qacc qrej
initial: q0
input: 0 1
work: _
comm: _ s0 s1
pri:
pub: c0 c1
com: q0 c0 c1
q0 * * * -> rd _ _ 0 0
rd * * s0 -> c0 _ 0 0
rd * * s1 -> c1 _ 0 0
rd * * * -> qrej _ 0 0
c0 * * * pub=0 -> f0 _ _ +1 0
c0 * * * pub=1 -> l0 _ _ +1 0
c1 * * * pub=0 -> f1 _ _ +1 0
c1 * * * pub=1 -> l1 _ _ +1 0
f0 0 * * -> qacc _ 0 0
f0 > * * -> qacc _ 0 0
f0 * * * -> qrej _ 0 0
f1 1 * * -> qacc _ 0 0
f1 > * * -> qacc _ 0 0
f1 * * * -> qrej _ 0 0
l0 > * * -> lb0 _ -1 0
l0 * * * -> l0 _ +1 0
l1 > * * -> lb1 _ -1 0
l1 * * * -> l1 _ +1 0
lb0 0 * * -> qacc _ 0 0
lb0 < * * -> qacc _ 0 0
lb0 * * * -> qrej _ 0 0
lb1 1 * * -> qacc _ 0 0
lb1 < * * -> qacc _ 0 0
lb1 * * * -> qrej _ 0 0
)";

// A two-coin variant: one branch double-checks the claim, one branch asks
// the prover to repeat itself. Exercises nested public flips.
const char* kTwoCoinToy = R"(kind verifier
states: q0 rd c0 c1 d0 d1 f0 f1 l0 l1 lb0 lb1 e0 e1 er0 er1 qacc qrej
initial: q0
input: 0 1
work: _
comm: _ s0 s1
pri:
pub: c0 c1 d0 d1
com: q0 c0 c1 d0 d1 e0 e1
q0 * * * -> rd _ _ 0 0
rd * * s0 -> c0 _ 0 0
rd * * s1 -> c1 _ 0 0
rd * * * -> qrej _ 0 0
c0 * * * pub=0 -> f0 _ _ +1 0
c0 * * * pub=1 -> d0 _ _ 0 0
c1 * * * pub=0 -> f1 _ _ +1 0
c1 * * * pub=1 -> d1 _ _ 0 0
d0 * * * pub=0 -> l0 _ _ +1 0
d0 * * * pub=1 -> e0 _ _ 0 0
d1 * * * pub=0 -> l1 _ _ +1 0
d1 * * * pub=1 -> e1 _ _ 0 0
e0 * * * -> er0 _ _ 0 0
e1 * * * -> er1 _ _ 0 0
er0 * * s0 -> qacc _ 0 0
er0 * * * -> qrej _ 0 0
er1 * * s1 -> qacc _ 0 0
er1 * * * -> qrej _ 0 0
f0 0 * * -> qacc _ 0 0
f0 > * * -> qacc _ 0 0
f0 * * * -> qrej _ 0 0
f1 1 * * -> qacc _ 0 0
f1 > * * -> qacc _ 0 0
f1 * * * -> qrej _ 0 0
l0 > * * -> lb0 _ -1 0
l0 * * * -> l0 _ +1 0
l1 > * * -> lb1 _ -1 0
l1 * * * -> l1 _ +1 0
lb0 0 * * -> qacc _ 0 0
lb0 < * * -> qacc _ 0 0
lb0 * * * -> qrej _ 0 0
lb1 1 * * -> qacc _ 0 0
lb1 < * * -> qacc _ 0 0
lb1 * * * -> qrej _ 0 0
)";

// One hidden guess, one public coin: accept iff (guess matched) xor coin.
// Acceptance probability is exactly 1/2 against every prover.
const char* kGuess = R"(kind verifier
states: q0 g0 g1 hit miss qacc qrej
initial: q0
input: 0 1
work: _
comm: _ a0 a1 !
pri: q0
pub: hit miss
com: q0 hit miss
q0 * * * pri=0 -> g0 _ _ 0 0
q0 * * * pri=1 -> g1 _ _ 0 0
g0 * * a0 -> hit _ 0 0
g0 * * * -> miss _ 0 0
g1 * * a1 -> hit _ 0 0
g1 * * * -> miss _ 0 0
hit * * * pub=0 -> qacc _ ! 0 0
hit * * * pub=1 -> qrej _ ! 0 0
miss * * * pub=0 -> qrej _ ! 0 0
miss * * * pub=1 -> qacc _ ! 0 0
)";

// One private coin: heads accepts immediately, tails loops forever.
const char* kLoopy = R"(kind verifier
states: q0 spin qacc qrej
initial: q0
input: 0 1
work: _
comm: _
pri: q0
pub:
com:
q0 * * * pri=0 -> qacc _ 0 0
q0 * * * pri=1 -> spin _ 0 0
spin * * * -> spin _ 0 0
)";

const char* kZerosOnesKnfa = R"(kind knfa
states: q0 q1 q1z q3 qacc qrej
initial: q0
input: 0 1
heads: 2
q0 < < -> q1 +1 0
q1 > < -> qacc 0 0
q1 0 < -> q1z +1 0
q1z 0 < -> q1z +1 0
q1z 1 < -> q3 0 +1
q3 1 0 -> q3 +1 +1
q3 > 1 -> qacc 0 0
)";

} // namespace

bool in_zeros_ones_language(const std::string& w) {
    size_t i = 0;
    while (i < w.size() && w[i] == '0') ++i;
    size_t zeros = i;
    while (i < w.size() && w[i] == '1') ++i;
    return i == w.size() && w.size() == 2 * zeros;
}

bool in_firstlast_language(const std::string& w) {
    return w.empty() || w.front() == w.back();
}

MultiheadVerifier zeros_ones_multihead() {
    MultiheadVerifier m;
    m.input_alphabet = {"0", "1"};
    m.heads = 2;
    StateId q0 = m.add_state("q0");
    StateId q1 = m.add_state("q1");
    StateId q1z = m.add_state("q1z");
    StateId q3 = m.add_state("q3");
    StateId qacc = m.add_state("qacc");
    StateId qrej = m.add_state("qrej");
    m.initial = q0;
    m.accept = qacc;
    m.reject = qrej;
    const Sym z = 0, o = 1;
    auto mv = [&m](StateId q, Sym a, Sym b, StateId next, int d1, int d2) {
        m.delta[{q, {a, b}, kBlank, kNoCoin}] = {next, std::nullopt, {d1, d2}};
    };
    mv(q0, kLeftEnd, kLeftEnd, q1, +1, 0);
    mv(q1, kRightEnd, kLeftEnd, qacc, 0, 0);
    mv(q1, z, kLeftEnd, q1z, +1, 0);
    mv(q1z, z, kLeftEnd, q1z, +1, 0);
    mv(q1z, o, kLeftEnd, q3, 0, +1);
    mv(q3, o, z, q3, +1, +1);
    mv(q3, kRightEnd, o, qacc, 0, 0);
    return m;
}

MachineSpec zeros_ones_counter_tm() {
    MachineSpec m;
    m.add_input_symbol("0");
    m.add_input_symbol("1");
    const Sym blank = m.add_work_symbol("_");
    const Sym x = m.add_work_symbol("x");
    m.add_comm_symbol("_");

    // counter value v = b0 + 2*b1 + 4*b2 + 8 * (tape bits, cell i = bit i+1);
    // the machine stores a+1 while scanning zeros and counts the ones down
    std::vector<StateId> s(8), t(8);
    for (int b = 0; b < 8; ++b) s[static_cast<size_t>(b)] = m.add_state("s" + std::to_string(b));
    for (int b = 0; b < 8; ++b) t[static_cast<size_t>(b)] = m.add_state("t" + std::to_string(b));
    const StateId ca = m.add_state("ca"), cb = m.add_state("cb"), cw = m.add_state("cw"),
                  cr = m.add_state("cr");
    const StateId da = m.add_state("da"), db = m.add_state("db"), dw = m.add_state("dw"),
                  dr = m.add_state("dr"), df = m.add_state("df");
    const StateId f1 = m.add_state("f1"), f2 = m.add_state("f2"), fw = m.add_state("fw");
    const StateId qacc = m.add_state("qacc"), qrej = m.add_state("qrej");
    m.initial = s[1]; // v = (number of zeros) + 1
    m.accept = qacc;
    m.reject = qrej;

    const Sym zero = 0, one = 1;
    auto entry = [&m](StateId q, Sym in, Sym work, StateId next, Sym write, int di, int dw_) {
        m.delta.emplace(DeltaKey{q, in, work, kBlank, kNoCoin, kNoCoin},
                        DeltaRhs{next, write, std::nullopt, di, dw_});
    };
    auto both_work = [&](StateId q, Sym in, StateId next, int di, int dw_) {
        entry(q, in, blank, next, blank, di, dw_);
        entry(q, in, x, next, x, di, dw_);
    };

    // scanning the zero block: v gains one per '0'
    for (int b = 0; b < 8; ++b) {
        StateId q = s[static_cast<size_t>(b)];
        both_work(q, kLeftEnd, q, +1, 0); // step off the left marker
        if (b < 7)
            both_work(q, zero, s[static_cast<size_t>(b + 1)], +1, 0);
        else
            both_work(q, zero, ca, 0, 0); // carry into the tape bits
        both_work(q, one, t[static_cast<size_t>(b)], 0, 0);
        both_work(q, kRightEnd, b == 1 ? f1 : qrej, 0, 0);
    }

    // carry walk: plant the cell-0 mark and the cell-1 lane on the way out,
    // clear the trailing set bits, set the first clear one, walk home to the
    // mark. The input head waits on the '0' being counted.
    for (Sym in : m.scan_symbols()) {
        entry(ca, in, blank, cb, x, 0, +1);
        entry(ca, in, x, cb, x, 0, +1);
        entry(cb, in, blank, cw, blank, 0, +1);
        entry(cb, in, x, cw, blank, 0, +1); // the lane stays blank
        entry(cw, in, x, cw, blank, 0, +1);
        entry(cw, in, blank, cr, x, 0, -1);
        entry(cr, in, blank, cr, blank, 0, -1);
        entry(cr, in, x, s[0], x, +1, 0); // back on the mark; consume the '0'
    }

    // scanning the one block: v drops one per '1'
    for (int b = 0; b < 8; ++b) {
        StateId q = t[static_cast<size_t>(b)];
        if (b > 0)
            both_work(q, one, t[static_cast<size_t>(b - 1)], +1, 0);
        else
            both_work(q, one, da, 0, 0); // borrow from the tape bits
        both_work(q, zero, qrej, 0, 0);  // not of the shape 0*1*
        both_work(q, kLeftEnd, qrej, 0, 0);
        both_work(q, kRightEnd, b == 1 ? f1 : qrej, 0, 0);
    }

    // borrow walk: the input head mirrors every work move, which bounds the
    // walk by the input position; running into the left input marker means
    // the counter was already zero (more ones than zeros).
    for (Sym in : m.scan_symbols()) {
        if (in == kLeftEnd) {
            entry(da, in, blank, qrej, blank, 0, 0);
            entry(da, in, x, qrej, x, 0, 0);
            entry(db, in, blank, qrej, blank, 0, 0);
            entry(db, in, x, qrej, x, 0, 0);
            entry(dw, in, blank, qrej, blank, 0, 0);
            entry(dw, in, x, qrej, x, 0, 0);
        } else {
            entry(da, in, blank, db, x, -1, +1);
            entry(da, in, x, db, x, -1, +1);
            entry(db, in, blank, dw, blank, -1, +1);
            entry(db, in, x, dw, blank, -1, +1);
            entry(dw, in, blank, dw, x, -1, +1); // trailing zeros borrow
            entry(dw, in, x, dr, blank, +1, -1); // found the bit to take
        }
        entry(dr, in, x, dr, x, +1, -1);
        entry(dr, in, blank, df, blank, +1, -1); // the blank lane at cell 1
        entry(df, in, x, t[7], x, +1, 0);        // home; consume the '1'
        entry(df, in, blank, t[7], blank, +1, 0);
    }

    // final check: v == 1 means the two block lengths matched; the tape scan
    // walks the input head toward the left marker as its step budget
    for (Sym in : m.scan_symbols()) {
        entry(f1, in, blank, f2, blank, -1, +1);
        entry(f1, in, x, f2, x, -1, +1);
        if (in == kLeftEnd) {
            entry(f2, in, blank, qacc, blank, 0, 0);
            entry(f2, in, x, qacc, x, 0, 0);
            entry(fw, in, blank, qacc, blank, 0, 0);
            entry(fw, in, x, qacc, x, 0, 0);
        } else {
            entry(f2, in, blank, fw, blank, -1, +1);
            entry(f2, in, x, fw, x, -1, +1);
            entry(fw, in, blank, fw, blank, -1, +1);
            entry(fw, in, x, qrej, x, 0, 0); // a surviving counter bit
        }
    }

    return m;
}

std::vector<BuiltinInfo> list_builtins() {
    return {
        {"coin", "verifier", "one private coin: accept on heads"},
        {"pubcoin", "verifier", "one public coin: accept on heads"},
        {"bothcoins", "verifier", "private and public coin in one state; accept iff equal"},
        {"guess", "verifier",
         "hidden coin, prover guess, public xor; acceptance exactly 1/2"},
        {"loopy", "verifier", "private coin: heads accepts, tails loops forever"},
        {"firstlast", "verifier",
         "one public coin; verifies that the first and last symbols agree"},
        {"twocoin-toy", "verifier", "two public coins over branch-dependent checks"},
        {"clock-t1", "verifier", "alarm clock, t=1 c=2 n0=4: deterministic runtime"},
        {"clock-t2", "verifier", "alarm clock, t=2 c=1 n0=2: random-walk runtime"},
        {"zeros-ones-tm", "verifier",
         "deterministic binary-counter machine for 0^m 1^m (no coins, no prover)"},
        {"zeros-ones-knfa", "knfa", "two-head automaton for 0^m 1^m"},
        {"zeros-ones-mh", "multihead", "two-head deterministic verifier for 0^m 1^m"},
    };
}

std::optional<ParsedMachine> builtin_machine(const std::string& name) {
    if (name == "coin") return parse_machine(kCoin);
    if (name == "pubcoin") return parse_machine(kPubCoin);
    if (name == "bothcoins") return parse_machine(kBothCoins);
    if (name == "guess") return parse_machine(kGuess);
    if (name == "loopy") return parse_machine(kLoopy);
    if (name == "firstlast") return parse_machine(kFirstLast);
    if (name == "twocoin-toy") return parse_machine(kTwoCoinToy);
    if (name == "zeros-ones-tm") return ParsedMachine(zeros_ones_counter_tm());
    if (name == "zeros-ones-knfa") return parse_machine(kZerosOnesKnfa);
    if (name == "clock-t1") return ParsedMachine(build_poly_clock({1, 2, 4}));
    if (name == "clock-t2") return ParsedMachine(build_poly_clock({2, 1, 2}));
    return std::nullopt;
}

std::optional<MultiheadVerifier> builtin_multihead(const std::string& name) {
    if (name == "zeros-ones-mh") return zeros_ones_multihead();
    return std::nullopt;
}

} // namespace ipsim
