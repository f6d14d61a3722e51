#include "ipsim/transforms/clock.hpp"

#include <cmath>

namespace ipsim {

void ClockParams::check() const {
    if (t < 1 || c < 1 || n0 < 1)
        throw MachineError("clock parameters want t >= 1, c >= 1, n0 >= 1");
}

ClockParams ClockParams::for_error(int t, int c, double eps) {
    if (!(eps > 0.0) || eps >= 1.0)
        throw MachineError("premature-halt target must be in (0,1)");
    ClockParams p;
    p.t = t;
    p.c = c;
    p.n0 = static_cast<std::uint64_t>(std::floor(1.0 / eps)) + 1;
    p.check();
    return p;
}

std::uint64_t clock_runtime_t1(const ClockParams& p, std::uint64_t n) {
    return 2 * p.n0 + static_cast<std::uint64_t>(p.c) * n + 2;
}

std::uint64_t clock_runtime_short(const ClockParams& p, std::uint64_t n) {
    return n + 2 + p.f(n);
}

double clock_expected_runtime(const ClockParams& p, std::uint64_t n) {
    double batches = std::pow(static_cast<double>(n) + 1.0, p.t);
    return p.t * batches * (p.c * static_cast<double>(n) + 2.0) +
           2.0 * static_cast<double>(p.n0) + 1.0;
}

bool clock_is_walk_flip_state(const MachineSpec& clock, StateId q) {
    return clock.state_name(q).rfind("wlk", 0) == 0;
}

namespace {

struct Builder {
    MachineSpec m;
    Sym blank_work = kBlank, blank_comm = kBlank;

    StateId state(const std::string& name) { return m.add_state(name); }

    // Total entry for one scanned input symbol (work/comm alphabets are
    // singleton blanks here); duplicates both coin values when pri is set.
    void entry(StateId q, Sym in, StateId next, int d_in, bool pri_role) {
        DeltaRhs rhs{next, blank_work, std::nullopt, d_in, 0};
        if (pri_role) {
            m.delta.emplace(DeltaKey{q, in, blank_work, blank_comm, 0, kNoCoin}, rhs);
            m.delta.emplace(DeltaKey{q, in, blank_work, blank_comm, 1, kNoCoin}, rhs);
        } else {
            m.delta.emplace(DeltaKey{q, in, blank_work, blank_comm, kNoCoin, kNoCoin}, rhs);
        }
    }
    void entry_all(StateId q, StateId next, int d_in) {
        for (Sym in : m.scan_symbols()) entry(q, in, next, d_in, false);
    }
};

} // namespace

MachineSpec build_poly_clock(const ClockParams& p) {
    p.check();
    Builder b;
    b.m.add_input_symbol("0");
    b.m.add_input_symbol("1");
    b.m.add_work_symbol("_");
    b.m.add_comm_symbol("_");

    const std::uint64_t n0 = p.n0;
    const Sym right = kRightEnd;
    const Sym left = kLeftEnd;

    // states are created up front so transitions can reference them
    std::vector<StateId> chk(n0 + 1);
    for (std::uint64_t j = 0; j <= n0; ++j) b.state("chk" + std::to_string(j));
    const StateId qacc = b.state("qacc");
    const StateId qrej = b.state("qrej");
    for (std::uint64_t j = 0; j <= n0; ++j) chk[j] = b.m.state_id("chk" + std::to_string(j));
    b.m.initial = chk[0];
    b.m.accept = qacc;
    b.m.reject = qrej;

    // stall chains for n < n0: detection step, then f(n) pause steps
    std::vector<StateId> stall_entry(n0, qacc); // f(n)==0: straight to accept
    std::uint64_t total_stall = 0;
    for (std::uint64_t n = 0; n < n0; ++n) total_stall += p.f(n);
    if (total_stall > 2'000'000)
        throw MachineError("clock stall stage would need too many states; lower n0 or t");
    for (std::uint64_t n = 0; n < n0; ++n) {
        const std::uint64_t fn = p.f(n);
        StateId down = qacc;
        for (std::uint64_t k = 1; k <= fn; ++k) {
            StateId s = b.state("stall_" + std::to_string(n) + "_" + std::to_string(k));
            b.entry_all(s, down, 0);
            down = s;
        }
        stall_entry[n] = down;
    }

    // check phase: chk_j reads position j
    b.entry_all(chk[0], chk[1], +1);
    StateId after_check; // state entered on the move to position n0+1
    if (p.t == 1) {
        after_check = b.state("ret" + std::to_string(n0));
    } else {
        after_check = b.state("rst0");
    }
    for (std::uint64_t j = 1; j <= n0; ++j) {
        for (Sym in : b.m.scan_symbols()) {
            if (in == right) {
                b.entry(chk[j], in, stall_entry[j - 1], 0, false);
            } else {
                StateId next = (j < n0) ? chk[j + 1] : after_check;
                b.entry(chk[j], in, next, +1, false);
            }
        }
    }

    if (p.t == 1) {
        // return phase: n0 blind left moves, then the sweep
        const StateId swp = b.state("swp");
        StateId target = swp;
        std::vector<StateId> ret(n0 + 1);
        for (std::uint64_t k = 1; k <= n0; ++k)
            ret[k] = (k == n0) ? after_check : b.state("ret" + std::to_string(k));
        for (std::uint64_t k = 1; k <= n0; ++k)
            b.entry_all(ret[k], k > 1 ? ret[k - 1] : target, -1);

        // sweep: dwell c steps per symbol, halt on reading the right marker
        StateId back = swp;
        if (p.c > 1) {
            StateId next = swp;
            for (int k = 1; k <= p.c - 1; ++k) {
                StateId s = b.state("swpp" + std::to_string(k));
                b.entry_all(s, next, k == 1 ? +1 : 0);
                next = s;
            }
            // swpp_{c-1} ... swpp_1; swpp_1 performs the move
            back = next;
        }
        for (Sym in : b.m.scan_symbols()) {
            if (in == right)
                b.entry(swp, in, qacc, 0, false);
            else
                b.entry(swp, in, p.c == 1 ? swp : back, p.c == 1 ? +1 : 0, false);
        }
        return b.m;
    }

    // t >= 2: walk batches
    const int t = p.t;
    auto wlk_name = [](int i, int a) {
        return "wlk" + std::to_string(i) + "_" + std::to_string(a);
    };
    auto rst_name = [](int i, int a) {
        return "rst" + std::to_string(i) + "_" + std::to_string(a);
    };
    for (int i = 1; i <= t; ++i)
        for (int a = 0; a <= 1; ++a) b.state(wlk_name(i, a));
    b.state(rst_name(1, 1));
    for (int i = 2; i <= t; ++i)
        for (int a = 0; a <= 1; ++a) b.state(rst_name(i, a));

    auto wlk = [&](int i, int a) { return b.m.state_id(wlk_name(i, a)); };
    auto rst = [&](int i, int a) { return b.m.state_id(rst_name(i, a)); };

    // first reset: seek the left marker, then step onto position 1
    const StateId rst0 = after_check;
    for (Sym in : b.m.scan_symbols())
        b.entry(rst0, in, in == left ? wlk(1, 1) : rst0, in == left ? +1 : -1, false);

    for (int i = 1; i <= t; ++i)
        for (int a = 0; a <= 1; ++a) {
            const StateId q = wlk(i, a);
            b.m.pri[static_cast<size_t>(q)] = 1;

            // pause chain shared per (i, a)
            StateId after_move = q;
            if (p.c > 1) {
                StateId next = q;
                for (int k = 1; k <= p.c - 1; ++k) {
                    StateId s = b.state("wps" + std::to_string(i) + "_" + std::to_string(a) +
                                        "_" + std::to_string(k));
                    b.entry_all(s, next, 0);
                    next = s;
                }
                after_move = next;
            }

            for (Sym in : b.m.scan_symbols()) {
                if (in == left) {
                    // walk ended at the left marker; the same step re-enters
                    StateId next = (i < t) ? wlk(i + 1, 0) : wlk(1, 1);
                    b.entry(q, in, next, +1, true);
                } else if (in == right) {
                    if (i < t) {
                        b.entry(q, in, rst(i + 1, a), -1, true);
                    } else if (a == 1) {
                        b.entry(q, in, qacc, -1, true); // terminating batch
                    } else {
                        b.entry(q, in, rst(1, 1), -1, true);
                    }
                } else {
                    // coin 0: step left, coin 1: step right, then c-1 pauses
                    DeltaRhs l{after_move, kBlank, std::nullopt, -1, 0};
                    DeltaRhs r{after_move, kBlank, std::nullopt, +1, 0};
                    b.m.delta.emplace(DeltaKey{q, in, kBlank, kBlank, 0, kNoCoin}, l);
                    b.m.delta.emplace(DeltaKey{q, in, kBlank, kBlank, 1, kNoCoin}, r);
                }
            }
        }

    for (int i = 1; i <= t; ++i)
        for (int a = 0; a <= 1; ++a) {
            if (i == 1 && a == 0) continue;
            const StateId q = rst(i, a);
            for (Sym in : b.m.scan_symbols())
                b.entry(q, in, in == left ? wlk(i, a) : q, in == left ? +1 : -1, false);
        }

    return b.m;
}

} // namespace ipsim
