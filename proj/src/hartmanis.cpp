#include "ipsim/transforms/hartmanis.hpp"

#include <algorithm>

namespace ipsim {

HeadWalk halve_walk(long x) {
    HeadWalk w{0, 0};
    long walker = x, aux = 0;
    for (long s = 1; s <= x; ++s) {
        --walker;
        if (s % 2 == 0) ++aux;
        ++w.steps;
    }
    w.index = aux; // identities swap afterwards
    return w;
}

HeadWalk double_walk(long x) {
    HeadWalk w{0, 0};
    long walker = x, aux = 0;
    for (long s = 1; s <= 2 * x; ++s) {
        ++aux;
        if (s % 2 == 0) --walker;
        ++w.steps;
    }
    w.index = aux;
    return w;
}

HartmanisMachine::HartmanisMachine(MachineSpec tm, int c) : tm_(std::move(tm)), c_(c) {
    if (c < 1 || c > 20) throw MachineError("head encoding wants 1 <= c <= 20");
    if (tm_.work_alphabet.size() > (1u << c))
        throw MachineError("work alphabet needs more than 2^c codes");
    for (size_t q = 0; q < tm_.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (tm_.flips_pri(id) || tm_.flips_pub(id) || tm_.communicates(id))
            throw MachineError("head encoding wants a deterministic machine with no "
                               "coins and no communication");
    }
}

std::uint64_t HartmanisMachine::per_step_bound(std::uint64_t n) const {
    const std::uint64_t cc = static_cast<std::uint64_t>(c_);
    return ((4 * cc + 3) * n + 1) / 2 + 2 * cc + 2;
}

HartmanisMachine::Report HartmanisMachine::execute(const std::string& input,
                                                   std::uint64_t max_tm_steps) const {
    Report rep;
    const auto w = encode_input(tm_, input);
    const long n = static_cast<long>(w.size());

    // heads: 0..c-1 tracks, then alpha, beta, gamma, delta, epsilon
    std::vector<long> pos(static_cast<size_t>(c_) + 5, 0);
    const size_t alpha = static_cast<size_t>(c_), beta = alpha + 1, gamma = beta + 1,
                 delta_h = gamma + 1, eps = delta_h + 1;

    // the simulated machine's configuration, tracked for cross-checking
    StateId state = tm_.initial;
    std::vector<Sym> tape;
    long work_pos = 0, input_pos = 0;

    auto tape_at = [&](long p) -> Sym {
        return (p >= 0 && static_cast<size_t>(p) < tape.size()) ? tape[static_cast<size_t>(p)]
                                                                : kBlank;
    };
    auto scan_input = [&]() -> Sym {
        if (input_pos == 0) return kLeftEnd;
        if (input_pos == n + 1) return kRightEnd;
        return w[static_cast<size_t>(input_pos - 1)];
    };
    auto track_value = [&](int i) {
        long v = 0;
        for (size_t j = 0; j < tape.size(); ++j)
            if ((tape[j] >> i) & 1) v += 1l << j;
        return v;
    };

    auto halve = [&](size_t head, size_t aux, bool mirror_eps) {
        long x = pos[head];
        for (long s = 1; s <= x; ++s) {
            --pos[head];
            if (s % 2 == 0) ++pos[aux];
            if (mirror_eps) ++pos[eps];
            ++rep.steps;
        }
        std::swap(pos[head], pos[aux]);
    };
    auto double_eps = [&](size_t aux) {
        long x = pos[eps];
        for (long s = 1; s <= 2 * x; ++s) {
            ++pos[aux];
            if (s % 2 == 0) --pos[eps];
            ++rep.steps;
        }
        std::swap(pos[eps], pos[aux]);
    };

    while (rep.tm_steps < max_tm_steps) {
        if (tm_.is_halting(state)) {
            rep.verdict = state == tm_.accept ? Verdict::accept : Verdict::reject;
            break;
        }
        ++rep.tm_steps;

        // sensing: input symbol via h_alpha, work symbol decoded from the
        // track heads by truncating b low bits and reading the parity
        const Sym sigma = scan_input();
        const long b = pos[beta];
        int code = 0;
        for (int i = 0; i < c_; ++i) {
            const size_t tr = static_cast<size_t>(i);
            for (long k = 0; k < b; ++k) {
                halve(tr, delta_h, k == 0);
                --pos[beta]; // paced by the beta walk, gamma mirrors
                ++pos[gamma];
            }
            long y = pos[tr];
            for (long s = 1; s <= y; ++s) {
                --pos[tr];
                if (b == 0) ++pos[eps]; // keep the original index recoverable
                ++rep.steps;
            }
            if (y & 1) code |= 1 << i;
            std::swap(pos[tr], pos[eps]);
            std::swap(pos[beta], pos[gamma]);
            if (pos[gamma] != 0 || pos[delta_h] != 0 || pos[eps] != 0)
                rep.aux_at_zero_after_each_cycle = false;
        }
        if (code != tape_at(work_pos)) rep.encoding_consistent = false;

        const Sym phi = static_cast<Sym>(code);
        auto it = tm_.delta.find(DeltaKey{state, sigma, phi, kBlank, kNoCoin, kNoCoin});
        if (it == tm_.delta.end())
            throw MachineError("missing delta entry while simulating the machine");
        const DeltaRhs& rhs = it->second;

        // acting: shift every changed track by 2^b
        const Sym phi2 = rhs.work_write;
        if (phi2 != phi) {
            ++pos[eps];
            ++rep.steps;
            const long b2 = pos[beta];
            for (long k = 0; k < b2; ++k) {
                double_eps(delta_h);
                --pos[beta];
                ++pos[gamma];
            }
            std::swap(pos[beta], pos[gamma]);
            const long shift = pos[eps]; // 2^b
            for (long s = 1; s <= shift; ++s) {
                --pos[eps];
                for (int i = 0; i < c_; ++i) {
                    int ob = (phi >> i) & 1, nb = (phi2 >> i) & 1;
                    if (ob != nb) pos[static_cast<size_t>(i)] += nb ? 1 : -1;
                }
                ++rep.steps;
            }
        } else {
            ++rep.steps; // bare state/head update
        }
        if (pos[gamma] != 0 || pos[delta_h] != 0 || pos[eps] != 0)
            rep.aux_at_zero_after_each_cycle = false;

        // the simulated machine's own bookkeeping
        if (static_cast<size_t>(work_pos) >= tape.size() && phi2 != kBlank)
            tape.resize(static_cast<size_t>(work_pos) + 1, kBlank);
        if (static_cast<size_t>(work_pos) < tape.size())
            tape[static_cast<size_t>(work_pos)] = phi2;
        const long new_input = input_pos + rhs.d_in;
        const long new_work = work_pos + rhs.d_work;
        pos[alpha] += rhs.d_in;
        pos[beta] += rhs.d_work;

        if (rhs.next == tm_.accept) {
            rep.verdict = Verdict::accept;
            break;
        }
        if (rhs.next == tm_.reject || new_input < 0 || new_input > n + 1 || new_work < 0) {
            rep.verdict = Verdict::reject;
            break;
        }
        // heads live on the input tape, so the simulated machine must keep
        // its work head and every track value within [0, n+1]
        if (new_work > n + 1)
            throw MachineError("machine work head left the head-encodable region");
        state = rhs.next;
        input_pos = new_input;
        work_pos = new_work;

        // encoding invariant: head indices match the track contents
        for (int i = 0; i < c_; ++i) {
            if (pos[static_cast<size_t>(i)] > n + 1)
                throw MachineError("track value outgrew the input tape; the machine is "
                                   "not within the log-space budget");
            if (pos[static_cast<size_t>(i)] != track_value(i)) rep.encoding_consistent = false;
        }
        if (pos[alpha] != input_pos || pos[beta] != work_pos) rep.encoding_consistent = false;
    }

    rep.final_positions = pos;
    return rep;
}

TrialOutcome HartmanisMachine::run(const std::string& input, const ProverStrategy&,
                                   CoinSource, std::uint64_t cutoff) const {
    Report rep = execute(input, cutoff);
    TrialOutcome out;
    out.verdict = rep.verdict;
    out.steps = rep.steps;
    return out;
}

} // namespace ipsim
