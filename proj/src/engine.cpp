#include "ipsim/engine.hpp"

namespace ipsim {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::cutoff: return "cutoff";
    }
    return "?";
}

RunState begin_run(const MachineSpec& spec, const std::string& input) {
    RunState rs;
    rs.input = input;
    rs.input_syms = encode_input(spec, input);
    rs.cfg = initial_configuration(spec, input);
    return rs;
}

std::optional<Verdict> verifier_step_with_bits(const MachineSpec& spec, RunState& rs,
                                               int pri_bit, int pub_bit,
                                               const ProverStrategy& prover) {
    const StateId q = rs.cfg.state;
    if (spec.is_halting(q))
        throw MachineError("verifier_step on a halted configuration");

    const bool has_pri = spec.flips_pri(q);
    const bool has_pub = spec.flips_pub(q);
    if (has_pri != (pri_bit != kNoCoin) || has_pub != (pub_bit != kNoCoin))
        throw MachineError("coin bits do not match the role flags of state " +
                           spec.state_name(q));

    ++rs.steps;
    if (has_pri) ++rs.pri_used;
    if (has_pub) {
        ++rs.pub_used;
        // the outcome is communicated to the prover at the flip
        rs.transcript.push_back({EventKind::public_coin, "", pub_bit, rs.steps});
    }

    const Sym sigma = rs.scanned_input();
    const Sym phi = rs.cfg.work_at(rs.cfg.work_pos);
    const Sym gamma = rs.cfg.comm_cell;
    DeltaKey key{q, sigma, phi, gamma, pri_bit, pub_bit};
    auto it = spec.delta.find(key);
    if (it == spec.delta.end())
        throw MachineError("missing delta entry for (" + spec.state_name(q) + ", " +
                           spec.input_name(sigma) + ", " + spec.work_name(phi) + ", " +
                           spec.comm_name(gamma) + ") - spec not validated?");
    const DeltaRhs& rhs = it->second;

    rs.cfg.work_write(rs.cfg.work_pos, rhs.work_write);
    if (spec.communicates(q)) {
        rs.cfg.comm_cell = *rhs.comm_write;
        rs.transcript.push_back(
            {EventKind::verifier_write, spec.comm_name(*rhs.comm_write), 0, rs.steps});
        const std::string answer = prover.respond(rs.input, rs.transcript);
        Sym ans = spec.comm_id(answer);
        if (ans < 0)
            throw MachineError("prover '" + prover.name() + "' wrote '" + answer +
                               "', which is not in Gamma");
        rs.cfg.comm_cell = ans;
        rs.transcript.push_back({EventKind::prover_write, answer, 0, rs.steps});
    }

    const long new_in = rs.cfg.input_pos + rhs.d_in;
    const long new_work = rs.cfg.work_pos + rhs.d_work;

    if (rhs.next == spec.accept) return Verdict::accept;
    if (rhs.next == spec.reject) return Verdict::reject;
    if (new_in < 0 || new_in > static_cast<long>(rs.input_syms.size()) + 1)
        return Verdict::reject; // input head left the marked region
    if (new_work < 0) return Verdict::reject; // work head fell off the left end

    rs.cfg.state = rhs.next;
    rs.cfg.input_pos = new_in;
    rs.cfg.work_pos = new_work;
    return std::nullopt;
}

std::optional<Verdict> verifier_step(const MachineSpec& spec, RunState& rs,
                                     CoinSource& coins, const ProverStrategy& prover) {
    const StateId q = rs.cfg.state;
    const int pri_bit = spec.flips_pri(q) ? coins.flip() : kNoCoin;
    const int pub_bit = spec.flips_pub(q) ? coins.flip() : kNoCoin;
    return verifier_step_with_bits(spec, rs, pri_bit, pub_bit, prover);
}

TrialOutcome run_trial(const MachineSpec& spec, const ProverStrategy& prover,
                       const std::string& input, CoinSource coins, std::uint64_t cutoff) {
    if (cutoff < 1) throw MachineError("cutoff must be at least 1");
    RunState rs = begin_run(spec, input);

    TrialOutcome out;
    if (spec.is_halting(rs.cfg.state)) {
        out.verdict = rs.cfg.state == spec.accept ? Verdict::accept : Verdict::reject;
        return out;
    }
    while (rs.steps < cutoff) {
        auto verdict = verifier_step(spec, rs, coins, prover);
        if (verdict) {
            out.verdict = *verdict;
            out.steps = rs.steps;
            out.private_coins_used = rs.pri_used;
            out.public_coins_used = rs.pub_used;
            out.transcript = std::move(rs.transcript);
            return out;
        }
    }
    out.verdict = Verdict::cutoff;
    out.steps = cutoff;
    out.private_coins_used = rs.pri_used;
    out.public_coins_used = rs.pub_used;
    out.transcript = std::move(rs.transcript);
    return out;
}

} // namespace ipsim
