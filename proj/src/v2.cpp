#include "ipsim/transforms/v2.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ipsim {

void V2Params::check() const {
    if (r < 0 || r > 10) throw MachineError("v2 wants 0 <= r <= 10");
    if (f_n < 1) throw MachineError("v2 wants f_n >= 1");
    BigInt expect = 1;
    for (int i = 0; i < sim_count(); ++i) expect *= f_n;
    if (g_n != expect) throw MachineError("v2 wants g_n = f_n^(2^r) exactly");
}

V2Params V2Params::derive(const MachineSpec& v1, std::uint64_t n, std::uint64_t s, int r,
                          TickParams tick) {
    V2Params p;
    p.r = r;
    p.tick = tick;
    std::vector<int> bits(static_cast<size_t>(r), 0);
    p.f_n = count_configurations(hardwire_private_coins(v1, bits), n, s);
    p.g_n = 1;
    for (int i = 0; i < p.sim_count(); ++i) p.g_n *= p.f_n;
    p.check();
    return p;
}

const char* sim_label_name(SimLabel label) {
    switch (label) {
    case SimLabel::running: return "running";
    case SimLabel::waiting_comm: return "waiting_comm";
    case SimLabel::waiting_coin: return "waiting_coin";
    case SimLabel::halted_accept: return "halted_accept";
    case SimLabel::halted_reject: return "halted_reject";
    case SimLabel::looping: return "looping";
    }
    return "?";
}

MachineSpec hardwire_private_coins(const MachineSpec& v1, const std::vector<int>& bits) {
    MachineSpec m;
    m.input_alphabet = v1.input_alphabet;
    m.work_alphabet = v1.work_alphabet;
    m.comm_alphabet = v1.comm_alphabet;

    auto postfix_name = [&](size_t from) {
        std::string pi;
        for (size_t i = from; i < bits.size(); ++i) pi += static_cast<char>('0' + bits[i]);
        return pi.empty() ? std::string("-") : pi;
    };

    // states (q, postfix) for non-halting q; unique halting states
    const size_t levels = bits.size() + 1; // postfix lengths r .. 0
    std::vector<std::vector<StateId>> at(v1.states.size(),
                                         std::vector<StateId>(levels, -1));
    for (size_t q = 0; q < v1.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (v1.is_halting(id)) continue;
        for (size_t from = 0; from <= bits.size(); ++from) {
            StateId s = m.add_state(v1.states[q] + "@" + postfix_name(from));
            at[q][from] = s;
            m.pri[static_cast<size_t>(s)] = 0;
            const bool dead_coin_state = v1.flips_pri(id) && from == bits.size();
            m.pub[static_cast<size_t>(s)] = dead_coin_state ? 0 : v1.pub[q];
            m.com[static_cast<size_t>(s)] = dead_coin_state ? 0 : v1.com[q];
        }
    }
    m.accept = m.add_state("qacc");
    m.reject = m.add_state("qrej");
    if (v1.is_halting(v1.initial))
        m.initial = v1.initial == v1.accept ? m.accept : m.reject;
    else
        m.initial = at[static_cast<size_t>(v1.initial)][0];

    auto target = [&](StateId q, size_t from) -> StateId {
        if (q == v1.accept) return m.accept;
        if (q == v1.reject) return m.reject;
        return at[static_cast<size_t>(q)][from];
    };

    for (const auto& [key, rhs] : v1.delta) {
        const auto q = static_cast<size_t>(key.state);
        if (!v1.flips_pri(key.state)) {
            for (size_t from = 0; from <= bits.size(); ++from) {
                DeltaKey k = key;
                k.state = at[q][from];
                DeltaRhs r = rhs;
                r.next = target(rhs.next, from);
                m.delta.emplace(k, r);
            }
        } else {
            // consume the hardwired bit: only matching-outcome entries survive
            for (size_t from = 0; from < bits.size(); ++from) {
                if (key.pri != bits[from]) continue;
                DeltaKey k = key;
                k.state = at[q][from];
                k.pri = kNoCoin;
                DeltaRhs r = rhs;
                r.next = target(rhs.next, from + 1);
                m.delta.emplace(k, r);
            }
        }
    }

    // exhausted coin states reject on every scan
    for (size_t q = 0; q < v1.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (v1.is_halting(id) || !v1.flips_pri(id)) continue;
        StateId s = at[q][bits.size()];
        for (Sym in : m.scan_symbols())
            for (size_t wn = 0; wn < m.work_alphabet.size(); ++wn)
                for (size_t g = 0; g < m.comm_alphabet.size(); ++g)
                    m.delta.emplace(
                        DeltaKey{s, in, static_cast<Sym>(wn), static_cast<Sym>(g), kNoCoin,
                                 kNoCoin},
                        DeltaRhs{m.reject, static_cast<Sym>(wn), std::nullopt, 0, 0});
    }
    return m;
}

std::string encode_tuple(const std::vector<std::string>& symbols) {
    std::ostringstream out;
    out << "t(";
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (i) out << ';';
        out << symbols[i];
    }
    out << ')';
    return out.str();
}

std::optional<std::vector<std::string>> parse_tuple(const std::string& msg, std::size_t count) {
    if (msg.size() < 3 || msg.substr(0, 2) != "t(" || msg.back() != ')') return std::nullopt;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : msg.substr(2, msg.size() - 3)) {
        if (ch == ';') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    if (fields.size() != count) return std::nullopt;
    return fields;
}

namespace {

// Answers one communication with a preassigned symbol.
class OneShotProver : public ProverStrategy {
public:
    explicit OneShotProver(std::string symbol) : symbol_(std::move(symbol)) {}
    std::string name() const override { return "oneshot"; }
    std::string respond(const std::string&, const Transcript&) const override {
        return symbol_;
    }

private:
    std::string symbol_;
};

struct ReplayAnswer {
    std::string tuple;
};

// The whole protocol, parameterized over the coin and message sources so the
// runner and the honest prover's replay share one implementation.
struct V2Execution {
    const std::vector<MachineSpec>& specs;
    const V2Params& params;
    const std::string& input;
    std::uint64_t p_n;
    std::function<int()> flip;           // draws and records one public coin
    std::function<std::string()> prompt; // one exchange; sees pending_* below

    // visible protocol state
    std::vector<RunState> sims;
    std::vector<SimLabel> labels;
    std::vector<std::uint64_t> noncomm;
    std::vector<int> pending_waiting;       // sims taking part in the exchange
    std::vector<Transcript> pending_views;  // their transcripts incl. the write
    V2Detailed* log = nullptr;

    std::uint64_t budget = ~0ull; // remaining work units before cutoff
    bool out_of_budget = false;

    V2Execution(const std::vector<MachineSpec>& s, const V2Params& p, const std::string& in,
                std::uint64_t n)
        : specs(s), params(p), input(in), p_n(p.tick.p(n)) {
        for (const auto& spec : s) {
            sims.push_back(begin_run(spec, in));
            labels.push_back(SimLabel::running);
            noncomm.push_back(0);
        }
        for (size_t i = 0; i < sims.size(); ++i)
            if (specs[i].is_halting(sims[i].cfg.state))
                labels[i] = specs[i].initial == specs[i].accept ? SimLabel::halted_accept
                                                                : SimLabel::halted_reject;
    }

    bool spend(std::uint64_t units) {
        if (budget < units) {
            out_of_budget = true;
            return false;
        }
        budget -= units;
        return true;
    }

    void set_label(size_t i, SimLabel l) {
        labels[i] = l;
        if (log) {
            log->sims[i].label = l;
            log->sims[i].noncomm_steps = noncomm[i];
        }
    }

    // runs sim i up to its next communication, halt or the loop limit
    void advance_noncomm(size_t i) {
        ConstantProver never; // non-communication steps cannot consult it
        auto& rs = sims[i];
        const MachineSpec& spec = specs[i];
        while (true) {
            const StateId q = rs.cfg.state;
            if (spec.is_halting(q)) {
                set_label(i, q == spec.accept ? SimLabel::halted_accept
                                              : SimLabel::halted_reject);
                return;
            }
            if (spec.flips_pub(q)) {
                set_label(i, SimLabel::waiting_coin);
                return;
            }
            if (spec.communicates(q)) {
                set_label(i, SimLabel::waiting_comm);
                return;
            }
            if (BigInt(noncomm[i]) >= params.f_n) {
                set_label(i, SimLabel::looping);
                return;
            }
            if (!spend(1)) return;
            auto verdict = verifier_step_with_bits(spec, rs, kNoCoin, kNoCoin, never);
            ++noncomm[i];
            if (verdict) {
                set_label(i, *verdict == Verdict::accept ? SimLabel::halted_accept
                                                         : SimLabel::halted_reject);
                return;
            }
        }
    }

    // performs one exchange for `targets` (all at communication states);
    // pass the coin for waiting_coin advances, kNoCoin otherwise.
    // Returns false on a partition violation.
    bool exchange(const std::vector<int>& targets, int pub_bit) {
        pending_waiting = targets;
        pending_views.clear();
        for (int i : targets) {
            const MachineSpec& spec = specs[static_cast<size_t>(i)];
            auto& rs = sims[static_cast<size_t>(i)];
            const StateId q = rs.cfg.state;
            DeltaKey key{q, rs.scanned_input(), rs.cfg.work_at(rs.cfg.work_pos),
                         rs.cfg.comm_cell, kNoCoin, spec.flips_pub(q) ? pub_bit : kNoCoin};
            auto it = spec.delta.find(key);
            if (it == spec.delta.end())
                throw MachineError("v2: sim delta not total (validate the source)");
            Transcript view = rs.transcript;
            if (spec.flips_pub(q)) view.push_back({EventKind::public_coin, "", pub_bit, 0});
            view.push_back({EventKind::verifier_write,
                            spec.comm_name(*it->second.comm_write), 0, 0});
            pending_views.push_back(std::move(view));
        }

        if (!spend(1)) return true;
        const std::string msg = prompt();
        auto tuple = parse_tuple(msg, static_cast<size_t>(params.sim_count()));
        if (!tuple) return false; // malformed message is a protocol breach

        // blocks: sims indistinguishable through their extended transcripts
        std::map<std::string, std::string> block_response;
        for (size_t j = 0; j < pending_waiting.size(); ++j) {
            const std::string key = encode_transcript(pending_views[j]);
            const std::string& resp = (*tuple)[static_cast<size_t>(pending_waiting[j])];
            auto [it, inserted] = block_response.emplace(key, resp);
            if (!inserted && it->second != resp) return false; // split answers
        }

        for (size_t j = 0; j < pending_waiting.size(); ++j) {
            const auto i = static_cast<size_t>(pending_waiting[j]);
            const MachineSpec& spec = specs[i];
            const std::string& resp = (*tuple)[i];
            if (spec.comm_id(resp) < 0) return false; // outside Gamma
            OneShotProver oneshot(resp);
            auto& rs = sims[i];
            const StateId q = rs.cfg.state;
            int bit = spec.flips_pub(q) ? pub_bit : kNoCoin;
            if (!spend(1)) return true;
            auto verdict = verifier_step_with_bits(spec, rs, kNoCoin, bit, oneshot);
            noncomm[i] = 0;
            if (verdict)
                set_label(i, *verdict == Verdict::accept ? SimLabel::halted_accept
                                                         : SimLabel::halted_reject);
            else
                set_label(i, SimLabel::running);
        }
        if (log) {
            // record the refined block assignment over all sims
            std::map<std::string, int> ids;
            std::vector<int> assign;
            for (const auto& rs : sims) {
                auto key = encode_transcript(rs.transcript);
                auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
                assign.push_back(it->second);
            }
            log->partition_history.push_back(std::move(assign));
        }
        return true;
    }

    // whole protocol; the verdict is written into *outcome
    void run(TrialOutcome& out) {
        TickState timer;
        bool violation = false;

        while (!out_of_budget) {
            if (log) ++log->stages;
            BigInt segment = 0;
            while (!out_of_budget) {
                for (size_t i = 0; i < sims.size(); ++i)
                    if (labels[i] == SimLabel::running) advance_noncomm(i);
                if (out_of_budget) break;
                std::vector<int> waiting;
                for (size_t i = 0; i < sims.size(); ++i)
                    if (labels[i] == SimLabel::waiting_comm)
                        waiting.push_back(static_cast<int>(i));
                if (waiting.empty()) break;
                if (!exchange(waiting, kNoCoin)) {
                    violation = true;
                    break;
                }
                segment += 1;
                if (log && segment > log->max_segments) log->max_segments = segment;
                if (segment > params.g_n) {
                    for (size_t i = 0; i < sims.size(); ++i)
                        if (labels[i] == SimLabel::running ||
                            labels[i] == SimLabel::waiting_comm)
                            set_label(i, SimLabel::looping);
                    break;
                }
            }
            if (violation || out_of_budget) break;

            // stage boundary: one public coin, then one timer tick
            if (!spend(1)) break;
            const int b = flip();
            std::vector<int> at_coin;
            for (size_t i = 0; i < sims.size(); ++i)
                if (labels[i] == SimLabel::waiting_coin) at_coin.push_back(static_cast<int>(i));
            if (!at_coin.empty() && !exchange(at_coin, b)) {
                violation = true;
                break;
            }
            if (out_of_budget) break;

            if (!spend(1 + p_n)) break;
            auto t = tick(timer, p_n, flip);
            if (log) ++log->ticks;
            if (t == TickResult::timeout) {
                // selection: r public coins pick the sim whose verdict counts
                int idx = 0;
                for (int i = 0; i < params.r; ++i) {
                    if (!spend(1)) break;
                    idx = (idx << 1) | flip();
                }
                if (out_of_budget) break;
                if (log) log->selected_sim = idx;
                const SimLabel l = labels[static_cast<size_t>(idx)];
                out.verdict = (l == SimLabel::halted_reject || l == SimLabel::looping)
                                  ? Verdict::reject
                                  : Verdict::accept;
                if (log) log->partition_violation = false;
                return;
            }
        }

        if (violation) {
            out.verdict = Verdict::reject;
            if (log) log->partition_violation = true;
            return;
        }
        out.verdict = Verdict::cutoff;
    }
};

} // namespace

V2Runner::V2Runner(MachineSpec v1, V2Params params)
    : v1_(std::move(v1)), params_(params) {
    params_.check();
    auto viol = validate(v1_);
    if (!viol.empty())
        throw MachineError("v2 source machine invalid: " + viol.front().message);
    for (int i = 0; i < params_.sim_count(); ++i) {
        std::vector<int> bits;
        for (int bpos = params_.r - 1; bpos >= 0; --bpos) bits.push_back((i >> bpos) & 1);
        sim_specs_.push_back(hardwire_private_coins(v1_, bits));
    }
}

std::string V2Runner::describe() const {
    return "v2(r=" + std::to_string(params_.r) + ")";
}

TrialOutcome V2Runner::run(const std::string& input, const ProverStrategy& prover,
                           CoinSource coins, std::uint64_t cutoff) const {
    return run_detailed(input, prover, coins, cutoff).outcome;
}

V2Detailed V2Runner::run_detailed(const std::string& input, const ProverStrategy& prover,
                                  CoinSource coins, std::uint64_t cutoff) const {
    V2Detailed det;
    det.sims.resize(static_cast<size_t>(params_.sim_count()));

    V2Execution ex(sim_specs_, params_, input, static_cast<std::uint64_t>(input.size()));
    ex.log = &det;
    ex.budget = cutoff;
    TrialOutcome& out = det.outcome;

    ex.flip = [&]() {
        int b = coins.flip();
        ++out.public_coins_used;
        out.transcript.push_back({EventKind::public_coin, "", b, out.steps});
        return b;
    };
    ex.prompt = [&]() {
        out.transcript.push_back({EventKind::verifier_write, "?", 0, out.steps});
        std::string answer = prover.respond(input, out.transcript);
        out.transcript.push_back({EventKind::prover_write, answer, 0, out.steps});
        return answer;
    };

    ex.run(out);
    out.steps = cutoff - ex.budget;
    if (out.verdict == Verdict::cutoff) out.steps = cutoff;
    for (size_t i = 0; i < ex.sims.size(); ++i) {
        det.sims[i].label = ex.labels[i];
        if (det.sims[i].label != SimLabel::looping)
            det.sims[i].noncomm_steps = ex.noncomm[i];
    }
    return det;
}

namespace {

class HonestV2Prover : public ProverStrategy {
public:
    HonestV2Prover(MachineSpec v1, V2Params params, std::shared_ptr<const ProverStrategy> p1)
        : v1_(std::move(v1)), params_(params), p1_(std::move(p1)) {
        for (int i = 0; i < params_.sim_count(); ++i) {
            std::vector<int> bits;
            for (int bpos = params_.r - 1; bpos >= 0; --bpos) bits.push_back((i >> bpos) & 1);
            specs_.push_back(hardwire_private_coins(v1_, bits));
        }
    }

    std::string name() const override { return "v2-honest(" + p1_->name() + ")"; }

    std::string respond(const std::string& input, const Transcript& t) const override {
        std::vector<int> bits;
        std::vector<std::string> replies;
        for (const auto& e : t) {
            if (e.kind == EventKind::public_coin) bits.push_back(e.bit);
            if (e.kind == EventKind::prover_write) replies.push_back(e.symbol);
        }

        V2Execution ex(specs_, params_, input, static_cast<std::uint64_t>(input.size()));
        size_t bi = 0, ri = 0;
        ex.flip = [&]() -> int {
            if (bi < bits.size()) return bits[bi++];
            throw MachineError("v2 honest prover: replay ran out of coins");
        };
        ex.prompt = [&]() -> std::string {
            if (ri < replies.size()) return replies[ri++];
            // this is the exchange being answered now
            std::vector<std::string> tuple(static_cast<size_t>(params_.sim_count()), "_");
            for (size_t j = 0; j < ex.pending_waiting.size(); ++j) {
                const auto i = static_cast<size_t>(ex.pending_waiting[j]);
                tuple[i] = p1_->respond(input, ex.pending_views[j]);
            }
            throw ReplayAnswer{encode_tuple(tuple)};
        };
        try {
            TrialOutcome scratch;
            ex.run(scratch);
        } catch (const ReplayAnswer& answer) {
            return answer.tuple;
        }
        // protocol over; a spurious question gets fillers
        return encode_tuple(
            std::vector<std::string>(static_cast<size_t>(params_.sim_count()), "_"));
    }

private:
    MachineSpec v1_;
    V2Params params_;
    std::shared_ptr<const ProverStrategy> p1_;
    std::vector<MachineSpec> specs_;
};

} // namespace

std::unique_ptr<ProverStrategy> v2_honest_prover(const MachineSpec& v1, const V2Params& params,
                                                 std::shared_ptr<const ProverStrategy> p1) {
    return std::make_unique<HonestV2Prover>(v1, params, std::move(p1));
}

} // namespace ipsim
