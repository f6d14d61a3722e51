#include "ipsim/transforms/v3.hpp"

#include <sstream>

namespace ipsim {

void V3Params::check(int k) const {
    if (r < 1 || r > 30) throw MachineError("v3 wants 1 <= r <= 30");
    if (m < 1) throw MachineError("v3 wants m >= 1");
    if (k < 1) throw MachineError("v3 wants a machine with at least one head");
    if (static_cast<unsigned>(k) >= (1u << r))
        throw MachineError("v3 wants k * 2^-r < 1 (raise r)");
    clock.check();
}

std::string encode_claims(const MultiheadVerifier& v2, const std::vector<Sym>& scans,
                          const std::optional<std::string>& p2_symbol) {
    std::ostringstream out;
    out << "c(";
    for (size_t i = 0; i < scans.size(); ++i) {
        if (i) out << ';';
        out << v2.input_name(scans[i]);
    }
    if (p2_symbol) out << ';' << *p2_symbol;
    out << ')';
    return out.str();
}

std::optional<ParsedClaims> parse_claims(const MultiheadVerifier& v2, const std::string& msg) {
    if (msg.size() < 3 || msg.substr(0, 2) != "c(" || msg.back() != ')') return std::nullopt;
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
    const size_t k = static_cast<size_t>(v2.heads);
    if (fields.size() != k && fields.size() != k + 1) return std::nullopt;
    ParsedClaims out;
    for (size_t i = 0; i < k; ++i) {
        Sym s = v2.input_id(fields[i]);
        if (s < 0 && fields[i] != "<" && fields[i] != ">") return std::nullopt;
        out.scans.push_back(s);
    }
    if (fields.size() == k + 1) out.p2_symbol = fields[k];
    return out;
}

V3Runner::V3Runner(MultiheadVerifier v2, V3Params params, V3Options options)
    : v2_(std::move(v2)), params_(params), options_(options) {
    auto viol = validate_multihead(v2_);
    if (!viol.empty())
        throw MachineError("v3 source machine invalid: " + viol.front().message);
    for (const auto& [key, rhs] : v2_.delta) {
        (void)key;
        if (rhs.comm_write && *rhs.comm_write != kBlank)
            throw MachineError("v3 assumes the simulated verifier sends the dummy blank");
    }
    params_.check(v2_.heads);
    if (options_.forced_mode &&
        (*options_.forced_mode < 0 || *options_.forced_mode > v2_.heads))
        throw MachineError("forced mode out of range");
    clock_ = build_poly_clock(params_.clock);
}

std::string V3Runner::describe() const {
    return "v3(r=" + std::to_string(params_.r) + ",m=" + std::to_string(params_.m) + ")";
}

TrialOutcome V3Runner::run(const std::string& input, const ProverStrategy& prover,
                           CoinSource coins, std::uint64_t cutoff) const {
    return run_detailed(input, prover, coins, cutoff).outcome;
}

V3Runner::Detailed V3Runner::run_detailed(const std::string& input,
                                          const ProverStrategy& prover, CoinSource coins,
                                          std::uint64_t cutoff) const {
    Detailed det;
    TrialOutcome& out = det.outcome;
    const int k = v2_.heads;

    std::vector<Sym> w;
    for (char ch : input) {
        Sym s = v2_.input_id(std::string(1, ch));
        if (s < 0) throw MachineError(std::string("input symbol '") + ch + "' is not in Sigma");
        w.push_back(s);
    }
    const long last = static_cast<long>(w.size()) + 1;
    auto scan_at = [&](long pos) -> Sym {
        if (pos == 0) return kLeftEnd;
        if (pos == last) return kRightEnd;
        return w[static_cast<size_t>(pos - 1)];
    };

    Transcript& tr = out.transcript;
    long own_pos = 0;
    ConstantProver silent; // the clock has no communication states

    auto spend = [&](std::uint64_t n_steps) -> bool {
        out.steps += n_steps;
        if (out.steps >= cutoff) {
            out.steps = cutoff;
            out.verdict = Verdict::cutoff;
            return false;
        }
        return true;
    };
    auto exchange = [&](const std::string& prompt) -> std::string {
        tr.push_back({EventKind::verifier_write, prompt, 0, out.steps});
        std::string answer = prover.respond(input, tr);
        tr.push_back({EventKind::prover_write, answer, 0, out.steps});
        return answer;
    };

    for (int round = 0; round < params_.m; ++round) {
        V3RoundLog log;

        // mode selection: r private flips pick a head with probability 2^-r
        int mode;
        if (options_.forced_mode) {
            mode = *options_.forced_mode;
        } else {
            unsigned v = 0;
            for (int i = 0; i < params_.r; ++i) v = (v << 1) | static_cast<unsigned>(coins.flip());
            out.private_coins_used += static_cast<std::uint64_t>(params_.r);
            if (!spend(static_cast<std::uint64_t>(params_.r))) return det;
            mode = v < static_cast<unsigned>(k) ? static_cast<int>(v) : k;
        }
        log.mode = mode;
        const bool timer_mode = mode == k;

        // return the head to the left marker without flipping coins
        if (own_pos > 0) {
            std::uint64_t walk = static_cast<std::uint64_t>(own_pos);
            own_pos = 0;
            if (!spend(walk)) return det;
        }

        StateId sim = v2_.initial;
        Sym gamma2 = kBlank;
        bool sim_communicated = false;
        std::optional<RunState> clock_rs;
        if (timer_mode) clock_rs = begin_run(clock_, input);
        bool timer_halted = false;

        // initial claims about the all-markers readings
        std::string msg = exchange("?");
        if (!spend(1)) return det;

        while (true) {
            if (timer_mode && timer_halted) {
                log.timer_fired = true;
                out.verdict = Verdict::reject;
                det.rounds.push_back(log);
                return det;
            }
            if (sim == v2_.reject) {
                out.verdict = Verdict::reject;
                det.rounds.push_back(log);
                return det;
            }
            auto claims = parse_claims(v2_, msg);
            if (!claims) {
                out.verdict = Verdict::reject; // off-protocol message
                det.rounds.push_back(log);
                return det;
            }
            if (!timer_mode && claims->scans[static_cast<size_t>(mode)] != scan_at(own_pos)) {
                log.mismatch = true;
                out.verdict = Verdict::reject;
                det.rounds.push_back(log);
                return det;
            }
            if (sim_communicated) {
                if (!claims->p2_symbol) {
                    out.verdict = Verdict::reject; // response was due
                    det.rounds.push_back(log);
                    return det;
                }
                auto found = std::find(v2_.comm_alphabet.begin(), v2_.comm_alphabet.end(),
                                       *claims->p2_symbol);
                if (found == v2_.comm_alphabet.end()) {
                    out.verdict = Verdict::reject;
                    det.rounds.push_back(log);
                    return det;
                }
                gamma2 = static_cast<Sym>(found - v2_.comm_alphabet.begin());
                sim_communicated = false;
            }

            const int pub_bit = coins.flip();
            ++out.public_coins_used;
            tr.push_back({EventKind::public_coin, "", pub_bit, out.steps});

            // advance the simulated machine by one step
            MultiheadVerifier::Key key{sim, claims->scans, gamma2,
                                       v2_.flips_pub(sim) ? pub_bit : kNoCoin};
            auto it = v2_.delta.find(key);
            if (it == v2_.delta.end()) {
                out.verdict = Verdict::reject; // claims left the machine's graph
                det.rounds.push_back(log);
                return det;
            }
            const auto& rhs = it->second;
            if (v2_.communicates(sim)) sim_communicated = true;
            sim = rhs.next;
            ++log.sim_steps;

            if (timer_mode) {
                // one clock step per simulated step, fed by the public coin
                int pri = clock_.flips_pri(clock_rs->cfg.state) ? pub_bit : kNoCoin;
                auto verdict = verifier_step_with_bits(clock_, *clock_rs, pri, kNoCoin, silent);
                if (verdict) timer_halted = true;
                own_pos = clock_rs->cfg.input_pos;
            } else {
                own_pos += rhs.dirs[static_cast<size_t>(mode)];
                if (own_pos < 0 || own_pos > last) {
                    out.verdict = Verdict::reject; // own head left the tape
                    det.rounds.push_back(log);
                    return det;
                }
            }

            if (sim == v2_.accept) {
                log.passed = true;
                if (!spend(1)) {
                    det.rounds.push_back(log);
                    return det;
                }
                break;
            }

            msg = exchange("?");
            if (!spend(1)) {
                det.rounds.push_back(log);
                return det;
            }
        }
        det.rounds.push_back(log);
    }

    out.verdict = Verdict::accept;
    return det;
}

namespace {

// Replays the simulated machine's real trajectory from the public record:
// call t answers after coin t, so the replica advances once per recorded
// coin, resetting whenever it accepts (a new round begins).
class HonestV3Prover : public ProverStrategy {
public:
    HonestV3Prover(const MultiheadVerifier& v2, std::shared_ptr<const ProverStrategy> p2,
                   std::string label)
        : v2_(v2), p2_(std::move(p2)), label_(std::move(label)) {}

    std::string name() const override { return label_; }

    std::string respond(const std::string& input, const Transcript& t) const override {
        std::vector<Sym> w;
        for (char ch : input) w.push_back(v2_.input_id(std::string(1, ch)));
        const long last = static_cast<long>(w.size()) + 1;
        auto scan_at = [&](long pos) -> Sym {
            if (pos == 0) return kLeftEnd;
            if (pos == last) return kRightEnd;
            return w[static_cast<size_t>(pos - 1)];
        };

        StateId sim = v2_.initial;
        std::vector<long> pos(static_cast<size_t>(v2_.heads), 0);
        Sym gamma2 = kBlank;
        std::optional<std::string> pending_p2;
        Transcript sim_transcript; // the simulated verifier/prover exchange

        auto reset_round = [&]() {
            sim = v2_.initial;
            std::fill(pos.begin(), pos.end(), 0);
            gamma2 = kBlank;
            pending_p2.reset();
            sim_transcript.clear();
        };

        for (const auto& e : t) {
            if (e.kind != EventKind::public_coin) continue;
            // one simulated step per coin
            pending_p2.reset();
            if (v2_.is_halting(sim)) reset_round(); // a new round began
            std::vector<Sym> scans;
            for (long p : pos) scans.push_back(scan_at(p));
            MultiheadVerifier::Key key{sim, scans, gamma2,
                                       v2_.flips_pub(sim) ? e.bit : kNoCoin};
            if (v2_.flips_pub(sim))
                sim_transcript.push_back({EventKind::public_coin, "", e.bit, 0});
            auto it = v2_.delta.find(key);
            if (it == v2_.delta.end()) {
                sim = v2_.reject;
                continue;
            }
            const auto& rhs = it->second;
            if (v2_.communicates(sim)) {
                sim_transcript.push_back(
                    {EventKind::verifier_write,
                     v2_.comm_alphabet[static_cast<size_t>(*rhs.comm_write)], 0, 0});
                std::string answer =
                    p2_ ? p2_->respond(input, sim_transcript) : std::string("_");
                sim_transcript.push_back({EventKind::prover_write, answer, 0, 0});
                pending_p2 = answer;
                auto found =
                    std::find(v2_.comm_alphabet.begin(), v2_.comm_alphabet.end(), answer);
                gamma2 = found == v2_.comm_alphabet.end()
                             ? kBlank
                             : static_cast<Sym>(found - v2_.comm_alphabet.begin());
            }
            sim = rhs.next;
            for (int i = 0; i < v2_.heads; ++i)
                pos[static_cast<size_t>(i)] += rhs.dirs[static_cast<size_t>(i)];
        }
        // an initial exchange right after an accepted round starts afresh
        if (v2_.is_halting(sim)) reset_round();
        std::vector<Sym> scans;
        for (long p : pos) scans.push_back(scan_at(p));
        return encode_claims(v2_, scans, pending_p2);
    }

private:
    const MultiheadVerifier& v2_;
    std::shared_ptr<const ProverStrategy> p2_;
    std::string label_;
};

class HeadLiarProver : public ProverStrategy {
public:
    HeadLiarProver(const MultiheadVerifier& v2, int head, std::string fake)
        : honest_(v2, nullptr, "honest"), v2_(v2), head_(head), fake_(std::move(fake)) {}
    std::string name() const override { return "head-liar"; }
    std::string respond(const std::string& input, const Transcript& t) const override {
        std::string msg = honest_.respond(input, t);
        auto claims = parse_claims(v2_, msg);
        claims->scans[static_cast<size_t>(head_)] = v2_.input_id(fake_);
        return encode_claims(v2_, claims->scans, claims->p2_symbol);
    }

private:
    HonestV3Prover honest_;
    const MultiheadVerifier& v2_;
    int head_;
    std::string fake_;
};

class FrozenClaimsProver : public ProverStrategy {
public:
    FrozenClaimsProver(const MultiheadVerifier& v2, std::vector<Sym> scans)
        : v2_(v2), frozen_(std::move(scans)) {}
    std::string name() const override { return "frozen-claims"; }
    std::string respond(const std::string&, const Transcript& t) const override {
        for (const auto& e : t)
            if (e.kind == EventKind::prover_write)
                return encode_claims(v2_, frozen_, std::nullopt);
        // very first message: the truthful all-markers claims
        std::vector<Sym> initial(static_cast<size_t>(v2_.heads), kLeftEnd);
        return encode_claims(v2_, initial, std::nullopt);
    }

private:
    const MultiheadVerifier& v2_;
    std::vector<Sym> frozen_;
};

} // namespace

std::unique_ptr<ProverStrategy> v3_honest_prover(const MultiheadVerifier& v2,
                                                 std::shared_ptr<const ProverStrategy> p2) {
    return std::make_unique<HonestV3Prover>(v2, std::move(p2), "v3-honest");
}

std::unique_ptr<ProverStrategy> v3_head_liar(const MultiheadVerifier& v2, int head,
                                             const std::string& fake) {
    if (head < 0 || head >= v2.heads) throw MachineError("liar head out of range");
    return std::make_unique<HeadLiarProver>(v2, head, fake);
}

std::unique_ptr<ProverStrategy> v3_frozen_claims(const MultiheadVerifier& v2,
                                                 std::vector<Sym> scans) {
    return std::make_unique<FrozenClaimsProver>(v2, std::move(scans));
}

} // namespace ipsim
