#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "ipsim/transcript.hpp"

namespace ipsim {

/// A prover strategy is a deterministic function of the input string, the
/// public-coin history and the communication transcript. It never sees
/// private coins, head positions or the verifier's state. The transcript
/// passed in is two-sided: it contains the verifier's writes, the prover's
/// own previous writes, and the public-coin outcomes, in step order.
class ProverStrategy {
public:
    virtual ~ProverStrategy() = default;
    virtual std::string name() const { return "prover"; }
    virtual std::string respond(const std::string& input,
                                const Transcript& transcript) const = 0;
};

/// Always answers with the same symbol (default: the blank).
class ConstantProver : public ProverStrategy {
public:
    explicit ConstantProver(std::string symbol = "_") : symbol_(std::move(symbol)) {}
    std::string name() const override { return "constant(" + symbol_ + ")"; }
    std::string respond(const std::string&, const Transcript&) const override {
        return symbol_;
    }

private:
    std::string symbol_;
};

/// Table-driven prover: looks up the encoded observable history in a prefix
/// table and falls back to a default symbol.
class ScriptedProver : public ProverStrategy {
public:
    ScriptedProver(std::map<std::string, std::string> script, std::string fallback,
                   std::string label = "scripted")
        : script_(std::move(script)), fallback_(std::move(fallback)), label_(std::move(label)) {}

    std::string name() const override { return label_; }
    std::string respond(const std::string&, const Transcript& t) const override {
        auto it = script_.find(encode_transcript(t));
        return it == script_.end() ? fallback_ : it->second;
    }

    const std::map<std::string, std::string>& script() const { return script_; }
    const std::string& fallback() const { return fallback_; }

private:
    std::map<std::string, std::string> script_;
    std::string fallback_;
    std::string label_;
};

/// Wraps an arbitrary deterministic function as a strategy.
class FunctionProver : public ProverStrategy {
public:
    using Fn = std::function<std::string(const std::string&, const Transcript&)>;
    FunctionProver(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}
    std::string name() const override { return label_; }
    std::string respond(const std::string& input, const Transcript& t) const override {
        return fn_(input, t);
    }

private:
    Fn fn_;
    std::string label_;
};

/// Builds a ScriptedProver from its JSON form:
///   { "default": "_", "script": [ { "prefix": "V:a C:1", "symbol": "x" }, ... ] }
std::unique_ptr<ScriptedProver> load_prover_script(const std::string& json_text);

std::string prover_script_to_json(const ScriptedProver& p);

} // namespace ipsim
