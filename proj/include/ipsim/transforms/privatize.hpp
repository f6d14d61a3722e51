#pragma once

#include <array>
#include <memory>

#include "ipsim/machine.hpp"
#include "ipsim/prover.hpp"

namespace ipsim {

/// Result of removing all public coins from a verifier. The emitted machine
/// has Q_pub empty; public-only coin states are rebranded as private
/// communication states writing paired (symbol, bit) letters, and states
/// flipping both kinds of coin are split through a fresh intermediate state
/// that buffers the first outcome. Gamma grows to Gamma ∪ (Gamma x {0,1});
/// the pair (g, b) is spelled "g|b".
struct PrivatizeResult {
    MachineSpec machine;
    std::vector<StateId> rebranded;     // were public-only coin states in v1
    std::vector<StateId> intermediates; // the fresh (q, b) states
    // pair_symbol[g][b] is the id of (g, b) in the new Gamma
    std::vector<std::array<Sym, 2>> pair_symbol;
};

PrivatizeResult privatize_coins(const MachineSpec& v1);

/// Splits a paired symbol name "g|b" into (g, bit); nullopt for plain names.
std::optional<std::pair<std::string, int>> split_pair_symbol(const std::string& name);

/// Wraps a strategy for the source verifier so it can serve the privatized
/// one: each paired write "g|b" is unfolded into the public-coin event b
/// followed by the original write g before consulting the inner strategy.
class PrivatizedProverAdapter : public ProverStrategy {
public:
    explicit PrivatizedProverAdapter(std::shared_ptr<const ProverStrategy> inner)
        : inner_(std::move(inner)) {}
    std::string name() const override { return "privatized(" + inner_->name() + ")"; }
    std::string respond(const std::string& input, const Transcript& t) const override;

private:
    std::shared_ptr<const ProverStrategy> inner_;
};

} // namespace ipsim
