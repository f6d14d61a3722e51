#pragma once

#include <string>
#include <utility>

#include "ipsim/engine.hpp"

namespace ipsim {

/// Aggregate of seeded trials. Counts are exact integers and the moment
/// accumulators are integer sums, so merging partial stats is commutative
/// and re-running with the same seed reproduces the stats bit for bit.
/// Runtime and coin moments are conditioned on halting trials; cutoff
/// trials contribute only to the cutoff count.
struct SimulationStats {
    std::uint64_t trials = 0;
    std::uint64_t accepts = 0;
    std::uint64_t rejects = 0;
    std::uint64_t cutoffs = 0;
    double confidence = 0.999;

    std::uint64_t steps_sum = 0;
    unsigned __int128 steps_sumsq = 0;
    std::uint64_t steps_max = 0;
    std::uint64_t pri_sum = 0;
    unsigned __int128 pri_sumsq = 0;
    std::uint64_t pub_sum = 0;
    unsigned __int128 pub_sumsq = 0;

    void record(const TrialOutcome& out);
    SimulationStats& operator+=(const SimulationStats& other);

    std::uint64_t halting() const { return accepts + rejects; }
    double accept_rate() const;
    std::pair<double, double> accept_interval() const; // Wilson, at `confidence`
    double eps_plus_estimate() const { return 1.0 - accept_rate(); }  // w in L
    double eps_minus_estimate() const { return accept_rate(); }       // w not in L
    double runtime_mean() const;
    double runtime_variance() const;
    double pri_mean() const;
    double pri_variance() const;
    double pub_mean() const;
    double pub_variance() const;
};

/// Standard Wilson score interval for a binomial proportion.
/// Requires 0 <= successes <= trials; returns (0, 1) when trials == 0.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence);

/// Two-sided normal quantile used by the Wilson interval, accurate to ~1e-12.
double normal_quantile(double p);

struct MonteCarloOptions {
    double confidence = 0.999;
    int workers = 0; // 0: take IPSIM_WORKERS from the environment, else 1
};

/// Runs `trials` independent seeded trials of the runner and aggregates them.
/// Deterministic given all arguments; trial t uses CoinSource(seed, t), so
/// for N < M with the same seed the first N outcomes coincide.
SimulationStats monte_carlo(const TrialRunner& runner, const ProverStrategy& prover,
                            const std::string& input, std::uint64_t trials,
                            std::uint64_t cutoff, std::uint64_t seed,
                            const MonteCarloOptions& options = {});

/// JSON object / CSV row forms of the stats (schemas documented in README).
std::string stats_to_json(const SimulationStats& s, const std::string& machine,
                          const std::string& input, std::uint64_t cutoff,
                          std::uint64_t seed);
std::string stats_csv_header();
std::string stats_to_csv(const SimulationStats& s, const std::string& machine,
                         const std::string& input, std::uint64_t cutoff,
                         std::uint64_t seed);

} // namespace ipsim
