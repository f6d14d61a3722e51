#include <doctest.h>

#include <cmath>

#include "ipsim/exact.hpp"
#include "ipsim/harness.hpp"
#include "machines.hpp"

using namespace ipsim;

TEST_CASE("wilson interval boundary and symmetry cases") {
    auto [l0, h0] = wilson_interval(0, 100, 0.95);
    CHECK(l0 == 0.0);
    CHECK(h0 > 0.0);

    auto [l5, h5] = wilson_interval(50, 100, 0.95);
    CHECK(std::abs((0.5 - l5) - (h5 - 0.5)) < 1e-12);
    CHECK(l5 < 0.5);
    CHECK(h5 > 0.5);

    auto [lf, hf] = wilson_interval(100, 100, 0.95);
    CHECK(hf == 1.0);
    CHECK(lf < 1.0);
}

TEST_CASE("wilson interval matches an independently computed reference") {
    // closed-form evaluation with z = Phi^-1(0.975) = 1.959963984540054
    auto [low, high] = wilson_interval(90, 100, 0.95);
    CHECK(std::abs(low - 0.825634338495086) < 1e-9);
    CHECK(std::abs(high - 0.944770862939325) < 1e-9);
}

TEST_CASE("normal quantile hits textbook values") {
    CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-10);
    CHECK(std::abs(normal_quantile(0.9995) - 3.290526731491926) < 1e-9);
    CHECK(std::abs(normal_quantile(0.5)) < 1e-12);
}

TEST_CASE("monte carlo on the fair coin brackets one half") {
    MachineRunner runner(testmachines::fair_coin());
    ConstantProver blank;
    auto stats = monte_carlo(runner, blank, "0", 100000, 50, 11);
    CHECK(stats.trials == 100000);
    CHECK(stats.cutoffs == 0);
    auto [low, high] = stats.accept_interval();
    CHECK(low <= 0.5);
    CHECK(0.5 <= high);
    CHECK(stats.runtime_mean() == 1.0);
    CHECK(stats.steps_max == 1);
    CHECK(stats.pri_mean() == 1.0);
}

TEST_CASE("a self-looping machine only ever cuts off") {
    MachineRunner runner(testmachines::self_loop());
    ConstantProver blank;
    auto stats = monte_carlo(runner, blank, "0", 500, 64, 3);
    CHECK(stats.cutoffs == 500);
    CHECK(stats.halting() == 0);
    CHECK(stats.runtime_mean() == 0.0); // moments condition on halting
}

TEST_CASE("stats are reproducible bit for bit and worker-count independent") {
    MachineRunner runner(testmachines::two_coins());
    ConstantProver blank;
    MonteCarloOptions one;
    one.workers = 1;
    MonteCarloOptions four;
    four.workers = 4;
    auto a = monte_carlo(runner, blank, "0", 20000, 50, 17, one);
    auto b = monte_carlo(runner, blank, "0", 20000, 50, 17, four);
    CHECK(a.accepts == b.accepts);
    CHECK(a.rejects == b.rejects);
    CHECK(a.cutoffs == b.cutoffs);
    CHECK(a.steps_sum == b.steps_sum);
    CHECK((a.steps_sumsq == b.steps_sumsq));
    CHECK(a.pri_sum == b.pri_sum);
    CHECK(a.pub_sum == b.pub_sum);
    CHECK(a.steps_max == b.steps_max);
}

TEST_CASE("the first N trials of a longer run coincide with a shorter run") {
    MachineRunner runner(testmachines::fair_coin());
    ConstantProver blank;
    SimulationStats firstN;
    for (std::uint64_t t = 0; t < 1000; ++t)
        firstN.record(runner.run("0", blank, CoinSource(23, t), 50));
    auto direct = monte_carlo(runner, blank, "0", 1000, 50, 23);
    CHECK(firstN.accepts == direct.accepts);
    CHECK(firstN.rejects == direct.rejects);
}

TEST_CASE("monte carlo point estimate stays near the exact oracle") {
    auto m = testmachines::two_coins();
    ConstantProver blank;
    auto exact = exact_acceptance(m, blank, "0", 50);
    double p = static_cast<double>(exact.p_accept.convert_to<double>());
    MachineRunner runner(m);
    auto stats = monte_carlo(runner, blank, "0", 100000, 50, 5);
    double se = std::sqrt(p * (1 - p) / static_cast<double>(stats.trials));
    CHECK(std::abs(stats.accept_rate() - p) <= 4 * se);
}

TEST_CASE("serializations carry the headline fields") {
    MachineRunner runner(testmachines::fair_coin());
    ConstantProver blank;
    auto stats = monte_carlo(runner, blank, "0", 100, 10, 1);
    auto json = stats_to_json(stats, "coin", "0", 10, 1);
    CHECK(json.find("\"accepts\"") != std::string::npos);
    CHECK(json.find("\"wilson\"") != std::string::npos);
    auto csv = stats_to_csv(stats, "coin", "0", 10, 1);
    auto header = stats_csv_header();
    CHECK(std::count(csv.begin(), csv.end(), ',') ==
          std::count(header.begin(), header.end(), ','));
}
