#include <doctest.h>

#include <cmath>

#include "ipsim/engine.hpp"
#include "ipsim/transforms/clock.hpp"

using namespace ipsim;

namespace {

std::string zeros(std::uint64_t n) { return std::string(n, '0'); }

} // namespace

TEST_CASE("the t=1 clock is deterministic: 2*n0 + c*n + 2 steps for n >= n0") {
    for (int c : {1, 2, 3}) {
        ClockParams p{1, c, 4};
        auto m = build_poly_clock(p);
        REQUIRE(validate(m).empty());
        ConstantProver blank;
        for (std::uint64_t n : {4ull, 5ull, 9ull, 16ull}) {
            for (std::uint64_t seed : {0ull, 1ull, 77ull}) {
                auto out = run_trial(m, blank, zeros(n), CoinSource(seed, 0), 100000);
                CHECK(out.verdict == Verdict::accept);
                CHECK(out.steps == clock_runtime_t1(p, n));
                CHECK(out.private_coins_used == 0);
            }
        }
    }
}

TEST_CASE("short inputs stall for exactly n + 2 + f(n) steps") {
    for (int t : {1, 2}) {
        ClockParams p{t, 2, 5};
        auto m = build_poly_clock(p);
        REQUIRE(validate(m).empty());
        ConstantProver blank;
        for (std::uint64_t n : {0ull, 1ull, 3ull, 4ull}) {
            auto out = run_trial(m, blank, zeros(n), CoinSource(5, n), 100000);
            CHECK(out.verdict == Verdict::accept);
            CHECK(out.steps == clock_runtime_short(p, n));
        }
    }
}

TEST_CASE("individual walks end right with probability 1/(n+1)") {
    ClockParams p{2, 1, 2};
    auto m = build_poly_clock(p);
    REQUIRE(validate(m).empty());
    ConstantProver blank;
    const std::uint64_t n = 4;
    const std::string input = zeros(n);

    std::uint64_t walks = 0, right = 0;
    for (std::uint64_t trial = 0; walks < 60000; ++trial) {
        RunState rs = begin_run(m, input);
        CoinSource coins(31, trial);
        while (true) {
            bool was_flip = clock_is_walk_flip_state(m, rs.cfg.state);
            auto v = verifier_step(m, rs, coins, blank);
            if (v) break;
            // a walk ends exactly when a flip step lands on a marker
            if (was_flip &&
                (rs.cfg.input_pos == 0 || rs.cfg.input_pos == static_cast<long>(n) + 1)) {
                ++walks;
                if (rs.cfg.input_pos == static_cast<long>(n) + 1) ++right;
            }
        }
    }
    double freq = static_cast<double>(right) / static_cast<double>(walks);
    double want = 1.0 / (static_cast<double>(n) + 1.0);
    double se = std::sqrt(want * (1 - want) / static_cast<double>(walks));
    CHECK(std::abs(freq - want) < 4 * se);
}

TEST_CASE("mean runtime tracks t*(n+1)^t*(c*n+2) + 2*n0 + 1") {
    ClockParams p{2, 1, 4};
    auto m = build_poly_clock(p);
    ConstantProver blank;
    const std::uint64_t n = 4;
    const std::uint64_t trials = 60000;
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto out = run_trial(m, blank, zeros(n), CoinSource(13, t), 1u << 20);
        REQUIRE(out.verdict == Verdict::accept);
        total += out.steps;
    }
    double mean = static_cast<double>(total) / static_cast<double>(trials);
    double formula = clock_expected_runtime(p, n);
    CHECK(std::abs(mean - formula) / formula < 0.05);
}

TEST_CASE("premature halts stay under the implied bound") {
    ClockParams p{2, 1, 8};
    auto m = build_poly_clock(p);
    ConstantProver blank;
    const std::uint64_t n = 10;
    const std::uint64_t fn = p.f(n); // 100
    const std::uint64_t trials = 40000;
    std::uint64_t premature = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto out = run_trial(m, blank, zeros(n), CoinSource(3, t), 1u << 20);
        if (out.steps < fn) ++premature;
    }
    double freq = static_cast<double>(premature) / static_cast<double>(trials);
    CHECK(freq < p.epsilon_premature());
}

TEST_CASE("for_error picks n0 above the reciprocal of the target") {
    auto p = ClockParams::for_error(2, 1, 0.125);
    CHECK(p.n0 == 9);
    CHECK(p.epsilon_premature() <= 0.125);
    CHECK_THROWS_AS(ClockParams::for_error(1, 1, 0.0), MachineError);
}
