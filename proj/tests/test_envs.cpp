#include <cmath>
#include <fstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "qcommit/envs/day_ahead.hpp"
#include "qcommit/envs/real_time.hpp"
#include "qcommit/envs/scenario.hpp"
#include "qcommit/oracle/brute_force.hpp"
#include "qcommit/rl/trainers.hpp"
#include "test_helpers.hpp"

using namespace qcommit;
using namespace qcommit::envs;
using Catch::Approx;

namespace {

grid::GridCase load_fixture(const std::string& name) {
    std::ifstream in(std::string(QCOMMIT_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return grid::load_case(nlohmann::json::parse(in));
}

} // namespace

TEST_CASE("da_reset initializes from the case", "[envs]") {
    const auto c = load_fixture("toy3.json");
    DayAheadEnv env(c, 0, 7);
    const auto& s = env.state();
    CHECK(s.t == 0);
    CHECK(s.horizon == 4);
    CHECK(s.e_prev == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(s.prev_p[0] == Approx(20.0)); // p_min of the initially-on unit
    CHECK(s.load_p[0] == Approx(100.0));

    SECTION("same seed twice gives identical observations") {
        DayAheadEnv env2(c, 0, 7);
        CHECK(env.observe() == env2.observe());
    }
    SECTION("day index selects the profile slice") {
        const auto rts = load_fixture("rts24.json");
        DayAheadEnv day3(rts, 3);
        double expected = 0.0;
        for (const auto& load : rts.loads) {
            expected += load.forecast_profile[static_cast<std::size_t>(
                3 * rts.periods)];
        }
        double got = 0.0;
        for (double v : day3.state().load_p) {
            got += v;
        }
        CHECK(got == Approx(expected));
        CHECK_THROWS_AS(DayAheadEnv(rts, 7), ContractError);
    }
}

TEST_CASE("da_step rewards and transitions", "[envs]") {
    const auto c = load_fixture("toy3.json");

    SECTION("all-off action pays pure shedding") {
        DayAheadEnv env(c, 0);
        const std::vector<std::uint8_t> off{0, 0, 0};
        const auto out = env.step(off);
        // load 100 at t0, all shed at c_ls
        CHECK(out.costs.shed == Approx(100.0 * 1000.0));
        CHECK(out.reward ==
              Approx(-100.0 * 1000.0 / c.reward_scale()));
        CHECK(out.costs.fuel == 0.0);
    }
    SECTION("a unit that stays on pays no startup") {
        DayAheadEnv env(c, 0);
        const std::vector<std::uint8_t> keep{1, 0, 0};
        const auto out = env.step(keep);
        CHECK(out.costs.startup == 0.0);
        CHECK(out.startup == std::vector<std::uint8_t>{0, 0, 0});
    }
    SECTION("episodes run exactly T steps, then acting is an error") {
        DayAheadEnv env(c, 0);
        const std::vector<std::uint8_t> a{1, 1, 0};
        for (int t = 0; t < 4; ++t) {
            const auto out = env.step(a);
            CHECK(out.done == (t == 3));
        }
        CHECK_THROWS_AS(env.step(a), ContractError);
    }
    SECTION("rewards are never positive; Eq (9) flags are consistent") {
        Rng rng(2);
        DayAheadEnv env(c, 0);
        rl::TransitionAudit audit;
        for (int ep = 0; ep < 10; ++ep) {
            env.reset();
            bool done = false;
            while (!done) {
                std::vector<std::uint8_t> a(3);
                for (auto& b : a) {
                    b = static_cast<std::uint8_t>(rng.uniform_int(2));
                }
                const auto e_prev = env.state().e_prev;
                const auto out = env.step(a);
                audit.record(e_prev, a, out.startup, out.shutdown);
                CHECK(out.reward <= 1e-15);
                done = out.done;
            }
        }
        CHECK(audit.checked == 10 * 4 * 3);
        CHECK(audit.violations == 0);
    }
}

TEST_CASE("sample_scenario statistics and determinism", "[envs]") {
    const auto c = load_fixture("toy3rt.json");

    SECTION("zero sigma reproduces the forecast exactly") {
        ScenarioGenerator gen({0.0, 0.0, 0.0}, 42);
        const auto real = gen.sample(c, 0, 0);
        for (std::size_t l = 0; l < c.loads.size(); ++l) {
            for (int t = 0; t < c.periods; ++t) {
                CHECK(real.load[l][static_cast<std::size_t>(t)] ==
                      c.loads[l].forecast_profile[static_cast<std::size_t>(t)]);
            }
        }
    }
    SECTION("same (seed, day, k) is bit-identical; different k differs") {
        ScenarioGenerator gen({0.1, 0.15, 0.2}, 42);
        const auto a = gen.sample(c, 0, 3);
        const auto b = gen.sample(c, 0, 3);
        CHECK(a.load == b.load);
        CHECK(a.renewable == b.renewable);
        const auto other = gen.sample(c, 0, 4);
        CHECK(a.load != other.load);
    }
    SECTION("moments match the truncated normal within tolerance") {
        ScenarioGenerator gen({0.1, 0.15, 0.2}, 7);
        double sum = 0.0, sum_sq = 0.0;
        long n = 0;
        for (int k = 0; k < 2500; ++k) {
            const auto real = gen.sample(c, 0, k);
            for (int t = 0; t < c.periods; ++t) {
                const double fc =
                    c.loads[0].forecast_profile[static_cast<std::size_t>(t)];
                const double rel =
                    real.load[0][static_cast<std::size_t>(t)] / fc - 1.0;
                sum += rel;
                sum_sq += rel * rel;
                ++n;
            }
        }
        const double mean = sum / static_cast<double>(n);
        const double var =
            sum_sq / static_cast<double>(n) - mean * mean;
        // mean within 1% of the forecast
        CHECK(std::abs(mean) < 0.01);
        // std of a +-3 sigma truncated normal: sigma * 0.98658
        CHECK(std::sqrt(var) == Approx(0.1 * 0.98658).epsilon(0.10));
    }
    SECTION("renewables never exceed 1.2x forecast and stay nonnegative") {
        ScenarioGenerator gen({0.1, 0.5, 0.5}, 9);
        for (int k = 0; k < 50; ++k) {
            const auto real = gen.sample(c, 0, k);
            for (int t = 0; t < c.periods; ++t) {
                const double fc = c.renewables[0]
                                      .forecast_profile[static_cast<
                                          std::size_t>(t)];
                const double v = real.renewable[0][static_cast<std::size_t>(t)];
                CHECK(v >= 0.0);
                CHECK(v <= 1.2 * fc + 1e-12);
            }
        }
    }
}

TEST_CASE("rt_step closes the balance and prices the action", "[envs]") {
    const auto c = load_fixture("toy3rt.json");
    const auto m = grid::flow_matrices(c);
    const std::vector<std::vector<std::uint8_t>> schedule(
        4, std::vector<std::uint8_t>{1, 1, 0});
    const auto solution = rl::roll_schedule(c, 0, schedule);

    SECTION("zero deviation + zero action: no shedding, plan's own violations") {
        ScenarioGenerator gen({0.0, 0.0, 0.0}, 1);
        RealTimeEnv env(c, m, solution, gen.sample(c, 0, 0));
        const std::vector<double> zero{0.0, 0.0};
        double total_violation = 0.0;
        for (int t = 0; t < 4; ++t) {
            const auto out = env.step(zero);
            CHECK(out.shed_mw == Approx(0.0).margin(1e-9));
            CHECK(out.curtail_mw == Approx(0.0).margin(1e-9));
            total_violation += out.eval.branch_violation;
        }
        // The nominal plan overloads branch 1-2 at t2 by 10 MW
        // (net bus-2 demand 70 vs limit 60).
        CHECK(total_violation == Approx(10.0).margin(1e-9));
    }
    SECTION("a VPP covering a local deficit beats shedding when cheaper") {
        ScenarioGenerator gen({0.0, 0.0, 0.0}, 1);
        auto realized = gen.sample(c, 0, 0);
        realized.load[1][0] += 20.0; // deficit of 20 MW at bus 2, t=0
        RealTimeEnv env(c, m, solution, realized);
        const std::vector<double> idle{0.0, 0.0};
        const std::vector<double> inject{0.0, 20.0};
        const auto lazy = env.evaluate_action(idle);
        const auto active = env.evaluate_action(inject);
        CHECK(lazy.shed_mw == Approx(20.0).margin(1e-9));
        CHECK(active.shed_mw == Approx(0.0).margin(1e-9));
        // c_vpp = 20 < c_ls = 1000, so acting wins.
        CHECK(active.reward > lazy.reward);
    }
    SECTION("actions are clipped to the VPP box") {
        ScenarioGenerator gen({0.1, 0.15, 0.2}, 5);
        RealTimeEnv env(c, m, solution, gen.sample(c, 0, 0));
        const std::vector<double> wild{500.0, -500.0};
        const auto out = env.step(wild);
        CHECK(out.action[0] == Approx(45.0));
        CHECK(out.action[1] == Approx(-45.0));
    }
    SECTION("episode length is exactly T") {
        ScenarioGenerator gen({0.1, 0.15, 0.2}, 5);
        RealTimeEnv env(c, m, solution, gen.sample(c, 0, 1));
        const std::vector<double> zero{0.0, 0.0};
        int steps = 0;
        while (!env.terminal()) {
            env.step(zero);
            ++steps;
        }
        CHECK(steps == 4);
        CHECK_THROWS_AS(env.step(zero), ContractError);
    }
    SECTION("grid-search oracle dominates random probes") {
        ScenarioGenerator gen({0.1, 0.15, 0.2}, 11);
        RealTimeEnv env(c, m, solution, gen.sample(c, 0, 2));
        env.step(std::vector<double>{0.0, 0.0});
        env.step(std::vector<double>{0.0, 0.0}); // move to t=2 (the tight hour)
        const auto best = oracle::grid_search_vpp(env, 2.0);
        Rng rng(13);
        for (int probe = 0; probe < 500; ++probe) {
            const std::vector<double> a{rng.uniform(-45.0, 45.0),
                                        rng.uniform(-45.0, 45.0)};
            REQUIRE(env.evaluate_action(a).reward <=
                    best.best_value + 1e-12);
        }
        CHECK(env.evaluate_action(best.best_action).reward ==
              Approx(best.best_value));
    }
    SECTION("rewards are never positive") {
        ScenarioGenerator gen({0.1, 0.15, 0.2}, 17);
        Rng rng(3);
        RealTimeEnv env(c, m, solution, gen.sample(c, 0, 4));
        while (!env.terminal()) {
            const std::vector<double> a{rng.uniform(-45.0, 45.0),
                                        rng.uniform(-45.0, 45.0)};
            CHECK(env.step(a).reward <= 1e-15);
        }
    }
}
