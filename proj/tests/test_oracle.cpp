#include <cstdint>
#include <fstream>
#include <map>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "qcommit/oracle/brute_force.hpp"
#include "qcommit/oracle/lp_export.hpp"
#include "qcommit/oracle/mlp.hpp"
#include "qcommit/rl/trainers.hpp"
#include "test_helpers.hpp"

using namespace qcommit;
using Catch::Approx;

namespace {

grid::GridCase load_fixture(const std::string& name) {
    std::ifstream in(std::string(QCOMMIT_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return grid::load_case(nlohmann::json::parse(in));
}

grid::GridCase one_unit_case(double load, double c_g, double c_su,
                             double p_min, double p_max) {
    grid::GridCase c;
    c.name = "one_unit";
    c.periods = 1;
    c.base_mva = 100.0;
    c.buses = {{0, 0.95, 1.05, 0}};
    c.units = {{0, c_g, c_su, p_min, p_max, p_max, -p_max, false, 1.0}};
    c.loads = {{0, {load}, 1.0}};
    c.costs = {1000.0, 1e4, 1e4};
    return c;
}

/// Independent dynamic program over (t, commitment, integer dispatch):
/// exact for integer-valued fixtures, cross-checks the enumerator.
struct UcDp {
    const grid::GridCase& c;
    std::map<std::tuple<int, long, std::vector<long>>, double> memo;

    double solve(int t, const std::vector<std::uint8_t>& e_prev,
                 const std::vector<double>& prev_p) {
        if (t == c.periods) {
            return 0.0;
        }
        long e_key = 0;
        std::vector<long> p_key;
        for (std::size_t g = 0; g < e_prev.size(); ++g) {
            e_key |= static_cast<long>(e_prev[g]) << g;
            p_key.push_back(std::llround(prev_p[g]));
        }
        const auto key = std::make_tuple(t, e_key, p_key);
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
        const std::size_t ng = c.units.size();
        double best = -1e300;
        for (long mask = 0; mask < (1L << ng); ++mask) {
            std::vector<std::uint8_t> e(ng);
            for (std::size_t g = 0; g < ng; ++g) {
                e[g] = static_cast<std::uint8_t>((mask >> g) & 1);
            }
            std::vector<double> net_load{
                c.loads[0].forecast_profile[static_cast<std::size_t>(t)]};
            const auto d =
                grid::merit_order_dispatch(c, e, prev_p, net_load, {});
            const auto s = grid::stage_costs(c, d, e_prev, e);
            const double r = -s.total() / c.reward_scale();
            best = std::max(best, r + solve(t + 1, e, d.p_gen));
        }
        memo[key] = best;
        return best;
    }
};

} // namespace

TEST_CASE("brute_force_uc on degenerate single-unit cases", "[oracle]") {
    SECTION("zero load: stay off, value 0") {
        const auto c = one_unit_case(0.0, 10.0, 100.0, 10.0, 100.0);
        const auto r = oracle::brute_force_uc(c);
        CHECK(r.best_value == Approx(0.0).margin(1e-12));
        CHECK(r.best_actions[0] == std::vector<std::uint8_t>{0});
        CHECK(r.evaluated_count == 2);
    }
    SECTION("load 50: committing beats shedding") {
        const auto c = one_unit_case(50.0, 10.0, 100.0, 10.0, 100.0);
        const auto r = oracle::brute_force_uc(c);
        CHECK(r.best_actions[0] == std::vector<std::uint8_t>{1});
        // cost = startup 100 + fuel 500, scaled by c_ls * peak = 50000
        CHECK(r.best_value == Approx(-600.0 / 50000.0));
    }
    SECTION("size guard") {
        const auto rts = load_fixture("rts24.json");
        CHECK_THROWS_AS(oracle::brute_force_uc(rts), GuardError);
    }
}

TEST_CASE("brute_force_uc matches an independent DP on toy3", "[oracle]") {
    const auto c = load_fixture("toy3.json");
    const auto r = oracle::brute_force_uc(c);
    CHECK(r.evaluated_count == 4096);

    UcDp dp{c, {}};
    std::vector<std::uint8_t> e0(c.units.size());
    std::vector<double> p0(c.units.size());
    for (std::size_t g = 0; g < c.units.size(); ++g) {
        e0[g] = c.units[g].initial_status ? 1 : 0;
        p0[g] = c.units[g].initial_status ? c.units[g].p_min : 0.0;
    }
    const double dp_value = dp.solve(0, e0, p0);
    CHECK(r.best_value == Approx(dp_value).margin(1e-12));

    SECTION("replaying the argmax schedule reproduces the value") {
        double replay = 0.0;
        rl::roll_schedule(c, 0, r.best_actions, &replay);
        CHECK(replay == Approx(r.best_value).margin(1e-12));
    }
}

TEST_CASE("grid_search_vpp per-step optima", "[oracle]") {
    const auto c = load_fixture("toy3rt.json");
    const auto m = grid::flow_matrices(c);
    const std::vector<std::vector<std::uint8_t>> schedule(
        4, std::vector<std::uint8_t>{1, 1, 0});
    const auto solution = rl::roll_schedule(c, 0, schedule);
    envs::ScenarioGenerator calm({0.0, 0.0, 0.0}, 1);

    SECTION("zero-deviation, untightened hour: optimum is near zero action") {
        envs::RealTimeEnv env(c, m, solution, calm.sample(c, 0, 0));
        const auto r = oracle::grid_search_vpp(env, 1.0); // at t = 0
        CHECK(std::abs(r.best_action[0]) <= 1.0 + 1e-9);
        CHECK(std::abs(r.best_action[1]) <= 1.0 + 1e-9);
        CHECK(r.evaluated_count == 91L * 91L);
    }
    SECTION("pure deficit is met by the VPPs when cheaper than shedding") {
        auto realized = calm.sample(c, 0, 0);
        realized.load[1][0] += 25.0;
        envs::RealTimeEnv env(c, m, solution, realized);
        const auto r = oracle::grid_search_vpp(env, 1.0);
        const double total = r.best_action[0] + r.best_action[1];
        CHECK(total == Approx(25.0).margin(1.0 + 1e-9));
        CHECK(env.evaluate_action(r.best_action).shed_mw ==
              Approx(0.0).margin(1.0));
    }
    SECTION("guard on resolution") {
        envs::RealTimeEnv env(c, m, solution, calm.sample(c, 0, 0));
        CHECK_THROWS_AS(oracle::grid_search_vpp(env, 0.0), GuardError);
        CHECK_THROWS_AS(oracle::grid_search_vpp(env, 0.00001), GuardError);
    }
}

TEST_CASE("priority_list heuristic", "[oracle]") {
    SECTION("small load commits exactly one unit") {
        auto c = one_unit_case(50.0, 10.0, 100.0, 10.0, 100.0);
        c.units.push_back({0, 30.0, 50.0, 5.0, 80.0, 80.0, -80.0, false, 1.0});
        const auto r = oracle::priority_list(c);
        CHECK(r.schedule[0] == std::vector<std::uint8_t>{1, 0});
    }
    SECTION("never better than the exhaustive optimum on toy3") {
        const auto c = load_fixture("toy3.json");
        const auto heur = oracle::priority_list(c);
        const auto exact = oracle::brute_force_uc(c);
        CHECK(heur.value <= exact.best_value + 1e-12);
    }
    SECTION("rts24 nominal day: commits enough capacity to avoid shedding") {
        const auto c = load_fixture("rts24.json");
        for (int day = 0; day < c.num_days(); ++day) {
            const auto r = oracle::priority_list(c, day);
            grid::StageCosts costs;
            rl::roll_schedule(c, day, r.schedule, nullptr, &costs);
            REQUIRE(costs.shed == Approx(0.0).margin(1e-9));
        }
    }
}

TEST_CASE("mlp forward and gradients", "[oracle]") {
    SECTION("zero-weight net returns its output bias") {
        oracle::Mlp m(oracle::MlpSpec{{3, 4, 2}, false});
        // biases live after each layer's weights
        m.params()[3 * 4 + 4 * 2 + 4 + 0] = 0.7;
        m.params()[3 * 4 + 4 * 2 + 4 + 1] = -0.2;
        const std::vector<double> x{1.0, 2.0, 3.0};
        const auto y = m.forward(x);
        CHECK(y[0] == Approx(0.7));
        CHECK(y[1] == Approx(-0.2));
    }
    SECTION("single linear layer computes Wx + b") {
        oracle::Mlp m(oracle::MlpSpec{{2, 2}, false});
        // W row-major (out x in): [[1, 2], [3, 4]], b = [10, 20]
        m.params() = {1.0, 2.0, 3.0, 4.0, 10.0, 20.0};
        const std::vector<double> x{5.0, 6.0};
        const auto y = m.forward(x);
        CHECK(y[0] == Approx(1 * 5 + 2 * 6 + 10));
        CHECK(y[1] == Approx(3 * 5 + 4 * 6 + 20));
    }
    SECTION("gradients match finite differences") {
        Rng rng(3);
        auto m = oracle::Mlp::init(oracle::MlpSpec{{4, 8, 3}, false}, rng);
        std::vector<double> x{0.3, -0.5, 1.2, 0.9};
        const std::vector<double> down{1.0, -0.4, 0.25};
        const auto g = m.param_grads(x, down);
        auto loss = [&] {
            const auto y = m.forward(x);
            return down[0] * y[0] + down[1] * y[1] + down[2] * y[2];
        };
        const auto fd = testutil::fd_gradient(loss, m.params(), 1e-5);
        CHECK(testutil::max_abs_diff(fd, g) < 1e-6);

        const auto gi = m.input_grads(x, down);
        const auto fdi = testutil::fd_gradient(loss, x, 1e-5);
        CHECK(testutil::max_abs_diff(fdi, gi) < 1e-6);
    }
}

TEST_CASE("LP export emits a complete MILP", "[oracle]") {
    const auto c = load_fixture("toy3.json");
    const auto lp = oracle::lp_export_day_ahead(c);
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("Subject To") != std::string::npos);
    CHECK(lp.find("Binary") != std::string::npos);
    CHECK(lp.find("End") != std::string::npos);
    // one balance row per period
    std::size_t count = 0, pos = 0;
    while ((pos = lp.find("bal_", pos)) != std::string::npos) {
        ++count;
        pos += 4;
    }
    CHECK(count == 4);
}
