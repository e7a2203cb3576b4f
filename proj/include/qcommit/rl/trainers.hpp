// Copyright 2026 The qcommit authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file trainers.hpp
 * End-to-end training pipelines: DQN over the day-ahead environment and SAC
 * over scenario-sampled real-time episodes, both runnable with quantum or
 * classical function approximators. All randomness flows through tagged
 * Rng streams of the config seed, so a (case, config) pair fully determines
 * every trajectory and parameter update.
 */
#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qcommit/envs/day_ahead.hpp"
#include "qcommit/envs/real_time.hpp"
#include "qcommit/qmodels/qnetwork.hpp"
#include "qcommit/rl/dqn.hpp"
#include "qcommit/rl/sac.hpp"

namespace qcommit::rl {

struct TrainConfig {
    std::string agent = "quantum"; // "quantum" or "classical"
    int episodes = 500;
    int batch_size = 64;
    long buffer_capacity = 20000;
    int warmup_batches = 10; // no updates until buffer >= warmup * batch
    int updates_per_step = 2;
    double gamma = 1.0; // episodic, short horizon
    EpsSchedule eps{1.0, 0.0, 1200};
    long target_sync = 100;

    // learning rates per parameter group
    double lr_theta = 0.05;
    double lr_readout = 0.01;
    double lr_encoder = 0.01;
    double lr_log_std = 0.003;
    double lr_critic = 0.003;
    double lr_mlp = 0.003;
    bool adaptive_theta = false; // Adam instead of plain descent for theta

    // quantum model dims
    int qubits = 4;
    int layers = 2;
    bool per_qubit_theta = false;
    // classical model dims
    std::vector<int> mlp_hidden{24, 24};
    std::vector<int> critic_hidden{32, 32};

    // SAC
    double tau = 0.01;
    double alpha_temp = 0.02;
    bool clipped_double_q = true;
    int actor_every = 1; // actor updates per critic update cadence

    // environment
    int day = 0;
    double reward_scale = 0.0; // 0 = the case default
    envs::ScenarioSigmas sigmas;
    std::uint64_t seed = 1;
    bool dqn_factorized = false; // forced on above 6 units

    DqnConfig dqn() const { return {batch_size, gamma, eps, target_sync}; }
    SacConfig sac() const {
        return {batch_size, gamma, tau, alpha_temp, clipped_double_q};
    }
};

// Stream tags for the per-run Rng tree.
inline constexpr std::uint64_t kStreamInit = 1;
inline constexpr std::uint64_t kStreamExplore = 2;
inline constexpr std::uint64_t kStreamReplay = 3;
inline constexpr std::uint64_t kStreamScenario = 4;
inline constexpr std::uint64_t kStreamSacNoise = 5;

struct CurvePoint {
    int episode = 0;
    double ret = 0.0;
    double violation = 0.0; // blank in day-ahead CSVs
    double epsilon = 0.0;   // blank in real-time CSVs
    double loss = 0.0;
};

/// Eq (9) bookkeeping: e_t - e_{t-1} = su - sd with su*sd = 0, checked at
/// every recorded step.
struct TransitionAudit {
    long checked = 0;
    long violations = 0;

    void record(std::span<const std::uint8_t> e_prev,
                std::span<const std::uint8_t> e,
                std::span<const std::uint8_t> su,
                std::span<const std::uint8_t> sd) {
        for (std::size_t g = 0; g < e.size(); ++g) {
            ++checked;
            const int delta = static_cast<int>(e[g]) -
                              static_cast<int>(e_prev[g]);
            const int flags = static_cast<int>(su[g]) -
                              static_cast<int>(sd[g]);
            if (delta != flags || (su[g] && sd[g])) {
                ++violations;
            }
        }
    }
};

namespace detail {

inline oracle::MlpSpec dqn_mlp_spec(int in_dim,
                                    const std::vector<int>& hidden,
                                    int outputs) {
    oracle::MlpSpec spec;
    spec.dims.push_back(in_dim);
    for (int h : hidden) {
        spec.dims.push_back(h);
    }
    spec.dims.push_back(outputs);
    spec.tanh_output = false;
    return spec;
}

template <class Model>
Optimizer make_dqn_optimizer(const Model& model, const TrainConfig& cfg) {
    const std::vector<GroupSetting> settings{
        {ParamGroupKind::theta, cfg.lr_theta, cfg.adaptive_theta},
        {ParamGroupKind::readout, cfg.lr_readout, true},
        {ParamGroupKind::encoder, cfg.lr_encoder, true},
        {ParamGroupKind::dense, cfg.lr_mlp, true},
    };
    return Optimizer(model.param_groups(), settings, model.params().size());
}

template <class Actor>
Optimizer make_actor_optimizer(const Actor& actor, const TrainConfig& cfg) {
    const std::vector<GroupSetting> settings{
        {ParamGroupKind::theta, cfg.lr_theta, cfg.adaptive_theta},
        {ParamGroupKind::readout, cfg.lr_readout, true},
        {ParamGroupKind::encoder, cfg.lr_encoder, true},
        {ParamGroupKind::log_std, cfg.lr_log_std, true},
        {ParamGroupKind::dense, cfg.lr_mlp, true},
    };
    return Optimizer(actor.param_groups(), settings, actor.params().size());
}

} // namespace detail

template <class Model> struct DaTrainOutput {
    DqnAgent<Model> agent;
    std::vector<CurvePoint> curve;
    TransitionAudit audit;
};

/// Builds the day-ahead agent for the given case (shared by the trainer and
/// checkpoint loading).
template <class Model>
DqnAgent<Model> make_da_agent(const grid::GridCase& c, const TrainConfig& cfg,
                              Model model) {
    const int units = static_cast<int>(c.units.size());
    auto codec = UcActionCodec::auto_mode(units, cfg.dqn_factorized);
    auto opt = detail::make_dqn_optimizer(model, cfg);
    return DqnAgent<Model>(std::move(model), codec, std::move(opt),
                           cfg.dqn());
}

inline qmodels::QNetwork init_da_qnetwork(const grid::GridCase& c,
                                          const TrainConfig& cfg) {
    const int units = static_cast<int>(c.units.size());
    const auto codec = UcActionCodec::auto_mode(units, cfg.dqn_factorized);
    Rng init = Rng(cfg.seed).stream(kStreamInit);
    return qmodels::QNetwork::init(
        qmodels::QNetworkDims{envs::DayAheadEnv::obs_dim(c), cfg.qubits,
                              cfg.layers, codec.model_outputs(),
                              cfg.per_qubit_theta},
        init);
}

inline oracle::Mlp init_da_mlp(const grid::GridCase& c,
                               const TrainConfig& cfg) {
    const int units = static_cast<int>(c.units.size());
    const auto codec = UcActionCodec::auto_mode(units, cfg.dqn_factorized);
    Rng init = Rng(cfg.seed).stream(kStreamInit);
    return oracle::Mlp::init(
        detail::dqn_mlp_spec(envs::DayAheadEnv::obs_dim(c), cfg.mlp_hidden,
                             codec.model_outputs()),
        init);
}

/**
 * @brief Day-ahead DQN training: epsilon-greedy rollouts, replay, per-step
 * updates after warm-up, periodic hard target syncs.
 */
template <class Model>
DaTrainOutput<Model> train_day_ahead(const grid::GridCase& c,
                                     const TrainConfig& cfg, Model model) {
    DaTrainOutput<Model> out{make_da_agent(c, cfg, std::move(model)), {}, {}};
    auto& agent = out.agent;

    Rng root(cfg.seed);
    Rng explore = root.stream(kStreamExplore);
    Rng replay = root.stream(kStreamReplay);
    ReplayBuffer<long> buffer(
        static_cast<std::size_t>(cfg.buffer_capacity));

    const std::size_t warmup = static_cast<std::size_t>(cfg.warmup_batches) *
                               static_cast<std::size_t>(cfg.batch_size);
    long global_step = 0;
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        const int day = cfg.day >= 0 ? cfg.day : ep % c.num_days();
        envs::DayAheadEnv env(c, day, cfg.seed, cfg.reward_scale);
        double ep_return = 0.0;
        double loss_sum = 0.0;
        int loss_count = 0;
        const double eps_at_start = cfg.eps.at(global_step);
        bool done = false;
        while (!done) {
            const auto obs = env.observe();
            const auto e_prev = env.state().e_prev;
            const long action =
                agent.select_action(obs, global_step, explore);
            const auto mask = agent.codec().to_mask(action);
            const auto outcome = env.step(mask);
            out.audit.record(e_prev, mask, outcome.startup,
                             outcome.shutdown);
            ep_return += outcome.reward;
            done = outcome.done;
            buffer.push({obs, action, outcome.reward, env.observe(),
                         static_cast<std::uint8_t>(done)});
            ++global_step;
            if (buffer.size() >= warmup &&
                buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                for (int u = 0; u < cfg.updates_per_step; ++u) {
                    const auto batch = buffer.sample(
                        static_cast<std::size_t>(cfg.batch_size), replay);
                    loss_sum += agent.update(batch);
                    ++loss_count;
                }
            }
            if (global_step % cfg.target_sync == 0) {
                agent.sync_target();
            }
        }
        out.curve.push_back({ep, ep_return, 0.0, eps_at_start,
                             loss_count ? loss_sum / loss_count : 0.0});
    }
    return out;
}

/// Greedy (epsilon = 0) rollout of a day-ahead policy; the frozen solution
/// feeds the real-time stage.
template <class Model>
envs::DaSolution freeze_day_ahead(const grid::GridCase& c, int day,
                                  const DqnAgent<Model>& agent,
                                  double reward_scale = 0.0,
                                  TransitionAudit* audit = nullptr,
                                  double* total_reward = nullptr,
                                  grid::StageCosts* costs = nullptr) {
    envs::DayAheadEnv env(c, day, 0, reward_scale);
    envs::DaSolution sol;
    bool done = false;
    while (!done) {
        const auto obs = env.observe();
        const auto e_prev = env.state().e_prev;
        const long action = agent.greedy_action(obs);
        const auto mask = agent.codec().to_mask(action);
        const auto outcome = env.step(mask);
        if (audit) {
            audit->record(e_prev, mask, outcome.startup, outcome.shutdown);
        }
        if (total_reward) {
            *total_reward += outcome.reward;
        }
        if (costs) {
            costs->fuel += outcome.costs.fuel;
            costs->startup += outcome.costs.startup;
            costs->shed += outcome.costs.shed;
        }
        sol.e.push_back(mask);
        sol.p_gen.push_back(outcome.dispatch.p_gen);
        done = outcome.done;
    }
    return sol;
}

/// Rolls a fixed commitment schedule through the day-ahead environment.
inline envs::DaSolution
roll_schedule(const grid::GridCase& c, int day,
              const std::vector<std::vector<std::uint8_t>>& schedule,
              double* total_reward = nullptr,
              grid::StageCosts* costs = nullptr) {
    envs::DayAheadEnv env(c, day);
    envs::DaSolution sol;
    for (const auto& mask : schedule) {
        const auto outcome = env.step(mask);
        if (total_reward) {
            *total_reward += outcome.reward;
        }
        if (costs) {
            costs->fuel += outcome.costs.fuel;
            costs->startup += outcome.costs.startup;
            costs->shed += outcome.costs.shed;
        }
        sol.e.push_back(mask);
        sol.p_gen.push_back(outcome.dispatch.p_gen);
    }
    return sol;
}

template <class Actor> struct RtTrainOutput {
    SacAgent<Actor> agent;
    std::vector<CurvePoint> curve;
    TransitionAudit audit;
};

inline std::vector<double> vpp_lows(const grid::GridCase& c) {
    std::vector<double> lo;
    for (const auto& v : c.vpps) {
        lo.push_back(-v.p_vpp_max);
    }
    return lo;
}
inline std::vector<double> vpp_highs(const grid::GridCase& c) {
    std::vector<double> hi;
    for (const auto& v : c.vpps) {
        hi.push_back(v.p_vpp_max);
    }
    return hi;
}

inline qmodels::QuantumActor init_rt_qactor(const grid::GridCase& c,
                                            const TrainConfig& cfg) {
    Rng init = Rng(cfg.seed).stream(kStreamInit);
    const int adim = static_cast<int>(c.vpps.size());
    return qmodels::QuantumActor::init(
        qmodels::QuantumActorDims{envs::RealTimeEnv::obs_dim(c), cfg.qubits,
                                  cfg.layers, adim, cfg.per_qubit_theta},
        vpp_lows(c), vpp_highs(c), init);
}

inline oracle::ClassicalActor init_rt_cactor(const grid::GridCase& c,
                                             const TrainConfig& cfg) {
    Rng init = Rng(cfg.seed).stream(kStreamInit);
    oracle::MlpSpec spec = detail::dqn_mlp_spec(
        envs::RealTimeEnv::obs_dim(c), cfg.mlp_hidden,
        static_cast<int>(c.vpps.size()));
    spec.tanh_output = true;
    return oracle::ClassicalActor::init(spec, vpp_lows(c), vpp_highs(c),
                                        init);
}

template <class Actor>
SacAgent<Actor> make_rt_agent(const grid::GridCase& c, const TrainConfig& cfg,
                              Actor actor) {
    Rng init = Rng(cfg.seed).stream(kStreamInit);
    Rng c1init = init.stream(11);
    Rng c2init = init.stream(12);
    const auto critic_spec = detail::dqn_mlp_spec(
        envs::RealTimeEnv::obs_dim(c) + static_cast<int>(c.vpps.size()),
        cfg.critic_hidden, 1);
    auto critic1 = oracle::Mlp::init(critic_spec, c1init);
    auto critic2 = oracle::Mlp::init(critic_spec, c2init);
    auto actor_opt = detail::make_actor_optimizer(actor, cfg);
    const std::vector<GroupSetting> critic_settings{
        {ParamGroupKind::dense, cfg.lr_critic, true}};
    Optimizer c1opt(critic1.param_groups(), critic_settings,
                    critic1.params().size());
    Optimizer c2opt(critic2.param_groups(), critic_settings,
                    critic2.params().size());
    return SacAgent<Actor>(std::move(actor), std::move(critic1),
                           std::move(critic2), std::move(actor_opt),
                           std::move(c1opt), std::move(c2opt), cfg.sac());
}

/**
 * @brief Real-time SAC training over sampled scenarios of one day, on top
 * of a frozen day-ahead solution. Episode k uses scenario k.
 */
template <class Actor>
RtTrainOutput<Actor> train_real_time(const grid::GridCase& c,
                                     const grid::FlowMatrices& matrices,
                                     const envs::DaSolution& solution,
                                     const TrainConfig& cfg, Actor actor) {
    RtTrainOutput<Actor> out{make_rt_agent(c, cfg, std::move(actor)), {}, {}};
    auto& agent = out.agent;

    Rng root(cfg.seed);
    Rng noise = root.stream(kStreamSacNoise);
    Rng replay = root.stream(kStreamReplay);
    Rng update_noise = root.stream(kStreamExplore);
    const envs::ScenarioGenerator gen(cfg.sigmas,
                                      derive_seed(cfg.seed, kStreamScenario));
    ReplayBuffer<std::vector<double>> buffer(
        static_cast<std::size_t>(cfg.buffer_capacity));
    const std::size_t warmup = static_cast<std::size_t>(cfg.warmup_batches) *
                               static_cast<std::size_t>(cfg.batch_size);

    // Eq (9) consistency of the frozen schedule, audited once per episode.
    auto audit_schedule = [&] {
        std::vector<std::uint8_t> e_prev(c.units.size());
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            e_prev[g] = c.units[g].initial_status ? 1 : 0;
        }
        for (const auto& e : solution.e) {
            std::vector<std::uint8_t> su(c.units.size()), sd(c.units.size());
            for (std::size_t g = 0; g < c.units.size(); ++g) {
                su[g] = (e[g] && !e_prev[g]) ? 1 : 0;
                sd[g] = (!e[g] && e_prev[g]) ? 1 : 0;
            }
            out.audit.record(e_prev, e, su, sd);
            e_prev = e;
        }
    };

    for (int ep = 0; ep < cfg.episodes; ++ep) {
        envs::RealTimeEnv env(c, matrices, solution,
                              gen.sample(c, cfg.day, ep), cfg.day,
                              cfg.reward_scale);
        audit_schedule();
        double ep_return = 0.0;
        double ep_violation = 0.0;
        double loss_sum = 0.0;
        int loss_count = 0;
        while (!env.terminal()) {
            const auto obs = env.observe();
            const auto action = agent.act(obs, &noise);
            const auto outcome = env.step(action);
            ep_return += outcome.reward;
            ep_violation += outcome.violation_degree;
            buffer.push({obs, outcome.action, outcome.reward, env.observe(),
                         static_cast<std::uint8_t>(outcome.done)});
            if (buffer.size() >= warmup &&
                buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                for (int u = 0; u < cfg.updates_per_step; ++u) {
                    const auto batch = buffer.sample(
                        static_cast<std::size_t>(cfg.batch_size), replay);
                    const auto [l1, l2] =
                        agent.critic_update(batch, update_noise);
                    if ((u + 1) % cfg.actor_every == 0) {
                        agent.actor_update(batch, update_noise);
                    }
                    agent.polyak();
                    loss_sum += 0.5 * (l1 + l2);
                    ++loss_count;
                }
            }
        }
        out.curve.push_back({ep, ep_return, ep_violation, 0.0,
                             loss_count ? loss_sum / loss_count : 0.0});
    }
    return out;
}

/// Deterministic rollout of a fixed action per step (used for baselines and
/// evaluation); returns (return, violation degree, sum |action| MW).
template <class Policy>
inline std::array<double, 3>
rollout_real_time(const grid::GridCase& c, const grid::FlowMatrices& matrices,
                  const envs::DaSolution& solution,
                  const envs::RealizedProfiles& realized, Policy&& policy,
                  int day = 0, double reward_scale = 0.0) {
    envs::RealTimeEnv env(c, matrices, solution, realized, day, reward_scale);
    double ret = 0.0, violation = 0.0, adjustment = 0.0;
    while (!env.terminal()) {
        const auto obs = env.observe();
        const std::vector<double> action = policy(env, obs);
        const auto outcome = env.step(action);
        ret += outcome.reward;
        violation += outcome.violation_degree;
        for (double a : outcome.action) {
            adjustment += std::abs(a);
        }
    }
    return {ret, violation, adjustment};
}

} // namespace qcommit::rl
