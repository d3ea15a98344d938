#pragma once

#include "mlpp/pomdp.hpp"

namespace mlpp {

/// Torque-limited pendulum swing-up. State is (angle, angular velocity) with
/// angle 0 hanging down; the goal is an upright band. Actions apply +/- the
/// torque limit for a fixed control duration; fidelity levels integrate that
/// duration with RK4 at resolution parameter(l). Torque noise is resolved
/// once per action and held across substeps.
struct PendulumConfig {
    LevelSchedule schedule{0.0128, 1.0, 4};
    double control_duration = 0.1;
    double mass = 1.0;
    double length = 1.0;
    double damping = 0.15;
    double gravity = 9.81;
    double torque_limit = 5.0;
    double sigma_torque = 0.4;
    double sigma_obs_pos = 0.05;
    double sigma_obs_vel = 0.1;
    double obs_grid_pos = 0.25;
    double obs_grid_vel = 1.0;
    double goal_angle_tol = 0.3;
    double goal_vel_tol = 1.0;
    double goal_reward = 1000.0;
    double step_penalty = -1.0;
    double discount = 0.98;
    int max_steps = 60;
};

class PendulumModel final : public PomdpModel {
public:
    static constexpr std::int32_t kSwinging = 0;
    static constexpr std::int32_t kAtGoal = 1;

    explicit PendulumModel(PendulumConfig cfg = {});

    std::string_view name() const override { return "pendulum"; }
    int action_count() const override { return 2; }  // -torque_limit, +torque_limit
    int level_count() const override { return cfg_.schedule.max_level + 1; }
    int noise_dim() const override { return 4; }
    double discount() const override { return cfg_.discount; }
    int max_steps() const override { return cfg_.max_steps; }

    StepResult step(int level, const State& s, int action, const NoiseDraw& psi,
                    double noise_scale) const override;
    double reward(const State& s, int action) const override;
    bool is_terminal(const State& s) const override { return s.d == kAtGoal; }
    TerminalKind terminal_kind(const State& s) const override {
        return s.d == kAtGoal ? TerminalKind::goal : TerminalKind::none;
    }
    double heuristic(const State& s) const override;
    double observation_likelihood(const State& next, int action,
                                  const Observation& o) const override;
    ObsKey observation_key(const Observation& o) const override;
    State sample_initial_state(Rng& /*rng*/) const override { return State{}; }
    std::int64_t step_cost(int level) const override { return substeps(level); }

    const PendulumConfig& config() const { return cfg_; }
    double torque_value(int action) const {
        return action == 0 ? -cfg_.torque_limit : cfg_.torque_limit;
    }
    int substeps(int level) const {
        return cfg_.schedule.substeps(cfg_.control_duration, level);
    }

private:
    bool in_goal_band(double angle, double vel) const;

    PendulumConfig cfg_;
};

}  // namespace mlpp
