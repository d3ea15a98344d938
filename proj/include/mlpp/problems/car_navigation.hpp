#pragma once

#include <vector>

#include "mlpp/pomdp.hpp"

namespace mlpp {

struct Box {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

struct Disc {
    double x = 0.0, y = 0.0, radius = 0.0;

    bool contains(double px, double py) const {
        const double dx = px - x, dy = py - y;
        return dx * dx + dy * dy <= radius * radius;
    }
};

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct CarAction {
    double accel = 0.0;
    double steer = 0.0;
};

/// One exact kinematic update of the car (simultaneous component update):
///   x += dt * v * cos(theta)
///   y += dt * v * sin(theta)
///   theta += dt * tan(steer + steer_noise) / axle   (wrapped to (-pi, pi])
///   v += dt * (accel + accel_noise)
State car_dynamics(const State& s, const CarAction& a, double accel_noise, double steer_noise,
                   double dt, double axle = 0.11);

/// Nonholonomic car on a planar map with beacons, box obstacles and a disc
/// goal. One planner action spans `schedule.c1` seconds of simulated time at
/// every level; level l integrates it in substeps of parameter(l). Control
/// noise is resolved once per action from the noise draw and held across
/// substeps, so all levels interpret the draw identically.
struct CarNavConfig {
    LevelSchedule schedule{0.4, 1.0, 3};
    double axle = 0.11;
    std::vector<double> accel_actions{-1.0, 0.0, 1.0};
    std::vector<double> steer_actions{-0.1, 0.0, 0.1};
    double sigma_accel = 0.1;
    double sigma_steer = 0.01;
    double sigma_obs_signal = 0.02;
    double sigma_obs_speed = 0.05;
    double obs_grid_signal = 0.2;
    double obs_grid_speed = 1.0;
    double heuristic_grid = 0.1;        // resolution of the goal-distance field
    double heuristic_inflation = 0.5;  // obstacle margin in the field only
    // Collision tests sample the substep chord at this spacing at every
    // level, so detection sensitivity does not depend on the level.
    double collision_check_spacing = 0.06;
    double min_speed = -1.0;
    double max_speed = 1.2;
    State start{{1.0, 3.3, 0.0, 0.0}, 0};
    Disc goal{6.2, 3.0, 0.6};
    // Closed arena [0,7]x[0,6.5] (frame boxes) with one thin interior wall
    // leaving a gap at the top; the route over it takes ~20 actions. The
    // wall is thinner than a full-speed coarsest-level sweep, so level 0
    // can step across it where finer levels detect the hit.
    std::vector<Box> obstacles{{-0.5, -0.5, 7.5, 0.0}, {-0.5, 6.5, 7.5, 7.0},
                               {-0.5, -0.5, 0.0, 7.0}, {7.0, -0.5, 7.5, 7.0},
                               {3.0, 0.0, 3.4, 4.2}};
    std::vector<Vec2> beacons{{3.25, 5.5}, {6.0, 2.8}};
    double goal_reward = 10000.0;
    double collision_penalty = -500.0;
    double step_penalty = -1.0;
    double discount = 0.99;
    int max_steps = 500;
};

class CarNavModel final : public PomdpModel {
public:
    static constexpr std::int32_t kDriving = 0;
    static constexpr std::int32_t kCollided = 1;
    static constexpr std::int32_t kAtGoal = 2;

    explicit CarNavModel(CarNavConfig cfg = {});

    std::string_view name() const override { return "car-nav-lite"; }
    int action_count() const override { return static_cast<int>(actions_.size()); }
    int level_count() const override { return cfg_.schedule.max_level + 1; }
    int noise_dim() const override { return 5; }
    double discount() const override { return cfg_.discount; }
    int max_steps() const override { return cfg_.max_steps; }

    StepResult step(int level, const State& s, int action, const NoiseDraw& psi,
                    double noise_scale) const override;
    double reward(const State& s, int action) const override;
    bool is_terminal(const State& s) const override { return s.d != kDriving; }
    TerminalKind terminal_kind(const State& s) const override;
    double heuristic(const State& s) const override;
    double observation_likelihood(const State& next, int action,
                                  const Observation& o) const override;
    ObsKey observation_key(const Observation& o) const override;
    State sample_initial_state(Rng& /*rng*/) const override { return cfg_.start; }
    std::int64_t step_cost(int level) const override;

    const CarNavConfig& config() const { return cfg_; }
    CarAction action_values(int action) const { return actions_[static_cast<std::size_t>(action)]; }

    /// Beacon selection weights at a position (inverse euclidean distance,
    /// normalized). A position on top of a beacon selects it surely.
    std::vector<double> beacon_weights(double x, double y) const;

    /// Noiseless observation mean given the selected beacon.
    void observation_mean(const State& s, std::size_t beacon, double& signal,
                          double& speed) const;

    /// Obstacle-aware shortest-path distance from (x, y) to the goal region
    /// (Dijkstra over an 8-connected grid, precomputed at construction).
    /// Positions with no path, or outside the field, fall back to the
    /// euclidean distance.
    double goal_distance(double x, double y) const;

private:
    int substeps(int level) const { return cfg_.schedule.substeps(cfg_.schedule.c1, level); }
    void build_distance_field();

    CarNavConfig cfg_;
    std::vector<CarAction> actions_;

    // Distance field over the arena bounding box.
    double field_x0_ = 0.0, field_y0_ = 0.0;
    int field_nx_ = 0, field_ny_ = 0;
    std::vector<double> field_;
};

}  // namespace mlpp
