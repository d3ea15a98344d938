#include "mlpp/problems/factory.hpp"

#include <stdexcept>

#include "mlpp/problems/car_navigation.hpp"
#include "mlpp/problems/pendulum.hpp"
#include "mlpp/problems/tiger.hpp"

namespace mlpp {

namespace {

using nlohmann::json;

void read_schedule(const json& j, LevelSchedule& sched) {
    if (!j.contains("level_schedule")) return;
    const json& s = j.at("level_schedule");
    sched.c1 = s.value("c1", sched.c1);
    sched.c2 = s.value("c2", sched.c2);
    sched.max_level = s.value("levels", sched.max_level);
    sched.validate();
}

std::shared_ptr<const PomdpModel> make_tiger(const json& j) {
    TigerConfig cfg;
    cfg.listen_accuracy = j.value("listen_accuracy", cfg.listen_accuracy);
    cfg.discount = j.value("discount", cfg.discount);
    cfg.max_steps = j.value("max_steps", cfg.max_steps);
    cfg.levels = j.value("levels", cfg.levels);
    return std::make_shared<TigerModel>(cfg);
}

std::shared_ptr<const PomdpModel> make_car(const json& j) {
    CarNavConfig cfg;
    read_schedule(j, cfg.schedule);
    cfg.sigma_accel = j.value("sigma_accel", cfg.sigma_accel);
    cfg.sigma_steer = j.value("sigma_steer", cfg.sigma_steer);
    cfg.sigma_obs_signal = j.value("sigma_obs_signal", cfg.sigma_obs_signal);
    cfg.sigma_obs_speed = j.value("sigma_obs_speed", cfg.sigma_obs_speed);
    cfg.obs_grid_signal = j.value("obs_grid_signal", cfg.obs_grid_signal);
    cfg.obs_grid_speed = j.value("obs_grid_speed", cfg.obs_grid_speed);
    cfg.min_speed = j.value("min_speed", cfg.min_speed);
    cfg.max_speed = j.value("max_speed", cfg.max_speed);
    cfg.max_steps = j.value("max_steps", cfg.max_steps);
    cfg.discount = j.value("discount", cfg.discount);
    if (j.contains("start")) {
        const auto& v = j.at("start");
        for (std::size_t i = 0; i < 4 && i < v.size(); ++i) cfg.start.c[i] = v[i];
    }
    if (j.contains("goal")) {
        const auto& g = j.at("goal");
        cfg.goal = {g.at("x"), g.at("y"), g.at("radius")};
    }
    if (j.contains("obstacles")) {
        cfg.obstacles.clear();
        for (const auto& b : j.at("obstacles")) {
            cfg.obstacles.push_back({b.at(0), b.at(1), b.at(2), b.at(3)});
        }
    }
    if (j.contains("beacons")) {
        cfg.beacons.clear();
        for (const auto& b : j.at("beacons")) cfg.beacons.push_back({b.at(0), b.at(1)});
    }
    if (j.contains("accel_actions")) {
        cfg.accel_actions = j.at("accel_actions").get<std::vector<double>>();
    }
    if (j.contains("steer_actions")) {
        cfg.steer_actions = j.at("steer_actions").get<std::vector<double>>();
    }
    return std::make_shared<CarNavModel>(cfg);
}

std::shared_ptr<const PomdpModel> make_pendulum(const json& j) {
    PendulumConfig cfg;
    read_schedule(j, cfg.schedule);
    cfg.torque_limit = j.value("torque_limit", cfg.torque_limit);
    cfg.sigma_torque = j.value("sigma_torque", cfg.sigma_torque);
    cfg.sigma_obs_pos = j.value("sigma_obs_pos", cfg.sigma_obs_pos);
    cfg.sigma_obs_vel = j.value("sigma_obs_vel", cfg.sigma_obs_vel);
    cfg.damping = j.value("damping", cfg.damping);
    cfg.goal_angle_tol = j.value("goal_angle_tol", cfg.goal_angle_tol);
    cfg.goal_vel_tol = j.value("goal_vel_tol", cfg.goal_vel_tol);
    cfg.max_steps = j.value("max_steps", cfg.max_steps);
    cfg.discount = j.value("discount", cfg.discount);
    return std::make_shared<PendulumModel>(cfg);
}

}  // namespace

IdenticalLevelsModel::IdenticalLevelsModel(std::shared_ptr<const PomdpModel> base, int levels)
    : base_(std::move(base)), levels_(levels) {
    if (levels_ < 1) throw std::invalid_argument("identical-levels wrapper needs >= 1 level");
}

std::shared_ptr<const PomdpModel> make_model(const nlohmann::json& scenario) {
    if (!scenario.contains("name")) {
        throw std::invalid_argument("scenario section is missing the 'name' key");
    }
    const std::string name = scenario.at("name");
    std::shared_ptr<const PomdpModel> model;
    if (name == "tiger") {
        model = make_tiger(scenario);
    } else if (name == "car-nav-lite") {
        model = make_car(scenario);
    } else if (name == "pendulum") {
        model = make_pendulum(scenario);
    } else {
        throw std::invalid_argument("unknown scenario '" + name + "'");
    }
    if (scenario.value("identical_levels", false)) {
        const int levels = scenario.value("identical_level_count", model->level_count());
        model = std::make_shared<IdenticalLevelsModel>(model, levels);
    }
    return model;
}

std::vector<std::string> known_scenarios() { return {"tiger", "car-nav-lite", "pendulum"}; }

double default_exploration(std::string_view scenario_name) {
    if (scenario_name == "tiger") return 30.0;
    if (scenario_name == "car-nav-lite") return 4000.0;
    if (scenario_name == "pendulum") return 400.0;
    return 1.0;
}

}  // namespace mlpp
