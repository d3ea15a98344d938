#include "mlpp/problems/pendulum.hpp"

#include <cmath>
#include <stdexcept>

#include "mlpp/math.hpp"

namespace mlpp {

PendulumModel::PendulumModel(PendulumConfig cfg) : cfg_(cfg) {
    cfg_.schedule.validate();
    if (cfg_.mass <= 0.0 || cfg_.length <= 0.0) {
        throw std::invalid_argument("pendulum needs positive mass and length");
    }
}

bool PendulumModel::in_goal_band(double angle, double vel) const {
    return std::abs(wrap_angle(angle - kPi)) < cfg_.goal_angle_tol &&
           std::abs(vel) < cfg_.goal_vel_tol;
}

StepResult PendulumModel::step(int level, const State& s, int action, const NoiseDraw& psi,
                               double noise_scale) const {
    StepResult out;
    out.state = s;
    if (!is_terminal(s)) {
        const double torque = torque_value(action) +
                              noise_scale * cfg_.sigma_torque * normal_quantile(psi[0]);
        const double inertia = cfg_.mass * cfg_.length * cfg_.length;
        const auto accel = [&](double theta, double omega) {
            return (torque - cfg_.damping * omega -
                    cfg_.mass * cfg_.gravity * cfg_.length * std::sin(theta)) /
                   inertia;
        };
        const int n = substeps(level);
        const double dt = cfg_.control_duration / n;
        double theta = s.c[0], omega = s.c[1];
        std::int32_t status = kSwinging;
        for (int k = 0; k < n; ++k) {
            const double k1t = omega, k1w = accel(theta, omega);
            const double k2t = omega + 0.5 * dt * k1w;
            const double k2w = accel(theta + 0.5 * dt * k1t, omega + 0.5 * dt * k1w);
            const double k3t = omega + 0.5 * dt * k2w;
            const double k3w = accel(theta + 0.5 * dt * k2t, omega + 0.5 * dt * k2w);
            const double k4t = omega + dt * k3w;
            const double k4w = accel(theta + dt * k3t, omega + dt * k3w);
            theta += dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
            omega += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            if (in_goal_band(theta, omega)) {
                status = kAtGoal;
                break;
            }
        }
        out.state.c[0] = theta;
        out.state.c[1] = omega;
        out.state.d = status;
    }

    // Sensors: end-effector position in the plane plus joint velocity.
    const double theta = out.state.c[0], omega = out.state.c[1];
    out.obs.c[0] = cfg_.length * std::sin(theta) +
                   noise_scale * cfg_.sigma_obs_pos * normal_quantile(psi[1]);
    out.obs.c[1] = -cfg_.length * std::cos(theta) +
                   noise_scale * cfg_.sigma_obs_pos * normal_quantile(psi[2]);
    out.obs.c[2] = omega + noise_scale * cfg_.sigma_obs_vel * normal_quantile(psi[3]);
    return out;
}

double PendulumModel::reward(const State& s, int /*action*/) const {
    return s.d == kAtGoal ? cfg_.goal_reward : cfg_.step_penalty;
}

double PendulumModel::heuristic(const State& s) const {
    if (is_terminal(s)) return 0.0;
    const double ang_dist = std::abs(wrap_angle(s.c[0] - kPi));
    // Fractional steps-to-go at a generous reference rate keep the estimate
    // smooth in the state.
    constexpr double omega_ref = 6.0;
    const double per_step = omega_ref * cfg_.control_duration;
    const double k = ang_dist / per_step;
    const double g = cfg_.discount;
    const double gk = std::pow(g, k);
    return gk * cfg_.goal_reward + cfg_.step_penalty * (1.0 - gk) / (1.0 - g);
}

double PendulumModel::observation_likelihood(const State& next, int /*action*/,
                                             const Observation& o) const {
    const double ex = cfg_.length * std::sin(next.c[0]);
    const double ey = -cfg_.length * std::cos(next.c[0]);
    return normal_pdf(o.c[0], ex, cfg_.sigma_obs_pos) *
           normal_pdf(o.c[1], ey, cfg_.sigma_obs_pos) *
           normal_pdf(o.c[2], next.c[1], cfg_.sigma_obs_vel);
}

ObsKey PendulumModel::observation_key(const Observation& o) const {
    const auto pack = [](double v, double grid) {
        const auto k = static_cast<std::int64_t>(std::floor(v / grid));
        return static_cast<std::uint64_t>(k) & 0x1fffffULL;  // 21-bit cells
    };
    return static_cast<ObsKey>((pack(o.c[0], cfg_.obs_grid_pos) << 42) |
                               (pack(o.c[1], cfg_.obs_grid_pos) << 21) |
                               pack(o.c[2], cfg_.obs_grid_vel));
}

}  // namespace mlpp
