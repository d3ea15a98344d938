#include "mlpp/problems/car_navigation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "mlpp/math.hpp"

namespace mlpp {

State car_dynamics(const State& s, const CarAction& a, double accel_noise, double steer_noise,
                   double dt, double axle) {
    State out = s;
    const double x = s.c[0], y = s.c[1], theta = s.c[2], v = s.c[3];
    out.c[0] = x + dt * v * std::cos(theta);
    out.c[1] = y + dt * v * std::sin(theta);
    out.c[2] = wrap_angle(theta + dt * std::tan(a.steer + steer_noise) / axle);
    out.c[3] = v + dt * (a.accel + accel_noise);
    return out;
}

CarNavModel::CarNavModel(CarNavConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.schedule.validate();
    if (cfg_.beacons.empty()) throw std::invalid_argument("car map needs at least one beacon");
    for (const auto& box : cfg_.obstacles) {
        if (cfg_.goal.contains(std::clamp(cfg_.goal.x, box.x0, box.x1),
                               std::clamp(cfg_.goal.y, box.y0, box.y1))) {
            throw std::invalid_argument("goal region overlaps an obstacle");
        }
    }
    for (double accel : cfg_.accel_actions) {
        for (double steer : cfg_.steer_actions) {
            actions_.push_back({accel, steer});
        }
    }
    if (actions_.empty()) throw std::invalid_argument("empty car action grid");
    build_distance_field();
}

void CarNavModel::build_distance_field() {
    // Arena bounding box: everything named by the map plus a margin.
    double x0 = cfg_.start.c[0], x1 = x0, y0 = cfg_.start.c[1], y1 = y0;
    const auto extend = [&](double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    extend(cfg_.goal.x - cfg_.goal.radius, cfg_.goal.y - cfg_.goal.radius);
    extend(cfg_.goal.x + cfg_.goal.radius, cfg_.goal.y + cfg_.goal.radius);
    for (const auto& b : cfg_.obstacles) {
        extend(b.x0, b.y0);
        extend(b.x1, b.y1);
    }
    for (const auto& b : cfg_.beacons) extend(b.x, b.y);
    const double margin = 2.0;
    field_x0_ = x0 - margin;
    field_y0_ = y0 - margin;
    const double h = cfg_.heuristic_grid;
    field_nx_ = static_cast<int>(std::ceil((x1 + margin - field_x0_) / h)) + 1;
    field_ny_ = static_cast<int>(std::ceil((y1 + margin - field_y0_) / h)) + 1;
    const std::size_t n = static_cast<std::size_t>(field_nx_) * static_cast<std::size_t>(field_ny_);
    constexpr double inf = std::numeric_limits<double>::infinity();
    field_.assign(n, inf);

    const auto cell_center = [&](int ix, int iy, double& cx, double& cy) {
        cx = field_x0_ + ix * h;
        cy = field_y0_ + iy * h;
    };
    const double pad = cfg_.heuristic_inflation;
    const auto blocked = [&](int ix, int iy) {
        double cx, cy;
        cell_center(ix, iy, cx, cy);
        for (const auto& box : cfg_.obstacles) {
            if (Box{box.x0 - pad, box.y0 - pad, box.x1 + pad, box.y1 + pad}.contains(cx, cy)) {
                return true;
            }
        }
        return false;
    };

    // Dijkstra from every cell inside the goal disc, euclidean edge weights.
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (int iy = 0; iy < field_ny_; ++iy) {
        for (int ix = 0; ix < field_nx_; ++ix) {
            double cx, cy;
            cell_center(ix, iy, cx, cy);
            if (cfg_.goal.contains(cx, cy) && !blocked(ix, iy)) {
                const int id = iy * field_nx_ + ix;
                field_[static_cast<std::size_t>(id)] = 0.0;
                queue.push({0.0, id});
            }
        }
    }
    const int dx[] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dy[] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!queue.empty()) {
        const auto [dist, id] = queue.top();
        queue.pop();
        if (dist > field_[static_cast<std::size_t>(id)]) continue;
        const int ix = id % field_nx_, iy = id / field_nx_;
        for (int k = 0; k < 8; ++k) {
            const int jx = ix + dx[k], jy = iy + dy[k];
            if (jx < 0 || jx >= field_nx_ || jy < 0 || jy >= field_ny_) continue;
            if (blocked(jx, jy)) continue;
            const double w = h * (k < 4 ? 1.0 : std::sqrt(2.0));
            const int jd = jy * field_nx_ + jx;
            if (dist + w < field_[static_cast<std::size_t>(jd)]) {
                field_[static_cast<std::size_t>(jd)] = dist + w;
                queue.push({dist + w, jd});
            }
        }
    }
}

double CarNavModel::goal_distance(double x, double y) const {
    const double h = cfg_.heuristic_grid;
    const int ix = static_cast<int>(std::lround((x - field_x0_) / h));
    const int iy = static_cast<int>(std::lround((y - field_y0_) / h));
    const double dx = x - cfg_.goal.x, dy = y - cfg_.goal.y;
    const double euclid = std::max(0.0, std::sqrt(dx * dx + dy * dy) - cfg_.goal.radius);
    if (ix < 0 || ix >= field_nx_ || iy < 0 || iy >= field_ny_) return euclid;

    // Bilinear interpolation where all four corners are reachable; keeps the
    // heuristic smooth in the position.
    const double fx = (x - field_x0_) / h, fy = (y - field_y0_) / h;
    const int bx = std::min(static_cast<int>(fx), field_nx_ - 2);
    const int by = std::min(static_cast<int>(fy), field_ny_ - 2);
    if (bx >= 0 && by >= 0) {
        const double d00 = field_[static_cast<std::size_t>(by * field_nx_ + bx)];
        const double d10 = field_[static_cast<std::size_t>(by * field_nx_ + bx + 1)];
        const double d01 = field_[static_cast<std::size_t>((by + 1) * field_nx_ + bx)];
        const double d11 = field_[static_cast<std::size_t>((by + 1) * field_nx_ + bx + 1)];
        if (std::isfinite(d00) && std::isfinite(d10) && std::isfinite(d01) &&
            std::isfinite(d11)) {
            const double tx = fx - bx, ty = fy - by;
            return (1.0 - ty) * ((1.0 - tx) * d00 + tx * d10) +
                   ty * ((1.0 - tx) * d01 + tx * d11);
        }
    }
    const double d = field_[static_cast<std::size_t>(iy * field_nx_ + ix)];
    if (std::isfinite(d)) return d;
    // Inside the inflation margin (or sealed off): nearest reachable cell
    // plus the offset to it.
    constexpr int max_ring = 12;
    double best = std::numeric_limits<double>::infinity();
    for (int ring = 1; ring <= max_ring; ++ring) {
        for (int jy = std::max(0, iy - ring); jy <= std::min(field_ny_ - 1, iy + ring); ++jy) {
            for (int jx = std::max(0, ix - ring); jx <= std::min(field_nx_ - 1, ix + ring);
                 ++jx) {
                if (std::max(std::abs(jx - ix), std::abs(jy - iy)) != ring) continue;
                const double dj = field_[static_cast<std::size_t>(jy * field_nx_ + jx)];
                if (!std::isfinite(dj)) continue;
                const double ox = (jx - ix) * h, oy = (jy - iy) * h;
                best = std::min(best, dj + std::sqrt(ox * ox + oy * oy));
            }
        }
        if (std::isfinite(best)) break;
    }
    return std::isfinite(best) ? best : euclid;
}

StepResult CarNavModel::step(int level, const State& s, int action, const NoiseDraw& psi,
                             double noise_scale) const {
    StepResult out;
    out.state = s;
    if (!is_terminal(s)) {
        const CarAction act = actions_[static_cast<std::size_t>(action)];
        // One control-noise realization per planner action, shared by all
        // substeps and all levels.
        const double accel_noise = noise_scale * cfg_.sigma_accel * normal_quantile(psi[1]);
        const double steer_noise = noise_scale * cfg_.sigma_steer * normal_quantile(psi[2]);
        const int n = substeps(level);
        const double dt = cfg_.schedule.c1 / n;
        const auto hits_obstacle = [&](double x, double y) {
            for (const auto& box : cfg_.obstacles) {
                if (box.contains(x, y)) return true;
            }
            return false;
        };
        State cur = s;
        for (int k = 0; k < n; ++k) {
            const State prev = cur;
            cur = car_dynamics(cur, act, accel_noise, steer_noise, dt, cfg_.axle);
            cur.c[3] = std::clamp(cur.c[3], cfg_.min_speed, cfg_.max_speed);
            // Sample the chord at a level-independent spacing so coarse
            // substeps cannot step across an obstacle undetected.
            const double cx = cur.c[0] - prev.c[0], cy = cur.c[1] - prev.c[1];
            const double chord = std::sqrt(cx * cx + cy * cy);
            const int checks =
                std::max(1, static_cast<int>(std::ceil(chord / cfg_.collision_check_spacing)));
            for (int j = 1; j <= checks && cur.d == kDriving; ++j) {
                const double t = static_cast<double>(j) / checks;
                if (hits_obstacle(prev.c[0] + t * cx, prev.c[1] + t * cy)) cur.d = kCollided;
            }
            if (cur.d == kDriving && cfg_.goal.contains(cur.c[0], cur.c[1])) cur.d = kAtGoal;
            if (cur.d != kDriving) break;
        }
        out.state = cur;
    }

    // Observation from the end state: beacon signal strength plus speed.
    const auto weights = beacon_weights(out.state.c[0], out.state.c[1]);
    std::size_t chosen = weights.size() - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        acc += weights[j];
        if (psi[0] < acc) {
            chosen = j;
            break;
        }
    }
    double signal = 0.0, speed = 0.0;
    observation_mean(out.state, chosen, signal, speed);
    out.obs.c[0] = signal + noise_scale * cfg_.sigma_obs_signal * normal_quantile(psi[3]);
    out.obs.c[1] = speed + noise_scale * cfg_.sigma_obs_speed * normal_quantile(psi[4]);
    return out;
}

double CarNavModel::reward(const State& s, int /*action*/) const {
    switch (s.d) {
        case kCollided:
            return cfg_.collision_penalty;
        case kAtGoal:
            return cfg_.goal_reward;
        default:
            return cfg_.step_penalty;
    }
}

TerminalKind CarNavModel::terminal_kind(const State& s) const {
    switch (s.d) {
        case kCollided:
            return TerminalKind::collision;
        case kAtGoal:
            return TerminalKind::goal;
        default:
            return TerminalKind::none;
    }
}

double CarNavModel::heuristic(const State& s) const {
    if (is_terminal(s)) return 0.0;
    const double dist = goal_distance(s.c[0], s.c[1]);
    const double reach = cfg_.max_speed * cfg_.schedule.c1;  // distance per action, flat out
    // Fractional steps-to-go keep the estimate smooth in the state.
    const double k = dist / reach;
    const double g = cfg_.discount;
    const double gk = std::pow(g, k);
    return gk * cfg_.goal_reward + cfg_.step_penalty * (1.0 - gk) / (1.0 - g);
}

std::vector<double> CarNavModel::beacon_weights(double x, double y) const {
    std::vector<double> w(cfg_.beacons.size(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < cfg_.beacons.size(); ++j) {
        const double dx = x - cfg_.beacons[j].x, dy = y - cfg_.beacons[j].y;
        const double d = std::sqrt(dx * dx + dy * dy);
        if (d < 1e-12) {
            std::fill(w.begin(), w.end(), 0.0);
            w[j] = 1.0;
            return w;
        }
        w[j] = 1.0 / d;
        total += w[j];
    }
    for (double& wi : w) wi /= total;
    return w;
}

void CarNavModel::observation_mean(const State& s, std::size_t beacon, double& signal,
                                   double& speed) const {
    const double dx = s.c[0] - cfg_.beacons[beacon].x;
    const double dy = s.c[1] - cfg_.beacons[beacon].y;
    signal = 1.0 / (dx * dx + dy * dy + 1.0);
    speed = s.c[3];
}

double CarNavModel::observation_likelihood(const State& next, int /*action*/,
                                           const Observation& o) const {
    // Mixture over the beacon the signal came from.
    const auto weights = beacon_weights(next.c[0], next.c[1]);
    double like = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        double signal = 0.0, speed = 0.0;
        observation_mean(next, j, signal, speed);
        like += weights[j] * normal_pdf(o.c[0], signal, cfg_.sigma_obs_signal) *
                normal_pdf(o.c[1], speed, cfg_.sigma_obs_speed);
    }
    return like;
}

ObsKey CarNavModel::observation_key(const Observation& o) const {
    const auto k0 = static_cast<std::int64_t>(std::floor(o.c[0] / cfg_.obs_grid_signal));
    const auto k1 = static_cast<std::int64_t>(std::floor(o.c[1] / cfg_.obs_grid_speed));
    return (static_cast<std::int64_t>(static_cast<std::uint32_t>(k0)) << 32) |
           static_cast<std::int64_t>(static_cast<std::uint32_t>(k1));
}

std::int64_t CarNavModel::step_cost(int level) const { return substeps(level); }

}  // namespace mlpp
