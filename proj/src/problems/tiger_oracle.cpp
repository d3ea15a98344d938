#include "mlpp/problems/tiger_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace mlpp {

TigerOracle::TigerOracle(const TigerConfig& cfg, int grid_points)
    : cfg_(cfg), grid_(grid_points), v_(static_cast<std::size_t>(grid_points) + 1, 0.0) {
    std::vector<double> next(v_.size());
    const double acc = cfg_.listen_accuracy;
    for (int iter = 0; iter < 4000; ++iter) {
        double max_delta = 0.0;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            const double b = static_cast<double>(i) / grid_;
            const double q_ol = b * cfg_.reward_wrong + (1.0 - b) * cfg_.reward_correct;
            const double q_or = b * cfg_.reward_correct + (1.0 - b) * cfg_.reward_wrong;
            const double p_hl = acc * b + (1.0 - acc) * (1.0 - b);
            const double b_hl = p_hl > 0.0 ? acc * b / p_hl : 0.0;
            const double b_hr = p_hl < 1.0 ? (1.0 - acc) * b / (1.0 - p_hl) : 0.0;
            const double q_li = cfg_.reward_listen +
                                cfg_.discount * (p_hl * interpolate(b_hl) +
                                                 (1.0 - p_hl) * interpolate(b_hr));
            next[i] = std::max({q_li, q_ol, q_or});
            max_delta = std::max(max_delta, std::abs(next[i] - v_[i]));
        }
        v_.swap(next);
        if (max_delta < 1e-12) break;
    }
}

double TigerOracle::interpolate(double b) const {
    b = std::clamp(b, 0.0, 1.0);
    const double x = b * grid_;
    const auto lo = static_cast<std::size_t>(x);
    if (lo >= v_.size() - 1) return v_.back();
    const double t = x - static_cast<double>(lo);
    return (1.0 - t) * v_[lo] + t * v_[lo + 1];
}

double TigerOracle::value(double b_left) const { return interpolate(b_left); }

double TigerOracle::q_value(double b, int action) const {
    const double acc = cfg_.listen_accuracy;
    switch (action) {
        case TigerModel::kOpenLeft:
            return b * cfg_.reward_wrong + (1.0 - b) * cfg_.reward_correct;
        case TigerModel::kOpenRight:
            return b * cfg_.reward_correct + (1.0 - b) * cfg_.reward_wrong;
        default: {
            const double p_hl = acc * b + (1.0 - acc) * (1.0 - b);
            const double b_hl = p_hl > 0.0 ? acc * b / p_hl : 0.0;
            const double b_hr = p_hl < 1.0 ? (1.0 - acc) * b / (1.0 - p_hl) : 0.0;
            return cfg_.reward_listen +
                   cfg_.discount *
                       (p_hl * interpolate(b_hl) + (1.0 - p_hl) * interpolate(b_hr));
        }
    }
}

int TigerOracle::optimal_action(double b_left) const {
    int best = 0;
    double best_q = q_value(b_left, 0);
    for (int a = 1; a < 3; ++a) {
        const double q = q_value(b_left, a);
        if (q > best_q) {
            best_q = q;
            best = a;
        }
    }
    return best;
}

double TigerOracle::posterior(double b, std::int32_t obs) const {
    const double acc = cfg_.listen_accuracy;
    const double p_obs_left = obs == TigerModel::kHearLeft ? acc : 1.0 - acc;
    const double p_obs_right = obs == TigerModel::kHearLeft ? 1.0 - acc : acc;
    const double z = p_obs_left * b + p_obs_right * (1.0 - b);
    return z > 0.0 ? p_obs_left * b / z : b;
}

}  // namespace mlpp
