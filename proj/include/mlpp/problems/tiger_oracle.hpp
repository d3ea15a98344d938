#pragma once

#include <vector>

#include "mlpp/problems/tiger.hpp"

namespace mlpp {

/// Exact value iteration over the one-dimensional tiger belief simplex,
/// independent of the simulative model path (works from the probability
/// tables and Bayes rule directly).
class TigerOracle {
public:
    explicit TigerOracle(const TigerConfig& cfg, int grid_points = 10000);

    /// Optimal value at belief b = P(tiger-left).
    double value(double b_left) const;

    /// Q-value of an action at a belief.
    double q_value(double b_left, int action) const;

    /// Optimal action; ties broken by lowest action index.
    int optimal_action(double b_left) const;

    /// Posterior P(tiger-left) after listening and hearing `obs`.
    double posterior(double b_left, std::int32_t obs) const;

private:
    double interpolate(double b) const;

    TigerConfig cfg_;
    int grid_;
    std::vector<double> v_;
};

}  // namespace mlpp
