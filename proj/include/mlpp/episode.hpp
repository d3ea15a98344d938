#pragma once

#include <cstddef>
#include <vector>

#include "mlpp/pomdp.hpp"

namespace mlpp {

struct EpisodeStep {
    State state;  // state the action was taken from
    int action = -1;
    Observation obs;
    ObsKey obs_key = 0;
    double reward = 0.0;
};

/// A sampled trajectory: action quadruples plus a final value-carrying entry
/// and the noise sequence that generated it (for coarse replay).
struct Episode {
    std::vector<EpisodeStep> steps;
    std::vector<NoiseDraw> noise;  // one draw per step
    State final_state{};
    double tail_reward = 0.0;  // terminal value or heuristic at final_state
    bool terminal = false;
    int level = 0;

    std::size_t length() const { return steps.size(); }
};

/// Discounted value from the k-th entry on (1-based; k = length+1 addresses
/// the tail entry alone). Includes the tail at its own position.
double episode_value(const Episode& e, std::size_t k, double gamma);

/// All suffix values at once: result[i] is the value from step i (0-based),
/// result[length()] is the tail itself.
std::vector<double> episode_values(const Episode& e, double gamma);

}  // namespace mlpp
