#pragma once

#include <string>
#include <vector>

#include "mlpp/baseline.hpp"
#include "mlpp/belief.hpp"
#include "mlpp/solver.hpp"

namespace mlpp {

enum class Outcome { goal, collision, timeout, other_terminal };

std::string_view outcome_name(Outcome o);

struct ExecutedStep {
    int action = -1;
    Observation obs;
    double reward = 0.0;
};

struct TrialResult {
    double discounted_return = 0.0;
    int steps = 0;
    Outcome outcome = Outcome::timeout;
    double wall_ms_per_step = 0.0;
    std::vector<std::int64_t> episodes_per_level;
    std::vector<ExecutedStep> trajectory;
    int fallback_count = 0;
};

/// One closed-loop trial: plan, execute on the reference dynamics with fresh
/// noise, perceive, SIR-update the belief, re-root the planner, repeat until
/// a terminal state or the step cap. World and belief randomness run on
/// dedicated streams derived from `seed`, independent of the planner's.
TrialResult run_trial(const PomdpModel& model, Planner& planner, int particle_count,
                      std::uint64_t seed, int max_steps_override = -1,
                      const ExecPolicy& exec = {});

}  // namespace mlpp
