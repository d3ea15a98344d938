#include "mlpp/trial.hpp"

#include <chrono>

namespace mlpp {

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::goal:
            return "goal";
        case Outcome::collision:
            return "collision";
        case Outcome::timeout:
            return "timeout";
        default:
            return "other-terminal";
    }
}

namespace {

Outcome outcome_from_kind(TerminalKind kind) {
    switch (kind) {
        case TerminalKind::goal:
            return Outcome::goal;
        case TerminalKind::collision:
            return Outcome::collision;
        default:
            return Outcome::other_terminal;
    }
}

}  // namespace

TrialResult run_trial(const PomdpModel& model, Planner& planner, int particle_count,
                      std::uint64_t seed, int max_steps_override, const ExecPolicy& exec) {
    Rng world_rng(mix_seed(seed, 0x33));
    Rng belief_rng(mix_seed(seed, 0x44));

    TrialResult result;
    const int cap = max_steps_override > 0 ? max_steps_override : model.max_steps();
    State s = model.sample_initial_state(world_rng);
    auto belief = ParticleBelief::initial(model, static_cast<std::size_t>(particle_count),
                                          belief_rng);

    double discount = 1.0;
    double planning_ms = 0.0;
    while (result.steps < cap && !model.is_terminal(s)) {
        const auto t0 = std::chrono::steady_clock::now();
        const int action = planner.plan(belief);
        planning_ms += std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        if (planner.last_plan_was_fallback()) ++result.fallback_count;

        const NoiseDraw psi = NoiseDraw::sample(model.noise_dim(), world_rng);
        const StepResult sr = model.simulate(model.max_level(), s, action, psi);
        const double r = model.reward(s, action);
        result.trajectory.push_back({action, sr.obs, r});
        result.discounted_return += discount * r;
        discount *= model.discount();
        s = sr.state;
        ++result.steps;

        if (model.is_terminal(s)) {
            result.discounted_return += discount * model.reward(s, 0);
            break;
        }
        belief = update_belief(belief, action, sr.obs, model, belief_rng, exec);
        planner.advance(action, model.observation_key(sr.obs));
    }
    result.outcome = model.is_terminal(s) ? outcome_from_kind(model.terminal_kind(s))
                                          : Outcome::timeout;
    result.wall_ms_per_step = result.steps > 0 ? planning_ms / result.steps : 0.0;
    result.episodes_per_level = planner.stats().episodes_per_level;
    return result;
}

}  // namespace mlpp
