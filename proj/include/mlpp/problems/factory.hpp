#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlpp/pomdp.hpp"

namespace mlpp {

/// Delegating wrapper that pins every level to the base model's reference
/// dynamics while reporting a configurable level count. Used for
/// degenerate-level experiments where all transition functions coincide.
class IdenticalLevelsModel final : public PomdpModel {
public:
    IdenticalLevelsModel(std::shared_ptr<const PomdpModel> base, int levels);

    std::string_view name() const override { return base_->name(); }
    int action_count() const override { return base_->action_count(); }
    int level_count() const override { return levels_; }
    int noise_dim() const override { return base_->noise_dim(); }
    double discount() const override { return base_->discount(); }
    int max_steps() const override { return base_->max_steps(); }
    StepResult step(int /*level*/, const State& s, int action, const NoiseDraw& psi,
                    double noise_scale) const override {
        return base_->step(base_->max_level(), s, action, psi, noise_scale);
    }
    double reward(const State& s, int action) const override { return base_->reward(s, action); }
    bool is_terminal(const State& s) const override { return base_->is_terminal(s); }
    TerminalKind terminal_kind(const State& s) const override {
        return base_->terminal_kind(s);
    }
    double heuristic(const State& s) const override { return base_->heuristic(s); }
    double observation_likelihood(const State& next, int action,
                                  const Observation& o) const override {
        return base_->observation_likelihood(next, action, o);
    }
    ObsKey observation_key(const Observation& o) const override {
        return base_->observation_key(o);
    }
    State sample_initial_state(Rng& rng) const override {
        return base_->sample_initial_state(rng);
    }
    std::int64_t step_cost(int /*level*/) const override {
        return base_->step_cost(base_->max_level());
    }

private:
    std::shared_ptr<const PomdpModel> base_;
    int levels_;
};

/// Builds a model from a declarative scenario section. Recognized names:
/// "tiger", "car-nav-lite", "pendulum". Throws ConfigError-compatible
/// std::invalid_argument on unknown scenarios or bad parameters.
std::shared_ptr<const PomdpModel> make_model(const nlohmann::json& scenario);

std::vector<std::string> known_scenarios();

/// Scenario-specific default UCB exploration constant (reward-scale bound).
double default_exploration(std::string_view scenario_name);

}  // namespace mlpp
