#include "mlpp/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace mlpp {

Episode sample_episode_in_tree(SearchTree& tree, const PomdpModel& model,
                               const ParticleBelief& belief, int sim_level, int stat_level,
                               double exploration, Rng& rng, SolverStats* stats) {
    Episode e;
    e.level = sim_level;
    State s = belief.sample(rng);
    HistoryNode* node = &tree.root();
    bool stopped_at_unvisited = false;
    while (!stopped_at_unvisited && !model.is_terminal(s)) {
        const UcbSelection sel = ucb1_select(*node, stat_level, exploration, rng);
        if (sel.action < 0) break;
        stopped_at_unvisited = sel.unvisited;
        const NoiseDraw psi = NoiseDraw::sample(model.noise_dim(), rng);
        const StepResult sr = model.simulate(sim_level, s, sel.action, psi);
        const ObsKey key = model.observation_key(sr.obs);
        e.steps.push_back({s, sel.action, sr.obs, key, model.reward(s, sel.action)});
        e.noise.push_back(psi);
        node = &node->child(sel.action, key);
        s = sr.state;
    }
    e.final_state = s;
    e.terminal = model.is_terminal(s);
    e.tail_reward = model.tail_value(s);
    if (stats) {
        stats->episodes_per_level[static_cast<std::size_t>(sim_level)] += 1;
        stats->cost_per_level[static_cast<std::size_t>(sim_level)] +=
            model.step_cost(sim_level) * static_cast<std::int64_t>(e.length());
    }
    return e;
}

Episode replay_episode(SearchTree& tree, const PomdpModel& model, const Episode& source,
                       int sim_level, SolverStats* stats) {
    Episode e;
    e.level = sim_level;
    State s = source.steps.empty() ? source.final_state : source.steps[0].state;
    HistoryNode* node = &tree.root();
    for (std::size_t i = 0; i < source.length(); ++i) {
        const int action = source.steps[i].action;
        const StepResult sr = model.simulate(sim_level, s, action, source.noise[i]);
        const ObsKey key = model.observation_key(sr.obs);
        e.steps.push_back({s, action, sr.obs, key, model.reward(s, action)});
        e.noise.push_back(source.noise[i]);
        node = &node->child(action, key);
        s = sr.state;
        if (model.is_terminal(s)) break;
    }
    e.final_state = s;
    e.terminal = model.is_terminal(s);
    e.tail_reward = model.tail_value(s);
    if (stats) {
        stats->episodes_per_level[static_cast<std::size_t>(sim_level)] += 1;
        stats->cost_per_level[static_cast<std::size_t>(sim_level)] +=
            model.step_cost(sim_level) * static_cast<std::int64_t>(e.length());
    }
    return e;
}

int sample_correction_level(Rng& rng, int max_level) {
    if (max_level < 1) throw std::invalid_argument("level sampling needs max_level >= 1");
    double norm = 0.0;
    for (int l = 1; l <= max_level; ++l) norm += std::exp2(-l);
    const double u = rng.uniform01() * norm;
    double acc = 0.0;
    for (int l = 1; l < max_level; ++l) {
        acc += std::exp2(-l);
        if (u < acc) return l;
    }
    return max_level;
}

MlppSolver::MlppSolver(const PomdpModel& model, SolverConfig cfg)
    : model_(model),
      cfg_(cfg),
      tree_(model.action_count(), model.level_count()),
      rng_primary_(mix_seed(cfg.seed, 0x11)),
      rng_corr_(mix_seed(cfg.seed, 0x22)),
      stats_(model.level_count()) {
    if (cfg_.budget.value <= 0) throw std::invalid_argument("planning budget must be positive");
}

MlppSolver::CorrelatedPair MlppSolver::sample_correlated(const ParticleBelief& belief) {
    CorrelatedPair pair;
    pair.level = sample_correction_level(rng_corr_, model_.max_level());
    pair.fine = sample_episode_in_tree(tree_, model_, belief, pair.level, pair.level,
                                       cfg_.c_corr, rng_corr_, &stats_);
    pair.coarse = replay_episode(tree_, model_, pair.fine, pair.level - 1, &stats_);
    backup_difference(tree_, pair.fine, pair.coarse, pair.level, model_.discount());
    stats_.pairs += 1;
    return pair;
}

void MlppSolver::run_iteration(const ParticleBelief& belief) {
    const Episode e0 =
        sample_episode_in_tree(tree_, model_, belief, 0, 0, cfg_.c0, rng_primary_, &stats_);
    backup_episode(tree_, e0, model_.discount());
    if (model_.max_level() >= 1) {
        for (int k = 0; k < cfg_.pairs_per_iteration; ++k) sample_correlated(belief);
    }
    stats_.iterations += 1;
}

int MlppSolver::plan(const ParticleBelief& belief) {
    fallback_ = false;
    if (cfg_.budget.mode == Budget::Mode::episodes) {
        for (std::int64_t i = 0; i < cfg_.budget.value; ++i) run_iteration(belief);
    } else {
        const auto deadline = std::chrono::steady_clock::now() +
                              std::chrono::milliseconds(cfg_.budget.value);
        do {
            run_iteration(belief);
        } while (std::chrono::steady_clock::now() < deadline);
    }
    const int action = best_action(tree_.root());
    if (action >= 0) return action;
    // A trial must emit an action even when the budget visited nothing.
    fallback_ = true;
    stats_.random_fallbacks += 1;
    return rng_primary_.uniform_int(model_.action_count());
}

void MlppSolver::advance(int action, ObsKey key) { tree_.reroot(action, key); }

}  // namespace mlpp
