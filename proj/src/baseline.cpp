#include "mlpp/baseline.hpp"

#include <chrono>
#include <stdexcept>

namespace mlpp {

SingleLevelSolver::SingleLevelSolver(const PomdpModel& model, BaselineConfig cfg)
    : model_(model),
      cfg_(cfg),
      level_(cfg.level < 0 ? model.max_level() : cfg.level),
      tree_(model.action_count(), model.level_count()),
      rng_(mix_seed(cfg.seed, 0x11)),  // same stream id as the multilevel level-0 stage
      stats_(model.level_count()) {
    if (cfg_.budget.value <= 0) throw std::invalid_argument("planning budget must be positive");
    if (level_ >= model.level_count()) throw std::out_of_range("baseline level out of range");
}

int SingleLevelSolver::plan(const ParticleBelief& belief) {
    fallback_ = false;
    const auto one_episode = [&] {
        const Episode e = sample_episode_in_tree(tree_, model_, belief, level_, 0,
                                                 cfg_.exploration, rng_, &stats_);
        backup_episode(tree_, e, model_.discount());
        stats_.iterations += 1;
    };
    if (cfg_.budget.mode == Budget::Mode::episodes) {
        for (std::int64_t i = 0; i < cfg_.budget.value; ++i) one_episode();
    } else {
        const auto deadline = std::chrono::steady_clock::now() +
                              std::chrono::milliseconds(cfg_.budget.value);
        do {
            one_episode();
        } while (std::chrono::steady_clock::now() < deadline);
    }
    const int action = best_action(tree_.root());
    if (action >= 0) return action;
    fallback_ = true;
    stats_.random_fallbacks += 1;
    return rng_.uniform_int(model_.action_count());
}

void SingleLevelSolver::advance(int action, ObsKey key) { tree_.reroot(action, key); }

}  // namespace mlpp
