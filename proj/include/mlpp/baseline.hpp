#pragma once

#include "mlpp/solver.hpp"

namespace mlpp {

struct BaselineConfig {
    int level = -1;  // planning level l*; -1 means the model's reference level
    double exploration = 1.0;
    Budget budget{};
    int particle_count = 2000;
    std::uint64_t seed = 0;
};

/// Single-level Monte-Carlo tree search: every episode is simulated with the
/// configured approximation level and backed up into the level-0 statistics,
/// so the action-value estimate is the plain in-tree return mean. Shares the
/// tree, selection and backup code paths with the multilevel solver.
class SingleLevelSolver final : public Planner {
public:
    SingleLevelSolver(const PomdpModel& model, BaselineConfig cfg);

    int plan(const ParticleBelief& belief) override;
    void advance(int action, ObsKey key) override;
    const SolverStats& stats() const override { return stats_; }
    bool last_plan_was_fallback() const override { return fallback_; }

    SearchTree& tree() { return tree_; }
    const SearchTree& tree() const { return tree_; }
    const SearchTree& search_tree() const override { return tree_; }
    int planning_level() const { return level_; }

private:
    const PomdpModel& model_;
    BaselineConfig cfg_;
    int level_;
    SearchTree tree_;
    Rng rng_;
    SolverStats stats_;
    bool fallback_ = false;
};

}  // namespace mlpp
