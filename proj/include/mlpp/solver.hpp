#pragma once

#include <cstdint>
#include <vector>

#include "mlpp/belief.hpp"
#include "mlpp/episode.hpp"
#include "mlpp/tree.hpp"

namespace mlpp {

struct Budget {
    enum class Mode { episodes, wall_clock_ms };
    Mode mode = Mode::episodes;
    std::int64_t value = 1000;
};

struct SolverConfig {
    double c0 = 1.0;       // exploration constant, level-0 stage
    double c_corr = 1.0;   // exploration constant, correlated stages
    Budget budget{};
    int particle_count = 2000;
    int pairs_per_iteration = 1;
    std::uint64_t seed = 0;
};

struct SolverStats {
    std::vector<std::int64_t> episodes_per_level;  // episodes simulated, by dynamics level
    std::vector<std::int64_t> cost_per_level;      // accumulated model-step cost units
    std::int64_t iterations = 0;
    std::int64_t pairs = 0;
    std::int64_t random_fallbacks = 0;

    explicit SolverStats(int level_count = 1)
        : episodes_per_level(static_cast<std::size_t>(level_count), 0),
          cost_per_level(static_cast<std::size_t>(level_count), 0) {}
};

/// Anytime planner interface shared by the multilevel solver and the
/// single-level baseline; one instance per trial, single-threaded.
class Planner {
public:
    virtual ~Planner() = default;
    virtual int plan(const ParticleBelief& belief) = 0;
    virtual void advance(int action, ObsKey key) = 0;
    virtual const SolverStats& stats() const = 0;
    virtual bool last_plan_was_fallback() const = 0;
    virtual const SearchTree& search_tree() const = 0;
};

/// Walks/extends the tree from its root: in-tree UCB1 action selection, one
/// noise draw and one model step per action, child creation along the path.
/// stat_level selects the visit-count slot for UCB1; stat_level 0 draws from
/// the full action set and stops after the first unvisited action, levels
/// >= 1 draw from the level-0-visited pool and stop when it is empty. The
/// tail entry carries the final state's terminal value or heuristic.
Episode sample_episode_in_tree(SearchTree& tree, const PomdpModel& model,
                               const ParticleBelief& belief, int sim_level, int stat_level,
                               double exploration, Rng& rng, SolverStats* stats = nullptr);

/// Replays an episode's initial state, action sequence and noise sequence
/// through the dynamics at `sim_level`, truncating when a terminal state is
/// entered; creates tree children along the replayed path.
Episode replay_episode(SearchTree& tree, const PomdpModel& model, const Episode& source,
                       int sim_level, SolverStats* stats = nullptr);

/// Correction level draw: P(l) proportional to 2^-l over l in {1..max_level}.
int sample_correction_level(Rng& rng, int max_level);

/// The multilevel planner: each iteration samples one coarsest-level episode
/// (backed up into the level-0 statistics) and then one correlated episode
/// pair at a randomized level (backed up into the difference statistics).
class MlppSolver final : public Planner {
public:
    MlppSolver(const PomdpModel& model, SolverConfig cfg);

    int plan(const ParticleBelief& belief) override;
    void advance(int action, ObsKey key) override;
    const SolverStats& stats() const override { return stats_; }
    bool last_plan_was_fallback() const override { return fallback_; }

    SearchTree& tree() { return tree_; }
    const SearchTree& tree() const { return tree_; }
    const SearchTree& search_tree() const override { return tree_; }
    const SolverConfig& config() const { return cfg_; }

    struct CorrelatedPair {
        Episode fine;
        Episode coarse;
        int level = 0;
    };

    /// One correlated-pair stage: draws the level, samples the fine episode,
    /// replays it one level coarser, and backs up the differences. Exposed
    /// for tests and the variance study.
    CorrelatedPair sample_correlated(const ParticleBelief& belief);

private:
    void run_iteration(const ParticleBelief& belief);

    const PomdpModel& model_;
    SolverConfig cfg_;
    SearchTree tree_;
    Rng rng_primary_;  // level-0 stage; the baseline consumes the same stream id
    Rng rng_corr_;     // correlated stage, independent so it never perturbs the level-0 stage
    SolverStats stats_;
    bool fallback_ = false;
};

}  // namespace mlpp
