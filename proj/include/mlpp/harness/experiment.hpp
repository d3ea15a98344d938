#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mlpp/harness/config.hpp"
#include "mlpp/trial.hpp"

namespace mlpp {

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    TrialResult result;
};

struct BenchAggregate {
    int trials = 0;
    double mean_return = 0.0;
    double stderr_mean = 0.0;
    double ci95_half = 0.0;
    double mean_steps = 0.0;
    double mean_wall_ms = 0.0;
    double goal_rate = 0.0;
    double collision_rate = 0.0;
    double timeout_rate = 0.0;
};

struct BenchResult {
    std::vector<TrialRecord> records;
    BenchAggregate aggregate;
};

struct VarianceRecord {
    int run = 0;
    int step = 0;
    int level = 0;
    bool has_var_q = false;
    bool has_var_diff = false;
    double var_q = 0.0;
    double var_diff = 0.0;
};

struct VarianceLevelAggregate {
    int level = 0;
    bool has_q = false;
    bool has_diff = false;
    double mean_var_q = 0.0;
    double mean_var_diff = 0.0;
};

struct VarianceResult {
    std::vector<VarianceRecord> records;           // one per (run, step, level)
    std::vector<VarianceLevelAggregate> aggregate;  // one per level
    int warnings = 0;
};

struct SweepRow {
    std::string solver;
    Budget budget{};
    BenchAggregate aggregate;
};

std::unique_ptr<Planner> make_planner(const PomdpModel& model, const SolverSpec& spec,
                                      const SolverConfig& solver_cfg, const Budget& budget,
                                      std::uint64_t seed);

/// Runs cfg.trials independent closed-loop trials on a worker pool; trial
/// seeds derive from (config seed, trial id) and rows are ordered by trial
/// id, so the output is identical for any thread count.
BenchResult run_benchmark(const ExperimentConfig& cfg);

/// Per planning step of each run: plans with the configured budget, freezes
/// the policy, then estimates the per-level value variance from independent
/// episodes and the per-level value-difference variance from correlated
/// pairs, all under the frozen policy's first action.
VarianceResult run_variance_study(const ExperimentConfig& cfg);

/// run_benchmark for every (solver, budget) pair; one aggregate row each.
std::vector<SweepRow> run_budget_sweep(const ExperimentConfig& cfg);

void write_benchmark_csv(const BenchResult& result, std::ostream& out);
void write_variance_csv(const VarianceResult& result, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Plans once from the initial belief and returns the tree as JSON.
std::string dump_first_plan_tree(const ExperimentConfig& cfg, int max_depth = 3);

}  // namespace mlpp
