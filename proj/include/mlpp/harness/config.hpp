#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlpp/parallel.hpp"
#include "mlpp/solver.hpp"

namespace mlpp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StudyKind { bench, variance, sweep };

/// "mlpp", "baseline" (reference level) or "baseline@<l>".
struct SolverSpec {
    bool mlpp = true;
    int baseline_level = -1;

    std::string label() const;
    static SolverSpec parse(const std::string& text);
};

struct VarianceOptions {
    int runs = 5;
    int samples_per_level = 2000;
};

struct ExperimentConfig {
    nlohmann::json scenario;  // raw scenario section, consumed by make_model
    std::string scenario_name;
    StudyKind study = StudyKind::bench;
    SolverSpec solver{};
    std::vector<SolverSpec> solvers;  // sweep only
    SolverConfig solver_cfg{};        // exploration, particles, pair ratio, budget
    std::vector<Budget> budgets;      // sweep only
    int trials = 1;
    std::uint64_t seed = 1;
    std::string out_path;
    int max_trial_steps = -1;
    VarianceOptions variance{};
    ExecPolicy exec{};
};

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
    std::optional<int> trials;
    std::optional<std::int64_t> budget_value;
    std::optional<int> threads;
};

/// Parses and validates an experiment description. Solver defaults that the
/// file omits (exploration constants, particle count) are filled from the
/// scenario's defaults. Throws ConfigError with a readable message.
ExperimentConfig parse_config(const nlohmann::json& doc);

ExperimentConfig load_config(const std::string& path);

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& ov);

Budget parse_budget(const nlohmann::json& j);

}  // namespace mlpp
