#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "mlpp/rng.hpp"

namespace mlpp {

inline constexpr int kMaxNoiseDim = 8;

/// Fixed-length vector of uniform-[0,1] scalars. One draw drives one
/// transition+observation step; every level of a model consumes the same
/// entries with the same layout, which is what couples replayed episodes.
struct NoiseDraw {
    std::array<double, kMaxNoiseDim> u{};
    int dim = 0;

    double operator[](int i) const { return u[static_cast<std::size_t>(i)]; }

    static NoiseDraw sample(int dim, Rng& rng) {
        NoiseDraw psi;
        psi.dim = dim;
        for (int i = 0; i < dim; ++i) psi.u[static_cast<std::size_t>(i)] = rng.uniform01();
        return psi;
    }

    /// All entries 0.5: maps to zero noise under inverse-CDF transforms.
    static NoiseDraw midpoint(int dim) {
        NoiseDraw psi;
        psi.dim = dim;
        psi.u.fill(0.5);
        return psi;
    }

    bool operator==(const NoiseDraw&) const = default;
};

/// Compact value-type state: up to four continuous components plus a
/// discrete tag (problem-specific meaning, including terminal markers).
struct State {
    std::array<double, 4> c{};
    std::int32_t d = 0;

    bool operator==(const State&) const = default;
};

struct Observation {
    std::array<double, 3> c{};
    std::int32_t d = 0;

    bool operator==(const Observation&) const = default;
};

/// Discretized observation identity used for tree edges.
using ObsKey = std::int64_t;

enum class TerminalKind { none, goal, collision, other };

struct StepResult {
    State state;
    Observation obs;
};

/// Level-to-parameter schedule: parameter(l) = c1 * 2^(-c2 * l), strictly
/// decreasing in l. Typically an integration or control time-step.
struct LevelSchedule {
    double c1 = 1.0;
    double c2 = 1.0;
    int max_level = 0;  // levels run 0..max_level

    double parameter(int level) const;

    /// Number of equal substeps covering `duration` at resolution
    /// parameter(level), at least 1. The effective substep is
    /// duration / substeps, so every level spans `duration` exactly.
    int substeps(double duration, int level) const;

    void validate() const;  // throws std::invalid_argument
};

/// A POMDP with a hierarchy of deterministic simulative transition models.
/// Level max_level() is the reference dynamics; coarser levels approximate
/// it. Models are immutable after construction and safe to share across
/// threads.
class PomdpModel {
public:
    virtual ~PomdpModel() = default;

    virtual std::string_view name() const = 0;
    virtual int action_count() const = 0;
    virtual int level_count() const = 0;  // L+1
    virtual int noise_dim() const = 0;
    virtual double discount() const = 0;
    virtual int max_steps() const = 0;

    /// One planner action at the given fidelity level. Deterministic in
    /// (level, s, action, psi, noise_scale). Terminal states are absorbing.
    /// noise_scale inflates the model's noise magnitudes (used by the
    /// particle-depletion fallback).
    virtual StepResult step(int level, const State& s, int action, const NoiseDraw& psi,
                            double noise_scale) const = 0;

    /// Reward of taking `action` from `s`. Terminal states return their
    /// entry value (collision penalty, goal reward, ...) regardless of the
    /// action; episodes attach that value as the tail of the step that
    /// entered the terminal state.
    virtual double reward(const State& s, int action) const = 0;

    virtual bool is_terminal(const State& s) const = 0;
    virtual TerminalKind terminal_kind(const State& s) const {
        return is_terminal(s) ? TerminalKind::other : TerminalKind::none;
    }

    /// Cheap deterministic-relaxation estimate of the value-to-go; must be
    /// finite and 0 at terminal states.
    virtual double heuristic(const State& s) const = 0;

    /// p(o | s', a): exact mass for discrete observations, density otherwise.
    virtual double observation_likelihood(const State& next, int action,
                                          const Observation& o) const = 0;

    virtual ObsKey observation_key(const Observation& o) const = 0;

    virtual State sample_initial_state(Rng& rng) const = 0;

    /// Relative cost of one planner action at `level`, in model-step units.
    virtual std::int64_t step_cost(int /*level*/) const { return 1; }

    int max_level() const { return level_count() - 1; }

    /// Validating wrapper around step(); throws std::out_of_range on a bad
    /// level and std::invalid_argument on a psi length mismatch.
    StepResult simulate(int level, const State& s, int action, const NoiseDraw& psi,
                        double noise_scale = 1.0) const;

    /// Value attached to an episode's final entry: exact terminal value if
    /// terminal, heuristic estimate otherwise.
    double tail_value(const State& s) const {
        return is_terminal(s) ? reward(s, 0) : heuristic(s);
    }
};

}  // namespace mlpp
