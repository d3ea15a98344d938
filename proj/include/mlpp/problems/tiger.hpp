#pragma once

#include "mlpp/pomdp.hpp"

namespace mlpp {

/// Two doors, a tiger behind one of them. Listening is noisy; opening a door
/// ends the trial. All fidelity levels share the exact same dynamics, which
/// makes this the degenerate-level reference problem, and its small size
/// admits an exact value-iteration oracle.
struct TigerConfig {
    double listen_accuracy = 0.85;
    double reward_listen = -1.0;
    double reward_correct = 10.0;
    double reward_wrong = -100.0;
    double discount = 0.95;
    int max_steps = 20;
    int levels = 2;  // identical by construction
};

class TigerModel final : public PomdpModel {
public:
    // States: 0 = tiger-left, 1 = tiger-right, 2 = done.
    // Actions: 0 = listen, 1 = open-left, 2 = open-right.
    // Observations: 0 = hear-left, 1 = hear-right.
    static constexpr std::int32_t kTigerLeft = 0;
    static constexpr std::int32_t kTigerRight = 1;
    static constexpr std::int32_t kDone = 2;
    static constexpr int kListen = 0;
    static constexpr int kOpenLeft = 1;
    static constexpr int kOpenRight = 2;
    static constexpr std::int32_t kHearLeft = 0;
    static constexpr std::int32_t kHearRight = 1;

    explicit TigerModel(TigerConfig cfg = {});

    std::string_view name() const override { return "tiger"; }
    int action_count() const override { return 3; }
    int level_count() const override { return cfg_.levels; }
    int noise_dim() const override { return 1; }
    double discount() const override { return cfg_.discount; }
    int max_steps() const override { return cfg_.max_steps; }

    StepResult step(int level, const State& s, int action, const NoiseDraw& psi,
                    double noise_scale) const override;
    double reward(const State& s, int action) const override;
    bool is_terminal(const State& s) const override { return s.d == kDone; }
    double heuristic(const State& s) const override;
    double observation_likelihood(const State& next, int action,
                                  const Observation& o) const override;
    ObsKey observation_key(const Observation& o) const override { return o.d; }
    State sample_initial_state(Rng& rng) const override;

    const TigerConfig& config() const { return cfg_; }

    /// Exact P(o | s', a) table entry, for oracle-side checks.
    double exact_observation_prob(std::int32_t state, int action, std::int32_t obs) const;

    static State make_state(std::int32_t d) {
        State s;
        s.d = d;
        return s;
    }

private:
    TigerConfig cfg_;
};

}  // namespace mlpp
