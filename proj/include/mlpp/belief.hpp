#pragma once

#include <optional>
#include <vector>

#include "mlpp/parallel.hpp"
#include "mlpp/pomdp.hpp"

namespace mlpp {

/// Weighted particle approximation of a belief. Weights are normalized at
/// construction; particle count stays within the configured capacity.
class ParticleBelief {
public:
    ParticleBelief() = default;
    ParticleBelief(std::vector<State> particles, std::vector<double> weights,
                   std::size_t capacity);

    static ParticleBelief uniform(std::vector<State> particles, std::size_t capacity);

    /// capacity() i.i.d. draws from the model's initial distribution.
    static ParticleBelief initial(const PomdpModel& model, std::size_t capacity, Rng& rng);

    std::size_t size() const { return particles_.size(); }
    std::size_t capacity() const { return capacity_; }
    const std::vector<State>& particles() const { return particles_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Particle i with probability weights()[i].
    const State& sample(Rng& rng) const;

private:
    std::vector<State> particles_;
    std::vector<double> weights_;
    std::size_t capacity_ = 0;
};

struct SirOptions {
    double noise_scale = 1.0;
    ExecPolicy exec{};
};

/// One SIR update: propagate every particle through the reference-level
/// dynamics with fresh noise, weight by the observation likelihood, resample
/// capacity() particles. Returns nullopt on particle depletion (total
/// weight underflow). Per-particle noise comes from seeds derived off a
/// single base draw, so serial and parallel execution agree exactly.
std::optional<ParticleBelief> sir_update(const ParticleBelief& belief, int action,
                                         const Observation& obs, const PomdpModel& model,
                                         Rng& rng, const SirOptions& opt = {});

/// SIR update with the depletion fallback: retry once with noise scale 2; if
/// still depleted, keep the prior-propagated particles with uniform weights.
ParticleBelief update_belief(const ParticleBelief& belief, int action, const Observation& obs,
                             const PomdpModel& model, Rng& rng, const ExecPolicy& exec = {});

}  // namespace mlpp
