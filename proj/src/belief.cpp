#include "mlpp/belief.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mlpp {

ParticleBelief::ParticleBelief(std::vector<State> particles, std::vector<double> weights,
                               std::size_t capacity)
    : particles_(std::move(particles)), weights_(std::move(weights)), capacity_(capacity) {
    if (particles_.empty()) throw std::invalid_argument("belief needs at least one particle");
    if (particles_.size() != weights_.size()) {
        throw std::invalid_argument("particle/weight size mismatch");
    }
    if (particles_.size() > capacity_) throw std::invalid_argument("belief over capacity");
    double total = 0.0;
    for (double w : weights_) {
        if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("bad particle weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("belief weights sum to zero");
    for (double& w : weights_) w /= total;
}

ParticleBelief ParticleBelief::uniform(std::vector<State> particles, std::size_t capacity) {
    const std::size_t n = particles.size();
    return ParticleBelief(std::move(particles), std::vector<double>(n, 1.0), capacity);
}

ParticleBelief ParticleBelief::initial(const PomdpModel& model, std::size_t capacity, Rng& rng) {
    std::vector<State> particles;
    particles.reserve(capacity);
    for (std::size_t i = 0; i < capacity; ++i) {
        particles.push_back(model.sample_initial_state(rng));
    }
    return uniform(std::move(particles), capacity);
}

const State& ParticleBelief::sample(Rng& rng) const {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        acc += weights_[i];
        if (u < acc) return particles_[i];
    }
    return particles_.back();
}

namespace {

// Systematic resampling with a single uniform offset.
std::vector<State> resample(const std::vector<State>& particles,
                            const std::vector<double>& weights, std::size_t count, Rng& rng) {
    std::vector<State> out;
    out.reserve(count);
    const double offset = rng.uniform01() / static_cast<double>(count);
    double cumulative = weights[0];
    std::size_t i = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double target = offset + static_cast<double>(k) / static_cast<double>(count);
        while (cumulative < target && i + 1 < particles.size()) {
            ++i;
            cumulative += weights[i];
        }
        out.push_back(particles[i]);
    }
    return out;
}

}  // namespace

std::optional<ParticleBelief> sir_update(const ParticleBelief& belief, int action,
                                         const Observation& obs, const PomdpModel& model,
                                         Rng& rng, const SirOptions& opt) {
    const std::size_t n = belief.size();
    const int level = model.max_level();  // belief tracking always uses the reference dynamics
    const std::uint64_t base_seed = rng.next_u64();

    std::vector<State> propagated(n);
    std::vector<double> weights(n);
    parallel_for(static_cast<std::int64_t>(n), opt.exec, [&](std::int64_t i) {
        Rng local(mix_seed(base_seed, static_cast<std::uint64_t>(i)));
        const NoiseDraw psi = NoiseDraw::sample(model.noise_dim(), local);
        const State& s = belief.particles()[static_cast<std::size_t>(i)];
        propagated[static_cast<std::size_t>(i)] =
            model.simulate(level, s, action, psi, opt.noise_scale).state;
        weights[static_cast<std::size_t>(i)] =
            belief.weights()[static_cast<std::size_t>(i)] *
            model.observation_likelihood(propagated[static_cast<std::size_t>(i)], action, obs);
    });

    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 1e-300)) return std::nullopt;
    for (double& w : weights) w /= total;

    auto resampled = resample(propagated, weights, belief.capacity(), rng);
    return ParticleBelief::uniform(std::move(resampled), belief.capacity());
}

ParticleBelief update_belief(const ParticleBelief& belief, int action, const Observation& obs,
                             const PomdpModel& model, Rng& rng, const ExecPolicy& exec) {
    if (auto updated = sir_update(belief, action, obs, model, rng, {1.0, exec})) {
        return *std::move(updated);
    }
    // Retry with inflated propagation noise.
    if (auto updated = sir_update(belief, action, obs, model, rng, {2.0, exec})) {
        return *std::move(updated);
    }
    // Last resort: keep prior-propagated particles with uniform weights.
    const std::size_t n = belief.size();
    const std::uint64_t base_seed = rng.next_u64();
    std::vector<State> propagated(n);
    parallel_for(static_cast<std::int64_t>(n), exec, [&](std::int64_t i) {
        Rng local(mix_seed(base_seed, static_cast<std::uint64_t>(i)));
        const NoiseDraw psi = NoiseDraw::sample(model.noise_dim(), local);
        propagated[static_cast<std::size_t>(i)] =
            model.simulate(model.max_level(), belief.particles()[static_cast<std::size_t>(i)],
                           action, psi)
                .state;
    });
    return ParticleBelief::uniform(std::move(propagated), belief.capacity());
}

}  // namespace mlpp
