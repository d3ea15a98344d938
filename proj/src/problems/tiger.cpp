#include "mlpp/problems/tiger.hpp"

#include <stdexcept>

namespace mlpp {

TigerModel::TigerModel(TigerConfig cfg) : cfg_(cfg) {
    if (cfg_.listen_accuracy <= 0.5 || cfg_.listen_accuracy >= 1.0) {
        throw std::invalid_argument("listen accuracy must lie in (0.5, 1)");
    }
    if (cfg_.levels < 1) throw std::invalid_argument("tiger needs at least one level");
}

StepResult TigerModel::step(int /*level*/, const State& s, int action, const NoiseDraw& psi,
                            double noise_scale) const {
    StepResult out;
    if (is_terminal(s)) {
        out.state = s;
        out.obs.d = psi[0] < 0.5 ? kHearLeft : kHearRight;
        return out;
    }
    if (action == kListen) {
        out.state = s;
        // Inflated noise pulls the accuracy toward an uninformative 0.5.
        const double acc = 0.5 + (cfg_.listen_accuracy - 0.5) / noise_scale;
        const double p_hear_left = s.d == kTigerLeft ? acc : 1.0 - acc;
        out.obs.d = psi[0] < p_hear_left ? kHearLeft : kHearRight;
    } else {
        out.state = make_state(kDone);
        out.obs.d = psi[0] < 0.5 ? kHearLeft : kHearRight;
    }
    return out;
}

double TigerModel::reward(const State& s, int action) const {
    if (s.d == kDone) return 0.0;
    if (action == kListen) return cfg_.reward_listen;
    const bool opened_tiger_door =
        (action == kOpenLeft && s.d == kTigerLeft) || (action == kOpenRight && s.d == kTigerRight);
    return opened_tiger_door ? cfg_.reward_wrong : cfg_.reward_correct;
}

double TigerModel::heuristic(const State& s) const {
    // Admissible one-step bound from the reward table.
    return is_terminal(s) ? 0.0 : cfg_.reward_correct;
}

double TigerModel::observation_likelihood(const State& next, int action,
                                          const Observation& o) const {
    return exact_observation_prob(next.d, action, o.d);
}

double TigerModel::exact_observation_prob(std::int32_t state, int action,
                                          std::int32_t obs) const {
    if (action != kListen || state == kDone) return 0.5;
    const double acc = cfg_.listen_accuracy;
    const double p_hear_left = state == kTigerLeft ? acc : 1.0 - acc;
    return obs == kHearLeft ? p_hear_left : 1.0 - p_hear_left;
}

State TigerModel::sample_initial_state(Rng& rng) const {
    return make_state(rng.uniform01() < 0.5 ? kTigerLeft : kTigerRight);
}

}  // namespace mlpp
