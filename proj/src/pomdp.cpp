#include "mlpp/pomdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlpp {

double LevelSchedule::parameter(int level) const {
    if (level < 0 || level > max_level) {
        throw std::out_of_range("level " + std::to_string(level) + " outside [0, " +
                                std::to_string(max_level) + "]");
    }
    return c1 * std::exp2(-c2 * static_cast<double>(level));
}

int LevelSchedule::substeps(double duration, int level) const {
    const double p = parameter(level);
    const auto n = static_cast<int>(std::llround(duration / p));
    return n < 1 ? 1 : n;
}

void LevelSchedule::validate() const {
    if (!(c1 > 0.0)) throw std::invalid_argument("level schedule requires c1 > 0");
    if (!(c2 > 0.0)) throw std::invalid_argument("level schedule requires c2 > 0");
    if (max_level < 0) throw std::invalid_argument("level schedule requires max_level >= 0");
}

StepResult PomdpModel::simulate(int level, const State& s, int action, const NoiseDraw& psi,
                                double noise_scale) const {
    if (level < 0 || level >= level_count()) {
        throw std::out_of_range("invalid level index " + std::to_string(level));
    }
    if (psi.dim != noise_dim()) {
        throw std::invalid_argument("noise draw has " + std::to_string(psi.dim) +
                                    " entries, model needs " + std::to_string(noise_dim()));
    }
    return step(level, s, action, psi, noise_scale);
}

}  // namespace mlpp
