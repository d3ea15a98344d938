#include "mlpp/episode.hpp"

#include <stdexcept>

namespace mlpp {

std::vector<double> episode_values(const Episode& e, double gamma) {
    const std::size_t n = e.length();
    std::vector<double> v(n + 1);
    v[n] = e.tail_reward;
    for (std::size_t i = n; i-- > 0;) {
        v[i] = e.steps[i].reward + gamma * v[i + 1];
    }
    return v;
}

double episode_value(const Episode& e, std::size_t k, double gamma) {
    if (k < 1 || k > e.length() + 1) throw std::out_of_range("episode value index");
    double v = e.tail_reward;
    for (std::size_t i = e.length(); i >= k; --i) {
        v = e.steps[i - 1].reward + gamma * v;
    }
    return v;
}

}  // namespace mlpp
