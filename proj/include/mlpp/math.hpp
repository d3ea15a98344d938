#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace mlpp {

inline constexpr double kPi = 3.14159265358979323846;

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Standard normal density.
inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

/// Density of N(mu, sigma^2) at x.
inline double normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return normal_pdf(z) / sigma;
}

/// Inverse standard normal CDF (Acklam's rational approximation refined with
/// one Newton step, accurate to ~1e-15). Arguments are clamped away from
/// {0, 1} so the result is always finite.
double normal_quantile(double p);

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

/// Streaming mean/variance accumulator (Welford).
struct RunningStat {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    /// Unbiased sample variance; NaN with fewer than two samples.
    double variance() const {
        if (count < 2) return std::numeric_limits<double>::quiet_NaN();
        return m2 / static_cast<double>(count - 1);
    }
};

}  // namespace mlpp
