#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ccsaa::mc {

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
    double center = 0.0;
    double halfwidth = 0.0;
};

// 95% Wilson score interval; well-behaved near frequency 0, which is where
// infeasibility estimates live.
inline WilsonInterval wilson95(std::int64_t successes, std::int64_t trials) {
    if (trials < 1) throw std::domain_error("wilson95: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::domain_error("wilson95: successes outside [0, trials]");
    constexpr double z = 1.9599639845400545; // 97.5% normal quantile
    const auto n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    WilsonInterval w;
    w.center = (phat + 0.5 * z2n) / denom;
    w.halfwidth = z * std::sqrt(phat * (1.0 - phat) / n + 0.25 * z2n / n) / denom;
    w.low = std::max(0.0, w.center - w.halfwidth);
    w.high = std::min(1.0, w.center + w.halfwidth);
    return w;
}

} // namespace ccsaa::mc
