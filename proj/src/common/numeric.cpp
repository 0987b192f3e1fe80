#include "common/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccsaa {

const char* norm_name(Norm n) {
    switch (n) {
        case Norm::l1: return "l1";
        case Norm::l2: return "l2";
        case Norm::linf: return "linf";
    }
    return "?";
}

double norm_of(std::span<const double> v, Norm n) {
    switch (n) {
        case Norm::l1: {
            double s = 0;
            for (double x : v) s += std::abs(x);
            return s;
        }
        case Norm::l2: {
            double s = 0;
            for (double x : v) s += x * x;
            return std::sqrt(s);
        }
        case Norm::linf: {
            double s = 0;
            for (double x : v) s = std::max(s, std::abs(x));
            return s;
        }
    }
    return 0;
}

double dual_norm_of(std::span<const double> v, Norm primal) {
    switch (primal) {
        case Norm::l1: return norm_of(v, Norm::linf);
        case Norm::l2: return norm_of(v, Norm::l2);
        case Norm::linf: return norm_of(v, Norm::l1);
    }
    return 0;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::int64_t floor_snapped(double z, double tol) {
    const double r = std::nearbyint(z);
    if (std::abs(z - r) <= tol) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(z));
}

std::int64_t ceil_snapped(double z, double tol) {
    const double r = std::nearbyint(z);
    if (std::abs(z - r) <= tol) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::ceil(z));
}

bool fraction_le(std::int64_t count, std::int64_t total, double threshold) {
    if (total <= 0)
        throw std::domain_error("fraction_le: total must be positive");
    if (count < 0 || count > total)
        throw std::domain_error("fraction_le: count outside [0, total]");
    if (std::isnan(threshold))
        throw std::domain_error("fraction_le: threshold is NaN");
    if (threshold >= 1.0) return true;
    if (threshold < 0.0) return false;
    if (threshold == 0.0) return count == 0;

    // Cheap filter with a safety margin; only near-ties need exact treatment.
    const double approx = threshold * static_cast<double>(total);
    const double margin = 4.0 + 1e-9 * std::abs(approx);
    if (static_cast<double>(count) > approx + margin) return false;
    if (static_cast<double>(count) < approx - margin) return true;

    // threshold = m * 2^e with m in [0.5, 1); M = m * 2^53 is an exact integer,
    // so count/total <= threshold  <=>  count * 2^(53-e) <= M * total.
    int e = 0;
    const double m = std::frexp(threshold, &e);
    const auto M = static_cast<unsigned long long>(std::ldexp(m, 53));
    const int shift = 53 - e; // >= 53 because threshold < 1
    if (shift > 100) {
        // threshold < 2^-47: threshold*total < 1 for any realistic total,
        // so only count == 0 can pass (count >= 1 => count/total >= 2^-63
        // and the filter above already resolved non-tiny totals).
        return count == 0;
    }
    const unsigned __int128 lhs = static_cast<unsigned __int128>(count) << shift;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(M) * static_cast<unsigned long long>(total);
    return lhs <= rhs;
}

std::int64_t max_count_within(std::int64_t total, double threshold) {
    if (total <= 0)
        throw std::domain_error("max_count_within: total must be positive");
    if (threshold >= 1.0) return total;
    if (threshold < 0.0) return -1;
    auto c = static_cast<std::int64_t>(
        std::floor(static_cast<long double>(threshold) * static_cast<long double>(total)));
    c = std::clamp<std::int64_t>(c, 0, total);
    while (c < total && fraction_le(c + 1, total, threshold)) ++c;
    while (c >= 0 && !fraction_le(c, total, threshold)) --c;
    return c;
}

} // namespace ccsaa
