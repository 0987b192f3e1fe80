#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "common/numeric.hpp"
#include "dist/support.hpp"

namespace ccsaa::saa {

enum class SupportMode { ball_only, ball_intersect_support };

// N drawn points with per-sample uncertainty radii. Points are stored flat
// (row-major) so per-trial redraws reuse one allocation.
struct SampleBatch {
    std::size_t dim = 0;
    std::size_t count = 0;
    Vec points; // count * dim
    Vec radii;  // count
    Norm norm = Norm::l2;
    SupportMode support_mode = SupportMode::ball_only;
    dist::SupportSet support;

    std::span<const double> point(std::size_t i) const {
        return {points.data() + i * dim, dim};
    }
    std::span<double> point_mut(std::size_t i) { return {points.data() + i * dim, dim}; }

    void resize(std::size_t n, std::size_t d) {
        count = n;
        dim = d;
        points.assign(n * d, 0.0);
        radii.assign(n, 0.0);
    }

    void validate() const {
        if (dim < 1 || count < 1)
            throw std::domain_error("SampleBatch: needs at least one point and dimension >= 1");
        if (points.size() != count * dim)
            throw std::domain_error("SampleBatch: point storage size mismatch");
        if (radii.size() != count)
            throw std::domain_error("SampleBatch: radii length must equal point count");
        for (double r : radii)
            if (!(r >= 0.0))
                throw std::domain_error("SampleBatch: radii must be nonnegative");
        if (support.dim != 0 && support.dim != dim)
            throw std::domain_error("SampleBatch: support dimension mismatch");
    }
};

} // namespace ccsaa::saa
