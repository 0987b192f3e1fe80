#include "harness/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "bounds/infeasibility_bounds.hpp"
#include "common/errors.hpp"

namespace ccsaa::mc {

SweepResult sweep_bound_comparison(std::int64_t dim, double eps, double alpha,
                                   double ld_over_gamma, double beta, std::int64_t n_min,
                                   std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min)
        throw validation_error("sweep", "need 1 <= n_min <= n_max");
    if (!(ld_over_gamma > 0.0))
        throw validation_error("sweep", "ld_over_gamma must be > 0");

    SweepResult out;
    out.rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        const auto cov = bounds::bound_covering(ld_over_gamma, 1.0, 1.0, dim, alpha, eps, n);
        const auto lue =
            bounds::bound_luedtke(ld_over_gamma, 1.0, 1.0, dim, alpha, eps, beta, n);
        SweepRow row;
        row.n_samples = n;
        row.covering_raw = cov.raw;
        row.covering_log10 = cov.log10_raw;
        row.luedtke_raw = lue.raw;
        row.luedtke_log10 = lue.log10_raw;
        row.ratio = std::exp((lue.log10_raw - cov.log10_raw) * 2.302585092994045684);
        out.rows.push_back(row);
        if (out.first_n_below_one == 0 && cov.raw < 1.0) out.first_n_below_one = n;
        if (row.ratio > out.max_ratio) out.max_ratio = row.ratio;
    }
    return out;
}

} // namespace ccsaa::mc
