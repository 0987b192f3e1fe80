#pragma once

#include <cstdint>
#include <vector>

namespace ccsaa::mc {

struct SweepRow {
    std::int64_t n_samples = 0;
    double covering_raw = 0.0;
    double covering_log10 = 0.0;
    double luedtke_raw = 0.0;
    double luedtke_log10 = 0.0;
    double ratio = 0.0; // luedtke / covering
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::int64_t first_n_below_one = 0; // smallest N with covering bound < 1, 0 if none
    double max_ratio = 0.0;
};

// Covering bound versus the classical comparison bound over a range of sample
// sizes, parameterized by the ratio L*D/gamma. Both curves are evaluated with
// L = ratio, D = 1, gamma = 1.
SweepResult sweep_bound_comparison(std::int64_t dim, double eps, double alpha,
                                   double ld_over_gamma, double beta, std::int64_t n_min,
                                   std::int64_t n_max);

} // namespace ccsaa::mc
