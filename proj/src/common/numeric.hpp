#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace ccsaa {

using Vec = std::vector<double>;

enum class Norm { l1, l2, linf };

const char* norm_name(Norm n);

double norm_of(std::span<const double> v, Norm n);

// Value of the dual norm, i.e. sup of <v, u> over the unit ball of the primal
// norm: dual of L1 is Linf, dual of L2 is L2, dual of Linf is L1.
double dual_norm_of(std::span<const double> v, Norm primal);

double dot(std::span<const double> a, std::span<const double> b);

// Neumaier-compensated accumulator.
template <typename T = double>
struct CompensatedSum {
    T sum = 0;
    T comp = 0;

    void add(T x) {
        T t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T value() const { return sum + comp; }
};

// Values within this distance of an integer are treated as that integer before
// flooring or ceiling, so quantities like alpha*N land on the intended grid
// when both factors are round decimal numbers.
inline constexpr double kIntegerSnapTol = 1e-9;

std::int64_t floor_snapped(double z, double tol = kIntegerSnapTol);
std::int64_t ceil_snapped(double z, double tol = kIntegerSnapTol);

// Exact comparison count/total <= threshold for integers 0 <= count <= total
// and a finite double threshold. No rounding: the threshold is decomposed into
// its exact binary fraction and the comparison is done in integer arithmetic.
bool fraction_le(std::int64_t count, std::int64_t total, double threshold);

// Largest integer c in [-1, total] with c/total <= threshold (-1 when even 0
// fails, i.e. threshold < 0).
std::int64_t max_count_within(std::int64_t total, double threshold);

} // namespace ccsaa
