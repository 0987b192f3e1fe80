#include "saa/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "common/errors.hpp"

namespace ccsaa::saa {

namespace {

// Distance from a point to an axis-aligned box, measured in the given norm.
double dist_to_box(std::span<const double> c, const Vec& lo, const Vec& hi, Norm norm) {
    Vec gaps(c.size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j)
        gaps[j] = std::max({0.0, lo[j] - c[j], c[j] - hi[j]});
    return norm_of(gaps, norm);
}

double clamp1(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// max sum_j x_j v_j  s.t.  ||v||_inf <= r, l <= v <= u   (exact, coordinatewise)
double max_linear_linf_box(std::span<const double> x, const Vec& l, const Vec& u, double r) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double lo = std::max(l[j], -r), hi = std::min(u[j], r);
        if (lo > hi)
            throw empty_intersection_error("uncertainty ball does not meet the support set");
        s += x[j] * (x[j] >= 0.0 ? hi : lo);
    }
    return s;
}

// max sum_j x_j v_j  s.t.  ||v||_1 <= r, l <= v <= u.
// From the minimum-norm feasible point every useful move costs budget at unit
// rate, so the LP collapses to a fractional knapsack over per-coordinate
// headrooms.
double max_linear_l1_box(std::span<const double> x, const Vec& l, const Vec& u, double r) {
    const std::size_t d = x.size();
    double obj = 0.0, spent = 0.0;
    struct Move {
        double gain, cap;
        std::size_t j;
    };
    std::vector<Move> moves;
    moves.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double base = clamp1(0.0, l[j], u[j]);
        obj += x[j] * base;
        spent += std::abs(base);
        if (x[j] > 0.0 && u[j] > base) moves.push_back({x[j], u[j] - base, j});
        if (x[j] < 0.0 && l[j] < base) moves.push_back({-x[j], base - l[j], j});
    }
    double budget = r - spent;
    if (budget < -1e-12 * (1.0 + r))
        throw empty_intersection_error("uncertainty ball does not meet the support set");
    budget = std::max(budget, 0.0);
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        if (a.gain != b.gain) return a.gain > b.gain;
        return a.j < b.j;
    });
    for (const auto& m : moves) {
        if (budget <= 0.0) break;
        const double t = std::min(m.cap, budget);
        obj += m.gain * t;
        budget -= t;
    }
    return obj;
}

// max sum_j x_j v_j  s.t.  ||v||_2 <= r, l <= v <= u.
// KKT: v_j = clamp(lambda x_j, l_j, u_j) with a single multiplier lambda >= 0,
// and ||v(lambda)||_2 is nondecreasing. Walk the clamp breakpoints and solve
// the quadratic on the interval where the radius is exhausted.
double max_linear_l2_box(std::span<const double> x, const Vec& l, const Vec& u, double r) {
    const std::size_t d = x.size();
    auto v_at = [&](double lam, std::size_t j) { return clamp1(lam * x[j], l[j], u[j]); };
    auto radius_sq = [&](double lam) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = v_at(lam, j);
            s += v * v;
        }
        return s;
    };
    auto objective = [&](double lam) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += x[j] * v_at(lam, j);
        return s;
    };

    const double r2 = r * r;
    if (radius_sq(0.0) > r2 * (1.0 + 1e-12) + 1e-300)
        throw empty_intersection_error("uncertainty ball does not meet the support set");

    std::vector<double> bps{0.0};
    for (std::size_t j = 0; j < d; ++j) {
        if (x[j] > 0.0) {
            if (l[j] > 0.0) bps.push_back(l[j] / x[j]);
            if (u[j] > 0.0) bps.push_back(u[j] / x[j]);
        } else if (x[j] < 0.0) {
            if (u[j] < 0.0) bps.push_back(u[j] / x[j]);
            if (l[j] < 0.0) bps.push_back(l[j] / x[j]);
        }
    }
    bps.erase(std::remove_if(bps.begin(), bps.end(),
                             [](double b) { return !std::isfinite(b) || b > 1e100; }),
              bps.end());
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    // Solve C2 + S * lam^2 = r2 on the interval where the classification in
    // {free, clamped} is constant; evaluating through the clamp keeps the
    // result feasible even at interval edges.
    auto solve_on = [&](double s, double e, double classify_at) {
        double clamped_sq = 0.0, free_sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double raw = classify_at * x[j];
            if (raw > l[j] && raw < u[j]) free_sq += x[j] * x[j];
            else {
                const double v = v_at(classify_at, j);
                clamped_sq += v * v;
            }
        }
        double lam;
        if (free_sq <= 0.0) lam = s;
        else lam = std::sqrt(std::max(r2 - clamped_sq, 0.0) / free_sq);
        if (e > s) lam = clamp1(lam, s, e);
        else lam = std::max(lam, s);
        return objective(lam);
    };

    for (std::size_t t = 0; t + 1 < bps.size(); ++t) {
        const double s = bps[t], e = bps[t + 1];
        if (radius_sq(e) < r2) continue;
        return solve_on(s, e, 0.5 * (s + e));
    }

    // Beyond the last breakpoint: either every coordinate is pinned at its box
    // bound (box optimum, if it fits in the ball) or the radius still binds.
    const double tail = 2.0 * bps.back() + 1.0;
    bool any_free = false;
    for (std::size_t j = 0; j < d && !any_free; ++j) {
        const double raw = tail * x[j];
        any_free = raw > l[j] && raw < u[j];
    }
    if (!any_free && radius_sq(tail) <= r2) return objective(tail);
    return solve_on(bps.back(), -1.0, tail);
}

// Low-discrepancy direction set (Kronecker sequence with the generalized
// golden ratio), mapped onto the radius-r ball around the center.
class QuasiBall {
public:
    QuasiBall(std::size_t dim, Norm norm) : dim_(dim), norm_(norm), alphas_(dim) {
        double g = 1.5;
        for (int it = 0; it < 64; ++it)
            g = std::pow(1.0 + g, 1.0 / (static_cast<double>(dim) + 1.0));
        double a = 1.0 / g;
        for (std::size_t j = 0; j < dim; ++j) {
            alphas_[j] = a;
            a /= g;
        }
    }

    void point(std::size_t k, std::span<const double> center, double r,
               std::span<double> out) const {
        Vec y(dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            const double u = std::fmod(0.5 + static_cast<double>(k + 1) * alphas_[j], 1.0);
            y[j] = 2.0 * u - 1.0;
        }
        const double len = norm_of(y, norm_);
        if (len > 1.0)
            for (auto& v : y) v /= len;
        for (std::size_t j = 0; j < dim_; ++j) out[j] = center[j] + r * y[j];
    }

private:
    std::size_t dim_;
    Norm norm_;
    Vec alphas_;
};

bool in_ball(std::span<const double> u, std::span<const double> c, double r, Norm norm) {
    Vec diff(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) diff[j] = u[j] - c[j];
    return norm_of(diff, norm) <= r * (1.0 + 1e-12);
}

SupResult black_box_sup(std::span<const double> x, std::span<const double> center,
                        double radius, Norm norm, bool use_box, const Vec& lo, const Vec& hi,
                        const ConstraintFunction& g, const RobustOptions& opt) {
    const std::size_t d = center.size();
    Vec candidate(d), anchor(d);
    double best;

    if (use_box) {
        // Projection of the center onto the box: feasible by the emptiness check.
        for (std::size_t j = 0; j < d; ++j) anchor[j] = clamp1(center[j], lo[j], hi[j]);
    } else {
        std::copy(center.begin(), center.end(), anchor.begin());
    }
    best = g.evaluate(x, anchor);

    QuasiBall seq(d, norm);
    for (int k = 0; k < opt.black_box_points; ++k) {
        seq.point(static_cast<std::size_t>(k), center, radius, candidate);
        if (use_box) {
            for (std::size_t j = 0; j < d; ++j)
                candidate[j] = clamp1(candidate[j], lo[j], hi[j]);
            if (!in_ball(candidate, center, radius, norm)) {
                // Pull toward the anchor until the ball constraint holds again.
                double t_lo = 0.0, t_hi = 1.0;
                Vec probe(d);
                for (int it = 0; it < 40; ++it) {
                    const double t = 0.5 * (t_lo + t_hi);
                    for (std::size_t j = 0; j < d; ++j)
                        probe[j] = anchor[j] + t * (candidate[j] - anchor[j]);
                    if (in_ball(probe, center, radius, norm)) t_lo = t;
                    else t_hi = t;
                }
                for (std::size_t j = 0; j < d; ++j)
                    candidate[j] = anchor[j] + t_lo * (candidate[j] - anchor[j]);
            }
        }
        best = std::max(best, g.evaluate(x, candidate));
    }
    return {best, false};
}

} // namespace

SupResult robust_sup(std::span<const double> x, std::span<const double> center, double radius,
                     Norm norm, SupportMode mode, const dist::SupportSet& support,
                     const ConstraintFunction& g, const RobustOptions& opt) {
    if (!(radius >= 0.0))
        throw std::domain_error("robust_sup: radius must be >= 0");
    if (radius == 0.0) return {g.evaluate(x, center), true};

    const bool use_box = mode == SupportMode::ball_intersect_support &&
                         support.kind == dist::SupportKind::box;
    if (use_box && support.dim != center.size())
        throw std::domain_error("robust_sup: support dimension mismatch");

    if (g.kind == ConstraintKind::bi_affine) {
        if (x.size() != center.size())
            throw std::domain_error("robust_sup: bi-affine constraint needs dim(x) == dim(xi)");
        if (!use_box)
            return {dot(x, center) + radius * dual_norm_of(x, norm) - g.offset, true};

        if (dist_to_box(center, support.lower, support.upper, norm) > radius)
            throw empty_intersection_error("uncertainty ball does not meet the support set");

        // Shift coordinates so the ball is centered at the origin.
        const std::size_t d = center.size();
        Vec l(d), u(d);
        for (std::size_t j = 0; j < d; ++j) {
            l[j] = support.lower[j] - center[j];
            u[j] = support.upper[j] - center[j];
        }
        double inner = 0.0;
        switch (norm) {
            case Norm::linf: inner = max_linear_linf_box(x, l, u, radius); break;
            case Norm::l1: inner = max_linear_l1_box(x, l, u, radius); break;
            case Norm::l2: inner = max_linear_l2_box(x, l, u, radius); break;
        }
        return {dot(x, center) + inner - g.offset, true};
    }

    if (use_box && dist_to_box(center, support.lower, support.upper, norm) > radius)
        throw empty_intersection_error("uncertainty ball does not meet the support set");
    return black_box_sup(x, center, radius, norm, use_box, support.lower, support.upper, g, opt);
}

} // namespace ccsaa::saa
