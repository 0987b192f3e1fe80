#include "saa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "common/errors.hpp"
#include "common/rng.hpp"

namespace ccsaa::saa {

ViolationCount empirical_violation(const ConstraintFunction& g, std::span<const double> x,
                                   const SampleBatch& batch, double gamma) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < batch.count; ++i)
        if (g.evaluate(x, batch.point(i)) + gamma > 0.0) ++c;
    return {c, static_cast<std::int64_t>(batch.count), false};
}

ViolationCount robust_empirical_violation(const ConstraintFunction& g,
                                          std::span<const double> x, const SampleBatch& batch,
                                          double gamma, const RobustOptions& opt) {
    std::int64_t c = 0;
    bool approx = false;
    for (std::size_t i = 0; i < batch.count; ++i) {
        SupResult s;
        try {
            s = robust_sup(x, batch.point(i), batch.radii[i], batch.norm, batch.support_mode,
                           batch.support, g, opt);
        } catch (const empty_intersection_error& e) {
            throw empty_intersection_error(std::string(e.what()) + " (sample index " +
                                               std::to_string(i + 1) + ")",
                                           static_cast<long long>(i));
        }
        if (s.value + gamma > 0.0) ++c;
        approx = approx || !s.exact;
    }
    return {c, static_cast<std::int64_t>(batch.count), approx};
}

std::vector<std::size_t> feasible_set(const ProblemInstance& instance, const SampleBatch& batch,
                                      double gamma, const RobustOptions& opt) {
    if (instance.decision_set.kind != DecisionSetKind::finite)
        throw std::domain_error("feasible_set: requires a finite decision set");
    std::vector<std::size_t> keep;
    for (std::size_t idx = 0; idx < instance.decision_set.points.size(); ++idx) {
        const auto vc = robust_empirical_violation(instance.constraint,
                                                   instance.decision_set.points[idx], batch,
                                                   gamma, opt);
        if (fraction_le(vc.violations, vc.total, instance.risk.alpha)) keep.push_back(idx);
    }
    return keep;
}

SolveResult solve_by_enumeration(const ProblemInstance& instance, const SampleBatch& batch,
                                 double gamma, const RobustOptions& opt) {
    if (!instance.objective)
        throw std::domain_error("solve_by_enumeration: no objective present");
    const auto feas = feasible_set(instance, batch, gamma, opt);
    SolveResult out;
    if (feas.empty()) return out;
    const Vec& f = *instance.objective;
    bool first = true;
    for (std::size_t idx : feas) {
        const Vec& p = instance.decision_set.points[idx];
        const double val = dot(f, p);
        const bool better =
            first || val < out.objective ||
            (val == out.objective &&
             std::lexicographical_compare(p.begin(), p.end(), out.point.begin(),
                                          out.point.end()));
        if (better) {
            out.feasible = true;
            out.index = idx;
            out.point = p;
            out.objective = val;
            first = false;
        }
    }
    return out;
}

Vec radii_from_theta(const dist::VariationBudget& budget, std::int64_t n_samples, double theta) {
    if (!(theta > 0.0))
        throw std::domain_error("radii_from_theta: theta must be > 0");
    if (n_samples < 1)
        throw std::domain_error("radii_from_theta: need at least one sample");
    Vec r(static_cast<std::size_t>(n_samples));
    for (std::int64_t i = 1; i <= n_samples; ++i)
        r[static_cast<std::size_t>(i - 1)] = budget.eval(n_samples + 1 - i) / theta;
    return r;
}

namespace {

double gaussian_upper_tail(double t) {
    // P{ Z > t } for standard normal.
    return 0.5 * std::erfc(t / 1.4142135623730950488);
}

ViolationProbability monte_carlo_violation(const ConstraintFunction& g,
                                           std::span<const double> x,
                                           const dist::DistributionSpec& target,
                                           const TrueViolationOptions& opt) {
    Rng rng(opt.seed);
    Vec xi(target.dim());
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < opt.draws; ++i) {
        target.sample(rng, xi);
        if (g.evaluate(x, xi) > 0.0) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(opt.draws);
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(opt.draws));
    return {p, se, false};
}

// Root of g(x, .) on [lo, hi] for a constraint declared monotone in scalar xi.
double bracket_root_1d(const ConstraintFunction& g, std::span<const double> x, double lo,
                       double hi) {
    double a = lo, b = hi;
    const auto eval = [&](double t) {
        const double xi[1] = {t};
        return g.evaluate(x, std::span<const double>(xi, 1));
    };
    double fa = eval(a), fb = eval(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) return fa > 0.0 ? (g.monotone_in_xi > 0 ? a : b)
                                                  : (g.monotone_in_xi > 0 ? b : a);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = eval(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

ViolationProbability true_violation_probability(const ConstraintFunction& g,
                                                std::span<const double> x,
                                                const dist::DistributionSpec& target,
                                                const TrueViolationOptions& opt) {
    using dist::Family;

    if (target.family == Family::dirac)
        return {g.evaluate(x, target.location) > 0.0 ? 1.0 : 0.0, 0.0, true};

    if (target.family == Family::discrete_weighted) {
        double p = 0.0;
        for (std::size_t i = 0; i < target.atoms.size(); ++i)
            if (g.evaluate(x, target.atoms[i]) > 0.0) p += target.weights[i];
        return {p, 0.0, true};
    }

    if (g.kind == ConstraintKind::bi_affine) {
        if (target.family == Family::gaussian_isotropic) {
            // <x, xi> is normal with mean <x, mu> and stddev sigma * ||x||_2.
            const double mean = dot(x, target.location) - g.offset;
            const double scale = target.stddev * norm_of(x, Norm::l2);
            if (scale == 0.0) return {mean > 0.0 ? 1.0 : 0.0, 0.0, true};
            return {gaussian_upper_tail(-mean / scale), 0.0, true};
        }
        if (target.family == Family::uniform_box && target.dim() == 1) {
            const double a = target.lower[0], b = target.upper[0];
            const double coeff = x[0];
            if (coeff == 0.0) return {-g.offset > 0.0 ? 1.0 : 0.0, 0.0, true};
            const double t = g.offset / coeff; // g > 0 <=> coeff*xi > offset
            if (b == a) return {coeff * a - g.offset > 0.0 ? 1.0 : 0.0, 0.0, true};
            const double above = std::clamp((b - t) / (b - a), 0.0, 1.0);
            return {coeff > 0.0 ? above : 1.0 - above, 0.0, true};
        }
    }

    if (g.kind == ConstraintKind::black_box && g.monotone_in_xi != 0 && target.dim() == 1 &&
        (target.family == Family::uniform_box ||
         target.family == Family::gaussian_isotropic)) {
        double lo, hi;
        if (target.family == Family::uniform_box) {
            lo = target.lower[0];
            hi = target.upper[0];
        } else {
            lo = target.location[0] - 12.0 * target.stddev;
            hi = target.location[0] + 12.0 * target.stddev;
        }
        const double root = bracket_root_1d(g, x, lo, hi);
        const double at_root = target.cdf1d(root);
        // increasing: violation on (root, inf); decreasing: on (-inf, root)
        return {g.monotone_in_xi > 0 ? 1.0 - at_root : at_root, 0.0, true};
    }

    return monte_carlo_violation(g, x, target, opt);
}

void check_declared_lipschitz(const ConstraintFunction& g,
                              const std::vector<Vec>& decision_points,
                              const std::vector<Vec>& realizations) {
    if (!g.lipschitz)
        throw std::domain_error("check_declared_lipschitz: no declared constant");
    const double L = *g.lipschitz;
    for (const auto& xi : realizations)
        for (std::size_t a = 0; a < decision_points.size(); ++a)
            for (std::size_t b = a + 1; b < decision_points.size(); ++b) {
                const auto& xa = decision_points[a];
                const auto& xb = decision_points[b];
                Vec diff(xa.size());
                for (std::size_t j = 0; j < xa.size(); ++j) diff[j] = xa[j] - xb[j];
                const double lhs = std::abs(g.evaluate(xa, xi) - g.evaluate(xb, xi));
                const double rhs = L * norm_of(diff, Norm::linf) + 1e-9;
                if (lhs > rhs)
                    throw std::domain_error(
                        "declared Lipschitz constant violated: |g(x,xi)-g(y,xi)|=" +
                        std::to_string(lhs) + " > L*||x-y||_inf+tol=" + std::to_string(rhs));
            }
}

} // namespace ccsaa::saa
