#include "saa/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccsaa::saa {

ConstraintFunction ConstraintFunction::bi_affine(double offset) {
    ConstraintFunction g;
    g.kind = ConstraintKind::bi_affine;
    g.offset = offset;
    return g;
}

ConstraintFunction ConstraintFunction::black_box(
    std::function<double(std::span<const double>, std::span<const double>)> fn,
    std::optional<double> lipschitz, int monotone_in_xi) {
    ConstraintFunction g;
    g.kind = ConstraintKind::black_box;
    g.eval_fn = std::move(fn);
    g.lipschitz = lipschitz;
    g.monotone_in_xi = monotone_in_xi;
    if (!g.eval_fn) throw std::domain_error("black_box constraint needs a callback");
    return g;
}

double ConstraintFunction::evaluate(std::span<const double> x,
                                    std::span<const double> xi) const {
    if (kind == ConstraintKind::bi_affine) return dot(x, xi) - offset;
    return eval_fn(x, xi);
}

DecisionSet DecisionSet::finite(std::vector<Vec> points) {
    DecisionSet s;
    s.kind = DecisionSetKind::finite;
    s.points = std::move(points);
    s.validate();
    return s;
}

DecisionSet DecisionSet::box(Vec lo, Vec hi) {
    DecisionSet s;
    s.kind = DecisionSetKind::box;
    s.lower = std::move(lo);
    s.upper = std::move(hi);
    s.validate();
    return s;
}

std::size_t DecisionSet::dim() const {
    if (kind == DecisionSetKind::finite) return points.empty() ? 0 : points.front().size();
    return lower.size();
}

double DecisionSet::linf_diameter() const {
    if (kind != DecisionSetKind::box)
        throw std::domain_error("linf_diameter: defined for box decision sets");
    double d = 0.0;
    for (std::size_t j = 0; j < lower.size(); ++j) d = std::max(d, upper[j] - lower[j]);
    return d;
}

void DecisionSet::validate() const {
    if (kind == DecisionSetKind::finite) {
        if (points.empty())
            throw std::domain_error("DecisionSet: finite set must be nonempty");
        const std::size_t d = points.front().size();
        if (d < 1) throw std::domain_error("DecisionSet: dimension must be >= 1");
        for (const auto& p : points)
            if (p.size() != d)
                throw std::domain_error("DecisionSet: mixed point dimensions");
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j])
                    throw std::domain_error("DecisionSet: duplicate points");
    } else {
        if (lower.empty() || lower.size() != upper.size())
            throw std::domain_error("DecisionSet: box bounds mismatch");
        for (std::size_t j = 0; j < lower.size(); ++j)
            if (!(lower[j] <= upper[j]))
                throw std::domain_error("DecisionSet: box lower exceeds upper");
    }
}

void RiskConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::domain_error("RiskConfig: epsilon outside [0, 1]");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("RiskConfig: alpha outside [0, 1]");
    if (!(gamma >= 0.0))
        throw std::domain_error("RiskConfig: gamma must be >= 0");
}

void ProblemInstance::validate() const {
    decision_set.validate();
    risk.validate();
    if (objective && decision_set.dim() != objective->size())
        throw std::domain_error("ProblemInstance: objective dimension mismatch");
}

} // namespace ccsaa::saa
