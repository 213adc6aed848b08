#include "fddestab/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "fddestab/bracketing.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/scaling.hpp"

namespace fddestab {

namespace {

constexpr int kCrossingScanPoints = 4000;
constexpr double kLineTol = 1e-12;

bool on_line(double slope, double line) { return std::abs(slope - line) <= kLineTol * std::max(1.0, std::abs(line)); }

void check_finite(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorKind::InvalidInput, "a and b must be finite");
}

}  // namespace

std::string_view to_string(Region region) noexcept {
    switch (region) {
        case Region::Unstable: return "U";
        case Region::Stable: return "S";
        case Region::SSR: return "SSR";
        case Region::SS: return "SS";
        case Region::Marginal: return "Marginal";
    }
    return "?";
}

std::string_view to_string(PointStability s) noexcept {
    switch (s) {
        case PointStability::Stable: return "stable";
        case PointStability::Unstable: return "unstable";
        case PointStability::Marginal: return "marginal";
    }
    return "?";
}

std::vector<CrossingFrequency> crossing_frequencies(double alpha, double a, double b) {
    validate_alpha(alpha);
    check_finite(a, b);
    if (a == 0.0) throw Error(ErrorKind::InvalidInput, "crossing frequencies need a != 0");
    const double ratio = b / a;

    std::vector<CrossingFrequency> out;
    for (BranchId branch : kAllBranches) {
        const auto iv = branch_interval(alpha, branch);
        auto f = [&](double v) { return ratio - boundary_slope(alpha, v); };
        // The left end is a pole of the slope; approach both ends geometrically.
        const auto grid = bracketing::scan_grid(iv.v_lo + 1e-13, iv.v_hi - 1e-13, kCrossingScanPoints, 1e-12);
        for (const auto& br : bracketing::sign_changes(f, grid))
            out.push_back({bracketing::bisect(f, br, 1e-13), branch});
    }
    return out;
}

double critical_delay(double alpha, double a, double b, const CrossingFrequency& crossing) {
    validate_alpha(alpha);
    check_finite(a, b);
    const auto point = boundary_point(alpha, crossing.v);
    return ray_delay_for_A(alpha, a, point.A);
}

RegionClassifier::RegionClassifier(double alpha) : alpha_(alpha), m1_(t1_slope(alpha)) {
    if (alpha > alpha_star()) A1_ = branch_intersection(alpha).A;
}

Region RegionClassifier::region_of(double a, double b) const {
    check_finite(a, b);
    if (a == 0.0 && b == 0.0) throw Error(ErrorKind::DegenerateInput, "(a, b) = (0, 0) has no definite verdict");
    if (a == 0.0) return Region::Marginal;
    if (a > 0.0) return Region::Unstable;

    const double slope = b / a;
    const bool switch_possible = alpha_ > 2.0 / 3.0;
    if (on_line(slope, -1.0) || on_line(slope, 0.5) || (switch_possible && on_line(slope, m1_)))
        return Region::Marginal;
    if (slope > 0.5 || slope < -1.0) return Region::SSR;
    if (!switch_possible || slope > m1_) return Region::Stable;
    return Region::SS;
}

std::vector<CriticalDelay> RegionClassifier::delays_on(double a, double b,
                                                        std::initializer_list<BranchId> branches) const {
    std::vector<CriticalDelay> out;
    for (const auto& c : crossing_frequencies(alpha_, a, b)) {
        if (std::find(branches.begin(), branches.end(), c.branch) == branches.end()) continue;
        const double A = boundary_point(alpha_, c.v).A;
        if (!(A / a > 0.0)) continue;
        // Second quadrant: keep only the part of Gamma1/Gamma2 that forms Gamma4.
        if (c.branch != BranchId::Gamma3 && gamma4_boundary(A1_, A) != c.branch) continue;
        out.push_back({ray_delay_for_A(alpha_, a, A), c.branch, c.v});
    }
    std::sort(out.begin(), out.end(), [](const CriticalDelay& l, const CriticalDelay& r) { return l.tau < r.tau; });
    return out;
}

RegionVerdict RegionClassifier::classify(double a, double b) const {
    RegionVerdict verdict;
    verdict.region = region_of(a, b);
    switch (verdict.region) {
        case Region::Unstable:
        case Region::Stable:
            return verdict;
        case Region::Marginal:
            verdict.note = a == 0.0 ? "a = 0 lies outside the hypotheses of the classification"
                                    : "(a, b) lies on one of the separating lines b = -a, b = a/2, b = m1 a";
            return verdict;
        case Region::SSR: {
            const bool third_quadrant = b / a > 0.5;
            auto delays = third_quadrant ? delays_on(a, b, {BranchId::Gamma3})
                                         : delays_on(a, b, {BranchId::Gamma1, BranchId::Gamma2});
            if (delays.empty())
                throw Error(ErrorKind::NoCrossing, "SSR ray does not meet the stability boundary numerically");
            verdict.critical_delays.push_back(delays.front());
            verdict.extra_crossings.assign(delays.begin() + 1, delays.end());
            return verdict;
        }
        case Region::SS: {
            auto delays = delays_on(a, b, {BranchId::Gamma1, BranchId::Gamma2});
            if (delays.size() < 2)
                throw Error(ErrorKind::NoCrossing, "SS ray meets the boundary fewer than twice numerically");
            verdict.critical_delays.assign(delays.begin(), delays.begin() + 2);
            verdict.extra_crossings.assign(delays.begin() + 2, delays.end());
            if (!verdict.extra_crossings.empty())
                verdict.note = "ray meets the boundary more than twice; only the first two are used";
            return verdict;
        }
    }
    return verdict;
}

PointStability RegionClassifier::stability_at(double a, double b, double tau) const {
    ModelParams{alpha_, a, b, tau}.validate();
    if (a == 0.0 && b == 0.0) throw Error(ErrorKind::DegenerateInput, "(a, b) = (0, 0) has no definite verdict");
    if (tau == 0.0) {
        if (a < 0.0) return PointStability::Stable;
        return a > 0.0 ? PointStability::Unstable : PointStability::Marginal;
    }
    const auto verdict = classify(a, b);
    auto at_critical = [&](double tc) { return std::abs(tau - tc) <= 1e-12 * std::max(1.0, tc); };
    for (const auto& d : verdict.critical_delays)
        if (at_critical(d.tau)) return PointStability::Marginal;

    switch (verdict.region) {
        case Region::Stable: return PointStability::Stable;
        case Region::Unstable: return PointStability::Unstable;
        case Region::Marginal: return PointStability::Marginal;
        case Region::SSR:
            return tau < verdict.critical_delays[0].tau ? PointStability::Stable : PointStability::Unstable;
        case Region::SS: {
            const double t1 = verdict.critical_delays[0].tau;
            const double t2 = verdict.critical_delays[1].tau;
            return (tau < t1 || tau > t2) ? PointStability::Stable : PointStability::Unstable;
        }
    }
    return PointStability::Marginal;
}

RegionVerdict classify(double alpha, double a, double b) { return RegionClassifier(alpha).classify(a, b); }

PointStability stability_at(double alpha, double a, double b, double tau) {
    return RegionClassifier(alpha).stability_at(a, b, tau);
}

}  // namespace fddestab
