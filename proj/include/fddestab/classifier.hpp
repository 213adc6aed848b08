#pragma once

// Classification of (alpha, a, b) into the delay-independent regions S / U and
// the delay-dependent regions SSR / SS, with the critical delays at which the
// parameter ray (a tau^alpha, b tau^alpha) meets the stability boundary.

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fddestab/boundary.hpp"

namespace fddestab {

/// Integer codes are part of the diagram CSV format.
enum class Region { Unstable = 0, Stable = 1, SSR = 2, SS = 3, Marginal = 4 };

std::string_view to_string(Region region) noexcept;

/// Solution v of b/a = B(alpha, v)/A(alpha, v) on one branch interval.
struct CrossingFrequency {
    double v;
    BranchId branch;
};

struct CriticalDelay {
    double tau;
    BranchId branch;
    double v;
};

struct RegionVerdict {
    Region region = Region::Marginal;
    /// [] for S / U / Marginal, [tau*] for SSR, [tau1*, tau2*] for SS.
    std::vector<CriticalDelay> critical_delays;
    /// Boundary crossings found beyond the ones the region accounts for.
    std::vector<CriticalDelay> extra_crossings;
    std::string note;
};

enum class PointStability { Stable, Unstable, Marginal };

std::string_view to_string(PointStability s) noexcept;

/// All roots of b/a = sin(alpha pi/2) / (2 sin(v/2) cos((3v + alpha pi)/2))
/// inside I1, I2 and I3, ordered by branch then v. Requires a != 0.
std::vector<CrossingFrequency> crossing_frequencies(double alpha, double a, double b);

/// (A(alpha, v)/a)^{1/alpha}. Throws Error(SignMismatch) when the boundary
/// point is not on the ray of (a, b).
double critical_delay(double alpha, double a, double b, const CrossingFrequency& crossing);

/// Classifier for a fixed order; caches alpha*, A1(alpha) and m1(alpha) so a
/// whole diagram can be evaluated without recomputing them per point.
class RegionClassifier {
public:
    explicit RegionClassifier(double alpha);

    double alpha() const noexcept { return alpha_; }
    double m1() const noexcept { return m1_; }
    std::optional<double> A1() const noexcept { return A1_; }

    /// Region tag only (no crossing solve). Throws Error(DegenerateInput) at (0, 0).
    Region region_of(double a, double b) const;

    RegionVerdict classify(double a, double b) const;

    PointStability stability_at(double a, double b, double tau) const;

private:
    std::vector<CriticalDelay> delays_on(double a, double b, std::initializer_list<BranchId> branches) const;

    double alpha_;
    double m1_;
    std::optional<double> A1_;
};

RegionVerdict classify(double alpha, double a, double b);
PointStability stability_at(double alpha, double a, double b, double tau);

}  // namespace fddestab
