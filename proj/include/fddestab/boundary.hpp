#pragma once

// Stability-boundary branches of beta^alpha = A + B e^{-beta} - B e^{-2 beta}
// in the (A, B)-plane, parametrised by the crossing frequency v of a purely
// imaginary root beta = i v.
//
//   A(alpha, v) = v^alpha cos(alpha pi/2 + 3v/2) / cos(3v/2)
//   B(alpha, v) = v^alpha sin(alpha pi/2) / (sin 2v - sin v)
//
// with sin 2v - sin v = 2 cos(3v/2) sin(v/2) and
// (cos 2v - cos v)/(sin 2v - sin v) = -tan(3v/2).

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace fddestab {

enum class BranchId { Gamma1, Gamma2, Gamma3 };

inline constexpr std::array<BranchId, 3> kAllBranches{BranchId::Gamma1, BranchId::Gamma2,
                                                      BranchId::Gamma3};

std::string_view to_string(BranchId id) noexcept;
/// Accepts "gamma1" / "Gamma1" style names. Throws Error(InvalidInput).
BranchId parse_branch(std::string_view name);

/// Closed-open interval [v_lo, v_hi) of crossing frequencies carrying a branch.
struct BranchInterval {
    double v_lo;
    double v_hi;

    bool contains(double v) const noexcept { return v >= v_lo && v < v_hi; }
    double width() const noexcept { return v_hi - v_lo; }
};

struct BoundaryPoint {
    double v;
    double A;
    double B;
};

enum class TangentLabel { T1, T2, T3 };

std::string_view to_string(TangentLabel label) noexcept;

/// Line B = slope * A through the origin.
struct TangentLine {
    TangentLabel label;
    double slope;
    std::optional<double> v0;  ///< tangency frequency when the contact point is finite
};

/// Distance from a right endpoint inside which evaluations are clamped.
inline constexpr double kEndpointGuard = 1e-9;

BranchInterval branch_interval(double alpha, BranchId branch);

/// Throws Error(SingularFrequency) when |sin 2v - sin v| < 1e-14.
BoundaryPoint boundary_point(double alpha, double v);

/// Same A, but B with the extra (cos 2v - cos v) factor exactly as printed in
/// the source. Kept for comparison output only.
BoundaryPoint boundary_point_printed(double alpha, double v);

/// Slope B/A of the boundary point at v, i.e. the ray slope b/a whose ray
/// meets the boundary at frequency v.
double boundary_slope(double alpha, double v);

/// B at the left end of the branch interval, where A = 0.
double endpoint_B(double alpha, BranchId branch);

/// n_points samples, increasing in v, from v_lo up to where |B| first exceeds
/// b_cap (or up to v_hi - kEndpointGuard).
std::vector<BoundaryPoint> sample_branch(double alpha, BranchId branch, int n_points, double b_cap);

/// Order below which Gamma1 and Gamma2 do not intersect (~0.2644385).
double alpha_star();

/// Order at which the Gamma2 tangency frequency leaves 5 pi / 3 (= 2/3).
double alpha_double_star();

struct BranchIntersection {
    double A;
    double B;
    double v_gamma1;
    double v_gamma2;
};

/// Intersection (A1, B1) of Gamma1 and Gamma2. Throws Error(NoIntersection)
/// for alpha <= alpha_star().
BranchIntersection branch_intersection(double alpha);

/// cos(v/2) cos((3v + alpha pi)/2) - 3 sin(v/2) sin((3v + alpha pi)/2); its
/// zeros are the points where d(B/A)/dv = 0, i.e. A B_v - B A_v = 0.
double tangency_residual(double alpha, double v);

/// Tangency frequency v0 of the origin-through tangent: pi on Gamma3; on
/// Gamma2, 5 pi/3 for alpha <= 2/3 and the interior solution above.
/// Gamma1 is rejected with Error(InvalidInput).
double tangency_frequency(double alpha, BranchId branch);

/// dB/dA at (alpha, v0) in closed form. Exactly 1/2 at v0 = pi and -1 at
/// v0 = 5 pi/3.
double tangent_slope(double alpha, double v0);

/// m1(alpha): slope of T1.
double t1_slope(double alpha);

/// Quartic approximation of m1 valid for 2/3 < alpha <= 1.
double m1_poly(double alpha);

/// T1, T2, T3 for the given order.
std::array<TangentLine, 3> tangent_lines(double alpha);

/// Branch forming the second-quadrant stability boundary at abscissa A < 0.
BranchId gamma4_boundary(double alpha, double A);

/// Same, with A1 already known (nullopt when alpha <= alpha_star()).
BranchId gamma4_boundary(std::optional<double> A1, double A);

}  // namespace fddestab
