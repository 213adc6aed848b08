#include "fddestab/boundary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "fddestab/bracketing.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/scaling.hpp"

namespace fddestab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRootScanPoints = 2000;

double vpow(double v, double alpha) { return std::exp(alpha * std::log(v)); }

double a_coord(double alpha, double v) {
    return vpow(v, alpha) * std::cos(0.5 * alpha * kPi + 1.5 * v) / std::cos(1.5 * v);
}

double b_coord(double alpha, double v) {
    return vpow(v, alpha) * std::sin(0.5 * alpha * kPi) / (2.0 * std::cos(1.5 * v) * std::sin(0.5 * v));
}

void check_frequency(double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorKind::InvalidInput, "crossing frequency must be positive and finite");
    const double den = 2.0 * std::cos(1.5 * v) * std::sin(0.5 * v);
    if (std::abs(den) < 1e-14)
        throw Error(ErrorKind::SingularFrequency,
                    "sin(2v) - sin(v) vanishes at v = " + std::to_string(v));
}

// Branch v with A(alpha, v) = A_target; A decreases monotonically from 0 to
// -inf along every branch.
double frequency_for_A(double alpha, BranchId branch, double A_target) {
    const auto iv = branch_interval(alpha, branch);
    const double hi = iv.v_hi - 1e-15 * iv.v_hi;
    auto f = [&](double v) { return a_coord(alpha, v) - A_target; };
    if (f(hi) > 0.0)
        throw Error(ErrorKind::InvalidInput, "A target beyond the resolvable part of the branch");
    return bracketing::bisect(f, {iv.v_lo, hi}, 1e-16, 400);
}

double b_at_A(double alpha, BranchId branch, double A) {
    return b_coord(alpha, frequency_for_A(alpha, branch, A));
}

}  // namespace

std::string_view to_string(BranchId id) noexcept {
    switch (id) {
        case BranchId::Gamma1: return "Gamma1";
        case BranchId::Gamma2: return "Gamma2";
        case BranchId::Gamma3: return "Gamma3";
    }
    return "?";
}

BranchId parse_branch(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "gamma1" || lower == "1") return BranchId::Gamma1;
    if (lower == "gamma2" || lower == "2") return BranchId::Gamma2;
    if (lower == "gamma3" || lower == "3") return BranchId::Gamma3;
    throw Error(ErrorKind::InvalidInput, "unknown branch '" + std::string(name) + "'");
}

std::string_view to_string(TangentLabel label) noexcept {
    switch (label) {
        case TangentLabel::T1: return "T1";
        case TangentLabel::T2: return "T2";
        case TangentLabel::T3: return "T3";
    }
    return "?";
}

BranchInterval branch_interval(double alpha, BranchId branch) {
    validate_alpha(alpha);
    switch (branch) {
        case BranchId::Gamma1: return {(1.0 - alpha) * kPi / 3.0, kPi / 3.0};
        case BranchId::Gamma2: return {(5.0 - alpha) * kPi / 3.0, 5.0 * kPi / 3.0};
        case BranchId::Gamma3: return {(3.0 - alpha) * kPi / 3.0, kPi};
    }
    throw Error(ErrorKind::InvalidInput, "unknown branch");
}

BoundaryPoint boundary_point(double alpha, double v) {
    validate_alpha(alpha);
    check_frequency(v);
    return {v, a_coord(alpha, v), b_coord(alpha, v)};
}

BoundaryPoint boundary_point_printed(double alpha, double v) {
    validate_alpha(alpha);
    check_frequency(v);
    const double ratio = -std::tan(1.5 * v);
    return {v, a_coord(alpha, v), vpow(v, alpha) * std::sin(0.5 * alpha * kPi) * ratio};
}

double boundary_slope(double alpha, double v) {
    return std::sin(0.5 * alpha * kPi) /
           (2.0 * std::sin(0.5 * v) * std::cos(0.5 * (3.0 * v + kPi * alpha)));
}

double endpoint_B(double alpha, BranchId branch) {
    const double v = branch_interval(alpha, branch).v_lo;
    const double magnitude = vpow(v, alpha) / (2.0 * std::sin(0.5 * v));
    return branch == BranchId::Gamma3 ? -magnitude : magnitude;
}

std::vector<BoundaryPoint> sample_branch(double alpha, BranchId branch, int n_points, double b_cap) {
    if (n_points < 2) throw Error(ErrorKind::InvalidInput, "need at least two sample points");
    if (!(b_cap > 0.0)) throw Error(ErrorKind::InvalidInput, "B cap must be positive");
    const auto iv = branch_interval(alpha, branch);
    const double v_end = iv.v_hi - kEndpointGuard;

    // Upper end: first place where |B| exceeds the cap.
    double v_stop = v_end;
    if (std::abs(endpoint_B(alpha, branch)) > b_cap) {
        return {{iv.v_lo, 0.0, endpoint_B(alpha, branch)}};
    }
    auto over = [&](double v) { return std::abs(b_coord(alpha, v)) - b_cap; };
    const auto grid = bracketing::scan_grid(iv.v_lo, v_end, kRootScanPoints);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (over(grid[i]) > 0.0) {
            v_stop = bracketing::bisect(over, {grid[i - 1], grid[i]}, 1e-14);
            // stay on the capped side
            if (over(v_stop) > 0.0) v_stop = std::nextafter(v_stop, iv.v_lo);
            break;
        }
    }

    std::vector<BoundaryPoint> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double v = iv.v_lo + (v_stop - iv.v_lo) * static_cast<double>(i) / (n_points - 1);
        // A is zero at the left end by construction; evaluate exactly there.
        if (i == 0)
            out.push_back({v, 0.0, endpoint_B(alpha, branch)});
        else
            out.push_back({v, a_coord(alpha, v), b_coord(alpha, v)});
    }
    return out;
}

double alpha_star() {
    static const double value = [] {
        auto diff = [](double al) { return endpoint_B(al, BranchId::Gamma1) - endpoint_B(al, BranchId::Gamma2); };
        const auto brackets = bracketing::sign_changes(diff, bracketing::scan_grid(0.1, 0.5, kRootScanPoints));
        if (brackets.size() != 1)
            throw Error(ErrorKind::NonConvergence, "alpha* is not uniquely bracketed on (0.1, 0.5)");
        return bracketing::bisect(diff, brackets.front(), 1e-15);
    }();
    return value;
}

double alpha_double_star() {
    static const double value = [] {
        auto f = [](double al) { return tangency_residual(al, 5.0 * kPi / 3.0); };
        const auto brackets = bracketing::sign_changes(f, bracketing::scan_grid(0.1, 1.0, kRootScanPoints));
        if (brackets.size() != 1)
            throw Error(ErrorKind::NonConvergence, "alpha** is not uniquely bracketed on (0.1, 1)");
        return bracketing::bisect(f, brackets.front(), 1e-15);
    }();
    return value;
}

BranchIntersection branch_intersection(double alpha) {
    validate_alpha(alpha);
    if (alpha <= alpha_star())
        throw Error(ErrorKind::NoIntersection,
                    "Gamma1 and Gamma2 do not intersect for alpha <= alpha* (" + std::to_string(alpha) + ")");

    // Compare the two branches as graphs B(A) over A < 0; near A = 0 Gamma1
    // lies below Gamma2 and the first sign change outward is (A1, B1).
    auto gap = [&](double A) { return b_at_A(alpha, BranchId::Gamma1, A) - b_at_A(alpha, BranchId::Gamma2, A); };
    double prev_A = -1e-8;
    double prev_gap = gap(prev_A);
    for (double x = -8.0 + 0.01; x <= 4.0 + 1e-9; x += 0.01) {
        const double A = -std::pow(10.0, x);
        const double g = gap(A);
        if ((g < 0.0) != (prev_gap < 0.0)) {
            const double A1 = bracketing::bisect(gap, {A, prev_A}, 1e-14 * std::max(1.0, std::abs(A)));
            const double v1 = frequency_for_A(alpha, BranchId::Gamma1, A1);
            const double v2 = frequency_for_A(alpha, BranchId::Gamma2, A1);
            return {A1, 0.5 * (b_coord(alpha, v1) + b_coord(alpha, v2)), v1, v2};
        }
        prev_A = A;
        prev_gap = g;
    }
    throw Error(ErrorKind::NoIntersection, "no Gamma1/Gamma2 intersection found for |A| <= 1e4");
}

double tangency_residual(double alpha, double v) {
    const double theta = 0.5 * (3.0 * v + alpha * kPi);
    return std::cos(0.5 * v) * std::cos(theta) - 3.0 * std::sin(0.5 * v) * std::sin(theta);
}

double tangency_frequency(double alpha, BranchId branch) {
    validate_alpha(alpha);
    switch (branch) {
        case BranchId::Gamma3: return kPi;
        case BranchId::Gamma2: {
            const auto iv = branch_interval(alpha, branch);
            auto f = [&](double v) { return tangency_residual(alpha, v); };
            if (f(iv.v_lo) < 0.0 && f(iv.v_hi) > 0.0)
                return bracketing::bisect(f, {iv.v_lo, iv.v_hi}, 1e-14);
            return iv.v_hi;
        }
        case BranchId::Gamma1: break;
    }
    throw Error(ErrorKind::InvalidInput, "tangency frequency is defined on Gamma2 and Gamma3 only");
}

double tangent_slope(double alpha, double v0) {
    validate_alpha(alpha);
    if (!(v0 > 0.0 && v0 < 2.0 * kPi))
        throw Error(ErrorKind::InvalidInput, "v0 must lie in (0, 2 pi)");
    const double s = std::sin(0.5 * alpha * kPi);
    const double c = std::cos(0.5 * alpha * kPi);
    const double csc = 1.0 / std::sin(0.5 * v0);
    const double num = csc * csc *
                       (-v0 * std::cos(v0) + 2.0 * v0 * std::cos(2.0 * v0) +
                        alpha * (std::sin(v0) - std::sin(2.0 * v0))) *
                       s;
    const double den = 2.0 * (alpha * c + alpha * std::cos(3.0 * v0 + 0.5 * alpha * kPi) - 3.0 * v0 * s);
    if (std::abs(num) < 1e-14 && std::abs(den) < 1e-14)
        throw Error(ErrorKind::SingularFrequency, "both dA/dv and dB/dv vanish at v0");
    return -num / den;
}

double t1_slope(double alpha) {
    validate_alpha(alpha);
    if (alpha <= 2.0 / 3.0) return -1.0;
    return tangent_slope(alpha, tangency_frequency(alpha, BranchId::Gamma2));
}

double m1_poly(double alpha) {
    if (!(alpha > 2.0 / 3.0 && alpha <= 1.0))
        throw Error(ErrorKind::InvalidInput, "quartic m1 approximation is only defined on (2/3, 1]");
    return (((0.283115 * alpha - 1.53076) * alpha + 3.53266) * alpha - 3.00438) * alpha - 0.16952;
}

std::array<TangentLine, 3> tangent_lines(double alpha) {
    validate_alpha(alpha);
    std::optional<double> v0;
    if (alpha > 2.0 / 3.0) v0 = tangency_frequency(alpha, BranchId::Gamma2);
    return {TangentLine{TangentLabel::T1, t1_slope(alpha), v0},
            TangentLine{TangentLabel::T2, -1.0, std::nullopt},
            TangentLine{TangentLabel::T3, 0.5, std::nullopt}};
}

BranchId gamma4_boundary(std::optional<double> A1, double A) {
    if (!(A < 0.0)) throw Error(ErrorKind::InvalidInput, "Gamma4 is defined for A < 0 only");
    if (!A1) return BranchId::Gamma2;
    return A <= *A1 ? BranchId::Gamma2 : BranchId::Gamma1;
}

BranchId gamma4_boundary(double alpha, double A) {
    validate_alpha(alpha);
    std::optional<double> A1;
    if (alpha > alpha_star()) A1 = branch_intersection(alpha).A;
    return gamma4_boundary(A1, A);
}

}  // namespace fddestab
