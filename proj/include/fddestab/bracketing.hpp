#pragma once

// Sign-scan bracketing and bisection for the scalar transcendental equations
// (alpha*, A1, tangency frequency, crossing frequencies, real roots).

#include <cmath>
#include <vector>

namespace fddestab::bracketing {

struct Bracket {
    double lo;
    double hi;
};

/// Uniform grid of n points on [lo, hi] refined by geometric points approaching
/// both ends down to a distance of `min_gap` (1e-3 * width, 1e-4 * width, ...).
inline std::vector<double> scan_grid(double lo, double hi, int n, double min_gap = 0.0) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + 40);
    const double width = hi - lo;
    if (min_gap > 0.0) {
        for (double d = min_gap; d < 1e-3 * width; d *= 10.0) grid.push_back(lo + d);
    }
    for (int i = 0; i < n; ++i) grid.push_back(lo + width * static_cast<double>(i) / (n - 1));
    if (min_gap > 0.0) {
        std::vector<double> tail;
        for (double d = min_gap; d < 1e-3 * width; d *= 10.0) tail.push_back(hi - d);
        grid.insert(grid.end(), tail.rbegin(), tail.rend());
    }
    return grid;
}

/// All sign changes of f over consecutive grid points. Non-finite samples break
/// the chain so that poles are never reported as roots.
template <class F>
std::vector<Bracket> sign_changes(F&& f, const std::vector<double>& grid) {
    std::vector<Bracket> out;
    bool have_prev = false;
    double px = 0.0, py = 0.0;
    for (double x : grid) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            have_prev = false;
            continue;
        }
        if (y == 0.0) {
            out.push_back({x, x});
            have_prev = false;
            continue;
        }
        if (have_prev && (py < 0.0) != (y < 0.0)) out.push_back({px, x});
        have_prev = true;
        px = x;
        py = y;
    }
    return out;
}

/// Bisection down to `width`, then one secant polish kept only if it stays in
/// the final bracket.
template <class F>
double bisect(F&& f, Bracket br, double width = 1e-12, int max_iter = 200) {
    double lo = br.lo;
    double hi = br.hi;
    if (lo == hi) return lo;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < max_iter && hi - lo > width; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if (fhi != flo) {
        const double secant = hi - fhi * (hi - lo) / (fhi - flo);
        if (secant >= lo && secant <= hi) return secant;
    }
    return 0.5 * (lo + hi);
}

}  // namespace fddestab::bracketing
