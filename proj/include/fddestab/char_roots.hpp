#pragma once

// Roots of the scaled characteristic function
//
//   F(beta) = beta^alpha - A - B e^{-beta} + B e^{-2 beta}
//
// with beta^alpha on the principal branch, Arg beta in (-pi, pi].

#include <complex>
#include <numbers>
#include <optional>
#include <vector>

namespace fddestab {

using Complex = std::complex<double>;

struct CharacteristicRoot {
    Complex beta;
    double residual = 0.0;
    int multiplicity_hint = 1;
};

Complex principal_power(Complex beta, double alpha);

Complex char_function(double alpha, double A, double B, Complex beta);
Complex char_derivative(double alpha, double A, double B, Complex beta);

/// |F(beta)|.
double char_residual(double alpha, double A, double B, Complex beta);

/// Split of F on the positive real axis into P(beta) = beta^alpha - A and
/// Q(beta) = B (e^{-beta} - e^{-2 beta}); real roots are the points P = Q.
struct PQSplit {
    double alpha;
    double A;
    double B;

    double P(double beta) const;
    double Q(double beta) const;
    /// Q' vanishes at ln 2.
    static double q_extremum_location() { return std::numbers::ln2; }
    /// Q(ln 2) = B/4: the maximum for B > 0, the minimum for B < 0.
    double q_extremum_value() const { return 0.25 * B; }
};

/// A root on (0, inf) found by sign scan of P - Q and bisection, if any.
std::optional<CharacteristicRoot> real_positive_root(double alpha, double A, double B);

/// Every bracketed root of P - Q on (0, beta_max], in increasing order.
std::vector<CharacteristicRoot> real_positive_roots(double alpha, double A, double B);

struct NewtonOptions {
    int max_iterations = 100;
    double residual_tol = 1e-10;
};

/// Damped Newton on F with the analytic derivative. Throws
/// Error(NonConvergence) or Error(BranchCutCrossing).
CharacteristicRoot newton_root(double alpha, double A, double B, Complex guess,
                               const NewtonOptions& options = {});

struct ScanWindow {
    double re_min = -2.0;
    double re_max = 2.0;
    double v_max = 4.0 * std::numbers::pi;
    double seed_spacing = 0.2;
    double dedup_radius = 1e-6;
};

/// Window large enough to hold every root with Re beta >= 0: such roots obey
/// |beta|^alpha <= |A| + 2|B|. The imaginary extent is clamped to [4 pi, 60].
ScanWindow oracle_window(double alpha, double A, double B);

/// Newton from a seed grid over [re_min, re_max] x [0, v_max], plus the real
/// positive roots. Conjugate-closed, deduplicated, sorted by decreasing Re.
std::vector<CharacteristicRoot> rightmost_root_scan(double alpha, double A, double B,
                                                    const ScanWindow& window = {});

/// Root-location verdict: true when the scan finds a root with Re beta > re_tol.
bool has_unstable_root(double alpha, double A, double B, const ScanWindow& window, double re_tol = 1e-8);

}  // namespace fddestab
