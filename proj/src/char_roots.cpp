#include "fddestab/char_roots.hpp"

#include <algorithm>
#include <cmath>

#include "fddestab/bracketing.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/scaling.hpp"

namespace fddestab {

namespace {

bool is_integer_order(double alpha) { return alpha == 1.0; }

bool near_real_axis(Complex z) { return std::abs(z.imag()) <= 1e-10 * (1.0 + std::abs(z)); }

}  // namespace

Complex principal_power(Complex beta, double alpha) {
    if (alpha == 1.0) return beta;
    if (beta == Complex{0.0, 0.0}) return {0.0, 0.0};
    // std::pow(complex, double) uses exp(alpha log z) with Arg in (-pi, pi].
    return std::pow(beta, alpha);
}

Complex char_function(double alpha, double A, double B, Complex beta) {
    const Complex e1 = std::exp(-beta);
    return principal_power(beta, alpha) - A - B * e1 + B * e1 * e1;
}

Complex char_derivative(double alpha, double /*A*/, double B, Complex beta) {
    const Complex e1 = std::exp(-beta);
    const Complex dpow = alpha == 1.0 ? Complex{1.0, 0.0} : alpha * principal_power(beta, alpha) / beta;
    return dpow + B * e1 - 2.0 * B * e1 * e1;
}

double char_residual(double alpha, double A, double B, Complex beta) {
    return std::abs(char_function(alpha, A, B, beta));
}

double PQSplit::P(double beta) const { return std::exp(alpha * std::log(beta)) - A; }

double PQSplit::Q(double beta) const {
    const double e1 = std::exp(-beta);
    return B * (e1 - e1 * e1);
}

std::vector<CharacteristicRoot> real_positive_roots(double alpha, double A, double B) {
    validate_alpha(alpha);
    const PQSplit pq{alpha, A, B};
    const double reach = std::max(A, 0.0) + 0.25 * std::abs(B);
    const double beta_max = std::max(3.0, std::exp(std::log(std::max(reach, 1e-300)) / alpha) + 1.0);
    auto f = [&](double beta) { return pq.P(beta) - pq.Q(beta); };

    std::vector<CharacteristicRoot> out;
    const auto grid = bracketing::scan_grid(1e-12, beta_max, 2000, 1e-12);
    for (const auto& br : bracketing::sign_changes(f, grid)) {
        const double beta = bracketing::bisect(f, br, 1e-15 * std::max(1.0, br.hi));
        out.push_back({Complex{beta, 0.0}, char_residual(alpha, A, B, Complex{beta, 0.0}), 1});
    }
    return out;
}

std::optional<CharacteristicRoot> real_positive_root(double alpha, double A, double B) {
    auto roots = real_positive_roots(alpha, A, B);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

CharacteristicRoot newton_root(double alpha, double A, double B, Complex guess, const NewtonOptions& options) {
    validate_alpha(alpha);
    Complex beta = guess;
    double residual = char_residual(alpha, A, B, beta);
    for (int it = 0; it < options.max_iterations; ++it) {
        if (!is_integer_order(alpha) && beta.real() < 0.0 && near_real_axis(beta))
            throw Error(ErrorKind::BranchCutCrossing, "Newton iterate reached the negative real axis");
        const Complex f = char_function(alpha, A, B, beta);
        const Complex df = char_derivative(alpha, A, B, beta);
        if (!std::isfinite(std::abs(df)) || std::abs(df) == 0.0)
            throw Error(ErrorKind::NonConvergence, "vanishing or non-finite derivative");
        const Complex step = f / df;

        double lambda = 1.0;
        Complex next = beta - step;
        double next_res = char_residual(alpha, A, B, next);
        while (!(next_res < residual) && lambda > 1.0 / 1024.0) {
            lambda *= 0.5;
            next = beta - lambda * step;
            next_res = char_residual(alpha, A, B, next);
        }
        if (!std::isfinite(next_res) || std::abs(next) > 1e8)
            throw Error(ErrorKind::NonConvergence, "Newton iterate diverged");

        const double moved = std::abs(next - beta);
        beta = next;
        residual = next_res;
        if (residual < options.residual_tol && (moved <= 1e-12 * (1.0 + std::abs(beta)) || residual < 1e-14))
            break;
    }
    if (!(residual < options.residual_tol))
        throw Error(ErrorKind::NonConvergence, "Newton did not reach the residual tolerance");
    if (!is_integer_order(alpha) && beta.real() < 0.0 && near_real_axis(beta))
        throw Error(ErrorKind::BranchCutCrossing, "root lies on the negative real axis");
    if (near_real_axis(beta)) beta.imag(0.0);
    const int mult = std::abs(char_derivative(alpha, A, B, beta)) < 1e-6 ? 2 : 1;
    return {beta, residual, mult};
}

ScanWindow oracle_window(double alpha, double A, double B) {
    validate_alpha(alpha);
    const double radius = std::pow(std::abs(A) + 2.0 * std::abs(B), 1.0 / alpha) + 1.0;
    ScanWindow w;
    w.v_max = std::clamp(radius, 4.0 * std::numbers::pi, 60.0);
    w.re_max = std::clamp(radius, 2.0, 20.0);
    w.seed_spacing = 0.25;
    return w;
}

std::vector<CharacteristicRoot> rightmost_root_scan(double alpha, double A, double B, const ScanWindow& window) {
    validate_alpha(alpha);
    if (!(window.v_max > 0.0) || !(window.re_max > window.re_min) || !(window.seed_spacing > 0.0))
        throw Error(ErrorKind::InvalidInput, "invalid scan window");

    std::vector<CharacteristicRoot> upper;
    auto add_unique = [&](CharacteristicRoot root) {
        if (root.beta.imag() < 0.0) root.beta = std::conj(root.beta);
        for (const auto& r : upper)
            if (std::abs(r.beta - root.beta) < window.dedup_radius) return;
        upper.push_back(root);
    };

    const int n_re = static_cast<int>(std::ceil((window.re_max - window.re_min) / window.seed_spacing)) + 1;
    const int n_im = static_cast<int>(std::ceil(window.v_max / window.seed_spacing));
    for (int i = 0; i < n_re; ++i) {
        const double x = std::min(window.re_min + i * window.seed_spacing, window.re_max);
        for (int j = 0; j < n_im; ++j) {
            const double y = (j + 0.5) * window.seed_spacing;
            try {
                add_unique(newton_root(alpha, A, B, Complex{x, y}));
            } catch (const Error&) {
                // seeds that stall or hit the branch cut contribute nothing
            }
        }
    }
    for (const auto& r : real_positive_roots(alpha, A, B))
        if (r.residual < 1e-9) add_unique(r);

    std::vector<CharacteristicRoot> out;
    out.reserve(2 * upper.size());
    for (const auto& r : upper) {
        out.push_back(r);
        if (r.beta.imag() > 0.0) out.push_back({std::conj(r.beta), char_residual(alpha, A, B, std::conj(r.beta)),
                                                 r.multiplicity_hint});
    }
    std::sort(out.begin(), out.end(), [](const CharacteristicRoot& l, const CharacteristicRoot& r) {
        if (l.beta.real() != r.beta.real()) return l.beta.real() > r.beta.real();
        return l.beta.imag() > r.beta.imag();
    });
    return out;
}

bool has_unstable_root(double alpha, double A, double B, const ScanWindow& window, double re_tol) {
    const auto roots = rightmost_root_scan(alpha, A, B, window);
    return !roots.empty() && roots.front().beta.real() > re_tol;
}

}  // namespace fddestab
