#include "fddestab/fdde_sim.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fddestab/errors.hpp"

namespace fddestab {

SimConfig SimConfig::aligned(const ModelParams& params, double x0, int steps_per_delay, double T) {
    if (!(params.tau > 0.0)) throw Error(ErrorKind::InvalidInput, "aligned grid needs tau > 0");
    if (steps_per_delay < 1) throw Error(ErrorKind::InvalidInput, "steps per delay must be positive");
    SimConfig c{params, x0, params.tau / steps_per_delay, T, steps_per_delay};
    c.validate();
    return c;
}

SimConfig SimConfig::with_step(const ModelParams& params, double x0, double h, double T) {
    SimConfig c{params, x0, h, T, 0};
    if (params.tau > 0.0 && h > 0.0) c.steps_per_delay = static_cast<int>(std::lround(params.tau / h));
    c.validate();
    return c;
}

void SimConfig::validate() const {
    params.validate();
    if (!std::isfinite(x0)) throw Error(ErrorKind::InvalidInput, "x0 must be finite");
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidInput, "step must be positive");
    if (!(T >= h) || !std::isfinite(T)) throw Error(ErrorKind::InvalidInput, "horizon must be at least one step");
    if (params.tau > 0.0) {
        const double k = params.tau / h;
        if (steps_per_delay < 1 || std::abs(k - steps_per_delay) > 1e-9 * k)
            throw Error(ErrorKind::MisalignedDelay, "tau / h must be a positive integer");
    }
}

int SimConfig::delay_offset() const { return params.tau > 0.0 ? steps_per_delay : 0; }

std::string_view to_string(TrajectoryClass c) noexcept {
    switch (c) {
        case TrajectoryClass::Decaying: return "decaying";
        case TrajectoryClass::Growing: return "growing";
        case TrajectoryClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

Trajectory integrate(const SimConfig& config) {
    config.validate();
    const double alpha = config.params.alpha;
    const double a = config.params.a;
    const double b = config.params.b;
    const double h = config.h;
    const double x0 = config.x0;
    const int k = config.delay_offset();
    const auto n_steps = static_cast<std::size_t>(std::llround(config.T / h));

    // Weights depend on n - j only:
    //   predictor  (m+1)^alpha - m^alpha                       for m = n - j
    //   corrector  (m+1)^{alpha+1} - 2 m^{alpha+1} + (m-1)^{alpha+1}   for m = n - j + 1
    std::vector<double> pw(n_steps + 1);
    std::vector<double> cw(n_steps + 2, 0.0);
    {
        std::vector<double> p1(n_steps + 3);
        for (std::size_t m = 0; m < p1.size(); ++m) p1[m] = std::pow(static_cast<double>(m), alpha + 1.0);
        double prev = 0.0;
        for (std::size_t m = 0; m <= n_steps; ++m) {
            const double next = std::pow(static_cast<double>(m + 1), alpha);
            pw[m] = next - prev;
            prev = next;
        }
        for (std::size_t m = 1; m < cw.size(); ++m) cw[m] = p1[m + 1] - 2.0 * p1[m] + p1[m - 1];
    }
    const double c_pred = std::pow(h, alpha) / std::tgamma(alpha + 1.0);
    const double c_corr = std::pow(h, alpha) / std::tgamma(alpha + 2.0);

    Trajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.values.reserve(n_steps + 1);
    std::vector<double>& x = traj.values;
    std::vector<double> f;
    f.reserve(n_steps + 1);

    auto past = [&](std::ptrdiff_t i) { return i >= 0 ? x[static_cast<std::size_t>(i)] : x0; };
    auto rhs = [&](std::size_t i, double xi) {
        if (k == 0) return a * xi;
        const auto si = static_cast<std::ptrdiff_t>(i);
        return a * xi + b * past(si - k) - b * past(si - 2 * k);
    };

    x.push_back(x0);
    traj.times.push_back(0.0);
    f.push_back(rhs(0, x0));

    for (std::size_t n = 0; n < n_steps; ++n) {
        double pred_sum = 0.0;
        double corr_sum = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            pred_sum += pw[n - j] * f[j];
            corr_sum += cw[n - j + 1] * f[j];
        }
        pred_sum += pw[n] * f[0];
        const double nd = static_cast<double>(n);
        corr_sum += (std::pow(nd, alpha + 1.0) - (nd - alpha) * std::pow(nd + 1.0, alpha)) * f[0];

        const double predicted = x0 + c_pred * pred_sum;
        const double next = x0 + c_corr * (rhs(n + 1, predicted) + corr_sum);
        if (!std::isfinite(next)) {
            traj.overflow_truncated = true;
            break;
        }
        x.push_back(next);
        traj.times.push_back(static_cast<double>(n + 1) * h);
        f.push_back(rhs(n + 1, next));
        if (std::abs(next) > kOverflowLimit) {
            traj.overflow_truncated = true;
            break;
        }
    }

    if (traj.overflow_truncated) {
        traj.classification = TrajectoryClass::Growing;
        traj.envelope_ratio = std::numeric_limits<double>::infinity();
    } else if (x.size() >= 50) {
        const auto v = classify_trajectory(traj);
        traj.classification = v.classification;
        traj.envelope_ratio = v.ratio;
    }
    return traj;
}

EnvelopeVerdict classify_trajectory(const Trajectory& traj, double settle_fraction) {
    if (!(settle_fraction > 0.0 && settle_fraction <= 0.5))
        throw Error(ErrorKind::InvalidInput, "settle fraction must lie in (0, 0.5]");
    if (traj.overflow_truncated) return {TrajectoryClass::Growing, std::numeric_limits<double>::infinity()};
    const std::size_t n = traj.values.size();
    if (static_cast<double>(n) < 10.0 / settle_fraction)
        throw Error(ErrorKind::TooShortTrajectory, "trajectory too short for the settle window");

    const auto w = static_cast<std::size_t>(settle_fraction * static_cast<double>(n));
    auto peak = [&](std::size_t from, std::size_t to) {
        double m = 0.0;
        for (std::size_t i = from; i < to; ++i) m = std::max(m, std::abs(traj.values[i]));
        return m;
    };
    const double late = peak(n - w, n);
    const double early = peak(n - 2 * w, n - w);
    if (late < 1e-14 && early < 1e-14) return {TrajectoryClass::Decaying, 0.0};
    if (early == 0.0) return {TrajectoryClass::Growing, std::numeric_limits<double>::infinity()};
    const double ratio = late / early;
    if (ratio < 0.9) return {TrajectoryClass::Decaying, ratio};
    if (ratio > 1.1) return {TrajectoryClass::Growing, ratio};
    return {TrajectoryClass::Inconclusive, ratio};
}

namespace {

// E_alpha(-x) = sin(alpha pi)/(alpha pi) * int_0^inf exp(-(x s)^{1/alpha}) / (s^2 + 2 s cos(alpha pi) + 1) ds
// for 0 < alpha < 1, x >= 0; free of the cancellation that ruins the series.
double mittag_leffler_negative(double alpha, double x) {
    const double c = std::cos(alpha * std::numbers::pi);
    auto integrand = [&](double s) {
        return std::exp(-std::pow(x * s, 1.0 / alpha)) / (s * s + 2.0 * s * c + 1.0);
    };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-15);
    return std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi) * integral;
}

}  // namespace

double mittag_leffler(double alpha, double z) {
    validate_alpha(alpha);
    if (!std::isfinite(z) || std::abs(z) > 50.0)
        throw Error(ErrorKind::DomainExceeded, "Mittag-Leffler evaluation limited to |z| <= 50");
    if (z == 0.0) return 1.0;
    if (alpha == 1.0) return std::exp(z);

    // Neumaier-compensated series in extended precision.
    const long double log_abs = std::log(static_cast<long double>(std::abs(z)));
    long double sum = 0.0L;
    long double comp = 0.0L;
    long double largest = 0.0L;
    long double prev_mag = std::numeric_limits<long double>::infinity();
    for (int kk = 0; kk < 100000; ++kk) {
        const long double mag =
            std::exp(kk * log_abs - std::lgamma(static_cast<long double>(alpha) * kk + 1.0L));
        const long double term = (z < 0.0 && (kk % 2 == 1)) ? -mag : mag;
        const long double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        largest = std::max(largest, mag);
        if (mag < prev_mag && mag < 1e-16L * std::abs(sum + comp)) break;
        prev_mag = mag;
    }
    const long double result = sum + comp;
    const bool unreliable = !std::isfinite(static_cast<double>(result)) || largest > 1e6L * std::abs(result);
    if (z < 0.0 && unreliable) return mittag_leffler_negative(alpha, -z);
    if (!std::isfinite(static_cast<double>(result)))
        throw Error(ErrorKind::DomainExceeded, "E_alpha(z) overflows double precision");
    return static_cast<double>(result);
}

}  // namespace fddestab
