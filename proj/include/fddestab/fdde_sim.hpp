#pragma once

// Fractional Adams-Bashforth-Moulton integration of
//
//   D^alpha x(t) = a x(t) + b x(t - tau) - b x(t - 2 tau),   x(t) = x0 for t <= 0,
//
// (Caputo derivative) on a grid aligned with the delay, h = tau / k.

#include <string_view>
#include <vector>

#include "fddestab/scaling.hpp"

namespace fddestab {

/// Magnitude at which integration stops and the run is reported as growing.
inline constexpr double kOverflowLimit = 1e12;

struct SimConfig {
    ModelParams params;
    double x0 = 1.0;
    double h = 0.0;
    double T = 0.0;
    int steps_per_delay = 0;  ///< k with h = tau / k; 0 when tau = 0

    /// h = tau / steps_per_delay. Requires tau > 0.
    static SimConfig aligned(const ModelParams& params, double x0, int steps_per_delay, double T);
    /// Fixed step for the delay-free case (tau = 0) or any step dividing tau.
    static SimConfig with_step(const ModelParams& params, double x0, double h, double T);

    /// Throws Error(InvalidInput) or Error(MisalignedDelay).
    void validate() const;
    /// Grid offset of one delay (0 for tau = 0).
    int delay_offset() const;
    /// True when T < 10 tau; classification may be unreliable.
    bool short_horizon() const { return T < 10.0 * params.tau; }
};

enum class TrajectoryClass { Decaying, Growing, Inconclusive };

std::string_view to_string(TrajectoryClass c) noexcept;

struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    TrajectoryClass classification = TrajectoryClass::Inconclusive;
    /// max|x| over the last window / max|x| over the preceding one; +inf on overflow.
    double envelope_ratio = 0.0;
    bool overflow_truncated = false;
};

Trajectory integrate(const SimConfig& config);

struct EnvelopeVerdict {
    TrajectoryClass classification;
    double ratio;
};

/// Compares max|x| over the final settle_fraction of the run with the window
/// just before it: < 0.9 decaying, > 1.1 growing, otherwise inconclusive.
EnvelopeVerdict classify_trajectory(const Trajectory& traj, double settle_fraction = 0.2);

/// E_alpha(z) = sum_k z^k / Gamma(alpha k + 1) for real |z| <= 50.
/// Throws Error(DomainExceeded) beyond that.
double mittag_leffler(double alpha, double z);

}  // namespace fddestab
