#pragma once

// Model parameters of D^alpha x(t) = a x(t) + b x(t - tau) - b x(t - 2 tau) and
// the map (a, b, tau) -> (A, B) = (a tau^alpha, b tau^alpha).

namespace fddestab {

struct ModelParams {
    double alpha = 1.0;  ///< fractional order, 0 < alpha <= 1
    double a = 0.0;      ///< instantaneous coefficient
    double b = 0.0;      ///< delayed coefficient
    double tau = 0.0;    ///< delay, >= 0

    /// Throws Error(InvalidInput) when an invariant is violated.
    void validate() const;
};

struct ScaledParams {
    double A = 0.0;
    double B = 0.0;
};

void validate_alpha(double alpha);

/// tau^alpha as exp(alpha ln tau); 0 at tau = 0.
double delay_power(double tau, double alpha);

ScaledParams scale(const ModelParams& params);

/// Delay at which the ray of (a, .) reaches A = A_target. Throws
/// Error(SignMismatch) when A_target and a have different signs.
double ray_delay_for_A(double alpha, double a, double A_target);

/// The half-line {(a tau^alpha, b tau^alpha) : tau >= 0} swept by increasing delay.
class ParameterRay {
public:
    ParameterRay(double alpha, double a, double b);

    double alpha() const noexcept { return alpha_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    ScaledParams at(double tau) const;

    /// Whether (A, B) lies on the line B a = A b (relative tolerance).
    bool on_line(ScaledParams p, double rel_tol = 1e-12) const;

private:
    double alpha_;
    double a_;
    double b_;
};

}  // namespace fddestab
