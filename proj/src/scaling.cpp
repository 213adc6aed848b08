#include "fddestab/scaling.hpp"

#include <cmath>
#include <string>

#include "fddestab/errors.hpp"

namespace fddestab {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw Error(ErrorKind::InvalidInput, "alpha must lie in (0, 1], got " + std::to_string(alpha));
}

void ModelParams::validate() const {
    validate_alpha(alpha);
    if (!std::isfinite(a) || !std::isfinite(b))
        throw Error(ErrorKind::InvalidInput, "coefficients a and b must be finite");
    if (!std::isfinite(tau) || tau < 0.0)
        throw Error(ErrorKind::InvalidInput, "delay must be finite and non-negative");
}

double delay_power(double tau, double alpha) {
    return tau > 0.0 ? std::exp(alpha * std::log(tau)) : 0.0;
}

ScaledParams scale(const ModelParams& params) {
    params.validate();
    const double t = delay_power(params.tau, params.alpha);
    return {params.a * t, params.b * t};
}

double ray_delay_for_A(double alpha, double a, double A_target) {
    validate_alpha(alpha);
    if (a == 0.0 || !std::isfinite(a) || !std::isfinite(A_target))
        throw Error(ErrorKind::InvalidInput, "ray_delay_for_A needs finite a != 0");
    const double ratio = A_target / a;
    if (!(ratio > 0.0))
        throw Error(ErrorKind::SignMismatch, "A_target and a have opposite signs; no delay on this ray");
    return std::exp(std::log(ratio) / alpha);
}

ParameterRay::ParameterRay(double alpha, double a, double b) : alpha_(alpha), a_(a), b_(b) {
    ModelParams{alpha, a, b, 0.0}.validate();
}

ScaledParams ParameterRay::at(double tau) const {
    return scale({alpha_, a_, b_, tau});
}

bool ParameterRay::on_line(ScaledParams p, double rel_tol) const {
    const double lhs = p.B * a_;
    const double rhs = p.A * b_;
    const double mag = std::abs(p.B * a_) + std::abs(p.A * b_);
    return std::abs(lhs - rhs) <= rel_tol * mag || mag == 0.0;
}

}  // namespace fddestab
