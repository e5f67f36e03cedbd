#include "seqadapt/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seqadapt {

EllipsoidSpec::EllipsoidSpec(double alpha0_, double B_)
    : alpha0(alpha0_), B(B_) {
    if (!(alpha0 > 0.0))
        throw std::invalid_argument("EllipsoidSpec: alpha0 must be positive");
    if (!(B > 0.0))
        throw std::invalid_argument("EllipsoidSpec: B must be positive");
}

ModelSpec::ModelSpec(double eps2_, int p_) : eps2(eps2_), p(p_) {
    if (!(eps2 > 0.0))
        throw std::invalid_argument("ModelSpec: eps2 must be positive");
    if (p < 1) throw std::invalid_argument("ModelSpec: p must be >= 1");
}

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
} // namespace

double trig_basis_eval(int i, double t) {
    if (i < 1) throw std::invalid_argument("trig_basis_eval: i must be >= 1");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("trig_basis_eval: t must be in [0,1]");
    if (i == 1) return 1.0;
    const int k = i / 2;
    const double phase = kTwoPi * k * t;
    return (i % 2 == 0) ? kSqrt2 * std::cos(phase) : kSqrt2 * std::sin(phase);
}

double sobolev_norm_sq(const CoefVector& theta, double alpha0) {
    if (!(alpha0 > 0.0))
        throw std::invalid_argument("sobolev_norm_sq: alpha0 must be positive");
    double sum = 0.0;
    for (std::size_t idx = 0; idx < theta.size(); ++idx) {
        const double i = static_cast<double>(idx + 1);
        sum += std::pow(i, 2.0 * alpha0) * theta[idx] * theta[idx];
    }
    return sum;
}

bool in_ellipsoid(const CoefVector& theta, const EllipsoidSpec& spec) {
    return sobolev_norm_sq(theta, spec.alpha0) <= spec.B * spec.B;
}

CoefVector simulate_observation(const CoefVector& theta, const ModelSpec& model,
                                RngStream& rng) {
    validate_coef_vector(theta, model);
    const double eps = std::sqrt(model.eps2);
    CoefVector x(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        x[i] = theta[i] + eps * rng.normal();
    return x;
}

CoefVector simulate_observation(const CoefVector& theta, const ModelSpec& model,
                                RngSpec rng) {
    RngStream stream(rng);
    return simulate_observation(theta, model, stream);
}

void validate_coef_vector(const CoefVector& theta, const ModelSpec& model) {
    if (static_cast<int>(theta.size()) != model.p)
        throw std::invalid_argument(
            "coefficient vector has length " + std::to_string(theta.size()) +
            " but the model dimension is " + std::to_string(model.p));
    for (double v : theta)
        if (!std::isfinite(v))
            throw std::invalid_argument("coefficient vector has non-finite entries");
}

} // namespace seqadapt
