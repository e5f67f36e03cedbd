#ifndef SEQADAPT_CORE_HPP
#define SEQADAPT_CORE_HPP

#include <vector>

#include "seqadapt/rng.hpp"

namespace seqadapt {

/// Coefficient vector in the truncated sequence model, indexed 1..p.
/// Coordinates beyond the truncation dimension are implicitly zero.
using CoefVector = std::vector<double>;

/// Sobolev ellipsoid parameters: smoothness alpha0 and radius B.
struct EllipsoidSpec {
    double alpha0;
    double B;

    EllipsoidSpec(double alpha0_, double B_);
};

/// Sequence-model parameters: noise variance eps2 and truncation
/// dimension p.
struct ModelSpec {
    double eps2;
    int p;

    ModelSpec(double eps2_, int p_);
};

/// Trigonometric basis on [0,1]:
///   phi_1 = 1, phi_{2k} = sqrt(2) cos(2k pi t), phi_{2k+1} = sqrt(2) sin(2k pi t).
double trig_basis_eval(int i, double t);

/// Truncated Sobolev seminorm squared: sum_{i<=p} i^{2 alpha0} theta_i^2.
double sobolev_norm_sq(const CoefVector& theta, double alpha0);

/// Ellipsoid membership using the truncated sum. Analytic infinite-sum
/// verdicts for power-law families live in the harness.
bool in_ellipsoid(const CoefVector& theta, const EllipsoidSpec& spec);

/// Draws x_i = theta_i + sqrt(eps2) * z_i with independent standard
/// normal z_i from the given stream.
CoefVector simulate_observation(const CoefVector& theta, const ModelSpec& model,
                                RngStream& rng);
CoefVector simulate_observation(const CoefVector& theta, const ModelSpec& model,
                                RngSpec rng);

/// Throws std::invalid_argument unless theta is finite and has length
/// model.p.
void validate_coef_vector(const CoefVector& theta, const ModelSpec& model);

} // namespace seqadapt

#endif
