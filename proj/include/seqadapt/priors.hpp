#ifndef SEQADAPT_PRIORS_HPP
#define SEQADAPT_PRIORS_HPP

#include <utility>
#include <vector>

#include "seqadapt/core.hpp"

namespace seqadapt {

/// Hyperparameters of the hierarchical sieve prior: geometric rates for
/// the dimension law M(d) ~ exp(-eta d) and the smoothness law
/// F(k) ~ exp(-gamma k), plus truncation bounds for numerical work.
struct HyperParams {
    double eta = 2.0;
    double gamma = 2.0;
    int k_max = 50;
    int d_max = 0; // 0 means "use model.p"

    void validate(const ModelSpec& model) const;
    int effective_d_max(const ModelSpec& model) const;
};

/// Gaussian scale mixture prior: component variances t * i^-(2 alpha + 1)
/// mixed over a discrete grid of (t, weight) pairs.
struct ScaleMixtureSpec {
    double alpha = 2.0;
    std::vector<std::pair<double, double>> grid; // (t, weight), weights normalized

    void validate() const;
};

/// Grid of 64 geometrically spaced scales on [1e-3, 1e3] weighted by the
/// inverse-gamma(1,1) density, renormalized.
ScaleMixtureSpec default_scale_mixture(double alpha = 2.0);

/// log of the normalized mass e^{-eta d} (e^eta - 1) over d = 1, 2, ...
double log_M(int d, double eta);
double log_F(int k, double gamma);

/// Normalized log-masses of the geometric law restricted to 1..n_max.
std::vector<double> truncated_geometric_log_masses(double rate, int n_max);

/// Variance of coordinate i under the sieve component S(.|d, alpha=k):
/// eps2 * d^{2k+1} * i^-(2k+1) for i <= d, zero beyond d.
double prior_component_variance(int i, int d, int k, double eps2);

/// Variance of coordinate i under the plain Gaussian prior G(.|alpha).
double gaussian_prior_variance(int i, double alpha);

/// Variance of coordinate i under the scale-mixture component with scale t.
double scale_mixture_component_variance(int i, double t,
                                        const ScaleMixtureSpec& spec);

/// One draw from S(.|d, alpha=k) truncated to length model.p.
CoefVector sample_sieve_component(int d, int k, const ModelSpec& model,
                                  RngStream& rng);

/// One draw from the hierarchical prior: k ~ F, d ~ M (both truncated and
/// renormalized), then the sieve component.
CoefVector sample_prior_Pi(const HyperParams& hp, const ModelSpec& model,
                           RngStream& rng);
CoefVector sample_prior_Pi(const HyperParams& hp, const ModelSpec& model,
                           RngSpec rng);

/// Same draw with the latent indices exposed.
struct PriorDraw {
    int k;
    int d;
    CoefVector theta;
};
PriorDraw sample_prior_Pi_draw(const HyperParams& hp, const ModelSpec& model,
                               RngStream& rng);

/// Inverse-CDF draw from normalized log-masses over 1..n; returns 1-based
/// index.
int sample_index_from_log_masses(const std::vector<double>& log_masses,
                                 RngStream& rng);

} // namespace seqadapt

#endif
