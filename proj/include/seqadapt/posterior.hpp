#ifndef SEQADAPT_POSTERIOR_HPP
#define SEQADAPT_POSTERIOR_HPP

#include <vector>

#include "seqadapt/priors.hpp"

namespace seqadapt {

/// Posterior shrinkage factor for coordinate i under component (d, k):
///   s(i,d,k) = 1 - 1/((d/i)^{2k+1} + 1), in (0, 1] for 1 <= i <= d.
double shrinkage(int i, int d, int k);

/// Normalized log-masses of M(d | x, k) over d = 1..d_max, computed in
/// log domain with max-shift normalization.
std::vector<double> log_M_posterior(const CoefVector& x, int k,
                                    const HyperParams& hp,
                                    const ModelSpec& model);

/// Normalized log-masses of F(k | x) over k = 1..k_max.
std::vector<double> log_F_posterior(const CoefVector& x, const HyperParams& hp,
                                    const ModelSpec& model);

/// Full posterior summary for one observation.
struct PosteriorSummary {
    std::vector<double> log_F_post;               // k = 1..k_max
    std::vector<std::vector<double>> log_M_post;  // [k-1][d-1], normalized per k
    std::vector<double> effective_shrink;         // mean_i = effective_shrink_i * x_i
    CoefVector mean;
    double tail_mass_bound = 0.0;  // prior-tail proxy for mass lost to (k_max, d_max)

    /// Per-component factor s(i,d,k); delegates to the free function.
    double shrink(int i, int d, int k) const { return shrinkage(i, d, k); }
};

PosteriorSummary compute_posterior(const CoefVector& x, const HyperParams& hp,
                                   const ModelSpec& model);

/// Posterior mean of the hierarchical prior (the proposed Bayes estimator).
CoefVector posterior_mean(const CoefVector& x, const HyperParams& hp,
                          const ModelSpec& model);

/// Exact hierarchical posterior draws: k ~ F(.|x), d ~ M(.|x,k), then
/// theta_i ~ N(s * x_i, eps2 * s) for i <= d and 0 beyond.
std::vector<CoefVector> sample_posterior(const CoefVector& x, int n,
                                         const HyperParams& hp,
                                         const ModelSpec& model,
                                         RngStream& rng);
std::vector<CoefVector> sample_posterior(const CoefVector& x, int n,
                                         const HyperParams& hp,
                                         const ModelSpec& model, RngSpec rng);

/// Same draws with the latent (k, d) indices exposed.
struct PosteriorDraw {
    int k;
    int d;
    CoefVector theta;
};
std::vector<PosteriorDraw> sample_posterior_detailed(const CoefVector& x, int n,
                                                     const HyperParams& hp,
                                                     const ModelSpec& model,
                                                     RngStream& rng);

/// Monte Carlo estimate of
///   E_theta0 [ Pi( ||theta - theta0||^2 / B^2 >= C (eps/B)^{4a0/(2a0+1)} | X ) ],
/// with the inner probability estimated from `inner_samples` posterior draws.
double posterior_tail_probability(const CoefVector& theta0,
                                  const EllipsoidSpec& spec, double C,
                                  const ModelSpec& model, const HyperParams& hp,
                                  int reps, RngSpec rng,
                                  int inner_samples = 128);

} // namespace seqadapt

#endif
