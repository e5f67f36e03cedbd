#ifndef SEQADAPT_ESTIMATORS_HPP
#define SEQADAPT_ESTIMATORS_HPP

#include <string>
#include <variant>
#include <vector>

#include "seqadapt/posterior.hpp"

namespace seqadapt {

namespace est {
struct Proposed {};
struct ModelSelection {};
struct ModelAveraging {
    double beta = 0.5;
};
struct BlockJamesStein {};
struct GaussianPrior {
    double alpha = 1.0;
};
struct ScaleMixture {
    ScaleMixtureSpec spec;
};
struct Mle {};
struct Truncation {
    int d = 1;
};
} // namespace est

using EstimatorKind =
    std::variant<est::Proposed, est::ModelSelection, est::ModelAveraging,
                 est::BlockJamesStein, est::GaussianPrior, est::ScaleMixture,
                 est::Mle, est::Truncation>;

/// An estimator plus the prior hyperparameters the proposed estimator
/// needs. beta in (0, 1/2] and 1 <= d <= p are enforced at apply time.
struct EstimatorSpec {
    EstimatorKind kind;
    HyperParams hp;

    std::string name() const;
    void validate(const ModelSpec& model) const;
};

/// Unbiased-risk-style criterion r_d = -sum_{i<=d} x_i^2 + 2 eps2 d.
double rhat(const CoefVector& x, int d, double eps2);

/// Smallest minimizer of rhat over d = 1..p.
int select_dimension(const CoefVector& x, const ModelSpec& model);

/// Truncation at the selected dimension.
CoefVector estimate_model_selection(const CoefVector& x, const ModelSpec& model);

/// Normalized log-weights w_d ~ exp(-beta rhat_d / (2 eps2)), d = 1..p.
/// Accepts any beta > 0; the (0, 1/2] cap applies to the estimator itself.
std::vector<double> model_averaging_log_weights(const CoefVector& x, double beta,
                                                const ModelSpec& model);

/// Exponential-weights aggregation of truncation estimators.
CoefVector estimate_model_averaging(const CoefVector& x, double beta,
                                    const ModelSpec& model);

/// Conjugate posterior mean under G(.|alpha): factor i^{-2a-1}/(i^{-2a-1}+eps2).
CoefVector estimate_gaussian_prior(const CoefVector& x, double alpha,
                                   const ModelSpec& model);

/// First coordinate of the Bayes estimator under Zhao's sieve C_M(.|alpha);
/// equals x1/(1+eps2) for every alpha and every mixing law M.
double zhao_sieve_coord1(double x1, double eps2);

/// Block boundaries (inclusive end indices) of the weakly geometric system
/// used by the blockwise James-Stein estimator, capped at d_js.
std::vector<int> weakly_geometric_blocks(int d_js, double eps2);

/// Blockwise James-Stein: truncation at floor(1/eps2), positive-part
/// shrinkage per block, blocks of size <= 2 passed through.
CoefVector estimate_block_james_stein(const CoefVector& x, const ModelSpec& model);

/// Normalized log posterior weights over the scale grid.
std::vector<double> scale_mixture_log_weights(const CoefVector& x,
                                              const ScaleMixtureSpec& spec,
                                              const ModelSpec& model);

/// Bayes estimator under the Gaussian scale mixture prior.
CoefVector estimate_scale_mixture(const CoefVector& x,
                                  const ScaleMixtureSpec& spec,
                                  const ModelSpec& model);

CoefVector estimate_mle(const CoefVector& x);
CoefVector estimate_truncation(const CoefVector& x, int d);

/// The proposed Bayes estimator (posterior mean of the hierarchical prior).
CoefVector estimate_proposed(const CoefVector& x, const HyperParams& hp,
                             const ModelSpec& model);

/// Dispatch on the spec's kind.
CoefVector apply_estimator(const EstimatorSpec& spec, const CoefVector& x,
                           const ModelSpec& model);

} // namespace seqadapt

#endif
