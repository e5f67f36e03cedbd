#ifndef SEQADAPT_REGRESSION_HPP
#define SEQADAPT_REGRESSION_HPP

#include <utility>
#include <vector>

#include "seqadapt/posterior.hpp"

namespace seqadapt {

/// Fixed-design regression sample: y_i = f(i/n) + noise, i = 1..n, with a
/// working truncation dimension p < n.
struct RegressionSample {
    std::vector<double> y;
    int p;

    int n() const { return static_cast<int>(y.size()); }
    void validate() const;
};

/// Coefficient estimate in the trigonometric basis, reconstructable at any
/// t in [0,1].
struct FunctionEstimate {
    CoefVector coefs;
};

/// Sequence-model reduction: x_j = (1/n) sum_k y_k phi_j(k/n) for j = 1..p,
/// with noise variance eps2 = 1/n.
std::pair<CoefVector, double> design_transform(const RegressionSample& sample);

/// Bayes estimate of the regression function via the sequence model.
FunctionEstimate estimate_regression(const RegressionSample& sample,
                                     const HyperParams& hp);

/// Worst-case approximation error bound B^2 p^{-2 alpha0}.
double tau_bound(int p, const EllipsoidSpec& spec);

/// Evaluates sum_i coefs_i phi_i(t) at each grid point.
std::vector<double> reconstruct(const FunctionEstimate& est,
                                const std::vector<double>& grid);

/// Periodic-Sobolev weights: a_1 = 0, a_{2k} = a_{2k+1} = (2k)^{alpha0}.
double periodic_sobolev_weight(int j, double alpha0);

/// Truncated membership check for the periodic Sobolev class W(alpha0, B):
/// sum_j a_j^2 theta_j^2 <= B^2 / pi^{2 alpha0}.
bool in_periodic_sobolev(const CoefVector& theta, const EllipsoidSpec& spec);

} // namespace seqadapt

#endif
