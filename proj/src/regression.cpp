#include "seqadapt/regression.hpp"

#include <cmath>
#include <stdexcept>

namespace seqadapt {

void RegressionSample::validate() const {
    if (p < 1) throw std::invalid_argument("RegressionSample: p must be >= 1");
    if (p >= n())
        throw std::invalid_argument("RegressionSample: requires p < n strictly");
    for (double v : y)
        if (!std::isfinite(v))
            throw std::invalid_argument("RegressionSample: non-finite observation");
}

std::pair<CoefVector, double> design_transform(const RegressionSample& sample) {
    sample.validate();
    const int n = sample.n();
    CoefVector x(sample.p, 0.0);
    // design points i/n, i = 1..n (t = 0 excluded, t = 1 included)
    for (int j = 1; j <= sample.p; ++j) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k)
            acc += sample.y[k - 1] * trig_basis_eval(j, static_cast<double>(k) / n);
        x[j - 1] = acc / n;
    }
    return {x, 1.0 / n};
}

FunctionEstimate estimate_regression(const RegressionSample& sample,
                                     const HyperParams& hp) {
    auto [x, eps2] = design_transform(sample);
    const ModelSpec model(eps2, sample.p);
    HyperParams hp_p = hp;
    hp_p.d_max = sample.p;
    return FunctionEstimate{posterior_mean(x, hp_p, model)};
}

double tau_bound(int p, const EllipsoidSpec& spec) {
    if (p < 1) throw std::invalid_argument("tau_bound: p must be >= 1");
    return spec.B * spec.B * std::pow(static_cast<double>(p), -2.0 * spec.alpha0);
}

std::vector<double> reconstruct(const FunctionEstimate& est,
                                const std::vector<double>& grid) {
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double t = grid[g];
        double acc = 0.0;
        for (std::size_t i = 0; i < est.coefs.size(); ++i)
            acc += est.coefs[i] * trig_basis_eval(static_cast<int>(i) + 1, t);
        values[g] = acc;
    }
    return values;
}

double periodic_sobolev_weight(int j, double alpha0) {
    if (j < 1)
        throw std::invalid_argument("periodic_sobolev_weight: j must be >= 1");
    if (j == 1) return 0.0;
    const int k = j / 2;
    return std::pow(2.0 * k, alpha0);
}

bool in_periodic_sobolev(const CoefVector& theta, const EllipsoidSpec& spec) {
    double sum = 0.0;
    for (std::size_t idx = 0; idx < theta.size(); ++idx) {
        const double a = periodic_sobolev_weight(static_cast<int>(idx) + 1,
                                                 spec.alpha0);
        sum += a * a * theta[idx] * theta[idx];
    }
    const double pi = 3.14159265358979323846;
    return sum <= spec.B * spec.B / std::pow(pi, 2.0 * spec.alpha0);
}

} // namespace seqadapt
