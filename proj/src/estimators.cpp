#include "seqadapt/estimators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "seqadapt/logsumexp.hpp"

namespace seqadapt {

std::string EstimatorSpec::name() const {
    std::ostringstream out;
    std::visit(
        [&out](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, est::Proposed>)
                out << "proposed";
            else if constexpr (std::is_same_v<T, est::ModelSelection>)
                out << "model_selection";
            else if constexpr (std::is_same_v<T, est::ModelAveraging>)
                out << "model_averaging(" << k.beta << ")";
            else if constexpr (std::is_same_v<T, est::BlockJamesStein>)
                out << "block_james_stein";
            else if constexpr (std::is_same_v<T, est::GaussianPrior>)
                out << "gaussian_prior(" << k.alpha << ")";
            else if constexpr (std::is_same_v<T, est::ScaleMixture>)
                out << "scale_mixture";
            else if constexpr (std::is_same_v<T, est::Mle>)
                out << "mle";
            else if constexpr (std::is_same_v<T, est::Truncation>)
                out << "truncation(" << k.d << ")";
        },
        kind);
    return out.str();
}

void EstimatorSpec::validate(const ModelSpec& model) const {
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, est::ModelAveraging>) {
                if (!(k.beta > 0.0 && k.beta <= 0.5))
                    throw std::invalid_argument(
                        "ModelAveraging: beta must be in (0, 1/2]");
            } else if constexpr (std::is_same_v<T, est::GaussianPrior>) {
                if (!(k.alpha > 0.0))
                    throw std::invalid_argument(
                        "GaussianPrior: alpha must be positive");
            } else if constexpr (std::is_same_v<T, est::ScaleMixture>) {
                k.spec.validate();
            } else if constexpr (std::is_same_v<T, est::Truncation>) {
                if (k.d < 1 || k.d > model.p)
                    throw std::invalid_argument("Truncation: d must be in [1, p]");
            } else if constexpr (std::is_same_v<T, est::Proposed>) {
                // defer to HyperParams
            }
        },
        kind);
    if (std::holds_alternative<est::Proposed>(kind)) hp.validate(model);
}

double rhat(const CoefVector& x, int d, double eps2) {
    if (d < 1 || d > static_cast<int>(x.size()))
        throw std::invalid_argument("rhat: d out of range");
    double sum_sq = 0.0;
    for (int i = 0; i < d; ++i) sum_sq += x[i] * x[i];
    return -sum_sq + 2.0 * eps2 * d;
}

int select_dimension(const CoefVector& x, const ModelSpec& model) {
    validate_coef_vector(x, model);
    int best_d = 1;
    double best = 0.0;
    double running = 0.0;
    for (int d = 1; d <= model.p; ++d) {
        running += -x[d - 1] * x[d - 1] + 2.0 * model.eps2;
        if (d == 1 || running < best) {
            best = running;
            best_d = d; // strict inequality keeps the smallest minimizer
        }
    }
    return best_d;
}

CoefVector estimate_model_selection(const CoefVector& x, const ModelSpec& model) {
    return estimate_truncation(x, select_dimension(x, model));
}

std::vector<double> model_averaging_log_weights(const CoefVector& x, double beta,
                                                const ModelSpec& model) {
    if (!(beta > 0.0))
        throw std::invalid_argument("model_averaging: beta must be positive");
    validate_coef_vector(x, model);
    std::vector<double> log_w(model.p);
    double running = 0.0;
    for (int d = 1; d <= model.p; ++d) {
        running += -x[d - 1] * x[d - 1] + 2.0 * model.eps2;
        log_w[d - 1] = -beta * running / (2.0 * model.eps2);
    }
    log_normalize(log_w);
    return log_w;
}

CoefVector estimate_model_averaging(const CoefVector& x, double beta,
                                    const ModelSpec& model) {
    if (!(beta <= 0.5))
        throw std::invalid_argument(
            "estimate_model_averaging: beta must be in (0, 1/2]");
    const auto log_w = model_averaging_log_weights(x, beta, model);
    // theta_i = x_i * sum_{d >= i} w_d
    CoefVector out(model.p);
    double tail = 0.0;
    for (int i = model.p; i >= 1; --i) {
        tail += std::exp(log_w[i - 1]);
        out[i - 1] = x[i - 1] * tail;
    }
    return out;
}

CoefVector estimate_gaussian_prior(const CoefVector& x, double alpha,
                                   const ModelSpec& model) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("estimate_gaussian_prior: alpha must be positive");
    validate_coef_vector(x, model);
    CoefVector out(model.p);
    for (int i = 1; i <= model.p; ++i) {
        const double v = gaussian_prior_variance(i, alpha);
        out[i - 1] = v / (v + model.eps2) * x[i - 1];
    }
    return out;
}

double zhao_sieve_coord1(double x1, double eps2) {
    return x1 / (1.0 + eps2);
}

std::vector<int> weakly_geometric_blocks(int d_js, double eps2) {
    std::vector<int> ends;
    if (d_js < 1) return ends;
    const double log_inv = std::log(1.0 / eps2);
    if (!(log_inv > 0.0)) {
        ends.push_back(d_js); // eps2 >= 1: single block
        return ends;
    }
    const double rho = 1.0 + 1.0 / log_inv;
    int prev = 0;
    for (int j = 1; prev < d_js; ++j) {
        const double raw = std::pow(rho, static_cast<double>(j));
        int end = raw >= static_cast<double>(d_js)
                      ? d_js
                      : static_cast<int>(std::ceil(raw));
        if (end > d_js) end = d_js;
        if (end <= prev) continue;
        ends.push_back(end);
        prev = end;
    }
    return ends;
}

CoefVector estimate_block_james_stein(const CoefVector& x, const ModelSpec& model) {
    validate_coef_vector(x, model);
    CoefVector out(model.p, 0.0);
    const int d_js =
        std::min(model.p, static_cast<int>(std::floor(1.0 / model.eps2)));
    if (d_js < 1) return out;
    const auto ends = weakly_geometric_blocks(d_js, model.eps2);
    int start = 1;
    for (int end : ends) {
        const int size = end - start + 1;
        if (size <= 2) {
            for (int i = start; i <= end; ++i) out[i - 1] = x[i - 1];
        } else {
            double norm_sq = 0.0;
            for (int i = start; i <= end; ++i) norm_sq += x[i - 1] * x[i - 1];
            double factor = 0.0;
            if (norm_sq > 0.0)
                factor = std::max(0.0, 1.0 - (size - 2) * model.eps2 / norm_sq);
            for (int i = start; i <= end; ++i) out[i - 1] = factor * x[i - 1];
        }
        start = end + 1;
    }
    return out;
}

std::vector<double> scale_mixture_log_weights(const CoefVector& x,
                                              const ScaleMixtureSpec& spec,
                                              const ModelSpec& model) {
    spec.validate();
    validate_coef_vector(x, model);
    std::vector<double> log_w(spec.grid.size());
    for (std::size_t j = 0; j < spec.grid.size(); ++j) {
        const auto& [t, w] = spec.grid[j];
        double acc = std::log(w);
        for (int i = 1; i <= model.p; ++i) {
            const double v = scale_mixture_component_variance(i, t, spec);
            acc += -0.5 * std::log1p(v / model.eps2) +
                   x[i - 1] * x[i - 1] * v / (2.0 * model.eps2 * (v + model.eps2));
        }
        log_w[j] = acc;
    }
    log_normalize(log_w);
    return log_w;
}

CoefVector estimate_scale_mixture(const CoefVector& x,
                                  const ScaleMixtureSpec& spec,
                                  const ModelSpec& model) {
    const auto log_w = scale_mixture_log_weights(x, spec, model);
    CoefVector out(model.p, 0.0);
    for (std::size_t j = 0; j < spec.grid.size(); ++j) {
        const double mass = std::exp(log_w[j]);
        const double t = spec.grid[j].first;
        for (int i = 1; i <= model.p; ++i) {
            const double v = scale_mixture_component_variance(i, t, spec);
            out[i - 1] += mass * v / (v + model.eps2) * x[i - 1];
        }
    }
    return out;
}

CoefVector estimate_mle(const CoefVector& x) { return x; }

CoefVector estimate_truncation(const CoefVector& x, int d) {
    if (d < 1 || d > static_cast<int>(x.size()))
        throw std::invalid_argument("estimate_truncation: d out of range");
    CoefVector out(x.size(), 0.0);
    for (int i = 0; i < d; ++i) out[i] = x[i];
    return out;
}

CoefVector estimate_proposed(const CoefVector& x, const HyperParams& hp,
                             const ModelSpec& model) {
    return posterior_mean(x, hp, model);
}

CoefVector apply_estimator(const EstimatorSpec& spec, const CoefVector& x,
                           const ModelSpec& model) {
    spec.validate(model);
    return std::visit(
        [&](const auto& k) -> CoefVector {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, est::Proposed>)
                return estimate_proposed(x, spec.hp, model);
            else if constexpr (std::is_same_v<T, est::ModelSelection>)
                return estimate_model_selection(x, model);
            else if constexpr (std::is_same_v<T, est::ModelAveraging>)
                return estimate_model_averaging(x, k.beta, model);
            else if constexpr (std::is_same_v<T, est::BlockJamesStein>)
                return estimate_block_james_stein(x, model);
            else if constexpr (std::is_same_v<T, est::GaussianPrior>)
                return estimate_gaussian_prior(x, k.alpha, model);
            else if constexpr (std::is_same_v<T, est::ScaleMixture>)
                return estimate_scale_mixture(x, k.spec, model);
            else if constexpr (std::is_same_v<T, est::Mle>)
                return estimate_mle(x);
            else
                return estimate_truncation(x, k.d);
        },
        spec.kind);
}

} // namespace seqadapt
