#include "seqadapt/priors.hpp"

#include <cmath>
#include <stdexcept>

#include "seqadapt/logsumexp.hpp"

namespace seqadapt {

void HyperParams::validate(const ModelSpec& model) const {
    if (!(eta > 0.0)) throw std::invalid_argument("HyperParams: eta must be positive");
    if (!(gamma > 0.0))
        throw std::invalid_argument("HyperParams: gamma must be positive");
    if (k_max < 1) throw std::invalid_argument("HyperParams: k_max must be >= 1");
    const int dm = effective_d_max(model);
    if (dm < 1 || dm > model.p)
        throw std::invalid_argument("HyperParams: d_max must be in [1, p]");
}

int HyperParams::effective_d_max(const ModelSpec& model) const {
    return d_max == 0 ? model.p : d_max;
}

void ScaleMixtureSpec::validate() const {
    if (!(alpha > 0.0))
        throw std::invalid_argument("ScaleMixtureSpec: alpha must be positive");
    if (grid.empty())
        throw std::invalid_argument("ScaleMixtureSpec: grid must be non-empty");
    double prev = 0.0;
    double total = 0.0;
    for (const auto& [t, w] : grid) {
        if (!(t > prev))
            throw std::invalid_argument(
                "ScaleMixtureSpec: t values must be positive and strictly increasing");
        if (!(w >= 0.0))
            throw std::invalid_argument(
                "ScaleMixtureSpec: weights must be non-negative");
        prev = t;
        total += w;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("ScaleMixtureSpec: weights sum to zero");
}

ScaleMixtureSpec default_scale_mixture(double alpha) {
    constexpr int kGridSize = 64;
    const double log_lo = std::log(1e-3);
    const double log_hi = std::log(1e3);
    ScaleMixtureSpec spec;
    spec.alpha = alpha;
    spec.grid.reserve(kGridSize);
    double total = 0.0;
    for (int j = 0; j < kGridSize; ++j) {
        const double t =
            std::exp(log_lo + (log_hi - log_lo) * j / (kGridSize - 1));
        // inverse-gamma(1,1) density t^-2 e^{-1/t}
        const double w = std::exp(-1.0 / t) / (t * t);
        spec.grid.emplace_back(t, w);
        total += w;
    }
    for (auto& [t, w] : spec.grid) w /= total;
    spec.validate();
    return spec;
}

double log_M(int d, double eta) {
    if (d < 1) throw std::invalid_argument("log_M: d must be >= 1");
    if (!(eta > 0.0)) throw std::invalid_argument("log_M: eta must be positive");
    // normalizer over d >= 1 is e^eta - 1; log via log1p for stability
    return -eta * d + eta + std::log1p(-std::exp(-eta));
}

double log_F(int k, double gamma) {
    if (k < 1) throw std::invalid_argument("log_F: k must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("log_F: gamma must be positive");
    return -gamma * k + gamma + std::log1p(-std::exp(-gamma));
}

std::vector<double> truncated_geometric_log_masses(double rate, int n_max) {
    if (n_max < 1)
        throw std::invalid_argument("truncated_geometric_log_masses: n_max >= 1");
    std::vector<double> log_masses(n_max);
    for (int n = 1; n <= n_max; ++n) log_masses[n - 1] = -rate * n;
    log_normalize(log_masses);
    return log_masses;
}

double prior_component_variance(int i, int d, int k, double eps2) {
    if (i < 1) throw std::invalid_argument("prior_component_variance: i must be >= 1");
    if (i > d) return 0.0;
    const double exponent = 2.0 * k + 1.0;
    return eps2 * std::exp(exponent * (std::log(static_cast<double>(d)) -
                                       std::log(static_cast<double>(i))));
}

double gaussian_prior_variance(int i, double alpha) {
    if (i < 1) throw std::invalid_argument("gaussian_prior_variance: i must be >= 1");
    return std::pow(static_cast<double>(i), -2.0 * alpha - 1.0);
}

double scale_mixture_component_variance(int i, double t,
                                        const ScaleMixtureSpec& spec) {
    if (i < 1)
        throw std::invalid_argument("scale_mixture_component_variance: i must be >= 1");
    return t * std::pow(static_cast<double>(i), -(2.0 * spec.alpha + 1.0));
}

CoefVector sample_sieve_component(int d, int k, const ModelSpec& model,
                                  RngStream& rng) {
    CoefVector theta(model.p, 0.0);
    for (int i = 1; i <= d && i <= model.p; ++i)
        theta[i - 1] =
            std::sqrt(prior_component_variance(i, d, k, model.eps2)) * rng.normal();
    return theta;
}

int sample_index_from_log_masses(const std::vector<double>& log_masses,
                                 RngStream& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t j = 0; j < log_masses.size(); ++j) {
        cumulative += std::exp(log_masses[j]);
        if (u < cumulative) return static_cast<int>(j) + 1;
    }
    return static_cast<int>(log_masses.size());
}

PriorDraw sample_prior_Pi_draw(const HyperParams& hp, const ModelSpec& model,
                               RngStream& rng) {
    hp.validate(model);
    const auto log_f = truncated_geometric_log_masses(hp.gamma, hp.k_max);
    const auto log_m =
        truncated_geometric_log_masses(hp.eta, hp.effective_d_max(model));
    PriorDraw draw;
    draw.k = sample_index_from_log_masses(log_f, rng);
    draw.d = sample_index_from_log_masses(log_m, rng);
    draw.theta = sample_sieve_component(draw.d, draw.k, model, rng);
    return draw;
}

CoefVector sample_prior_Pi(const HyperParams& hp, const ModelSpec& model,
                           RngStream& rng) {
    return sample_prior_Pi_draw(hp, model, rng).theta;
}

CoefVector sample_prior_Pi(const HyperParams& hp, const ModelSpec& model,
                           RngSpec rng) {
    RngStream stream(rng);
    return sample_prior_Pi(hp, model, stream);
}

} // namespace seqadapt
