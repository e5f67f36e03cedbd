#include "seqadapt/posterior.hpp"

#include <cmath>
#include <stdexcept>

#include "seqadapt/logsumexp.hpp"

namespace seqadapt {

namespace {

// Exponents (2k+1) log(d/i) reach the hundreds at p=100, k=50; everything
// downstream therefore stays in log domain until a normalized mass is needed.
struct ComponentTerm {
    double s;        // shrinkage (d/i)^{2k+1} / ((d/i)^{2k+1} + 1)
    double log1p_r;  // log(1 + (d/i)^{2k+1})
};

inline ComponentTerm component_term(double log_ratio, int k) {
    const double L = (2.0 * k + 1.0) * log_ratio;
    if (L > 36.8) return {1.0, L}; // e^-L below double resolution
    const double r = std::exp(L);
    return {r / (1.0 + r), std::log1p(r)};
}

class LogTable {
public:
    explicit LogTable(int n) : logs_(n + 1, 0.0) {
        for (int i = 1; i <= n; ++i) logs_[i] = std::log(static_cast<double>(i));
    }
    double operator()(int i) const { return logs_[i]; }

private:
    std::vector<double> logs_;
};

// Unnormalized log-masses of (d | x, k) over d = 1..d_max. When shrink_tri
// is non-null it receives the lower-triangular factors s(i,d,k), laid out
// row by row (row d holds d entries).
void joint_log_weights(const CoefVector& x, int k, const HyperParams& hp,
                       int d_max, double eps2, const LogTable& logs,
                       std::vector<double>& out_lw, double* shrink_tri) {
    out_lw.assign(d_max, 0.0);
    std::vector<double> q(d_max);
    for (int i = 1; i <= d_max; ++i) {
        const double xi = x[i - 1];
        q[i - 1] = xi * xi / (2.0 * eps2);
    }
    double* row = shrink_tri;
    for (int d = 1; d <= d_max; ++d) {
        double acc = -hp.eta * d;
        const double log_d = logs(d);
        for (int i = 1; i <= d; ++i) {
            const ComponentTerm term = component_term(log_d - logs(i), k);
            acc += -0.5 * term.log1p_r + q[i - 1] * term.s;
            if (row) row[i - 1] = term.s;
        }
        if (!std::isfinite(acc))
            throw std::runtime_error(
                "posterior weights: non-finite log-mass (overflow misuse)");
        out_lw[d - 1] = acc;
        if (row) row += d;
    }
}

} // namespace

double shrinkage(int i, int d, int k) {
    if (i < 1 || i > d)
        throw std::invalid_argument(
            "shrinkage: requires 1 <= i <= d (coordinates beyond d are degenerate)");
    if (k < 1) throw std::invalid_argument("shrinkage: k must be >= 1");
    const double L = (2.0 * k + 1.0) * (std::log(static_cast<double>(d)) -
                                        std::log(static_cast<double>(i)));
    if (L > 36.8) return 1.0;
    const double r = std::exp(L);
    return r / (1.0 + r);
}

std::vector<double> log_M_posterior(const CoefVector& x, int k,
                                    const HyperParams& hp,
                                    const ModelSpec& model) {
    validate_coef_vector(x, model);
    hp.validate(model);
    if (k < 1 || k > hp.k_max)
        throw std::invalid_argument("log_M_posterior: k out of range");
    const int d_max = hp.effective_d_max(model);
    const LogTable logs(d_max);
    std::vector<double> lw;
    joint_log_weights(x, k, hp, d_max, model.eps2, logs, lw, nullptr);
    log_normalize(lw);
    return lw;
}

std::vector<double> log_F_posterior(const CoefVector& x, const HyperParams& hp,
                                    const ModelSpec& model) {
    validate_coef_vector(x, model);
    hp.validate(model);
    const int d_max = hp.effective_d_max(model);
    const LogTable logs(d_max);
    std::vector<double> log_f(hp.k_max);
    std::vector<double> lw;
    for (int k = 1; k <= hp.k_max; ++k) {
        joint_log_weights(x, k, hp, d_max, model.eps2, logs, lw, nullptr);
        log_f[k - 1] = -hp.gamma * k + log_sum_exp(lw);
    }
    log_normalize(log_f);
    return log_f;
}

PosteriorSummary compute_posterior(const CoefVector& x, const HyperParams& hp,
                                   const ModelSpec& model) {
    validate_coef_vector(x, model);
    hp.validate(model);
    const int d_max = hp.effective_d_max(model);
    const int p = model.p;
    const LogTable logs(d_max);

    PosteriorSummary summary;
    summary.log_F_post.resize(hp.k_max);
    summary.log_M_post.assign(hp.k_max, std::vector<double>());
    // factor[k][i] = sum_{d >= i} M(d|x,k) s(i,d,k)
    std::vector<std::vector<double>> factor(hp.k_max,
                                            std::vector<double>(d_max, 0.0));

    std::vector<double> shrink_tri(static_cast<std::size_t>(d_max) *
                                   (d_max + 1) / 2);
    std::vector<double> lw;
    for (int k = 1; k <= hp.k_max; ++k) {
        joint_log_weights(x, k, hp, d_max, model.eps2, logs, lw,
                          shrink_tri.data());
        const double lse = log_sum_exp(lw);
        summary.log_F_post[k - 1] = -hp.gamma * k + lse;
        auto& log_m = summary.log_M_post[k - 1];
        log_m = lw;
        const double* row = shrink_tri.data();
        for (int d = 1; d <= d_max; ++d) {
            log_m[d - 1] -= lse;
            const double mass = std::exp(log_m[d - 1]);
            for (int i = 1; i <= d; ++i)
                factor[k - 1][i - 1] += mass * row[i - 1];
            row += d;
        }
    }
    log_normalize(summary.log_F_post);

    summary.effective_shrink.assign(p, 0.0);
    for (int k = 1; k <= hp.k_max; ++k) {
        const double f_mass = std::exp(summary.log_F_post[k - 1]);
        for (int i = 1; i <= d_max; ++i)
            summary.effective_shrink[i - 1] += f_mass * factor[k - 1][i - 1];
    }
    summary.mean.assign(p, 0.0);
    for (int i = 1; i <= p; ++i)
        summary.mean[i - 1] = summary.effective_shrink[i - 1] * x[i - 1];

    const double f_tail = std::exp(-hp.gamma * hp.k_max);
    const double m_tail = std::exp(-hp.eta * d_max);
    summary.tail_mass_bound = std::min(1.0, f_tail + m_tail);
    return summary;
}

CoefVector posterior_mean(const CoefVector& x, const HyperParams& hp,
                          const ModelSpec& model) {
    validate_coef_vector(x, model);
    hp.validate(model);
    const int d_max = hp.effective_d_max(model);
    const LogTable logs(d_max);

    std::vector<double> log_f(hp.k_max);
    std::vector<std::vector<double>> factor(hp.k_max,
                                            std::vector<double>(d_max, 0.0));
    std::vector<double> shrink_tri(static_cast<std::size_t>(d_max) *
                                   (d_max + 1) / 2);
    std::vector<double> lw;
    for (int k = 1; k <= hp.k_max; ++k) {
        joint_log_weights(x, k, hp, d_max, model.eps2, logs, lw,
                          shrink_tri.data());
        const double lse = log_sum_exp(lw);
        log_f[k - 1] = -hp.gamma * k + lse;
        const double* row = shrink_tri.data();
        for (int d = 1; d <= d_max; ++d) {
            const double mass = std::exp(lw[d - 1] - lse);
            for (int i = 1; i <= d; ++i)
                factor[k - 1][i - 1] += mass * row[i - 1];
            row += d;
        }
    }
    log_normalize(log_f);

    CoefVector mean(model.p, 0.0);
    for (int k = 1; k <= hp.k_max; ++k) {
        const double f_mass = std::exp(log_f[k - 1]);
        for (int i = 1; i <= d_max; ++i)
            mean[i - 1] += f_mass * factor[k - 1][i - 1] * x[i - 1];
    }
    return mean;
}

std::vector<PosteriorDraw> sample_posterior_detailed(const CoefVector& x, int n,
                                                     const HyperParams& hp,
                                                     const ModelSpec& model,
                                                     RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_posterior: n must be >= 1");
    validate_coef_vector(x, model);
    hp.validate(model);
    const int d_max = hp.effective_d_max(model);
    const LogTable logs(d_max);

    const auto log_f = log_F_posterior(x, hp, model);
    std::vector<std::vector<double>> log_m(hp.k_max);
    std::vector<double> lw;
    for (int k = 1; k <= hp.k_max; ++k) {
        joint_log_weights(x, k, hp, d_max, model.eps2, logs, lw, nullptr);
        log_normalize(lw);
        log_m[k - 1] = lw;
    }

    std::vector<PosteriorDraw> draws;
    draws.reserve(n);
    for (int rep = 0; rep < n; ++rep) {
        PosteriorDraw draw;
        draw.k = sample_index_from_log_masses(log_f, rng);
        draw.d = sample_index_from_log_masses(log_m[draw.k - 1], rng);
        draw.theta.assign(model.p, 0.0);
        for (int i = 1; i <= draw.d; ++i) {
            const double s = shrinkage(i, draw.d, draw.k);
            draw.theta[i - 1] =
                s * x[i - 1] + std::sqrt(model.eps2 * s) * rng.normal();
        }
        draws.push_back(std::move(draw));
    }
    return draws;
}

std::vector<CoefVector> sample_posterior(const CoefVector& x, int n,
                                         const HyperParams& hp,
                                         const ModelSpec& model,
                                         RngStream& rng) {
    auto detailed = sample_posterior_detailed(x, n, hp, model, rng);
    std::vector<CoefVector> draws;
    draws.reserve(detailed.size());
    for (auto& draw : detailed) draws.push_back(std::move(draw.theta));
    return draws;
}

std::vector<CoefVector> sample_posterior(const CoefVector& x, int n,
                                         const HyperParams& hp,
                                         const ModelSpec& model, RngSpec rng) {
    RngStream stream(rng);
    return sample_posterior(x, n, hp, model, stream);
}

double posterior_tail_probability(const CoefVector& theta0,
                                  const EllipsoidSpec& spec, double C,
                                  const ModelSpec& model, const HyperParams& hp,
                                  int reps, RngSpec rng, int inner_samples) {
    if (reps < 1)
        throw std::invalid_argument("posterior_tail_probability: reps must be >= 1");
    if (inner_samples < 1)
        throw std::invalid_argument(
            "posterior_tail_probability: inner_samples must be >= 1");
    if (!(C >= 0.0))
        throw std::invalid_argument("posterior_tail_probability: C must be >= 0");
    validate_coef_vector(theta0, model);
    if (!in_ellipsoid(theta0, spec))
        throw std::invalid_argument(
            "posterior_tail_probability: theta0 is outside the ellipsoid");

    const double eps = std::sqrt(model.eps2);
    const double rate = 4.0 * spec.alpha0 / (2.0 * spec.alpha0 + 1.0);
    const double threshold = C * std::pow(eps / spec.B, rate);
    const double B2 = spec.B * spec.B;

    RngStream base(rng);
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream stream = base.substream(rep);
        const CoefVector x = simulate_observation(theta0, model, stream);
        const auto draws = sample_posterior(x, inner_samples, hp, model, stream);
        int hits = 0;
        for (const auto& draw : draws) {
            double dist2 = 0.0;
            for (int i = 0; i < model.p; ++i) {
                const double diff = draw[i] - theta0[i];
                dist2 += diff * diff;
            }
            if (dist2 / B2 >= threshold) ++hits;
        }
        total += static_cast<double>(hits) / inner_samples;
    }
    return total / reps;
}

} // namespace seqadapt
