#include "seqadapt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace seqadapt {

CoefVector theta_family(int tag, double B, int p) {
    if (p < 1) throw std::invalid_argument("theta_family: p must be >= 1");
    if (!(B > 0.0)) throw std::invalid_argument("theta_family: B must be positive");
    CoefVector theta(p, 0.0);
    switch (tag) {
        case 1:
            for (int i = 1; i <= p; ++i)
                theta[i - 1] = B * std::pow(i, -0.52) / 10.0;
            break;
        case 2:
            theta[0] = B;
            break;
        case 3:
            for (int i = 1; i <= p; ++i)
                theta[i - 1] = B * std::pow(i, -0.65) / 2.0;
            break;
        case 4: {
            const double pi = 3.14159265358979323846;
            const double scale = std::sqrt(pi * pi * pi * pi / 90.0);
            for (int i = 1; i <= p; ++i)
                theta[i - 1] = B * std::pow(i, -3.0) / scale;
            break;
        }
        default:
            throw std::invalid_argument("theta_family: unknown tag (expected 1..4)");
    }
    return theta;
}

double pinsker_constant(double alpha0) {
    if (!(alpha0 > 0.0))
        throw std::invalid_argument("pinsker_constant: alpha0 must be positive");
    const double q = 2.0 * alpha0 + 1.0;
    return std::pow(q, 1.0 / q) *
           std::pow(alpha0 / (alpha0 + 1.0), 4.0 * alpha0 / q);
}

double minimax_reference(double alpha0, double B, double eps) {
    if (!(eps > 0.0 && eps <= B))
        throw std::invalid_argument("minimax_reference: requires 0 < eps <= B");
    const double rate = 4.0 * alpha0 / (2.0 * alpha0 + 1.0);
    return pinsker_constant(alpha0) * std::pow(eps / B, rate);
}

double power_law_sobolev_sq(double c, double q, double alpha0) {
    if (!(alpha0 > 0.0))
        throw std::invalid_argument("power_law_sobolev_sq: alpha0 must be positive");
    const double s = 2.0 * q - 2.0 * alpha0;
    if (s <= 1.0) return std::numeric_limits<double>::infinity();
    return c * c * std::riemann_zeta(s);
}

bool power_law_in_ellipsoid(double c, double q, const EllipsoidSpec& spec) {
    return power_law_sobolev_sq(c, q, spec.alpha0) <= spec.B * spec.B;
}

int resolve_worker_count(int requested, int work_items) {
    int n = requested;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
    }
    if (const char* env = std::getenv("SEQADAPT_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::clamp(n, 1, std::max(1, work_items));
}

namespace {

// Static blocked partition; each index writes only its own slot, so results
// are identical for any worker count.
template <typename Body>
void parallel_for(int n, int workers, const Body& body) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&body, lo, hi] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (int i = 0; i < std::min(chunk, n); ++i) body(i);
    for (auto& t : threads) t.join();
}

RiskStats summarize(const std::vector<double>& losses) {
    const int n = static_cast<int>(losses.size());
    double mean = 0.0;
    for (double l : losses) mean += l;
    mean /= n;
    double ss = 0.0;
    for (double l : losses) ss += (l - mean) * (l - mean);
    RiskStats stats;
    stats.mean = mean;
    stats.std = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    return stats;
}

double squared_loss(const CoefVector& estimate, const CoefVector& theta,
                    double b2) {
    double sum = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double diff = estimate[i] - theta[i];
        sum += diff * diff;
    }
    return sum / b2;
}

} // namespace

RiskStats evaluate_risk(const EstimatorSpec& est, const CoefVector& theta,
                        const ModelSpec& model, double b2, int reps,
                        RngSpec rng, int workers) {
    if (reps < 2) throw std::invalid_argument("evaluate_risk: reps must be >= 2");
    if (!(b2 > 0.0)) throw std::invalid_argument("evaluate_risk: b2 must be positive");
    est.validate(model);
    validate_coef_vector(theta, model);

    const RngStream base(rng);
    std::vector<double> losses(reps);
    parallel_for(reps, resolve_worker_count(workers, reps), [&](int r) {
        RngStream stream = base.substream(r);
        const CoefVector x = simulate_observation(theta, model, stream);
        losses[r] = squared_loss(apply_estimator(est, x, model), theta, b2);
    });
    return summarize(losses);
}

RiskReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.reps < 2)
        throw std::invalid_argument("run_experiment: reps must be >= 2");
    if (cfg.B2_values.empty())
        throw std::invalid_argument("run_experiment: B2_values must be non-empty");
    if (cfg.estimators.empty())
        throw std::invalid_argument("run_experiment: estimators must be non-empty");
    for (const auto& est : cfg.estimators) {
        est.validate(cfg.model);
        if (std::holds_alternative<est::Proposed>(est.kind)) {
            const double tail =
                std::exp(-est.hp.gamma * est.hp.k_max) +
                std::exp(-est.hp.eta * est.hp.effective_d_max(cfg.model));
            if (tail > cfg.tail_mass_warn)
                throw NumericFailure(
                    "prior truncation tail mass " + std::to_string(tail) +
                    " exceeds the warning threshold; raise k_max/d_max");
        }
    }

    const int n_est = static_cast<int>(cfg.estimators.size());
    const RngStream base(cfg.rng);
    // losses[b][e] over replications
    std::vector<std::vector<std::vector<double>>> losses(
        cfg.B2_values.size(),
        std::vector<std::vector<double>>(n_est, std::vector<double>(cfg.reps)));

    for (std::size_t b = 0; b < cfg.B2_values.size(); ++b) {
        const double b2 = cfg.B2_values[b];
        if (!(b2 > 0.0))
            throw std::invalid_argument("run_experiment: B2 values must be positive");
        const double B = std::sqrt(b2);
        CoefVector theta;
        if (cfg.theta_tag != 0) {
            theta = theta_family(cfg.theta_tag, B, cfg.model.p);
        } else {
            validate_coef_vector(cfg.custom_theta, cfg.model);
            theta = cfg.custom_theta;
            for (double& v : theta) v *= B;
        }
        const RngStream sweep = base.substream(b);
        // All estimators see the same observation at a given replication.
        parallel_for(cfg.reps, resolve_worker_count(cfg.workers, cfg.reps),
                     [&](int r) {
                         RngStream stream = sweep.substream(r);
                         const CoefVector x =
                             simulate_observation(theta, cfg.model, stream);
                         for (int e = 0; e < n_est; ++e)
                             losses[b][e][r] = squared_loss(
                                 apply_estimator(cfg.estimators[e], x, cfg.model),
                                 theta, b2);
                     });
    }

    RiskReport report;
    for (int e = 0; e < n_est; ++e) {
        for (std::size_t b = 0; b < cfg.B2_values.size(); ++b) {
            const RiskStats stats = summarize(losses[b][e]);
            report.rows.push_back({cfg.estimators[e].name(), cfg.B2_values[b],
                                   stats.mean, stats.std, cfg.reps,
                                   cfg.rng.seed});
        }
    }
    return report;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_risk_report_csv(const RiskReport& report, std::ostream& out) {
    out << "estimator,B2,loss_mean,loss_std,reps,seed\n";
    for (const auto& row : report.rows) {
        out << row.estimator << ',' << format_double(row.B2) << ','
            << format_double(row.loss_mean) << ',' << format_double(row.loss_std)
            << ',' << row.reps << ',' << row.seed << '\n';
    }
}

std::string risk_report_json(const RiskReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"estimator", row.estimator},
                        {"B2", row.B2},
                        {"loss_mean", row.loss_mean},
                        {"loss_std", row.loss_std},
                        {"reps", row.reps},
                        {"seed", row.seed}});
    }
    return nlohmann::json{{"rows", rows}}.dump(2);
}

SmallBallEstimate small_ball_mc(double alpha, int d,
                                const std::vector<double>& v, long long reps,
                                RngSpec rng) {
    if (d < 1) throw std::invalid_argument("small_ball_mc: d must be >= 1");
    if (reps < 1) throw std::invalid_argument("small_ball_mc: reps must be >= 1");
    if (!(alpha > 0.0))
        throw std::invalid_argument("small_ball_mc: alpha must be positive");
    if (!v.empty() && static_cast<int>(v.size()) != d)
        throw std::invalid_argument("small_ball_mc: v must have length d (or be empty)");

    std::vector<double> scale(d);
    for (int i = 1; i <= d; ++i)
        scale[i - 1] = std::pow(static_cast<double>(i), -alpha - 0.5);
    const double radius_sq = std::pow(static_cast<double>(d), -2.0 * alpha);

    RngStream stream(rng);
    long long hits = 0;
    for (long long rep = 0; rep < reps; ++rep) {
        double sum = 0.0;
        for (int i = 0; i < d; ++i) {
            const double diff =
                scale[i] * stream.normal() - (v.empty() ? 0.0 : v[i]);
            sum += diff * diff;
        }
        if (sum <= radius_sq) ++hits;
    }

    SmallBallEstimate est;
    est.hits = hits;
    est.reps = reps;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(reps);
    if (hits == 0) {
        est.upper_bound_only = true;
        est.upper_bound = 3.0 / static_cast<double>(reps);
    }
    return est;
}

} // namespace seqadapt
