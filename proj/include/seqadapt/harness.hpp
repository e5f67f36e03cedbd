#ifndef SEQADAPT_HARNESS_HPP
#define SEQADAPT_HARNESS_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqadapt/estimators.hpp"

namespace seqadapt {

/// Escalated numerical warning (e.g. prior truncation tail mass above the
/// configured threshold). Maps to exit code 3 in the CLI.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Built-in parameter families used by the
/// benchmark sweeps. Tags 1..4:
///   1: B i^-0.52 / 10      2: (B, 0, 0, ...)
///   3: B i^-0.65 / 2       4: B i^-3 / sqrt(pi^4/90)
CoefVector theta_family(int tag, double B, int p);

/// Pinsker's constant c_P(a0) = (2a0+1)^{1/(2a0+1)} (a0/(a0+1))^{4a0/(2a0+1)}.
double pinsker_constant(double alpha0);

/// Asymptotic minimax benchmark c_P(a0) (eps/B)^{4a0/(2a0+1)} for the
/// normalized risk; requires 0 < eps <= B.
double minimax_reference(double alpha0, double B, double eps);

/// Infinite-sum Sobolev norm of the power law theta_i = c i^-q, computed
/// analytically (zeta); +inf when the series diverges.
double power_law_sobolev_sq(double c, double q, double alpha0);

/// Analytic ellipsoid membership for power-law vectors; this is the
/// infinite-sum verdict, unlike the truncated in_ellipsoid.
bool power_law_in_ellipsoid(double c, double q, const EllipsoidSpec& spec);

struct RiskStats {
    double mean = 0.0;
    double std = 0.0; // sample standard deviation (n-1)
};

/// Worker count for replication loops: min(requested or hardware, reps),
/// capped by the SEQADAPT_THREADS environment variable when set.
int resolve_worker_count(int requested, int work_items);

/// Monte Carlo risk: mean and std of ||est(x) - theta||^2 / b2 over
/// `reps` independent observations. Replication r uses rng.substream(r),
/// so results do not depend on the worker count.
RiskStats evaluate_risk(const EstimatorSpec& est, const CoefVector& theta,
                        const ModelSpec& model, double b2, int reps,
                        RngSpec rng, int workers = 0);

struct ExperimentConfig {
    ModelSpec model{1.0, 100};
    std::vector<EstimatorSpec> estimators;
    int theta_tag = 1;                 // 1..4, or 0 for a custom shape
    CoefVector custom_theta;           // unit-B shape, scaled by B per sweep point
    std::vector<double> B2_values{1, 2, 3, 4, 5};
    int reps = 1000;
    RngSpec rng{};
    int workers = 0;                   // 0 = auto
    double tail_mass_warn = 1e-10;
};

struct RiskRow {
    std::string estimator;
    double B2;
    double loss_mean;
    double loss_std;
    int reps;
    std::uint64_t seed;
};

struct RiskReport {
    std::vector<RiskRow> rows;
};

/// Full sweep over (estimator, B^2). All estimators see the same simulated
/// observations at a given (B^2, replication); deterministic given cfg.rng.
RiskReport run_experiment(const ExperimentConfig& cfg);

void write_risk_report_csv(const RiskReport& report, std::ostream& out);
std::string risk_report_json(const RiskReport& report);

struct SmallBallEstimate {
    double p_hat = 0.0;
    long long hits = 0;
    long long reps = 0;
    bool upper_bound_only = false; // no hits: p_hat is not evidence of zero
    double upper_bound = 0.0;      // rule-of-three 3/reps when no hits
};

/// Monte Carlo estimate of Pr( sum_{i<=d} (i^{-a-1/2} N_i - v_i)^2 <= d^{-2a} ).
SmallBallEstimate small_ball_mc(double alpha, int d,
                                const std::vector<double>& v, long long reps,
                                RngSpec rng);

} // namespace seqadapt

#endif
