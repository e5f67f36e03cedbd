#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "seqadapt/estimators.hpp"

using namespace seqadapt;

namespace {

CoefVector random_vector(int p, std::uint64_t seed) {
    RngStream rng(RngSpec{seed, 0});
    CoefVector x(p);
    for (double& v : x) v = 2.0 * rng.normal();
    return x;
}

} // namespace

TEST_SUITE("estimators") {

TEST_CASE("rhat arithmetic") {
    const CoefVector x{2.0, 1.0};
    CHECK(rhat(x, 1, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(rhat(x, 2, 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
    const CoefVector zero(5, 0.0);
    for (int d = 1; d < 5; ++d)
        CHECK(rhat(zero, d + 1, 0.7) > rhat(zero, d, 0.7));
    CHECK_THROWS_AS(rhat(x, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rhat(x, 3, 1.0), std::invalid_argument);
}

TEST_CASE("rhat differences are unbiased for the truncation risk difference") {
    const int p = 20;
    const ModelSpec model(1.0, p);
    CoefVector theta(p);
    for (int i = 1; i <= p; ++i)
        theta[i - 1] = 1.4 * std::pow(static_cast<double>(i), -0.52);

    const int reps = 100000;
    RngStream base(RngSpec{1001, 0});
    const auto pairs = {std::pair{7, 2}, std::pair{10, 1}};
    for (const auto& [d, d_prime] : pairs) {
        // E[rhat_d - rhat_d'] = sum_{d'<i<=d} (eps2 - theta_i^2)
        double analytic = 0.0;
        for (int i = d_prime + 1; i <= d; ++i)
            analytic += model.eps2 - theta[i - 1] * theta[i - 1];
        double sum = 0.0, sum_sq = 0.0;
        for (int r = 0; r < reps; ++r) {
            RngStream stream = base.substream(r);
            const auto x = simulate_observation(theta, model, stream);
            const double diff = rhat(x, d, model.eps2) - rhat(x, d_prime, model.eps2);
            sum += diff;
            sum_sq += diff * diff;
        }
        const double mean = sum / reps;
        const double sd = std::sqrt((sum_sq - reps * mean * mean) / (reps - 1.0));
        CHECK(std::fabs(mean - analytic) < 5.0 * sd / std::sqrt(double(reps)));
    }
}

TEST_CASE("model selection picks the smallest minimizer") {
    const ModelSpec model(1.0, 2);
    CHECK(select_dimension({2.0, 1.0}, model) == 1);
    CHECK(estimate_model_selection({2.0, 1.0}, model) == CoefVector{2.0, 0.0});

    const ModelSpec model5(1.0, 5);
    CHECK(select_dimension(CoefVector(5, 0.0), model5) == 1);
    CHECK(estimate_model_selection(CoefVector(5, 0.0), model5) ==
          CoefVector(5, 0.0));

    // every increment decreases rhat when |x_i| > sqrt(2 eps2)
    CHECK(select_dimension(CoefVector(5, 2.0), model5) == 5);
}

TEST_CASE("model averaging weights") {
    const ModelSpec model(1.0, 2);
    const CoefVector x{2.0, 0.0};
    const auto log_w = model_averaging_log_weights(x, 0.5, model);
    // arithmetic oracle: rhat = (-2, 0), w_1 = e^{1/2} / (e^{1/2} + 1)
    const double w1 = std::exp(0.5) / (std::exp(0.5) + 1.0);
    CHECK(std::exp(log_w[0]) == doctest::Approx(w1).epsilon(1e-13));
    CHECK(std::exp(log_w[0]) + std::exp(log_w[1]) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // beta -> 0+ flattens the weights
    const ModelSpec model6(1.0, 6);
    const auto flat = model_averaging_log_weights(random_vector(6, 4), 1e-9, model6);
    for (double lw : flat)
        CHECK(std::exp(lw) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));

    CHECK(estimate_model_averaging(CoefVector(6, 0.0), 0.5, model6) ==
          CoefVector(6, 0.0));
    CHECK_THROWS_AS(estimate_model_averaging(x, 0.7, model),
                    std::invalid_argument);
    CHECK_THROWS_AS(model_averaging_log_weights(x, 0.0, model),
                    std::invalid_argument);
}

TEST_CASE("model averaging shrinks each coordinate") {
    const ModelSpec model(0.8, 15);
    const auto x = random_vector(15, 5);
    const auto out = estimate_model_averaging(x, 0.5, model);
    for (int i = 0; i < 15; ++i) CHECK(std::fabs(out[i]) <= std::fabs(x[i]) + 1e-15);
}

TEST_CASE("model selection is the concentration limit of model averaging") {
    const ModelSpec model(1.0, 8);
    CoefVector x{3.0, 2.5, 0.1, 0.2, 0.05, 0.1, 0.02, 0.1};
    const int d_hat = select_dimension(x, model);
    const auto log_w = model_averaging_log_weights(x, 200.0, model);
    CHECK(std::exp(log_w[d_hat - 1]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gaussian prior estimator") {
    const ModelSpec model(1.0, 4);
    const CoefVector x{1.0, 1.0, 1.0, 1.0};
    const auto out = estimate_gaussian_prior(x, 1.0, model);
    CHECK(out[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(1.0 / 9.0).epsilon(1e-13));

    // first-coordinate shrink equals the conjugate factor 1/(1+eps2) exactly
    for (double eps2 : {0.3, 1.0, 2.5}) {
        const ModelSpec m(eps2, 2);
        const auto e = estimate_gaussian_prior({1.0, 0.0}, 3.7, m);
        CHECK(e[0] == 1.0 / (1.0 + eps2));
        CHECK(zhao_sieve_coord1(1.0, eps2) == 1.0 / (1.0 + eps2));
    }
}

TEST_CASE("coordinate-one risk lower bound holds for the conjugate forms") {
    // closed-form risk of the first coordinate at theta = (B, 0, ...):
    // bias^2 + variance = B^2 eps^4/(1+eps2)^2 + eps2/(1+eps2)^2; normalized
    // by B^2 it dominates eps^4/(1+eps2)^2 for every B and eps.
    for (double eps2 : {0.25, 1.0, 4.0}) {
        for (double B : {0.5, 1.0, 3.0, 10.0}) {
            const double denom = (1.0 + eps2) * (1.0 + eps2);
            const double risk1 = B * B * eps2 * eps2 / denom + eps2 / denom;
            const double bound = eps2 * eps2 / denom;
            CHECK(risk1 / (B * B) >= bound);
        }
    }
}

TEST_CASE("block james-stein structure") {
    SUBCASE("weakly geometric blocks") {
        const auto ends = weakly_geometric_blocks(100, 0.01);
        REQUIRE(!ends.empty());
        CHECK(ends.back() == 100);
        for (std::size_t j = 1; j < ends.size(); ++j) CHECK(ends[j] > ends[j - 1]);
        // eps2 >= 1 collapses to a single block
        CHECK(weakly_geometric_blocks(5, 1.0) == std::vector<int>{5});
        CHECK(weakly_geometric_blocks(0, 0.5).empty());
    }

    SUBCASE("truncation at floor(1/eps2)") {
        const ModelSpec model(0.02, 80); // d_js = 50
        const auto x = random_vector(80, 6);
        const auto out = estimate_block_james_stein(x, model);
        for (int i = 50; i < 80; ++i) CHECK(out[i] == 0.0);
    }

    SUBCASE("small blocks vanish, huge blocks pass through") {
        const ModelSpec model(0.01, 100);
        CoefVector tiny(100, 1e-8);
        const auto zeroed = estimate_block_james_stein(tiny, model);
        // blocks of size <= 2 pass through; all larger blocks shrink to zero
        const auto ends = weakly_geometric_blocks(100, 0.01);
        int start = 1;
        for (int end : ends) {
            const int size = end - start + 1;
            for (int i = start; i <= end; ++i) {
                if (size <= 2)
                    CHECK(zeroed[i - 1] == tiny[i - 1]);
                else
                    CHECK(zeroed[i - 1] == 0.0);
            }
            start = end + 1;
        }

        CoefVector huge(100, 1e6);
        const auto passed = estimate_block_james_stein(huge, model);
        for (int i = 0; i < 100; ++i)
            CHECK(passed[i] == doctest::Approx(huge[i]).epsilon(1e-9));
    }

    SUBCASE("eps2 above one yields the zero estimator") {
        const ModelSpec model(1.5, 10);
        const auto out = estimate_block_james_stein(random_vector(10, 7), model);
        CHECK(out == CoefVector(10, 0.0));
    }
}

TEST_CASE("scale mixture estimator") {
    SUBCASE("singleton grid reduces to a fixed-scale conjugate rule") {
        ScaleMixtureSpec spec;
        spec.alpha = 1.0;
        spec.grid = {{1.0, 1.0}};
        const ModelSpec model(1.0, 6);
        const auto x = random_vector(6, 8);
        const auto mixture = estimate_scale_mixture(x, spec, model);
        const auto conjugate = estimate_gaussian_prior(x, 1.0, model);
        for (int i = 0; i < 6; ++i)
            CHECK(mixture[i] == doctest::Approx(conjugate[i]).epsilon(1e-14));
    }

    SUBCASE("zero maps to zero") {
        const ModelSpec model(1.0, 6);
        const auto out =
            estimate_scale_mixture(CoefVector(6, 0.0), default_scale_mixture(),
                                   model);
        CHECK(out == CoefVector(6, 0.0));
    }

    SUBCASE("two-point grid matches a direct high-precision evaluation") {
        ScaleMixtureSpec spec;
        spec.alpha = 2.0;
        spec.grid = {{0.5, 0.3}, {4.0, 0.7}};
        const ModelSpec model(1.0, 2);
        const CoefVector x{1.8, -0.6};

        // direct two-term mixture in long double
        long double weight[2], shrunk[2][2];
        for (int j = 0; j < 2; ++j) {
            const long double t = spec.grid[j].first;
            long double w = std::log(static_cast<long double>(spec.grid[j].second));
            for (int i = 1; i <= 2; ++i) {
                const long double v = t * std::pow(static_cast<long double>(i), -5.0L);
                w += -0.5L * std::log1p(v) +
                     static_cast<long double>(x[i - 1]) * x[i - 1] * v /
                         (2.0L * (v + 1.0L));
                shrunk[j][i - 1] = v / (v + 1.0L) * x[i - 1];
            }
            weight[j] = w;
        }
        const long double lse =
            std::log(std::exp(weight[0]) + std::exp(weight[1]));
        CoefVector expected(2, 0.0);
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                expected[i] += static_cast<double>(
                    std::exp(weight[j] - lse) * shrunk[j][i]);

        const auto out = estimate_scale_mixture(x, spec, model);
        for (int i = 0; i < 2; ++i)
            CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("identity-style estimators") {
    const auto x = random_vector(9, 9);
    CHECK(estimate_mle(x) == x);
    CHECK(estimate_truncation(x, 9) == x);
    const auto t3 = estimate_truncation(x, 3);
    for (int i = 0; i < 3; ++i) CHECK(t3[i] == x[i]);
    for (int i = 3; i < 9; ++i) CHECK(t3[i] == 0.0);
    CHECK_THROWS_AS(estimate_truncation(x, 0), std::invalid_argument);

    const ModelSpec model(1.0, 9);
    HyperParams hp;
    hp.k_max = 4;
    const auto zero = estimate_proposed(CoefVector(9, 0.0), hp, model);
    CHECK(zero == CoefVector(9, 0.0));
}

TEST_CASE("every catalog member is coordinate-wise odd") {
    const ModelSpec model(0.9, 10);
    HyperParams hp;
    hp.k_max = 4;
    std::vector<EstimatorSpec> specs;
    specs.push_back({est::Proposed{}, hp});
    specs.push_back({est::ModelSelection{}, hp});
    specs.push_back({est::ModelAveraging{0.5}, hp});
    specs.push_back({est::BlockJamesStein{}, hp});
    specs.push_back({est::GaussianPrior{1.0}, hp});
    specs.push_back({est::ScaleMixture{default_scale_mixture()}, hp});
    specs.push_back({est::Mle{}, hp});
    specs.push_back({est::Truncation{4}, hp});

    const auto x = random_vector(10, 10);
    CoefVector neg = x;
    for (double& v : neg) v = -v;
    for (const auto& spec : specs) {
        const auto plus = apply_estimator(spec, x, model);
        const auto minus = apply_estimator(spec, neg, model);
        for (int i = 0; i < 10; ++i) CHECK(minus[i] == -plus[i]);
    }
}

TEST_CASE("estimator names and validation") {
    HyperParams hp;
    CHECK(EstimatorSpec{est::Proposed{}, hp}.name() == "proposed");
    CHECK(EstimatorSpec{est::ModelAveraging{0.5}, hp}.name() ==
          "model_averaging(0.5)");
    CHECK(EstimatorSpec{est::Truncation{7}, hp}.name() == "truncation(7)");

    const ModelSpec model(1.0, 5);
    CHECK_THROWS_AS(
        (EstimatorSpec{est::ModelAveraging{0.7}, hp}).validate(model),
        std::invalid_argument);
    CHECK_THROWS_AS((EstimatorSpec{est::Truncation{6}, hp}).validate(model),
                    std::invalid_argument);
}

} // TEST_SUITE
