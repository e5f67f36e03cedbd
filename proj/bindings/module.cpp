#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqadapt/cli.hpp"
#include "seqadapt/regression.hpp"

namespace py = pybind11;
using namespace seqadapt;

namespace {

HyperParams make_hp(double eta, double gamma, int k_max, int d_max) {
    HyperParams hp;
    hp.eta = eta;
    hp.gamma = gamma;
    hp.k_max = k_max;
    hp.d_max = d_max;
    return hp;
}

EstimatorSpec estimator_from_name(const std::string& name, const HyperParams& hp,
                                  double beta, double alpha, int d) {
    EstimatorSpec spec;
    spec.hp = hp;
    if (name == "proposed")
        spec.kind = est::Proposed{};
    else if (name == "model_selection")
        spec.kind = est::ModelSelection{};
    else if (name == "model_averaging")
        spec.kind = est::ModelAveraging{beta};
    else if (name == "block_james_stein")
        spec.kind = est::BlockJamesStein{};
    else if (name == "gaussian_prior")
        spec.kind = est::GaussianPrior{alpha};
    else if (name == "scale_mixture")
        spec.kind = est::ScaleMixture{default_scale_mixture(alpha)};
    else if (name == "mle")
        spec.kind = est::Mle{};
    else if (name == "truncation")
        spec.kind = est::Truncation{d};
    else
        throw std::invalid_argument("unknown estimator '" + name + "'");
    return spec;
}

} // namespace

PYBIND11_MODULE(_seqadapt, m) {
    m.doc() = "Adaptive Bayesian estimation in the Gaussian sequence model";

    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init<double, int>(), py::arg("eps2"), py::arg("p"))
        .def_readonly("eps2", &ModelSpec::eps2)
        .def_readonly("p", &ModelSpec::p);

    py::class_<EllipsoidSpec>(m, "EllipsoidSpec")
        .def(py::init<double, double>(), py::arg("alpha0"), py::arg("B"))
        .def_readonly("alpha0", &EllipsoidSpec::alpha0)
        .def_readonly("B", &EllipsoidSpec::B);

    py::class_<HyperParams>(m, "HyperParams")
        .def(py::init(&make_hp), py::arg("eta") = 2.0, py::arg("gamma") = 2.0,
             py::arg("k_max") = 50, py::arg("d_max") = 0)
        .def_readwrite("eta", &HyperParams::eta)
        .def_readwrite("gamma", &HyperParams::gamma)
        .def_readwrite("k_max", &HyperParams::k_max)
        .def_readwrite("d_max", &HyperParams::d_max);

    py::class_<PosteriorSummary>(m, "PosteriorSummary")
        .def_readonly("log_F_post", &PosteriorSummary::log_F_post)
        .def_readonly("log_M_post", &PosteriorSummary::log_M_post)
        .def_readonly("effective_shrink", &PosteriorSummary::effective_shrink)
        .def_readonly("mean", &PosteriorSummary::mean)
        .def_readonly("tail_mass_bound", &PosteriorSummary::tail_mass_bound);

    m.def("trig_basis_eval", &trig_basis_eval, py::arg("i"), py::arg("t"));
    m.def("sobolev_norm_sq", &sobolev_norm_sq, py::arg("theta"), py::arg("alpha0"));
    m.def("in_ellipsoid", &in_ellipsoid, py::arg("theta"), py::arg("spec"));
    m.def(
        "simulate_observation",
        [](const CoefVector& theta, const ModelSpec& model, std::uint64_t seed,
           std::uint64_t stream_id) {
            return simulate_observation(theta, model, RngSpec{seed, stream_id});
        },
        py::arg("theta"), py::arg("model"), py::arg("seed") = 0,
        py::arg("stream_id") = 0);

    m.def("shrinkage", &shrinkage, py::arg("i"), py::arg("d"), py::arg("k"));
    m.def("log_M_posterior", &log_M_posterior, py::arg("x"), py::arg("k"),
          py::arg("hp"), py::arg("model"));
    m.def("log_F_posterior", &log_F_posterior, py::arg("x"), py::arg("hp"),
          py::arg("model"));
    m.def("posterior_mean", &posterior_mean, py::arg("x"), py::arg("hp"),
          py::arg("model"));
    m.def("compute_posterior", &compute_posterior, py::arg("x"), py::arg("hp"),
          py::arg("model"));
    m.def(
        "sample_posterior",
        [](const CoefVector& x, int n, const HyperParams& hp,
           const ModelSpec& model, std::uint64_t seed, std::uint64_t stream_id) {
            return sample_posterior(x, n, hp, model, RngSpec{seed, stream_id});
        },
        py::arg("x"), py::arg("n"), py::arg("hp"), py::arg("model"),
        py::arg("seed") = 0, py::arg("stream_id") = 0);
    m.def(
        "posterior_tail_probability",
        [](const CoefVector& theta0, const EllipsoidSpec& spec, double C,
           const ModelSpec& model, const HyperParams& hp, int reps,
           std::uint64_t seed, int inner_samples) {
            return posterior_tail_probability(theta0, spec, C, model, hp, reps,
                                              RngSpec{seed, 0}, inner_samples);
        },
        py::arg("theta0"), py::arg("spec"), py::arg("C"), py::arg("model"),
        py::arg("hp"), py::arg("reps"), py::arg("seed") = 0,
        py::arg("inner_samples") = 128);

    m.def("rhat", &rhat, py::arg("x"), py::arg("d"), py::arg("eps2"));
    m.def(
        "estimate",
        [](const std::string& name, const CoefVector& x, const ModelSpec& model,
           const HyperParams& hp, double beta, double alpha, int d) {
            return apply_estimator(estimator_from_name(name, hp, beta, alpha, d),
                                   x, model);
        },
        py::arg("name"), py::arg("x"), py::arg("model"),
        py::arg("hp") = HyperParams{}, py::arg("beta") = 0.5,
        py::arg("alpha") = 1.0, py::arg("d") = 1,
        "Apply an estimator by name: proposed, model_selection, "
        "model_averaging, block_james_stein, gaussian_prior, scale_mixture, "
        "mle, truncation.");

    m.def("theta_family", &theta_family, py::arg("tag"), py::arg("B"),
          py::arg("p"));
    m.def("pinsker_constant", &pinsker_constant, py::arg("alpha0"));
    m.def("minimax_reference", &minimax_reference, py::arg("alpha0"),
          py::arg("B"), py::arg("eps"));
    m.def(
        "evaluate_risk",
        [](const std::string& name, const CoefVector& theta,
           const ModelSpec& model, double b2, int reps, std::uint64_t seed,
           const HyperParams& hp, double beta, double alpha, int d, int workers) {
            const RiskStats stats =
                evaluate_risk(estimator_from_name(name, hp, beta, alpha, d),
                              theta, model, b2, reps, RngSpec{seed, 0}, workers);
            return py::make_tuple(stats.mean, stats.std);
        },
        py::arg("name"), py::arg("theta"), py::arg("model"), py::arg("b2"),
        py::arg("reps"), py::arg("seed") = 0, py::arg("hp") = HyperParams{},
        py::arg("beta") = 0.5, py::arg("alpha") = 1.0, py::arg("d") = 1,
        py::arg("workers") = 0);
    m.def(
        "small_ball_mc",
        [](double alpha, int d, const std::vector<double>& v, long long reps,
           std::uint64_t seed) {
            const SmallBallEstimate est =
                small_ball_mc(alpha, d, v, reps, RngSpec{seed, 0});
            py::dict out;
            out["p_hat"] = est.p_hat;
            out["hits"] = est.hits;
            out["reps"] = est.reps;
            out["upper_bound_only"] = est.upper_bound_only;
            out["upper_bound"] = est.upper_bound;
            return out;
        },
        py::arg("alpha"), py::arg("d"), py::arg("v") = std::vector<double>{},
        py::arg("reps") = 100000, py::arg("seed") = 0);

    m.def(
        "design_transform",
        [](const std::vector<double>& y, int p) {
            const RegressionSample sample{y, p};
            auto [x, eps2] = design_transform(sample);
            return py::make_tuple(x, eps2);
        },
        py::arg("y"), py::arg("p"));
    m.def(
        "estimate_regression",
        [](const std::vector<double>& y, int p, const HyperParams& hp) {
            return estimate_regression(RegressionSample{y, p}, hp).coefs;
        },
        py::arg("y"), py::arg("p"), py::arg("hp") = HyperParams{});
    m.def(
        "reconstruct",
        [](const CoefVector& coefs, const std::vector<double>& grid) {
            return reconstruct(FunctionEstimate{coefs}, grid);
        },
        py::arg("coefs"), py::arg("grid"));
    m.def("tau_bound", &tau_bound, py::arg("p"), py::arg("spec"));

    m.def("run_cli", &run_cli, py::arg("argv"),
          "Run the batch front-end; returns the exit status.");
}
