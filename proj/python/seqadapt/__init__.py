"""Adaptive Bayesian estimation in the Gaussian sequence model.

Thin wrapper around the compiled core. The main entry points are
``posterior_mean``, ``sample_posterior``, ``estimate`` (estimators by
name), ``evaluate_risk``, ``theta_family``, and the regression reduction
``design_transform`` / ``estimate_regression`` / ``reconstruct``.
"""

from seqadapt._seqadapt import (  # noqa: F401
    EllipsoidSpec,
    HyperParams,
    ModelSpec,
    PosteriorSummary,
    compute_posterior,
    design_transform,
    estimate,
    estimate_regression,
    evaluate_risk,
    in_ellipsoid,
    log_F_posterior,
    log_M_posterior,
    minimax_reference,
    pinsker_constant,
    posterior_mean,
    posterior_tail_probability,
    reconstruct,
    rhat,
    run_cli,
    sample_posterior,
    shrinkage,
    simulate_observation,
    small_ball_mc,
    sobolev_norm_sq,
    tau_bound,
    theta_family,
    trig_basis_eval,
)

__all__ = [
    "EllipsoidSpec",
    "HyperParams",
    "ModelSpec",
    "PosteriorSummary",
    "compute_posterior",
    "design_transform",
    "estimate",
    "estimate_regression",
    "evaluate_risk",
    "in_ellipsoid",
    "log_F_posterior",
    "log_M_posterior",
    "minimax_reference",
    "pinsker_constant",
    "posterior_mean",
    "posterior_tail_probability",
    "reconstruct",
    "rhat",
    "run_cli",
    "sample_posterior",
    "shrinkage",
    "simulate_observation",
    "small_ball_mc",
    "sobolev_norm_sq",
    "tau_bound",
    "theta_family",
    "trig_basis_eval",
]
