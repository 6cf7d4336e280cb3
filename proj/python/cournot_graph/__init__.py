"""Cournot supply-graph dynamics, stability analysis and spatial prisoner's dilemma."""

from ._core import (
    AffineSystem,
    InvalidArgument,
    NetworkSpec,
    NumericalError,
    analyze,
    canonical_affine,
    char_poly,
    closed_form_coeffs,
    dominant_strategy,
    eigen_margin,
    equilibrium,
    marginal_profit,
    min_side_payment,
    profit,
    render_scenario,
    routh_hurwitz_cubic,
    run_spatial,
    scenario_stability_report,
    simulate,
    symmetric_equilibrium,
    to_affine,
    two_firms_two_markets,
    validate,
    vector_field,
)

__all__ = [
    "AffineSystem",
    "InvalidArgument",
    "NetworkSpec",
    "NumericalError",
    "analyze",
    "canonical_affine",
    "char_poly",
    "closed_form_coeffs",
    "dominant_strategy",
    "eigen_margin",
    "equilibrium",
    "marginal_profit",
    "min_side_payment",
    "profit",
    "render_scenario",
    "routh_hurwitz_cubic",
    "run_spatial",
    "scenario_stability_report",
    "simulate",
    "symmetric_equilibrium",
    "to_affine",
    "two_firms_two_markets",
    "validate",
    "vector_field",
]
