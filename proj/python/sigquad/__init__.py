"""Moment-based compression of measures into signed quadrature rules."""

from ._core import (
    BoxDomain,
    ChebBasis,
    IndicatorDomain,
    MomentVector,
    PointCloud,
    QuadRule,
    SignedRule,
    SplineElement,
    ball,
    cauchy_schwarz_bound,
    christoffel_bound,
    compress,
    compress_element,
    compress_qmc,
    csg_from_json,
    density_bound,
    element_from_json,
    gauss_chebyshev_box,
    gauss_legendre,
    greens_moments,
    halton,
    load_csg,
    load_element,
    load_rule,
    qmc_measure,
    qmc_moments,
    save_rule,
    stability_parameter,
    verify_rule_exactness,
)

__version__ = "0.1.0"

__all__ = [
    "BoxDomain",
    "ChebBasis",
    "IndicatorDomain",
    "MomentVector",
    "PointCloud",
    "QuadRule",
    "SignedRule",
    "SplineElement",
    "ball",
    "cauchy_schwarz_bound",
    "christoffel_bound",
    "compress",
    "compress_element",
    "compress_qmc",
    "csg_from_json",
    "density_bound",
    "element_from_json",
    "gauss_chebyshev_box",
    "gauss_legendre",
    "greens_moments",
    "halton",
    "load_csg",
    "load_element",
    "load_rule",
    "qmc_measure",
    "qmc_moments",
    "save_rule",
    "stability_parameter",
    "verify_rule_exactness",
]
