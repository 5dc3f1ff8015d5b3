"""Exact computations with Drinfeld-Jimbo quantum groups and their Galois objects.

The engine works over the rationals: the deformation parameter ``q`` and the
family ``lambda`` are specialized to exact fractions, and every identity is
checked on the nose.
"""

from .coeffs import (
    DegenerateParameter,
    ParameterError,
    ParamSet,
    RootOfUnityViolation,
    ZeroParameter,
    make_params,
    q_binomial,
    q_factorial,
    q_int,
)
from .cartan import CartanDatum, UnsupportedRank, preset, validate
from .algebra import (
    AlgebraSpec,
    Element,
    NormalWord,
    make_algebra,
    multiply,
    normal_form,
    phi_lambda,
    psi,
    serre_element,
    to_plain,
    twisted_basis_change_scalar,
)
from .hopf import Tensor, antipode, coact, comultiply, counit, covariants
from .cocycle import (
    OutsideDomain,
    convolution_inverse,
    convolve,
    rho,
    rho_inverse,
    sigma_lambda_eval,
    sigma_rho,
    sigma_tilde,
    twisted_product_oracle,
)
from .galois import CapTooSmall, HomotopyInvariant, cotensor_truncated, homotopy_invariant, lemma1_mu_check, restrict_i_star
from .expr import IndexOutOfRank, ParseError, UnknownGenerator, parse, parse_element, print_canonical

__all__ = [
    "AlgebraSpec",
    "antipode",
    "CapTooSmall",
    "CartanDatum",
    "coact",
    "comultiply",
    "convolution_inverse",
    "convolve",
    "cotensor_truncated",
    "counit",
    "covariants",
    "DegenerateParameter",
    "Element",
    "homotopy_invariant",
    "HomotopyInvariant",
    "IndexOutOfRank",
    "lemma1_mu_check",
    "make_algebra",
    "make_params",
    "multiply",
    "normal_form",
    "NormalWord",
    "OutsideDomain",
    "ParameterError",
    "ParamSet",
    "parse",
    "parse_element",
    "ParseError",
    "phi_lambda",
    "preset",
    "print_canonical",
    "psi",
    "q_binomial",
    "q_factorial",
    "q_int",
    "restrict_i_star",
    "rho",
    "rho_inverse",
    "RootOfUnityViolation",
    "serre_element",
    "sigma_lambda_eval",
    "sigma_rho",
    "sigma_tilde",
    "Tensor",
    "to_plain",
    "twisted_basis_change_scalar",
    "twisted_product_oracle",
    "UnknownGenerator",
    "UnsupportedRank",
    "validate",
    "ZeroParameter",
]
