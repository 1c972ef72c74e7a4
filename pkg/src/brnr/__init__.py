"""Exact engine for Bogomolov-multiplier-type groups and unramified Brauer
bounds of SL_n quotients by a finite group."""

from .errors import (
    BrnrError,
    CoefficientMismatch,
    CycFailed,
    InvalidPermutation,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotPerfect,
    OrderCapExceeded,
    PNotOddPrime,
    TheoremViolation,
    UnknownPreset,
)
from .zlattice import (
    AbelianGroup,
    AbelianHom,
    IntMatrix,
    direct_sum,
    hom_cokernel,
    hom_image,
    hom_kernel,
    quotient_mod_n,
    smith_normal_form,
)

__all__ = [
    "AbelianGroup",
    "AbelianHom",
    "IntMatrix",
    "BrnrError",
    "CoefficientMismatch",
    "CycFailed",
    "InvalidPermutation",
    "NoIdentity",
    "NoInverse",
    "NotAHomomorphism",
    "NotAssociative",
    "NotPerfect",
    "OrderCapExceeded",
    "PNotOddPrime",
    "TheoremViolation",
    "UnknownPreset",
    "direct_sum",
    "hom_cokernel",
    "hom_image",
    "hom_kernel",
    "quotient_mod_n",
    "smith_normal_form",
]

__version__ = "0.1.0"
