"""Differential forms, integration over chains and Cech cohomology."""

from ._core import (
    DimensionError,
    DomainError,
    Error,
    Form,
    InputError,
    ParseError,
    cech_cohomology,
    d,
    evaluate,
    gauss_bonnet,
    integrate,
    is_closed,
    linking_number,
    mv_solve,
    parse_form,
    primitive,
    pullback,
    sphere_betti,
    stokes,
    wedge,
    winding_number,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "Error",
    "Form",
    "InputError",
    "ParseError",
    "cech_cohomology",
    "d",
    "evaluate",
    "gauss_bonnet",
    "integrate",
    "is_closed",
    "linking_number",
    "mv_solve",
    "parse_form",
    "primitive",
    "pullback",
    "sphere_betti",
    "stokes",
    "wedge",
    "winding_number",
]
