"""Mazur-Tate elements, Iwasawa invariants and Kida's formula for elliptic curves."""

from ._mtk import (
    Curve,
    EigenSymbol,
    MtkError,
    __version__,
    check_interpolation,
    curve_labels,
    gauss_sum,
    invariants,
    kida,
    lvalue,
    signed_growth,
    tame_compat,
    theta,
    tower,
    transition,
)

__all__ = [
    "Curve",
    "EigenSymbol",
    "MtkError",
    "__version__",
    "check_interpolation",
    "curve_labels",
    "gauss_sum",
    "invariants",
    "kida",
    "lvalue",
    "signed_growth",
    "tame_compat",
    "theta",
    "tower",
    "transition",
]
