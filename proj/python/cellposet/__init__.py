"""h-vectors of simplicial cell balls: checker, realizer, certifier."""

from ._core import __version__
from ._core import (
    boundary_h,
    check_ball,
    check_sphere,
    info,
    init_number,
    realize,
    sweep,
    verify,
    width,
    width_formula,
)

__all__ = [
    "__version__",
    "boundary_h",
    "check_ball",
    "check_sphere",
    "info",
    "init_number",
    "realize",
    "sweep",
    "verify",
    "width",
    "width_formula",
]
