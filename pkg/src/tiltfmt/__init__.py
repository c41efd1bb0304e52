"""Exact numerical calculus of tilt stability and Fourier-Mukai transforms on abelian varieties."""

from .numeric import Fraction, RealQuad, Scalar, parse_scalar, render, root_of_unity, scalar_pow, scalar_sign
from .chern import INF, ChernVector, Geometry, disc, exp_class, integral, mu, mukai_pairing, point_class, rebase, twist
from .stability import (
    ComplexAmple,
    TiltPoint,
    Wall,
    bg_defect,
    central_charge,
    classical_bg,
    nu,
    nu_slope_match,
    wall_between,
    weak_charge,
)
from .fmt import (
    FmtContext,
    bg_via_fmt_chain,
    fmt_dual_transform,
    fmt_inverse,
    fmt_transform,
    induced_polarization,
    make_context,
    shift,
    solve_equivalence_params,
    verify_zeta_identity,
    zeta,
)

__version__ = "0.1.0"
