"""Cohomological Fourier-Mukai calculus between derived equivalent abelian varieties.

The kernel ``E`` on ``X x Y`` has fibres with ``ch = r exp(D_Y)`` over points of
``X`` and ``ch = r exp(D_X)`` over points of ``Y``.  Twisted by ``-D_X`` on the
source and ``D_Y`` on the target, the induced map on contracted vectors is the
anti-diagonal matrix ``g!/(r l_X^g) * Adiag(1, -1, ..., (-1)^g)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .chern import ChernVector, Geometry, exp_class, mu, rebase, twist
from .numeric import (
    I,
    InexactRootError,
    Scalar,
    as_fraction,
    as_scalar,
    render,
    root_of_unity,
    scalar_pow,
    scalar_sign,
)
from .stability import ComplexAmple, TiltPoint, bg_defect, central_charge

__all__ = [
    "FmtContext",
    "WrongBase",
    "make_context",
    "antidiagonal",
    "fmt_transform",
    "fmt_dual_transform",
    "fmt_hat",
    "fmt_inverse",
    "dualize",
    "shift",
    "zeta",
    "ZetaCheck",
    "verify_zeta_identity",
    "verify_zeta_identity_float",
    "EquivalenceParams",
    "solve_equivalence_params",
    "induced_polarization",
    "poincare_basis_images",
    "ChainReport",
    "bg_via_fmt_chain",
    "im_charge_x",
    "im_charge_y",
]

FLOAT_TOL = 1e-12


class WrongBase(ValueError):
    pass


@dataclass(frozen=True)
class FmtContext:
    g: int
    r: Fraction
    dX: Fraction
    dY: Fraction
    degX: Fraction
    degY: Fraction

    def __post_init__(self):
        for name in ("r", "dX", "dY", "degX", "degY"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not isinstance(self.g, int) or self.g < 1:
            raise ValueError("g must be a positive integer")
        if self.r <= 0 or self.degX <= 0 or self.degY <= 0:
            raise ValueError("r, degX and degY must be positive")
        f = factorial(self.g)
        if (self.degX / f) * (self.degY / f) != 1 / (self.r * self.r):
            raise ValueError(
                "invariant (degX/g!)(degY/g!) = 1/r^2 violated: "
                f"g={self.g} r={self.r} degX={self.degX} degY={self.degY}"
            )

    @property
    def geomX(self) -> Geometry:
        return Geometry(self.g, self.degX)

    @property
    def geomY(self) -> Geometry:
        return Geometry(self.g, self.degY)

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "r": str(self.r),
            "dX": str(self.dX),
            "dY": str(self.dY),
            "degX": str(self.degX),
        }


def make_context(g: int, r, dX, dY, degX) -> FmtContext:
    """Build a context; ``degY = (g!)^2 / (r^2 degX)`` is forced."""
    r, degX = as_fraction(r), as_fraction(degX)
    if r <= 0 or degX <= 0:
        raise ValueError("r and degX must be positive")
    degY = Fraction(factorial(g) ** 2) / (r * r * degX)
    return FmtContext(g, r, as_fraction(dX), as_fraction(dY), degX, degY)


def antidiagonal(v, factor) -> tuple:
    """``factor * Adiag(1, -1, ..., (-1)^g) v``: entry ``i`` is ``(-1)^i v[g-i]``."""
    g = len(v) - 1
    factor = as_scalar(factor)
    return tuple(factor * v[g - i] if i % 2 == 0 else -(factor * v[g - i]) for i in range(g + 1))


def _expect(x: ChernVector, geom: Geometry, base, what: str):
    if x.geom != geom:
        raise WrongBase(f"vector geometry {x.geom} does not match {what} geometry {geom}")
    if x.base != as_scalar(base):
        raise WrongBase(
            f"vector not expressed at base {render(as_scalar(base))} "
            f"(got base {render(x.base)}); rebase with twist first"
        )


def fmt_transform(ctx: FmtContext, x: ChernVector) -> ChernVector:
    """``v^{D_Y}(Phi E)`` from ``v^{-D_X}(E)``."""
    _expect(x, ctx.geomX, -ctx.dX, "source (base -D_X)")
    c = Fraction(factorial(ctx.g)) / (ctx.r * ctx.degX)
    return ChernVector(ctx.geomY, Scalar(ctx.dY), antidiagonal(x.v, c))


def fmt_dual_transform(ctx: FmtContext, x: ChernVector) -> ChernVector:
    """Kernel ``E^dual`` from X to Y: ``v^{-D_Y}`` from ``v^{D_X}``."""
    _expect(x, ctx.geomX, ctx.dX, "source (base +D_X)")
    c = Fraction(factorial(ctx.g)) / (ctx.r * ctx.degX)
    return ChernVector(ctx.geomY, Scalar(-ctx.dY), antidiagonal(x.v, c))


def fmt_hat(ctx: FmtContext, y: ChernVector) -> ChernVector:
    """Kernel ``E^dual`` from Y to X: ``v^{-D_X}`` from ``v^{D_Y}``, unshifted."""
    _expect(y, ctx.geomY, ctx.dY, "target (base +D_Y)")
    c = Fraction(factorial(ctx.g)) / (ctx.r * ctx.degY)
    return ChernVector(ctx.geomX, Scalar(-ctx.dX), antidiagonal(y.v, c))


def shift(x: ChernVector, n: int) -> ChernVector:
    return x if n % 2 == 0 else -x


def fmt_inverse(ctx: FmtContext, y: ChernVector) -> ChernVector:
    """Quasi-inverse ``Phi_{E^dual}^{Y->X}[g]`` on vectors."""
    return shift(fmt_hat(ctx, y), ctx.g)


def dualize(x: ChernVector) -> ChernVector:
    """Derived dual: ``v^{-b}(E^dual)_i = (-1)^i v^{b}(E)_i``."""
    return ChernVector(x.geom, -x.base, tuple(c if i % 2 == 0 else -c for i, c in enumerate(x.v)))


# --- action on central charges ---------------------------------------------


def zeta(ctx: FmtContext, u) -> Scalar:
    """``r l_X^g u^g / g!``."""
    u = as_scalar(u)
    if u.is_zero():
        raise ValueError("u must be nonzero")
    return ctx.r * ctx.degX * scalar_pow(u, ctx.g) / factorial(ctx.g)


@dataclass(frozen=True)
class ZetaCheck:
    ok: bool
    lhs: object
    rhs: object
    residual: object

    def __bool__(self):
        return self.ok


def verify_zeta_identity(ctx: FmtContext, u, x: ChernVector, transform=fmt_transform) -> ZetaCheck:
    """Compare ``Z_{-D_X + u l_X}(x)`` with ``zeta * Z_{D_Y - l_Y/u}(Phi x)``.

    ``transform`` is injectable so a corrupted matrix can serve as a negative
    control.
    """
    u = as_scalar(u)
    lhs = central_charge(x, ComplexAmple(Scalar(-ctx.dX) + u))
    y = transform(ctx, x)
    rhs = zeta(ctx, u) * central_charge(y, ComplexAmple(Scalar(ctx.dY) - u.inverse()))
    res = lhs - rhs
    return ZetaCheck(res.is_zero(), lhs, rhs, res)


def _float_charge(v, base: float, omega: complex, g: int) -> complex:
    # -int exp(-(omega - base) l) ch^base, with v contracted
    t = omega - base
    top = sum(
        factorial(g) // (factorial(j) * factorial(g - j)) * (-t) ** (g - j) * complex(v[j])
        for j in range(g + 1)
    )
    return -top / factorial(g)


def verify_zeta_identity_float(ctx: FmtContext, u: complex, x: ChernVector) -> ZetaCheck:
    """Double-precision version for ``u`` outside Q(sqrt3, i)."""
    u = complex(u)
    if u.imag <= 0:
        raise ValueError("Im(u) must be positive")
    g = ctx.g
    xv = [complex(c) for c in x.v]
    lhs = _float_charge(xv, -float(ctx.dX), -float(ctx.dX) + u, g)
    y = fmt_transform(ctx, x)
    z = float(ctx.r) * float(ctx.degX) * u**g / factorial(g)
    rhs = z * _float_charge([complex(c) for c in y.v], float(ctx.dY), float(ctx.dY) - 1 / u, g)
    res = abs(lhs - rhs)
    scale = max(1.0, abs(lhs), abs(rhs))
    return ZetaCheck(res <= FLOAT_TOL * scale, lhs, rhs, res)


@dataclass(frozen=True)
class EquivalenceParams:
    k: int
    lam: Fraction
    omega_x: object
    omega_y: object
    zeta: object
    exact: bool = True

    @property
    def zeta_shifted(self):
        """``zeta`` for ``Phi[k]``: always positive."""
        return self.zeta if self.k % 2 == 0 else -self.zeta

    def tilt_x(self) -> tuple:
        """``(B, alpha)`` on X when ``omega_x = B + i sqrt3 alpha``."""
        return _tilt_pair(self.omega_x)

    def tilt_y(self) -> tuple:
        return _tilt_pair(self.omega_y)


def _tilt_pair(w: Scalar):
    if w.re.b != 0 or w.im.a != 0:
        raise ValueError("class is not of the form b + i*sqrt3*alpha with rational b, alpha")
    return w.re.a, w.im.b


def solve_equivalence_params(ctx: FmtContext, k: int, lam, float_mode: bool = False) -> EquivalenceParams:
    """``Omega = -D_X + lam e^{ik pi/g} l_X`` and ``Omega' = D_Y - (1/lam) e^{-ik pi/g} l_Y``."""
    g = ctx.g
    if not 1 <= k <= g - 1:
        raise ValueError(f"k={k} out of range 1..{g - 1}")
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    try:
        root = root_of_unity(g, k)
    except InexactRootError:
        if not float_mode:
            raise
        return _solve_float(ctx, k, lam)
    u = lam * root
    omega_x = ComplexAmple(Scalar(-ctx.dX) + u).omega
    omega_y = ComplexAmple(Scalar(ctx.dY) - root.conjugate() / lam).omega
    z = zeta(ctx, u)
    expected = ctx.r * ctx.degX * lam**g * (-1) ** k / factorial(g)
    assert z.is_real() and z == expected, "zeta is not real"
    return EquivalenceParams(k, lam, omega_x, omega_y, z)


def _solve_float(ctx: FmtContext, k: int, lam: Fraction) -> EquivalenceParams:
    g = ctx.g
    root = cmath.exp(1j * k * cmath.pi / g)
    u = float(lam) * root
    omega_x = -float(ctx.dX) + u
    omega_y = float(ctx.dY) - root.conjugate() / float(lam)
    z = float(ctx.r) * float(ctx.degX) * u**g / factorial(g)
    if abs(z.imag) > FLOAT_TOL * max(1.0, abs(z)):
        raise ArithmeticError(f"zeta not real within tolerance: {z}")
    return EquivalenceParams(k, lam, omega_x, omega_y, z.real, exact=False)


# --- polarization ------------------------------------------------------------


def induced_polarization(ctx: FmtContext, a) -> tuple:
    """Image of ``exp(a l_X)`` (at base ``-D_X``): returns ``(rank, slope)``.

    The image is ``rank * exp(-l_Y / a)`` so the slope is ``-1/a``; a negative
    slope certifies that the determinant's inverse is ample.
    """
    a = as_fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    e = exp_class(ctx.geomX, 1, a)
    x = ChernVector(ctx.geomX, Scalar(-ctx.dX), e.v)
    out = fmt_transform(ctx, x)
    rank = out.v[0] / ctx.degY
    return rank.re.a, mu(out).re.a


def poincare_basis_images(ctx: FmtContext) -> list:
    """Images of the basis classes ``l_X^i / i!``.

    Returns ``(i, coefficient)`` where the image is ``coefficient * l_Y^(g-i)``.
    """
    g = ctx.g
    rows = []
    for i in range(g + 1):
        v = [Scalar()] * (g + 1)
        v[i] = Scalar(ctx.degX)  # v_i = i! * deg * (1/i!)
        out = fmt_transform(ctx, ChernVector(ctx.geomX, Scalar(-ctx.dX), tuple(v)))
        j = g - i
        coeff = out.v[j] / (factorial(j) * ctx.degY)
        for m, c in enumerate(out.v):
            if m != j:
                assert c.is_zero()
        rows.append((i, coeff.re.a))
    return rows


# --- imaginary parts and the BG proof chain ------------------------------------


def im_charge_x(ctx: FmtContext, x: ChernVector, lam) -> Scalar:
    """``Im Z`` on X at ``B = -D_X + lam/2 l_X``, ``alpha = lam/2``."""
    lam = as_fraction(lam)
    p = TiltPoint.at(-ctx.dX + lam / 2, lam / 2)
    return Scalar(central_charge(x, p.omega()).im)


def im_charge_y(ctx: FmtContext, y: ChernVector, lam) -> Scalar:
    """``Im Z`` on Y at ``B' = D_Y - l_Y/(2 lam)``, ``alpha' = 1/(2 lam)``."""
    lam = as_fraction(lam)
    p = TiltPoint.at(ctx.dY - 1 / (2 * lam), 1 / (2 * lam))
    return Scalar(central_charge(y, p.omega()).im)


@dataclass(frozen=True)
class ChainReport:
    imzero: bool
    s: Scalar
    defect: Scalar
    predicted_s: Scalar
    tilt_defect: Scalar
    proportional: bool | None
    notes: tuple = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        """``s >= 0`` iff the BG type inequality holds, when applicable."""
        if not self.imzero:
            return True
        return self.proportional and (scalar_sign(self.s.re) >= 0) == (scalar_sign(self.defect.re) <= 0)


def bg_via_fmt_chain(ctx: FmtContext, x: ChernVector, lam) -> ChainReport:
    """Replay the numerical steps of the BG argument through ``Phi[1]``.

    ``x`` is ``v^{-D_X}(E)``.  ``s`` is ``v_1`` of ``Phi[1](E)`` at twist
    ``B' - alpha' l_Y = D_Y - l_Y/lam``; ``defect`` is ``x3 - lam^2 x1``.
    """
    if ctx.g != 3:
        raise ValueError("the BG chain is for threefolds (g = 3)")
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    _expect(x, ctx.geomX, -ctx.dX, "source (base -D_X)")
    x1, x2, x3 = x.v[1], x.v[2], x.v[3]
    imzero = x2 == lam * x1
    w = shift(fmt_transform(ctx, x), 1)
    s = twist(w, -1 / lam).v[1]
    defect = x3 - lam * lam * x1
    predicted = Fraction(factorial(3)) / (ctx.r * ctx.degX * lam) * (lam * lam * x1 - x3)
    tilt_defect = bg_defect(x, TiltPoint.at(-ctx.dX + lam / 2, lam / 2))
    notes = ()
    if imzero:
        proportional = s == predicted
    else:
        proportional = None
        notes = ("precondition Im Z != 0",)
    return ChainReport(imzero, s, defect, predicted, tilt_defect, proportional, notes)
