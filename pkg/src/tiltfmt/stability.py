"""Central charges, tilt slope, Bogomolov-Gieseker checks and numerical walls.

Tilt parameters are ``B = b*l`` and ``alpha``; a complexified ample class is
``Omega = omega*l`` with a single scalar ``omega`` whose imaginary part is
positive.  The usual parametrisation ``Omega = B + i*sqrt3*alpha*H`` is
``omega = b + i*sqrt3*alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .chern import INF, ChernVector, IncompatibleVectors, disc, rebase, twist
from .numeric import I, SQRT3, RealQuad, Scalar, as_fraction, as_scalar, render, scalar_pow, scalar_sign

__all__ = [
    "TiltPoint",
    "ComplexAmple",
    "NotComplexifiedAmple",
    "BGVerdict",
    "Wall",
    "central_charge",
    "weak_charge",
    "nu",
    "nu_slope_match",
    "bg_defect",
    "classical_bg",
    "wall_between",
    "chamber_scan",
]


class NotComplexifiedAmple(ValueError):
    pass


def _exact_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class TiltPoint:
    """A point ``(b, alpha)`` of the tilt upper half-plane.

    Only ``alpha**2`` enters the tilt slope, so the point stores ``alpha_sq``;
    this keeps points on walls with irrational radius exact.
    """

    b: Fraction
    alpha_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", as_fraction(self.b))
        object.__setattr__(self, "alpha_sq", as_fraction(self.alpha_sq))
        if self.alpha_sq <= 0:
            raise ValueError("alpha must be positive")

    @classmethod
    def at(cls, b, alpha) -> TiltPoint:
        alpha = as_fraction(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        return cls(b, alpha * alpha)

    @property
    def alpha(self) -> Fraction:
        a = _exact_sqrt(self.alpha_sq)
        if a is None:
            raise ValueError(f"alpha = sqrt({self.alpha_sq}) is irrational")
        return a

    def omega(self) -> ComplexAmple:
        """The class ``b + i*sqrt3*alpha``; needs rational ``alpha``."""
        return ComplexAmple(Scalar(self.b) + I * SQRT3 * self.alpha)


@dataclass(frozen=True)
class ComplexAmple:
    omega: Scalar

    def __post_init__(self):
        object.__setattr__(self, "omega", as_scalar(self.omega))
        if scalar_sign(self.omega.im) <= 0:
            raise NotComplexifiedAmple(
                f"not a complexified ample class: Im({render(self.omega)}) <= 0"
            )

    @classmethod
    def tilt(cls, b, alpha) -> ComplexAmple:
        return TiltPoint.at(b, alpha).omega()

    @property
    def b(self) -> RealQuad:
        return self.omega.re

    def __str__(self):
        return render(self.omega)


def _omega(w) -> Scalar:
    if isinstance(w, ComplexAmple):
        return w.omega
    return ComplexAmple(w).omega


def central_charge(x: ChernVector, omega) -> Scalar:
    """``Z_Omega(x) = -int exp(-Omega) ch`` for ``Omega = omega*l``."""
    w = twist(x, _omega(omega) - x.base)
    return -w.v[x.g] / factorial(x.g)


def weak_charge(x: ChernVector, k: int, omega) -> Scalar:
    """The ``k``-truncated charge ``-i^(g-k) int exp(-i Im Omega) ch^B_{<=k}``.

    Truncation is applied to the character twisted by ``B = Re(omega)``.
    """
    g = x.g
    if not 1 <= k <= g:
        raise ValueError(f"truncation degree k={k} out of range 1..{g}")
    om = _omega(omega)
    y = rebase(x, Scalar(om.re)).truncate(k)
    w = twist(y, I * om.im)
    return -scalar_pow(I, g - k) * w.v[g] / factorial(g)


def nu(x: ChernVector, p: TiltPoint):
    """Tilt slope ``(w2 - alpha^2 w0) / (2 w1)`` at ``p``; :data:`INF` if ``w1 = 0``."""
    if x.g < 2:
        raise ValueError("tilt slope needs g >= 2")
    w = rebase(x, p.b)
    if w.v[1].is_zero():
        return INF
    return (w.v[2] - p.alpha_sq * w.v[0]) / (2 * w.v[1])


def nu_slope_match(x: ChernVector, p: TiltPoint) -> Scalar:
    """Slope ``-Re/Im`` of the degree-2 truncated charge at ``b + i*sqrt3*alpha``.

    For threefolds this is ``2/(sqrt3*alpha)`` times :func:`nu`.
    """
    z = weak_charge(x, 2, p.omega())
    if z.im.is_zero():
        raise ZeroDivisionError("infinite slope: Im Z^(2) = 0")
    return -Scalar(z.re) / Scalar(z.im)


def bg_defect(x: ChernVector, p: TiltPoint) -> Scalar:
    """``w3 - alpha^2 w1`` at ``p``; the BG type inequality asks for ``<= 0``."""
    if x.g != 3:
        raise ValueError("BG type inequality is stated for threefolds (g = 3)")
    w = rebase(x, p.b)
    return w.v[3] - p.alpha_sq * w.v[1]


@dataclass(frozen=True)
class BGVerdict:
    holds: bool
    witness: Scalar

    def __bool__(self):
        return self.holds

    def __str__(self):
        state = "consistent" if self.holds else "inconsistent"
        return f"numerically {state} with BG (value {render(self.witness)})"


def classical_bg(x: ChernVector) -> BGVerdict:
    """Check the discriminant inequality ``v1^2 - v0 v2 >= 0``."""
    d = disc(x)
    return BGVerdict(scalar_sign(d.re) >= 0 and d.is_real(), d)


# --- walls -------------------------------------------------------------------


def _rational_below_sqrt(q: Fraction) -> Fraction:
    """A positive rational ``s`` with ``s^2 <= q``."""
    s = _exact_sqrt(q)
    if s is not None:
        return s
    s = Fraction(math.isqrt(q.numerator * 10**12 // q.denominator), 10**6)
    while s * s > q:
        s -= Fraction(1, 10**6)
    if s <= 0:
        s = Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator) + 1)
    return s


@dataclass(frozen=True)
class Wall:
    """Numerical wall ``{nu(x) = nu(y)}`` in the ``(b, alpha)`` half-plane."""

    kind: str
    center_b: Fraction | None = None
    radius_sq: Fraction | None = None
    line_b: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("circle", "vertical_line", "empty", "everywhere"):
            raise ValueError(f"unknown wall kind {self.kind!r}")
        if self.kind == "circle" and not (self.radius_sq and self.radius_sq > 0):
            raise ValueError("circle wall needs radius_sq > 0")

    def contains(self, p: TiltPoint) -> bool:
        if self.kind == "everywhere":
            return True
        if self.kind == "empty":
            return False
        if self.kind == "vertical_line":
            return p.b == self.line_b
        return (p.b - self.center_b) ** 2 + p.alpha_sq == self.radius_sq

    def sample(self, n: int) -> list:
        """``n`` exact points on the wall (``alpha`` may be irrational)."""
        if self.kind == "empty":
            return []
        if self.kind == "everywhere":
            return [TiltPoint(Fraction(j, 3), Fraction(j + 1, 2)) for j in range(n)]
        if self.kind == "vertical_line":
            return [TiltPoint(self.line_b, Fraction(j + 1, 5)) for j in range(n)]
        s = _rational_below_sqrt(self.radius_sq)
        pts = []
        for j in range(1, n + 1):
            db = s * Fraction(2 * j - n - 1, n + 1)
            pts.append(TiltPoint(self.center_b + db, self.radius_sq - db * db))
        return pts

    def to_dict(self) -> dict:
        if self.kind == "circle":
            return {"kind": self.kind, "center_b": str(self.center_b), "radius_sq": str(self.radius_sq)}
        if self.kind == "vertical_line":
            return {"kind": self.kind, "line_b": str(self.line_b)}
        return {"kind": self.kind}

    def __str__(self):
        if self.kind == "circle":
            return f"circle center_b={self.center_b} radius_sq={self.radius_sq}"
        if self.kind == "vertical_line":
            return f"vertical_line b={self.line_b}"
        return self.kind


def _real_rationals(x: ChernVector, base=0):
    x = rebase(x, base)
    out = []
    for c in x.v:
        if not c.is_rational():
            raise ValueError("wall computation needs rational vectors")
        out.append(c.re.a)
    return out


def wall_coefficients(x: ChernVector, y: ChernVector):
    """``(K0, K1, K2)`` with wall ``K0 (b^2 + alpha^2) - K1 b + K2 = 0``."""
    if x.geom != y.geom:
        raise IncompatibleVectors("incompatible vectors: geometry differs")
    if x.g < 2:
        raise ValueError("walls need g >= 2")
    v, w = _real_rationals(x), _real_rationals(y)
    k0 = v[0] * w[1] - v[1] * w[0]
    k1 = v[0] * w[2] - v[2] * w[0]
    k2 = v[1] * w[2] - v[2] * w[1]
    return k0, k1, k2


def wall_between(x: ChernVector, y: ChernVector) -> Wall:
    k0, k1, k2 = wall_coefficients(x, y)
    if k0 != 0:
        c = k1 / (2 * k0)
        r2 = c * c - k2 / k0
        if r2 <= 0:
            return Wall("empty")
        return Wall("circle", center_b=c, radius_sq=r2)
    if k1 != 0:
        return Wall("vertical_line", line_b=k2 / k1)
    if k2 == 0:
        return Wall("everywhere")
    return Wall("empty")


def compare_slopes(a, b) -> str:
    """``+``, ``-`` or ``0`` for ``a`` above, below or equal to ``b``."""
    if a == b:
        return "0"
    if a is INF:
        return "+"
    if b is INF:
        return "-"
    return "+" if scalar_sign((a - b).re) > 0 else "-"


def chamber_scan(x: ChernVector, y: ChernVector, b_values, alpha_values):
    """Rows ``(b, alpha, nu_x, nu_y, side)`` over the grid, ``b`` outermost."""
    rows = []
    for b in b_values:
        b = Fraction(b)
        wx, wy = _real_rationals(x, b), _real_rationals(y, b)
        for a in alpha_values:
            a = Fraction(a)
            nx, ny = _nu_rational(wx, a * a), _nu_rational(wy, a * a)
            rows.append((b, a, nx, ny, compare_slopes(nx, ny)))
    return rows


def _nu_rational(w, alpha_sq):
    if w[1] == 0:
        return INF
    return Scalar((w[2] - alpha_sq * w[0]) / (2 * w[1]))
