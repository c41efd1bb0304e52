"""Brute-force recomputation in the truncated polynomial model.

A class is ``sum c_i t^i`` modulo ``t^(g+1)`` where ``t`` stands for the
polarization and ``int t^g = degree``.  Everything here goes through series
multiplication and pairings, never through the closed-form matrices of
:mod:`tiltfmt.chern` and :mod:`tiltfmt.fmt`, so agreement between the two is
evidence rather than tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .chern import ChernVector, Geometry
from .numeric import Scalar, as_scalar, scalar_pow

__all__ = [
    "TruncPoly",
    "poly_mul",
    "poly_exp",
    "poly_integral",
    "poly_pairing",
    "monomial",
    "to_vector",
    "from_vector",
    "twisted_poly",
    "oracle_twist",
    "oracle_exp_class",
    "oracle_point_class",
    "oracle_pairing",
    "oracle_central_charge",
    "oracle_transform",
    "oracle_transform_vector",
    "oracle_dual_transform_vector",
    "twist_matrix",
]


@dataclass(frozen=True)
class TruncPoly:
    geom: Geometry
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(as_scalar(a) for a in self.c))
        if len(self.c) != self.geom.g + 1:
            raise ValueError("coefficient list must have length g+1")

    def __add__(self, other):
        _same(self, other)
        return TruncPoly(self.geom, tuple(a + b for a, b in zip(self.c, other.c)))

    def scale(self, k) -> TruncPoly:
        k = as_scalar(k)
        return TruncPoly(self.geom, tuple(k * a for a in self.c))

    def dual(self) -> TruncPoly:
        return TruncPoly(self.geom, tuple(a if i % 2 == 0 else -a for i, a in enumerate(self.c)))


def _same(p: TruncPoly, q: TruncPoly):
    if p.geom != q.geom:
        raise ValueError("polynomials live on different geometries")


def poly_mul(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    _same(p, q)
    n = p.geom.g + 1
    out = [Scalar()] * n
    for i, a in enumerate(p.c):
        if a.is_zero():
            continue
        for j in range(n - i):
            out[i + j] = out[i + j] + a * q.c[j]
    return TruncPoly(p.geom, tuple(out))


def poly_exp(beta, geom: Geometry) -> TruncPoly:
    """``exp(beta t)`` truncated: ``c_i = beta^i / i!``."""
    beta = as_scalar(beta)
    return TruncPoly(geom, tuple(scalar_pow(beta, i) / factorial(i) for i in range(geom.g + 1)))


def monomial(geom: Geometry, i: int, coeff=1) -> TruncPoly:
    c = [Scalar()] * (geom.g + 1)
    c[i] = as_scalar(coeff)
    return TruncPoly(geom, tuple(c))


def poly_integral(p: TruncPoly) -> Scalar:
    return p.c[-1] * p.geom.degree


def poly_pairing(p: TruncPoly, q: TruncPoly) -> Scalar:
    """Mukai pairing ``-int p^dual q``."""
    return -poly_integral(poly_mul(p.dual(), q))


def twisted_poly(x: ChernVector) -> TruncPoly:
    """Polynomial of the twisted character at ``x``'s own base."""
    d = x.geom.degree
    return TruncPoly(x.geom, tuple(c / (factorial(i) * d) for i, c in enumerate(x.v)))


def _vector_of(p: TruncPoly, base) -> ChernVector:
    d = p.geom.degree
    return ChernVector(p.geom, as_scalar(base), tuple(factorial(i) * d * c for i, c in enumerate(p.c)))


def to_vector(p: TruncPoly, base=0) -> ChernVector:
    """Contract the untwisted class ``p`` after multiplying by ``exp(-base t)``."""
    return _vector_of(poly_mul(poly_exp(-as_scalar(base), p.geom), p), base)


def from_vector(x: ChernVector) -> TruncPoly:
    """Untwisted class of ``x``: ``exp(base t)`` times its twisted polynomial."""
    return poly_mul(poly_exp(x.base, x.geom), twisted_poly(x))


def oracle_twist(x: ChernVector, beta) -> ChernVector:
    return to_vector(from_vector(x), x.base + as_scalar(beta))


def oracle_exp_class(geom: Geometry, r, d) -> ChernVector:
    return to_vector(poly_exp(d, geom).scale(r), 0)


def oracle_point_class(geom: Geometry, n=1) -> ChernVector:
    return to_vector(monomial(geom, geom.g, as_scalar(n) / geom.degree), 0)


def oracle_pairing(x: ChernVector, y: ChernVector) -> Scalar:
    return poly_pairing(from_vector(x), from_vector(y))


def oracle_central_charge(x: ChernVector, omega) -> Scalar:
    """``-int exp(-omega t) ch`` by series multiplication."""
    return -poly_integral(poly_mul(poly_exp(-as_scalar(omega), x.geom), from_vector(x)))


def oracle_transform(ctx, p: TruncPoly) -> TruncPoly:
    """Recompute the transform of the twisted class ``p`` by pairings.

    Output component ``i`` (as a contracted value on Y) is
    ``-g! (g-i)! / (r l_X^g) * <l_X^i, p>``, that is
    ``(-1)^i g! (g-i)! / (r l_X^g) * int l_X^i p``.  The result is returned as
    the twisted polynomial on Y.
    """
    g = ctx.g
    gx = ctx.geomX
    if p.geom != gx:
        raise ValueError("polynomial is not on the source geometry")
    gy = ctx.geomY
    out = []
    for i in range(g + 1):
        pair = poly_pairing(monomial(gx, i), p)
        value = -pair * factorial(g) * factorial(g - i) / (ctx.r * ctx.degX)
        out.append(value / (factorial(i) * gy.degree))
    return TruncPoly(gy, tuple(out))


def oracle_transform_vector(ctx, x: ChernVector) -> ChernVector:
    """Pairing-route transform of ``x`` given at base ``-D_X``; result at ``D_Y``."""
    if x.base != as_scalar(-ctx.dX):
        raise ValueError("vector not expressed at base -D_X")
    return _vector_of(oracle_transform(ctx, twisted_poly(x)), ctx.dY)


def oracle_dual_transform_vector(ctx, x: ChernVector) -> ChernVector:
    """Pairing-route dual transform of ``x`` given at base ``+D_X``; result at ``-D_Y``."""
    if x.base != as_scalar(ctx.dX):
        raise ValueError("vector not expressed at base +D_X")
    return _vector_of(oracle_transform(ctx, twisted_poly(x)), -ctx.dY)


def twist_matrix(geom: Geometry, beta) -> list:
    """Matrix of rebasing by ``beta``, read off from ``exp(-beta t)`` on basis vectors."""
    g = geom.g
    cols = []
    for j in range(g + 1):
        e = [Scalar()] * (g + 1)
        e[j] = Scalar(1)
        x = ChernVector(geom, Scalar(), tuple(e))
        cols.append(oracle_twist(x, beta).v)
    return [[cols[j][i] for j in range(g + 1)] for i in range(g + 1)]
