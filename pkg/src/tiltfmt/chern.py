"""Contracted Chern vectors in the rank-one line model.

All divisor classes are rational multiples of one ample class ``l`` with
``l^g = degree``.  A vector stores ``v_i = i! * l^(g-i) * ch_i^(b*l)`` together
with the twist coefficient ``b`` it is expressed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import comb, factorial

from .numeric import Fraction, Scalar, as_fraction, as_scalar, render, scalar_pow

__all__ = [
    "Geometry",
    "ChernVector",
    "IncompatibleVectors",
    "INF",
    "twist",
    "rebase",
    "exp_class",
    "point_class",
    "integral",
    "mukai_pairing",
    "mu",
    "disc",
]


class IncompatibleVectors(ValueError):
    pass


@total_ordering
class _Infinity:
    """Slope of objects with vanishing denominator; above every scalar."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("+inf")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"


INF = _Infinity()


@dataclass(frozen=True)
class Geometry:
    g: int
    degree: Fraction

    def __post_init__(self):
        object.__setattr__(self, "degree", as_fraction(self.degree))
        if not isinstance(self.g, int) or self.g < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.g!r}")
        if self.degree <= 0:
            raise ValueError(f"degree must be positive, got {self.degree}")


@dataclass(frozen=True)
class ChernVector:
    geom: Geometry
    base: Scalar
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "base", as_scalar(self.base))
        object.__setattr__(self, "v", tuple(as_scalar(c) for c in self.v))
        if len(self.v) != self.geom.g + 1:
            raise ValueError(
                f"expected {self.geom.g + 1} components for g={self.geom.g}, got {len(self.v)}"
            )

    @classmethod
    def of(cls, g: int, degree, v, base=0) -> ChernVector:
        return cls(Geometry(g, degree), base, tuple(v))

    @property
    def g(self) -> int:
        return self.geom.g

    def __getitem__(self, i):
        return self.v[i]

    def __iter__(self):
        return iter(self.v)

    def __len__(self):
        return len(self.v)

    def is_real(self) -> bool:
        return self.base.is_real() and all(c.is_real() for c in self.v)

    def _check(self, other: ChernVector):
        if self.geom != other.geom or self.base != other.base:
            raise IncompatibleVectors(
                "incompatible vectors: geometry or base twist differ"
            )

    def __add__(self, other):
        if not isinstance(other, ChernVector):
            return NotImplemented
        self._check(other)
        return ChernVector(self.geom, self.base, tuple(a + b for a, b in zip(self.v, other.v)))

    def __sub__(self, other):
        if not isinstance(other, ChernVector):
            return NotImplemented
        self._check(other)
        return ChernVector(self.geom, self.base, tuple(a - b for a, b in zip(self.v, other.v)))

    def __neg__(self):
        return ChernVector(self.geom, self.base, tuple(-a for a in self.v))

    def scale(self, c) -> ChernVector:
        c = as_scalar(c)
        return ChernVector(self.geom, self.base, tuple(c * a for a in self.v))

    def __rmul__(self, c):
        return self.scale(c)

    def truncate(self, k: int) -> ChernVector:
        """Zero the components above degree ``k``."""
        zero = Scalar()
        return ChernVector(
            self.geom, self.base, tuple(c if i <= k else zero for i, c in enumerate(self.v))
        )

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "degree": render(self.geom.degree),
            "base": render(self.base),
            "v": [render(c) for c in self.v],
        }

    def __str__(self):
        comps = ", ".join(render(c) for c in self.v)
        return f"({comps}) @ base {render(self.base)}"


def twist(x: ChernVector, beta) -> ChernVector:
    """Rebase from ``b`` to ``b + beta``: multiply by ``exp(-beta*l)``.

    ``v'_i = sum_j C(i, j) (-beta)^(i-j) v_j``.
    """
    beta = as_scalar(beta)
    if beta.is_zero():
        return x
    if beta.is_rational() and all(c.is_rational() for c in x.v):
        return _twist_rational(x, beta.re.a)
    powers = [scalar_pow(-beta, n) for n in range(x.g + 1)]
    out = []
    for i in range(x.g + 1):
        acc = Scalar()
        for j in range(i + 1):
            acc = acc + comb(i, j) * powers[i - j] * x.v[j]
        out.append(acc)
    return ChernVector(x.geom, x.base + beta, tuple(out))


def _twist_rational(x: ChernVector, beta: Fraction) -> ChernVector:
    # same formula on plain Fractions; the general path is ~50x slower
    v = [c.re.a for c in x.v]
    powers = [(-beta) ** n for n in range(x.g + 1)]
    out = tuple(
        Scalar(sum(comb(i, j) * powers[i - j] * v[j] for j in range(i + 1)))
        for i in range(x.g + 1)
    )
    return ChernVector(x.geom, x.base + beta, out)


def rebase(x: ChernVector, base) -> ChernVector:
    """Express ``x`` at the absolute twist coefficient ``base``."""
    return twist(x, as_scalar(base) - x.base)


def exp_class(geom: Geometry, r, d) -> ChernVector:
    """``ch = r * exp(d*l)`` at base 0: ``v_i = r * degree * d^i``."""
    r = as_scalar(r)
    d = as_scalar(d)
    return ChernVector(
        geom, Scalar(), tuple(r * geom.degree * scalar_pow(d, i) for i in range(geom.g + 1))
    )


def point_class(geom: Geometry, n=1) -> ChernVector:
    """Skyscraper class of length ``n``: ``(0, ..., 0, g! * n)``."""
    zero = Scalar()
    return ChernVector(
        geom, zero, (zero,) * geom.g + (as_scalar(n) * factorial(geom.g),)
    )


def integral(x: ChernVector) -> Scalar:
    """Degree of the top component, ``v_g / g!``."""
    return x.v[x.g] / factorial(x.g)


def mukai_pairing(x: ChernVector, y: ChernVector) -> Scalar:
    """``<x, y> = -int x^dual * y`` with trivial Todd class."""
    x._check(y)
    g = x.g
    acc = Scalar()
    for i in range(g + 1):
        term = x.v[i] * y.v[g - i] / (factorial(i) * factorial(g - i))
        acc = acc + term if i % 2 == 0 else acc - term
    return -acc / x.geom.degree


def mu(x: ChernVector):
    """Twisted slope ``v1/v0``, or :data:`INF` when ``v0 = 0``."""
    if x.g < 1:
        raise ValueError("slope undefined")
    if x.v[0].is_zero():
        return INF
    return x.v[1] / x.v[0]


def disc(x: ChernVector) -> Scalar:
    """``v1^2 - v0*v2``; independent of the base twist."""
    if x.g < 2:
        raise ValueError("discriminant undefined for g < 2")
    return x.v[1] * x.v[1] - x.v[0] * x.v[2]
