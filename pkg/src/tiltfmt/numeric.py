"""Exact scalars in Q(sqrt3, i).

Rationals are :class:`fractions.Fraction`.  :class:`RealQuad` is ``a + b*sqrt3``
with rational ``a, b`` and :class:`Scalar` is ``re + i*im`` with ``re, im``
in :class:`RealQuad`.  Everything is immutable and compares structurally,
which equals mathematical equality because the representation is unique.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Fraction",
    "RealQuad",
    "Scalar",
    "InexactRootError",
    "as_fraction",
    "as_scalar",
    "scalar_pow",
    "scalar_sign",
    "root_of_unity",
    "render",
    "parse_scalar",
    "parse_fraction",
]


class InexactRootError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_fraction(x)
    if isinstance(x, (RealQuad, Scalar)):
        s = as_scalar(x)
        if s.im.is_zero() and s.re.b == 0:
            return s.re.a
        raise ValueError(f"{render(x)} is not rational")
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class RealQuad:
    """``a + b*sqrt3`` with rational coefficients."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("RealQuad is immutable")

    @staticmethod
    def coerce(x) -> RealQuad:
        if isinstance(x, RealQuad):
            return x
        if isinstance(x, Scalar):
            if not x.im.is_zero():
                raise ValueError(f"{render(x)} is not real")
            return x.re
        return RealQuad(as_fraction(x))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return other == self
        try:
            o = RealQuad.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __add__(self, other):
        if isinstance(other, Scalar):
            return NotImplemented
        try:
            o = RealQuad.coerce(other)
        except TypeError:
            return NotImplemented
        return RealQuad(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return RealQuad(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return NotImplemented
        try:
            o = RealQuad.coerce(other)
        except TypeError:
            return NotImplemented
        return RealQuad(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return NotImplemented
        try:
            o = RealQuad.coerce(other)
        except TypeError:
            return NotImplemented
        return RealQuad(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> RealQuad:
        """Galois conjugate ``a - b*sqrt3``."""
        return RealQuad(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 3 * self.b * self.b

    def inverse(self) -> RealQuad:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        return RealQuad(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return NotImplemented
        try:
            o = RealQuad.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RealQuad.coerce(other) * self.inverse()

    def __pow__(self, n):
        return scalar_pow(Scalar(self), n).re

    def sign(self) -> int:
        return scalar_sign(self)

    def __lt__(self, other):
        return scalar_sign(self - RealQuad.coerce(other)) < 0

    def __le__(self, other):
        return scalar_sign(self - RealQuad.coerce(other)) <= 0

    def __gt__(self, other):
        return scalar_sign(self - RealQuad.coerce(other)) > 0

    def __ge__(self, other):
        return scalar_sign(self - RealQuad.coerce(other)) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * 3 ** 0.5

    def __repr__(self):
        return f"RealQuad({render(self)!r})"

    def __str__(self):
        return render(self)


class Scalar:
    """An element ``re + i*im`` of Q(sqrt3, i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", RealQuad.coerce(re))
        object.__setattr__(self, "im", RealQuad.coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def is_rational(self) -> bool:
        return self.im.is_zero() and self.re.b == 0

    def __eq__(self, other):
        try:
            o = as_scalar(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im.is_zero():
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return Scalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar(self.re, -self.im)

    def abs2(self) -> RealQuad:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> Scalar:
        n = self.abs2()
        if n.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt3, i)")
        ninv = n.inverse()
        return Scalar(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n):
        return scalar_pow(self, n)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Scalar({render(self)!r})"

    def __str__(self):
        return render(self)


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT3 = Scalar(RealQuad(0, 1))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, RealQuad):
        return Scalar(x)
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar(as_fraction(x))


def scalar_pow(z, n: int) -> Scalar:
    """Exact ``z**n``; negative ``n`` goes through the inverse."""
    z = as_scalar(z)
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("exponent must be an integer")
    if n < 0:
        return scalar_pow(z.inverse(), -n)
    result = ONE
    base = z
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def scalar_sign(x) -> int:
    """Exact sign of a real element ``a + b*sqrt3``."""
    x = RealQuad.coerce(x)
    a, b = x.a, x.b
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with 3 b^2
    d = a * a - 3 * b * b
    return sa if d > 0 else sb


def root_of_unity(g: int, k: int) -> Scalar:
    """``exp(i*k*pi/g)`` for ``g`` in {2, 3}."""
    if g == 2:
        base = I
    elif g == 3:
        base = Scalar(RealQuad(Fraction(1, 2)), RealQuad(0, Fraction(1, 2)))
    else:
        raise InexactRootError(
            f"inexact root: exp(i*pi/{g}) is not in Q(sqrt3, i); use float mode"
        )
    return scalar_pow(base, k % (2 * g))


# --- text form -------------------------------------------------------------


def _render_fraction(q: Fraction) -> str:
    return str(q)


def render(x) -> str:
    """Canonical text for a rational, RealQuad or Scalar.

    ``p/q``; ``a + b*sqrt3``; ``re + i*(im)``.  Zero parts are dropped.
    """
    if isinstance(x, Scalar):
        if x.im.is_zero():
            return render(x.re)
        im = render(x.im)
        if x.re.is_zero():
            return f"i*({im})"
        return f"{render(x.re)} + i*({im})"
    if isinstance(x, RealQuad):
        if x.b == 0:
            return _render_fraction(x.a)
        if x.a == 0:
            return f"{_render_fraction(x.b)}*sqrt3"
        if x.b < 0:
            return f"{_render_fraction(x.a)} - {_render_fraction(-x.b)}*sqrt3"
        return f"{_render_fraction(x.a)} + {_render_fraction(x.b)}*sqrt3"
    return _render_fraction(as_fraction(x))


_NAMES = {"i": I, "I": I, "sqrt3": SQRT3}


def _eval(node) -> Scalar:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Scalar(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _eval(node.right)
            if not e.is_rational() or e.re.a.denominator != 1:
                raise ValueError("exponent must be an integer literal")
            return scalar_pow(_eval(node.left), int(e.re.a))
        left, right = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax in scalar literal: {ast.dump(node)}")


def parse_scalar(text: str) -> Scalar:
    """Parse an exact scalar literal.

    Accepts integers, ``/``, ``*``, ``+``, ``-``, parentheses, ``^`` or ``**``
    with integer exponent, and the names ``i`` and ``sqrt3``.  Every string
    produced by :func:`render` parses back to the same value.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ValueError("empty scalar literal")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad scalar literal {text!r}") from exc
    return _eval(tree)


def parse_fraction(text: str) -> Fraction:
    s = parse_scalar(text)
    if not s.is_rational():
        raise ValueError(f"{text!r} is not a rational literal")
    return s.re.a
