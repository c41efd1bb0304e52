"""Seeded random generators shared by the test modules."""

import random
from fractions import Fraction
from math import factorial

from tiltfmt.chern import ChernVector
from tiltfmt.fmt import make_context
from tiltfmt.numeric import RealQuad, Scalar, as_scalar


def rat(rng, span=12, den=5):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def pos_rat(rng, span=9, den=5):
    return Fraction(rng.randint(1, span), rng.randint(1, den))


def quad(rng):
    return RealQuad(rat(rng), rat(rng))


def field_scalar(rng):
    return Scalar(quad(rng), quad(rng))


def upper_scalar(rng):
    """Random element of Q(sqrt3, i) with positive imaginary part."""
    while True:
        im = quad(rng)
        if im.sign() > 0:
            return Scalar(quad(rng), im)


def context(rng, g=None):
    g = g if g is not None else rng.randint(1, 6)
    r = rng.randint(1, 4)
    degX = pos_rat(rng) * factorial(g)
    return make_context(g, r, rat(rng, 6, 3), rat(rng, 6, 3), degX)


def vector(rng, geom, base=0, scalars=False):
    gen = field_scalar if scalars else rat
    return ChernVector(geom, Scalar(base), tuple(as_scalar(gen(rng)) for _ in range(geom.g + 1)))


def source_vector(rng, ctx, scalars=False):
    return vector(rng, ctx.geomX, -ctx.dX, scalars)


def target_vector(rng, ctx, scalars=False):
    return vector(rng, ctx.geomY, ctx.dY, scalars)


def seeded(seed):
    return random.Random(seed)
