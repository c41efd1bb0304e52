from fractions import Fraction
from math import comb, factorial

import pytest

from randgen import context, rat, seeded, source_vector, vector
from tiltfmt.chern import ChernVector, Geometry, exp_class, point_class, twist
from tiltfmt.fmt import fmt_dual_transform, fmt_transform, make_context
from tiltfmt.numeric import Scalar
from tiltfmt.oracle import (
    TruncPoly,
    from_vector,
    monomial,
    oracle_dual_transform_vector,
    oracle_exp_class,
    oracle_point_class,
    oracle_transform,
    oracle_transform_vector,
    poly_exp,
    poly_mul,
    to_vector,
    twist_matrix,
    twisted_poly,
)

G3 = Geometry(3, 6)


def P(*c, geom=G3):
    return TruncPoly(geom, c)


def test_poly_mul_examples():
    p = P(1, 2, 3, 4)
    assert poly_mul(p, P(1, 0, 0, 0)) == p
    t2 = monomial(G3, 2)
    assert poly_mul(t2, t2) == P(0, 0, 0, 0)
    assert poly_mul(P(1, 1, 0, 0), P(1, -1, 0, 0)) == P(1, 0, -1, 0)
    with pytest.raises(ValueError):
        poly_mul(p, P(1, 0, 0, 0, geom=Geometry(3, 1)))
    with pytest.raises(ValueError):
        TruncPoly(G3, (1, 2))


def test_poly_exp():
    assert poly_exp(0, G3) == P(1, 0, 0, 0)
    assert poly_exp(1, G3) == P(1, 1, Fraction(1, 2), Fraction(1, 6))
    vals = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2, 3)]
    for b1 in vals:
        for b2 in vals:
            assert poly_mul(poly_exp(b1, G3), poly_exp(b2, G3)) == poly_exp(b1 + b2, G3)


def test_vector_model_roundtrip():
    rng = seeded(51)
    for _ in range(100):
        geom = Geometry(rng.randint(1, 6), Fraction(rng.randint(1, 9), rng.randint(1, 3)))
        p = TruncPoly(geom, tuple(rat(rng) for _ in range(geom.g + 1)))
        b = rat(rng)
        assert from_vector(to_vector(p, b)) == p
        x = vector(rng, geom, b)
        assert to_vector(from_vector(x), b) == x


def test_exp_and_point_classes():
    rng = seeded(52)
    for _ in range(50):
        r, d = rat(rng), rat(rng)
        assert oracle_exp_class(G3, r, d) == exp_class(G3, r, d)
        assert from_vector(exp_class(G3, r, d)) == poly_exp(d, G3).scale(r)
        assert oracle_point_class(G3, r) == point_class(G3, r)
    assert from_vector(point_class(G3)) == P(0, 0, 0, Fraction(1, 6))


def test_twist_matrix_is_binomial():
    beta = Fraction(3, 7)
    m = twist_matrix(G3, beta)
    for i in range(4):
        for j in range(4):
            want = comb(i, j) * (-beta) ** (i - j) if j <= i else 0
            assert m[i][j] == want
    # the disputed entry: coefficient of v1 in the rebased v2 is 2*(-beta), not -beta
    lam = Fraction(2)
    assert twist_matrix(G3, -1 / lam)[2][1] == 2 / lam


def test_oracle_transform_matches_closed_form():
    rng = seeded(53)
    for _ in range(1000):
        ctx = context(rng)
        x = source_vector(rng, ctx)
        assert oracle_transform_vector(ctx, x) == fmt_transform(ctx, x)
        xd = ChernVector(ctx.geomX, Scalar(ctx.dX), x.v)
        assert oracle_dual_transform_vector(ctx, xd) == fmt_dual_transform(ctx, xd)


def test_oracle_point_and_basis():
    ctx = make_context(3, 1, 0, 0, 6)
    assert oracle_transform_vector(ctx, point_class(ctx.geomX)).v == tuple(map(Scalar, (6, 0, 0, 0)))
    for g in (1, 2, 3):
        ctx = make_context(g, 1, 0, 0, factorial(g))
        for i in range(g + 1):
            img = oracle_transform(ctx, monomial(ctx.geomX, i, Fraction(1, factorial(i))))
            want = Fraction((-1) ** (g - i) * ctx.degX, factorial(g) * factorial(g - i))
            assert img == monomial(ctx.geomY, g - i, want)


def test_oracle_rejects_wrong_inputs():
    ctx = make_context(3, 1, 1, 0, 6)
    x = ChernVector(ctx.geomX, 0, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        oracle_transform_vector(ctx, x)
    with pytest.raises(ValueError):
        oracle_dual_transform_vector(ctx, twist(x, -1))
    with pytest.raises(ValueError):
        oracle_transform(make_context(3, 2, 0, 0, 6), twisted_poly(ChernVector(Geometry(3, 5), 0, (1, 0, 0, 0))))
