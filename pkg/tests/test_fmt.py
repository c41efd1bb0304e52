from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from randgen import context, pos_rat, rat, seeded, source_vector, target_vector, upper_scalar
from tiltfmt.chern import ChernVector, exp_class, mukai_pairing, point_class, rebase
from tiltfmt.fmt import (
    FmtContext,
    WrongBase,
    bg_via_fmt_chain,
    dualize,
    fmt_dual_transform,
    fmt_hat,
    fmt_inverse,
    fmt_transform,
    im_charge_x,
    im_charge_y,
    induced_polarization,
    make_context,
    poincare_basis_images,
    shift,
    solve_equivalence_params,
    verify_zeta_identity,
    verify_zeta_identity_float,
    zeta,
)
from tiltfmt.numeric import I, SQRT3, InexactRootError, RealQuad, Scalar, root_of_unity

PP = make_context(3, 1, 0, 0, 6)


def test_make_context_examples():
    assert make_context(3, 1, 0, 0, 6).degY == 6
    assert make_context(3, 2, 0, 0, 6).degY == Fraction(3, 2)
    assert make_context(2, 1, 0, 0, 2).degY == 2
    with pytest.raises(ValueError):
        make_context(3, 0, 0, 0, 6)
    with pytest.raises(ValueError, match=r"\(degX/g!\)\(degY/g!\) = 1/r\^2"):
        FmtContext(3, 1, 0, 0, 6, 5)
    assert PP.to_dict() == {"g": 3, "r": "1", "dX": "0", "dY": "0", "degX": "6"}


def test_transform_examples():
    y = fmt_transform(PP, point_class(PP.geomX))
    assert y == ChernVector(PP.geomY, 0, (6, 0, 0, 0))
    assert y == exp_class(PP.geomY, 1, 0)
    o = fmt_transform(PP, ChernVector(PP.geomX, 0, (6, 0, 0, 0)))
    assert o == ChernVector(PP.geomY, 0, (0, 0, 0, -6))


def test_point_image_is_semihomogeneous():
    rng = seeded(31)
    for _ in range(50):
        ctx = context(rng, 3)
        p = rebase(point_class(ctx.geomX), -ctx.dX)
        out = fmt_transform(ctx, p)
        assert out == rebase(exp_class(ctx.geomY, ctx.r, ctx.dY), ctx.dY)


def test_base_enforced():
    ctx = make_context(3, 1, Fraction(1, 2), 1, 6)
    x = ChernVector(ctx.geomX, 0, (1, 0, 0, 0))
    with pytest.raises(WrongBase, match="vector not expressed at base"):
        fmt_transform(ctx, x)
    with pytest.raises(WrongBase):
        fmt_dual_transform(ctx, x)
    with pytest.raises(WrongBase):
        fmt_hat(ctx, ChernVector(ctx.geomY, 0, (1, 0, 0, 0)))
    wrong_geom = make_context(3, 2, 0, 0, 6)
    with pytest.raises(WrongBase):
        fmt_transform(wrong_geom, ChernVector(wrong_geom.geomY, 0, (1, 0, 0, 0)))


def test_linearity_and_shift():
    rng = seeded(32)
    for _ in range(100):
        ctx = context(rng)
        x, y = source_vector(rng, ctx), source_vector(rng, ctx)
        c = rat(rng)
        assert fmt_transform(ctx, x + y) == fmt_transform(ctx, x) + fmt_transform(ctx, y)
        assert fmt_transform(ctx, x.scale(c)) == fmt_transform(ctx, x).scale(c)
        assert shift(x, 2) == x and shift(shift(x, 1), 1) == x
    p = point_class(PP.geomX)
    assert shift(p, 1) == -p


def test_inverse_identities():
    rng = seeded(33)
    for _ in range(300):
        ctx = context(rng)
        x, y = source_vector(rng, ctx, scalars=True), target_vector(rng, ctx, scalars=True)
        assert fmt_inverse(ctx, fmt_transform(ctx, x)) == x
        assert fmt_transform(ctx, fmt_inverse(ctx, y)) == y
        assert fmt_hat(ctx, fmt_transform(ctx, x)) == shift(x, ctx.g)


def test_adjunction_isometry():
    rng = seeded(34)
    for _ in range(300):
        ctx = context(rng)
        x, y = source_vector(rng, ctx), target_vector(rng, ctx)
        assert mukai_pairing(fmt_inverse(ctx, y), x) == mukai_pairing(y, fmt_transform(ctx, x))


def test_dual_transform_relation():
    rng = seeded(35)
    for _ in range(200):
        ctx = context(rng)
        x = source_vector(rng, ctx)
        assert dualize(fmt_transform(ctx, x)) == shift(fmt_dual_transform(ctx, dualize(x)), ctx.g)
    p = rebase(point_class(PP.geomX), PP.dX)
    assert fmt_dual_transform(PP, p).v == fmt_transform(PP, point_class(PP.geomX)).v


def test_zeta_examples():
    e = root_of_unity(3, 1)
    assert zeta(PP, e) == -1
    assert zeta(PP, 2) == 8
    assert zeta(PP, I) == -I
    with pytest.raises(ValueError):
        zeta(PP, 0)
    chk = verify_zeta_identity(PP, e, point_class(PP.geomX))
    assert chk.ok and chk.lhs == -1 and chk.rhs == -1


def test_zeta_identity_randomized():
    rng = seeded(36)
    for _ in range(300):
        ctx = context(rng)
        x = source_vector(rng, ctx)
        assert verify_zeta_identity(ctx, upper_scalar(rng), x)
        assert verify_zeta_identity(ctx, Scalar(1, 1), x)


def test_zeta_identity_float():
    rng = seeded(37)
    for _ in range(200):
        ctx = context(rng)
        x = source_vector(rng, ctx)
        u = complex(rng.uniform(-2, 2), rng.uniform(0.1, 2))
        assert verify_zeta_identity_float(ctx, u, x)


def test_zeta_negative_control():
    def corrupted(ctx, x):
        y = fmt_transform(ctx, x)
        v = list(y.v)
        v[1] = -v[1]
        return ChernVector(y.geom, y.base, tuple(v))

    x = ChernVector(PP.geomX, 0, (1, 2, 3, 4))
    chk = verify_zeta_identity(PP, Scalar(1, 1), x, transform=corrupted)
    assert not chk.ok and not chk.residual.is_zero()


def test_equivalence_params():
    rng = seeded(38)
    for _ in range(50):
        lam = pos_rat(rng)
        d = rat(rng)
        ctx = make_context(3, rng.randint(1, 3), d, rat(rng), 6)
        ep = solve_equivalence_params(ctx, 1, lam)
        assert ep.tilt_x() == (-d + lam / 2, lam / 2)
        assert ep.tilt_y() == (ctx.dY - 1 / (2 * lam), 1 / (2 * lam))
        assert ep.zeta.is_real() and ep.zeta == -ctx.r * 6 * lam**3 / 6
        assert ep.zeta_shifted.re > 0
        ctx2 = make_context(2, 1, d, 0, 2)
        ep2 = solve_equivalence_params(ctx2, 1, lam)
        assert ep2.omega_x == Scalar(-d) + I * lam
    ep = solve_equivalence_params(PP, 1, 1)
    assert ep.omega_x == Scalar(Fraction(1, 2), RealQuad(0, Fraction(1, 2)))
    assert ep.omega_y == Scalar(Fraction(-1, 2), RealQuad(0, Fraction(1, 2)))
    for k in (1, 2):
        for lam in (Fraction(1, 3), 2):
            assert solve_equivalence_params(PP, k, lam).zeta.is_real()
    with pytest.raises(ValueError):
        solve_equivalence_params(PP, 3, 1)
    with pytest.raises(ValueError):
        solve_equivalence_params(PP, 1, 0)


def test_equivalence_params_float_mode():
    ctx = make_context(4, 1, 0, 0, 24)
    with pytest.raises(InexactRootError):
        solve_equivalence_params(ctx, 1, 1)
    for k in (1, 2, 3):
        ep = solve_equivalence_params(ctx, k, Fraction(3, 2), float_mode=True)
        assert not ep.exact
        assert abs(ep.zeta - 24 * 1.5**4 * (-1) ** k / 24) < 1e-12 * 10


def test_induced_polarization():
    assert induced_polarization(PP, 1) == (1, -1)
    assert induced_polarization(PP, 2) == (8, Fraction(-1, 2))
    rng = seeded(39)
    for _ in range(200):
        ctx = context(rng)
        a = pos_rat(rng)
        rank, slope = induced_polarization(ctx, a)
        assert slope == -1 / a
        assert rank == ctx.r * a**ctx.g * ctx.degX / factorial(ctx.g)
    with pytest.raises(ValueError):
        induced_polarization(PP, 0)


def test_poincare_basis_images():
    for g in (1, 2, 3):
        ctx = make_context(g, 1, 0, 0, factorial(g))
        for i, coeff in poincare_basis_images(ctx):
            assert coeff == Fraction((-1) ** (g - i) * ctx.degX, factorial(g) * factorial(g - i))
        assert (ctx.degX / factorial(g)) * (ctx.degY / factorial(g)) == 1


def test_im_charge_formulas():
    rng = seeded(40)
    for _ in range(300):
        ctx = context(rng, 3)
        lam = pos_rat(rng)
        x, y = source_vector(rng, ctx), target_vector(rng, ctx)
        assert im_charge_x(ctx, x, lam) == SQRT3 * lam / 4 * (x.v[2] - lam * x.v[1])
        assert im_charge_y(ctx, y, lam) == SQRT3 / (4 * lam) * (y.v[2] + y.v[1] / lam)
        lhs = im_charge_x(ctx, shift(fmt_hat(ctx, y), 1), lam)
        assert lhs == -6 * lam**3 / (ctx.r * ctx.degY) * im_charge_y(ctx, y, lam)
        rhs = im_charge_y(ctx, fmt_transform(ctx, x), lam)
        assert rhs == -6 / (lam**3 * ctx.r * ctx.degX) * im_charge_x(ctx, x, lam)


def test_bg_chain_examples():
    rep = bg_via_fmt_chain(PP, ChernVector(PP.geomX, 0, (0, 6, 6, 0)), 1)
    assert rep.imzero and rep.defect == -6 and rep.s == 6 and rep.proportional
    assert rep.consistent
    lam = Fraction(2, 3)
    e = exp_class(PP.geomX, 1, lam)
    rep = bg_via_fmt_chain(PP, e, lam)
    assert rep.imzero and rep.defect == 0 and rep.s == 0
    rep = bg_via_fmt_chain(PP, ChernVector(PP.geomX, 0, (1, 1, 0, 0)), 1)
    assert not rep.imzero and rep.proportional is None
    assert "precondition Im Z != 0" in rep.notes
    with pytest.raises(ValueError):
        bg_via_fmt_chain(make_context(2, 1, 0, 0, 2), ChernVector.of(2, 2, (1, 0, 0)), 1)


def test_bg_chain_randomized():
    rng = seeded(41)
    for _ in range(300):
        ctx = context(rng, 3)
        lam = pos_rat(rng)
        x1 = rat(rng)
        x = ChernVector(ctx.geomX, Scalar(-ctx.dX), (rat(rng), x1, lam * x1, rat(rng)))
        rep = bg_via_fmt_chain(ctx, x, lam)
        assert rep.imzero and rep.proportional and rep.consistent
        assert rep.s == Fraction(6) / (ctx.r * ctx.degX * lam) * (lam**2 * x.v[1] - x.v[3])
        assert rep.tilt_defect == rep.defect


small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@given(
    st.integers(1, 6),
    st.integers(1, 4),
    st.fractions(min_value=Fraction(1, 9), max_value=20, max_denominator=9),
    small,
    small,
    st.lists(small, min_size=7, max_size=7),
)
def test_transform_properties(g, r, deg, dX, dY, comps):
    ctx = make_context(g, r, dX, dY, deg)
    x = ChernVector(ctx.geomX, Scalar(-dX), comps[: g + 1])
    y = fmt_transform(ctx, x)
    assert y.base == Scalar(dY) and y.geom == ctx.geomY
    assert fmt_inverse(ctx, y) == x
    assert fmt_hat(ctx, y) == shift(x, g)
