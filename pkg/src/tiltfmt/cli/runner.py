"""Execute a parsed scenario and collect a deterministic report."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..chern import INF, ChernVector, rebase
from ..fmt import (
    bg_via_fmt_chain,
    fmt_dual_transform,
    fmt_inverse,
    fmt_transform,
    induced_polarization,
    poincare_basis_images,
    solve_equivalence_params,
    verify_zeta_identity,
    zeta,
)
from ..numeric import InexactRootError, Scalar, render, root_of_unity, scalar_sign
from ..oracle import oracle_central_charge, oracle_dual_transform_vector, oracle_transform_vector
from ..stability import (
    ComplexAmple,
    TiltPoint,
    bg_defect,
    central_charge,
    chamber_scan,
    classical_bg,
    nu,
    wall_between,
    weak_charge,
)
from . import plot
from .scenario import Scenario, Task

DEFAULT_GRID = 20
DEFAULT_WINDOW = (Fraction(-2), Fraction(2), Fraction(2))
WALL_SAMPLES = 100


@dataclass
class Options:
    grid: int = DEFAULT_GRID
    float_mode: bool = False
    seed: int = 0


@dataclass
class TaskResult:
    index: int
    kind: str
    lines: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def say(self, text: str):
        self.lines.append(text)

    def check(self, ok: bool, what: str):
        self.lines.append(f"check {what}: {'ok' if ok else 'FAILED'}")
        if not ok:
            self.failures.append(what)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class Report:
    results: list
    header: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def text(self) -> str:
        out = list(self.header)
        for r in self.results:
            out.append("")
            out.append(f"[task {r.index}] {r.kind}: {'PASS' if r.ok else 'FAIL'}")
            out.extend("  " + line for line in r.lines)
        n_fail = sum(not r.ok for r in self.results)
        out.append("")
        out.append(f"summary: {len(self.results) - n_fail} passed, {n_fail} failed")
        return "\n".join(out) + "\n"

    def artifacts(self) -> dict:
        files = {}
        for r in self.results:
            files.update(r.artifacts)
        return files


def _vec(x: ChernVector) -> str:
    return "(" + ", ".join(render(c) for c in x.v) + f") @ base {render(x.base)}"


def _slope(v) -> str:
    return "+inf" if v is INF else render(v)


def run(scenario: Scenario, opts: Options | None = None, source: str = "<scenario>") -> Report:
    opts = opts or Options()
    header = [f"tiltfmt report for {source}", f"seed {opts.seed}, grid {opts.grid}, float {'on' if opts.float_mode else 'off'}"]
    if scenario.context is not None:
        c = scenario.context
        header.append(f"context g={c.g} r={c.r} dX={c.dX} dY={c.dY} degX={c.degX} degY={c.degY}")
    results = []
    for n, task in enumerate(scenario.tasks, start=1):
        res = TaskResult(n, task.kind)
        try:
            HANDLERS[task.kind](scenario, task, res, opts)
        except (ValueError, ArithmeticError, AssertionError) as exc:
            res.say(f"error: {exc}")
            res.failures.append(str(exc))
        results.append(res)
    return Report(results, header)


# --- handlers ----------------------------------------------------------------


def _transform(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    ctx = sc.context
    if t.get("basis"):
        res.say("basis images l_X^i/i! -> coeff * l_Y^(g-i):")
        for i, coeff in poincare_basis_images(ctx):
            want = ctx.r * (-1) ** (ctx.g - i) * ctx.degX / (factorial(ctx.g) * factorial(ctx.g - i))
            res.say(f"  i={i}: {coeff}")
            res.check(coeff == want, f"basis coefficient i={i} equals {want}")
        prod = (ctx.degX / factorial(ctx.g)) * (ctx.degY / factorial(ctx.g))
        res.say(f"(degX/g!)(degY/g!) = {prod}")
        res.check(prod == Fraction(1) / (ctx.r * ctx.r), "degree product equals 1/r^2")
    name = t.get("vector")
    if name is None:
        return
    x = sc.vectors[name]
    mode = t.get("mode", "forward")
    if mode == "forward":
        src = rebase(x, -ctx.dX)
        out = fmt_transform(ctx, src)
        res.check(out == oracle_transform_vector(ctx, src), "pairing-route oracle agrees")
        res.check(fmt_inverse(ctx, out) == src, "inverse recovers input")
    elif mode == "dual":
        src = rebase(x, ctx.dX)
        out = fmt_dual_transform(ctx, src)
        res.check(out == oracle_dual_transform_vector(ctx, src), "pairing-route oracle agrees")
    else:
        src = rebase(x, ctx.dY)
        out = fmt_inverse(ctx, src)
        res.check(fmt_transform(ctx, out) == src, "forward transform recovers input")
    res.say(f"input  {name} = {_vec(src)}")
    res.say(f"output ({mode}) = {_vec(out)}")
    if "expect" in t:
        want = [Scalar(a) for a in t.get("expect")]
        res.check(list(out.v) == want, "output matches expect")


def _omega_of(t: Task):
    if "omega" in t:
        return ComplexAmple(t.get("omega"))
    if "b" in t and "alpha" in t:
        return TiltPoint.at(t.get("b"), t.get("alpha")).omega()
    return None


def _charge(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    x = sc.vectors[t.get("vector")]
    om = _omega_of(t)
    if om is not None:
        res.say(f"omega = {om}")
        if "k" in t:
            z = weak_charge(x, t.get("k"), om)
            res.say(f"Z^({t.get('k')}) = {render(z)}")
        else:
            z = central_charge(x, om)
            res.say(f"Z = {render(z)}")
            res.check(z == oracle_central_charge(x, om.omega), "series oracle agrees")
        if "expect" in t:
            res.check(z == t.get("expect"), f"charge equals {render(t.get('expect'))}")
    if "u" in t:
        ctx = sc.context
        if ctx is None:
            raise ValueError("u= needs a context record")
        u = t.get("u")
        src = rebase(x, -ctx.dX)
        chk = verify_zeta_identity(ctx, u, src)
        res.say(f"u = {render(u)}, zeta = {render(zeta(ctx, u))}")
        res.say(f"Z_(-dX+u)(x) = {render(chk.lhs)}")
        res.say(f"zeta * Z_(dY-1/u)(Phi x) = {render(chk.rhs)}")
        res.check(chk.ok, "zeta rescaling identity")
    if om is None and "u" not in t:
        raise ValueError("charge task needs omega=, b= and alpha=, or u=")


def _nu(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    x = sc.vectors[t.get("vector")]
    p = TiltPoint.at(t.get("b"), t.get("alpha"))
    v = nu(x, p)
    res.say(f"nu at b={p.b} alpha={t.get('alpha')}: {_slope(v)}")
    if "expect" in t:
        res.check(v is not INF and v == t.get("expect"), f"nu equals {render(t.get('expect'))}")


def _bg(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    x = sc.vectors[t.get("vector")]
    if t.get("classical") or not ("b" in t and "alpha" in t):
        verdict = classical_bg(x)
        res.say(f"discriminant: {verdict}")
        holds = verdict.holds
    else:
        d = bg_defect(x, TiltPoint.at(t.get("b"), t.get("alpha")))
        holds = d.is_real() and scalar_sign(d.re) <= 0
        state = "consistent" if holds else "inconsistent"
        res.say(f"v3 - alpha^2 v1 at b={t.get('b')} alpha={t.get('alpha')}: {render(d)}")
        res.say(f"numerically {state} with the BG type inequality")
    if "expect" in t:
        want = t.get("expect")
        if want not in ("holds", "fails"):
            raise ValueError("bg expect must be holds or fails")
        res.check(holds == (want == "holds"), f"inequality {want}")


def random_imzero_vector(ctx, lam: Fraction, rng: random.Random) -> ChernVector:
    def q():
        return Fraction(rng.randint(-30, 30), rng.randint(1, 6))

    x1 = q()
    return ChernVector.of(ctx.g, ctx.degX, [q(), x1, lam * x1, q()], base=-ctx.dX)


def _bg_chain(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    ctx = sc.context
    lam = t.get("lambda")
    if "vector" in t:
        x = rebase(sc.vectors[t.get("vector")], -ctx.dX)
        rep = bg_via_fmt_chain(ctx, x, lam)
        res.say(f"x = {_vec(x)}, lambda = {lam}")
        res.say(f"imzero {str(rep.imzero).lower()}, s = {render(rep.s)}, defect = {render(rep.defect)}")
        for note in rep.notes:
            res.say(f"note: {note}")
        if rep.imzero:
            res.check(bool(rep.proportional), "s = (g!/(r degX lambda)) (lambda^2 x1 - x3)")
            res.check(rep.consistent, "s >= 0 iff defect <= 0")
            res.check(rep.tilt_defect == rep.defect, "bg_defect at the tilt point equals x3 - lambda^2 x1")
    n = t.get("random")
    if n:
        rng = random.Random(f"{opts.seed}:{res.index}")
        bad = 0
        signs = {1: 0, 0: 0, -1: 0}
        for _ in range(n):
            x = random_imzero_vector(ctx, lam, rng)
            rep = bg_via_fmt_chain(ctx, x, lam)
            signs[scalar_sign(rep.s.re)] += 1
            if not (rep.imzero and rep.proportional and rep.consistent and rep.tilt_defect == rep.defect):
                bad += 1
                res.say(f"mismatch at x = {_vec(x)}")
        res.say(f"random sweep: {n} vectors with x2 = lambda x1, lambda = {lam}")
        res.say(f"s > 0: {signs[1]}, s = 0: {signs[0]}, s < 0: {signs[-1]}")
        res.check(bad == 0, f"chain identities on {n} random vectors")


def _walls(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    x, y = sc.vectors[t.get("x")], sc.vectors[t.get("y")]
    wall = wall_between(x, y)
    res.say(f"wall {t.get('x')} vs {t.get('y')}: {wall}")
    pts = wall.sample(WALL_SAMPLES)
    if pts:
        good = sum(nu(x, p) == nu(y, p) for p in pts)
        res.check(good == len(pts), f"nu equality at {len(pts)} exact wall points")
    if "expect" in t:
        res.check(wall.kind == t.get("expect"), f"wall kind is {t.get('expect')}")
    bmin = t.get("bmin", DEFAULT_WINDOW[0])
    bmax = t.get("bmax", DEFAULT_WINDOW[1])
    amax = t.get("amax", DEFAULT_WINDOW[2])
    if not (bmin < bmax and amax > 0):
        raise ValueError("walls window needs bmin < bmax and amax > 0")
    bs, alphas = plot.grid(bmin, bmax, amax, opts.grid)
    rows = chamber_scan(x, y, bs, alphas)
    stem = f"task{res.index:02d}-walls"
    res.artifacts[f"{stem}.csv"] = plot.scan_csv(rows)
    res.artifacts[f"{stem}.svg"] = plot.wall_svg(wall, bmin, bmax, amax, f"{t.get('x')}/{t.get('y')}")
    counts = {s: sum(r[4] == s for r in rows) for s in "+-0"}
    res.say(f"scan {opts.grid}x{opts.grid} on b in [{bmin}, {bmax}], alpha in (0, {amax}]: "
            f"above {counts['+']}, below {counts['-']}, equal {counts['0']}")
    res.say(f"files {stem}.csv {stem}.svg")


def _equiv(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    ctx = sc.context
    k, lam = t.get("k"), t.get("lambda")
    try:
        ep = solve_equivalence_params(ctx, k, lam, float_mode=opts.float_mode)
    except InexactRootError as exc:
        raise ValueError(f"{exc}; rerun with --float") from exc
    if ep.exact:
        root = root_of_unity(ctx.g, k)
        res.say(f"Omega  = {render(ep.omega_x)}")
        res.say(f"Omega' = {render(ep.omega_y)}")
        res.say(f"zeta = {render(ep.zeta)}")
        res.check(ep.omega_x == Scalar(-ctx.dX) + lam * root, "Omega = -dX + lambda e^(ik pi/g)")
        res.check(ep.omega_y == Scalar(ctx.dY) - root.conjugate() / lam, "Omega' = dY - e^(-ik pi/g)/lambda")
        res.check(ep.zeta.is_real(), "zeta is real")
        if ep.omega_x.re.b == 0 and ep.omega_x.im.a == 0:
            b, a = ep.tilt_x()
            b2, a2 = ep.tilt_y()
            res.say(f"tilt on X: B = {b}, alpha = {a}; tilt on Y: B' = {b2}, alpha' = {a2}")
    else:
        res.say(f"Omega  = {ep.omega_x:.15g}")
        res.say(f"Omega' = {ep.omega_y:.15g}")
        res.say(f"zeta = {ep.zeta:.15g} (float mode, tolerance 1e-12)")
        res.check(True, "zeta is real within tolerance")


def _polarization(sc: Scenario, t: Task, res: TaskResult, opts: Options):
    ctx = sc.context
    a = t.get("a")
    rank, slope = induced_polarization(ctx, a)
    res.say(f"image of exp({a} l_X): rank {rank}, slope {slope}")
    res.check(slope == -1 / a, "slope equals -1/a")
    res.check(rank == ctx.r * a**ctx.g * ctx.degX / factorial(ctx.g), "rank equals r a^g degX/g!")


HANDLERS = {
    "transform": _transform,
    "charge": _charge,
    "nu": _nu,
    "bg": _bg,
    "bg-chain": _bg_chain,
    "walls": _walls,
    "equiv-params": _equiv,
    "polarization": _polarization,
}
