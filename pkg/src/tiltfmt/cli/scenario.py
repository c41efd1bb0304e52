"""Scenario files: parsing, validation and canonical rendering.

Grammar (one record per line, ``#`` starts a comment)::

    context g=3 r=1 dX=0 dY=0 degX=6
    vector E g=3 degree=6 base=0 v=[0, 6, 6, 0]
    task nu vector=E b=1/2 alpha=1/2 expect=0

A value is a bracketed list ``[a, b, ...]``, a double-quoted string, or a
bare token without whitespace.  Scalars use the exact literal grammar of
:func:`tiltfmt.numeric.parse_scalar` (``1/2``, ``3*sqrt3``, ``1 + i*(2)``);
literals containing spaces must be quoted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..chern import ChernVector, Geometry
from ..fmt import FmtContext, make_context
from ..numeric import Scalar, parse_fraction, parse_scalar, render

__all__ = ["Scenario", "Task", "ScenarioError", "ParseIssue", "parse_scenario", "TASK_KINDS"]


@dataclass(frozen=True)
class ParseIssue:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


class ScenarioError(ValueError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("\n".join(str(i) for i in self.issues))


# value kinds
RAT, SCAL, INT, NAME, BOOL, RATLIST, RAW = "rational", "scalar", "int", "name", "bool", "rational-list", "raw"

TASK_KINDS = {
    "transform": {"vector": NAME, "mode": NAME, "expect": RATLIST, "basis": BOOL},
    "charge": {"vector": NAME, "omega": SCAL, "b": RAT, "alpha": RAT, "k": INT, "u": SCAL, "expect": SCAL},
    "nu": {"vector": NAME, "b": RAT, "alpha": RAT, "expect": SCAL},
    "bg": {"vector": NAME, "b": RAT, "alpha": RAT, "classical": BOOL, "expect": NAME},
    "bg-chain": {"vector": NAME, "lambda": RAT, "random": INT},
    "walls": {"x": NAME, "y": NAME, "bmin": RAT, "bmax": RAT, "amax": RAT, "expect": NAME},
    "equiv-params": {"k": INT, "lambda": RAT},
    "polarization": {"a": RAT},
}

REQUIRED = {
    "transform": (),
    "charge": ("vector",),
    "nu": ("vector", "b", "alpha"),
    "bg": ("vector",),
    "bg-chain": ("lambda",),
    "walls": ("x", "y"),
    "equiv-params": ("k", "lambda"),
    "polarization": ("a",),
}

NEEDS_CONTEXT = {"transform", "bg-chain", "equiv-params", "polarization"}


@dataclass(frozen=True)
class Task:
    kind: str
    params: tuple  # ((key, value), ...) in source order
    line: int = field(default=0, compare=False)

    def get(self, key, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default

    def __contains__(self, key):
        return any(k == key for k, _ in self.params)


@dataclass
class Scenario:
    context: FmtContext | None
    vectors: dict
    tasks: list

    def render(self) -> str:
        lines = []
        if self.context is not None:
            c = self.context
            lines.append(
                f"context g={c.g} r={c.r} dX={c.dX} dY={c.dY} degX={c.degX} degY={c.degY}"
            )
        for name, x in self.vectors.items():
            comps = ", ".join(render(a) for a in x.v)
            lines.append(
                f"vector {name} g={x.g} degree={x.geom.degree} base={_lit(render(x.base))} v=[{comps}]"
            )
        for t in self.tasks:
            parts = [f"task {t.kind}"]
            for k, v in t.params:
                parts.append(f"{k}={_render_value(v)}")
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"


def _lit(s: str) -> str:
    return f'"{s}"' if " " in s else s


def _render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(render(a) for a in v) + "]"
    if isinstance(v, (Fraction, Scalar)):
        return _lit(render(v))
    return str(v)


# --- tokenizer ---------------------------------------------------------------


def _tokenize(text: str, lineno: int):
    """Yield ``(column, key, value)``; a bare word has ``key=None``."""
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        if text[i] == "#":
            return
        start = i
        while i < n and not text[i].isspace() and text[i] != "=":
            i += 1
        word = text[start:i]
        if i < n and text[i] == "=":
            i += 1
            vstart = i
            if i < n and text[i] == "[":
                depth = 0
                while i < n:
                    if text[i] == "[":
                        depth += 1
                    elif text[i] == "]":
                        depth -= 1
                        if depth == 0:
                            i += 1
                            break
                    i += 1
                else:
                    raise ScenarioError([ParseIssue(lineno, vstart + 1, "unterminated list")])
                if depth != 0:
                    raise ScenarioError([ParseIssue(lineno, vstart + 1, "unterminated list")])
                value = text[vstart:i]
            elif i < n and text[i] == '"':
                end = text.find('"', i + 1)
                if end < 0:
                    raise ScenarioError([ParseIssue(lineno, vstart + 1, "unterminated string")])
                value = text[i + 1 : end]
                i = end + 1
            else:
                while i < n and not text[i].isspace():
                    i += 1
                value = text[vstart:i]
            if not word:
                raise ScenarioError([ParseIssue(lineno, start + 1, "missing key before '='")])
            yield start + 1, word, value
        else:
            yield start + 1, None, word


def _convert(kind: str, raw: str):
    if kind == RAT:
        return parse_fraction(raw)
    if kind == SCAL:
        return parse_scalar(raw)
    if kind == INT:
        v = parse_fraction(raw)
        if v.denominator != 1:
            raise ValueError(f"{raw!r} is not an integer")
        return int(v)
    if kind == BOOL:
        if raw not in ("true", "false"):
            raise ValueError(f"expected true or false, got {raw!r}")
        return raw == "true"
    if kind == RATLIST:
        return [parse_fraction(a) for a in _split_list(raw)]
    if kind == RAW:
        return raw
    if kind == NAME:
        if not raw or any(ch.isspace() for ch in raw):
            raise ValueError(f"bad name {raw!r}")
        return raw
    raise AssertionError(kind)


def _split_list(raw: str):
    s = raw.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected a bracketed list, got {raw!r}")
    body = s[1:-1].strip()
    if not body:
        return []
    return [p.strip() for p in body.split(",")]


# --- parser -----------------------------------------------------------------


def parse_scenario(text: str) -> Scenario:
    """Parse and validate; raises :class:`ScenarioError` listing every issue."""
    issues = []
    context = None
    context_line = 0
    vectors = {}
    tasks = []
    pending_vectors = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            toks = list(_tokenize(line, lineno))
        except ScenarioError as exc:
            issues.extend(exc.issues)
            continue
        if not toks:
            continue
        col, key, word = toks[0]
        if key is not None:
            issues.append(ParseIssue(lineno, col, "record must start with context, vector or task"))
            continue
        rest = toks[1:]
        try:
            if word == "context":
                if context is not None or context_line:
                    issues.append(ParseIssue(lineno, col, "duplicate context record"))
                    continue
                context_line = lineno
                context = _parse_context(rest, lineno, issues)
            elif word == "vector":
                pending_vectors.append((lineno, col, rest))
            elif word == "task":
                t = _parse_task(rest, lineno, col, issues)
                if t is not None:
                    tasks.append(t)
            else:
                issues.append(ParseIssue(lineno, col, f"unknown record type {word!r}"))
        except ScenarioError as exc:
            issues.extend(exc.issues)

    for lineno, col, rest in pending_vectors:
        res = _parse_vector(rest, lineno, col, context, issues)
        if res is None:
            continue
        name, vec = res
        if name in vectors:
            issues.append(ParseIssue(lineno, col, f"duplicate vector name {name!r}"))
            continue
        vectors[name] = vec

    for t in tasks:
        for key in ("vector", "x", "y"):
            ref = t.get(key)
            if ref is not None and ref not in vectors:
                issues.append(ParseIssue(t.line, 1, f"task {t.kind}: unknown vector {ref!r}"))
        if t.kind in NEEDS_CONTEXT and context is None:
            issues.append(ParseIssue(t.line, 1, f"task {t.kind} needs a context record"))

    if issues:
        raise ScenarioError(sorted(issues, key=lambda i: (i.line, i.column)))
    return Scenario(context, vectors, tasks)


def _fields(rest, lineno, issues, allowed):
    out = {}
    for col, key, value in rest:
        if key is None:
            issues.append(ParseIssue(lineno, col, f"unexpected bare word {value!r}"))
            continue
        if key not in allowed:
            issues.append(ParseIssue(lineno, col, f"unknown field {key!r}"))
            continue
        if key in out:
            issues.append(ParseIssue(lineno, col, f"duplicate field {key!r}"))
            continue
        try:
            out[key] = (col, _convert(allowed[key], value))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            issues.append(ParseIssue(lineno, col, f"field {key!r}: {exc}"))
    return out


def _parse_context(rest, lineno, issues):
    allowed = {"g": INT, "r": RAT, "dX": RAT, "dY": RAT, "degX": RAT, "degY": RAT}
    f = _fields(rest, lineno, issues, allowed)
    missing = [k for k in ("g", "r", "dX", "dY", "degX") if k not in f]
    if missing:
        issues.append(ParseIssue(lineno, 1, f"context missing fields: {', '.join(missing)}"))
        return None
    vals = {k: v for k, (_, v) in f.items()}
    try:
        if "degY" in vals:
            return FmtContext(vals["g"], vals["r"], vals["dX"], vals["dY"], vals["degX"], vals["degY"])
        return make_context(vals["g"], vals["r"], vals["dX"], vals["dY"], vals["degX"])
    except ValueError as exc:
        issues.append(ParseIssue(lineno, 1, str(exc)))
        return None


def _parse_vector(rest, lineno, col, context, issues):
    if not rest or rest[0][1] is not None:
        issues.append(ParseIssue(lineno, col, "vector record needs a name"))
        return None
    name = rest[0][2]
    allowed = {"g": INT, "degree": RAT, "base": SCAL, "v": RAW}
    f = _fields(rest[1:], lineno, issues, allowed)
    if "v" not in f:
        issues.append(ParseIssue(lineno, col, f"vector {name!r} missing field 'v'"))
        return None
    g = f["g"][1] if "g" in f else (context.g if context else None)
    degree = f["degree"][1] if "degree" in f else (context.degX if context else None)
    if g is None or degree is None:
        issues.append(ParseIssue(lineno, col, f"vector {name!r} needs g and degree (no context to default from)"))
        return None
    vcol, vraw = f["v"]
    try:
        comps = [parse_scalar(a) for a in _split_list(vraw)]
        geom = Geometry(g, degree)
        base = f["base"][1] if "base" in f else Scalar()
        return name, ChernVector(geom, base, tuple(comps))
    except (ValueError, ZeroDivisionError) as exc:
        issues.append(ParseIssue(lineno, vcol, f"vector {name!r}: {exc}"))
        return None


def _parse_task(rest, lineno, col, issues):
    if not rest or rest[0][1] is not None:
        issues.append(ParseIssue(lineno, col, "task record needs a kind"))
        return None
    kcol, _, kind = rest[0]
    if kind not in TASK_KINDS:
        issues.append(ParseIssue(lineno, kcol, f"unknown task kind {kind!r}"))
        return None
    n_before = len(issues)
    f = _fields(rest[1:], lineno, issues, TASK_KINDS[kind])
    for req in REQUIRED[kind]:
        if req not in f:
            issues.append(ParseIssue(lineno, kcol, f"task {kind} missing field {req!r}"))
    if kind == "transform" and "vector" not in f and not (f.get("basis", (0, False))[1]):
        issues.append(ParseIssue(lineno, kcol, "task transform needs vector=... or basis=true"))
    if kind == "bg-chain" and "vector" not in f and "random" not in f:
        issues.append(ParseIssue(lineno, kcol, "task bg-chain needs vector=... or random=N"))
    if kind == "transform" and "mode" in f and f["mode"][1] not in ("forward", "dual", "inverse"):
        issues.append(ParseIssue(lineno, f["mode"][0], "mode must be forward, dual or inverse"))
    if len(issues) != n_before:
        return None
    params = tuple((k, v) for k, (_, v) in sorted(f.items(), key=lambda kv: kv[1][0]))
    return Task(kind, params, lineno)
