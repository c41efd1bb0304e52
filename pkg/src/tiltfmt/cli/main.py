"""``tiltfmt run <file> [--out DIR] [--grid N] [--float] [--seed S]``"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .runner import DEFAULT_GRID, Options, run
from .scenario import ScenarioError, parse_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def bundled_scenarios() -> list:
    root = resources.files("tiltfmt") / "scenarios"
    return sorted(p.name[: -len(".scn")] for p in root.iterdir() if p.name.endswith(".scn"))


def read_scenario(ref: str) -> tuple:
    """Return ``(source_name, text)`` for a path or a bundled scenario name."""
    path = Path(ref)
    if path.is_file():
        return path.name, path.read_text(encoding="utf-8")
    res = resources.files("tiltfmt") / "scenarios" / f"{ref}.scn"
    if res.is_file():
        return f"{ref}.scn", res.read_text(encoding="utf-8")
    raise FileNotFoundError(ref)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tiltfmt", description=__doc__.strip("`"))
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a scenario file or a bundled scenario")
    r.add_argument("file", help="scenario path, or one of the bundled names")
    r.add_argument("--out", metavar="DIR", help="write report.txt and wall CSV/SVG files here")
    r.add_argument("--grid", type=int, default=DEFAULT_GRID, metavar="N", help="N x N chamber scan grid")
    r.add_argument("--float", dest="float_mode", action="store_true", help="allow float fallback for g outside {2, 3}")
    r.add_argument("--seed", type=int, default=0, metavar="S", help="seed for randomized sweeps")
    sub.add_parser("list", help="list bundled scenarios")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        print("\n".join(bundled_scenarios()))
        return EXIT_OK
    if args.grid < 2:
        parser.error("--grid must be at least 2")
    try:
        source, text = read_scenario(args.file)
    except FileNotFoundError:
        print(f"tiltfmt: error: no such scenario file: {args.file}", file=sys.stderr)
        return EXIT_USAGE
    try:
        scenario = parse_scenario(text)
    except ScenarioError as exc:
        for issue in exc.issues:
            print(f"{source}: {issue}", file=sys.stderr)
        return EXIT_USAGE

    report = run(scenario, Options(grid=args.grid, float_mode=args.float_mode, seed=args.seed), source)
    text = report.text()
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_text(text, encoding="utf-8")
        for name, content in report.artifacts().items():
            (out / name).write_text(content, encoding="utf-8")
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
