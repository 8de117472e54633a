"""Command line: ``skeinlab {explore,verify,count,export}``.

Exit codes: 0 success, 1 a check failed (or exploration ran out of budget),
2 configuration or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .cluster import Seed, explore, initial_seed
from .exactalg import ParseError
from .lamination import LaminationError, TorusMulticurve, growth_experiment
from .surface import SurfaceError, SurfaceSpec
from .suites import SUITES, SuiteConfig, run_suite


class ConfigError(Exception):
    pass


def load_defaults() -> dict:
    return json.loads(resources.files("skeinlab").joinpath("data/defaults.json").read_text(encoding="utf-8"))


def _dump(data) -> str:
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _spec(args) -> SurfaceSpec:
    try:
        return SurfaceSpec(args.g, args.p)
    except (SurfaceError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _depth(args, defaults) -> int:
    if args.depth is not None:
        if args.depth < 0:
            raise ConfigError("depth must be nonnegative")
        return args.depth
    return defaults["depths"].get(f"g{args.g}p{args.p}", defaults["fallback_depth"])


def cmd_explore(args) -> int:
    spec = _spec(args)
    graph = explore(initial_seed(spec), _depth(args, load_defaults()), args.budget, args.workers)
    print(f"{spec.name()}: {len(graph.nodes)} nodes, {len(graph.edges) // 2} edges"
          + ("" if graph.complete else " (budget exhausted, partial)"))
    if args.out:
        base = Path(args.out)
        if args.format in ("json", "both"):
            base.with_suffix(".json").write_text(_dump(graph.to_dict()), encoding="utf-8")
        if args.format in ("dot", "both"):
            base.with_suffix(".dot").write_text(graph.to_dot(), encoding="utf-8")
    return 0 if graph.complete else 1


def cmd_verify(args) -> int:
    suite = args.suite_name or args.suite
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    spec = _spec(args)
    defaults = load_defaults()
    cfg = SuiteConfig(spec.g, spec.p, _depth(args, defaults), args.budget, args.workers, args.catalogue)
    if suite == "bracelets":
        from .suites import suite_bracelets

        chart_depth = defaults["bracelet_chart_depth"].get(f"g{spec.g}p{spec.p}")
        if args.depth is not None:
            chart_depth = args.depth
        rep = suite_bracelets(cfg, chart_depth)
    else:
        rep = run_suite(suite, cfg)
    t = rep.totals
    for r in rep.records:
        if r.status != "pass":
            print(f"  {r.status.upper()} {r.id}")
    print(f"{suite} on {spec.name()} depth {cfg.depth}: {t['pass']} pass, {t['fail']} fail, {t['skip']} skip")
    if args.out:
        _write(args.out, rep.to_json())
    return 0 if rep.ok else 1


def _ladder(text: str | None, defaults) -> list[int]:
    if text is None:
        return list(defaults["count"]["ladder"])
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad ladder {text!r}") from exc


def cmd_count(args) -> int:
    defaults = load_defaults()
    if (args.g, args.p) == (1, 1):
        model = "s11"
    elif (args.g, args.p) == (0, 4) and args.sphere:
        model = "s04"
    else:
        raise ConfigError("counting supports the once-punctured torus (and the four-punctured sphere with --sphere)")
    preset = args.preset or "loops"
    K = [TorusMulticurve(a, b, 1) for a, b in defaults["count"]["K"]]
    try:
        rep = growth_experiment(K, _ladder(args.ladder, defaults), preset, model)
    except LaminationError as exc:
        raise ConfigError(str(exc)) from exc
    lo, hi = defaults["count"]["quotient_window" if preset == "quotient" else "window"]
    if args.window:
        lo, hi = (float(x) for x in args.window.split(","))
    ok = lo <= rep.fitted_exponent <= hi
    payload = rep.to_dict() | {"window": [lo, hi], "within_window": ok}
    if args.format == "json":
        _write(args.out, _dump(payload))
    else:
        print(rep.table())
        print(f"window [{lo}, {hi}]: {'pass' if ok else 'fail'}")
        if args.out:
            _write(args.out, _dump(payload))
    return 0 if ok else 1


def cmd_export(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {args.file}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.file}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        seed = Seed.from_dict(data)
    except ParseError as exc:
        raise ConfigError(f"{args.file}: {exc}") from exc
    except (KeyError, TypeError, ValueError, SurfaceError) as exc:
        raise ConfigError(f"{args.file}: malformed seed: {exc}") from exc
    if args.format == "dot":
        depth = 1 if args.depth is None else args.depth
        out = explore(seed, depth, args.budget, args.workers).to_dot()
    else:
        out = _dump(seed.to_dict())
    _write(args.out, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skeinlab", description="Cluster and skein computations on punctured surfaces.")
    ap.add_argument("--version", action="version", version=f"skeinlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, surface=True):
        if surface:
            p.add_argument("--g", type=int, default=1, help="genus")
            p.add_argument("--p", type=int, default=1, help="number of punctures")
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--budget", type=int, default=10**6, help="maximum number of seeds")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None)

    p = sub.add_parser("explore", help="breadth-first exchange graph")
    common(p)
    p.add_argument("--format", choices=("json", "dot", "both"), default="both")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite_name", nargs="?", default=None)
    p.add_argument("--suite", default=None)
    common(p)
    p.add_argument("--catalogue", default=None, help="catalogue file (also SKEINLAB_CATALOGUE)")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="multicurve growth experiment")
    common(p)
    p.add_argument("--preset", choices=("loops", "quotient"), default=None)
    p.add_argument("--ladder", default=None, help="comma-separated bounds")
    p.add_argument("--window", default=None, help="lo,hi accepted exponent window")
    p.add_argument("--sphere", action="store_true", help="enable the four-punctured sphere slope model")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("export", help="canonical JSON or DOT of a seed file")
    p.add_argument("file")
    common(p, surface=False)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"skeinlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
