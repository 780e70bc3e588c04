"""
Command-line front end.

    gallai invariants --input square.json
    gallai verify q5
    gallai verify triples --builtin-proof-set
    gallai check-coloring --rule block.json --pattern rect.json --mode mono --region "-20,20;-20,20"
    gallai find --mode rainbow --target square.json --input colored.json
    gallai propagate --points line.json --k2 pair.json --colors 3 --seed 0:0
    gallai render --rule block.json --window "-3,3;-3,3" --svg block.svg
    gallai suite --config config.yml

Every command prints a JSON report (to --out if given). Exit codes: 0 clean or
as expected, 1 a witness was found where none was expected, 2 usage error.
"""

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from dacite import DaciteError

from gallai import __version__, config
from gallai.colorings import (
    parse_region,
    theorem_block_rule,
    theorem_grid_rule,
    verify_no_mono,
    verify_no_rainbow,
)
from gallai.finite_verify import (
    EXTENDED_OFFSETS,
    THIRDS_GRID_OFFSETS,
    build_triple_csp,
    solve_triple_csp,
    verify_q5_lemma,
)
from gallai.geometry import (
    affine_dimension,
    box_width_bound,
    diameter,
    enclosing_ball,
    is_spherical,
    simplex_heights,
)
from gallai.models.factory import ColoredPointSetFactory, ConfigurationFactory, OffsetFactory, RuleFactory
from gallai.models.verdict import CspStatus, PatternMode, PatternQuery
from gallai.patterns import find
from gallai.propagate import build_instance, forcing_report, propagate_fixpoint
from gallai.render import render_rule, save_svg, window_from_region

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    tolerance: Dict[str, float] = field(default_factory=dict)
    out: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: config.Config) -> "RunConfig":
        tol = settings.tolerance
        tolerance = {
            "abs_eps": tol.abs_eps if args.tol_abs is None else args.tol_abs,
            "rel_eps": tol.rel_eps if args.tol_rel is None else args.tol_rel,
        }
        if min(tolerance.values()) < 0:
            raise ValueError("tolerances must be non-negative")
        skip = {"command", "verify_command", "seed", "tol_abs", "tol_rel", "out", "log_level", "handler"}
        parameters = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
        command = args.command if not getattr(args, "verify_command", None) else f"verify {args.verify_command}"
        seed = settings.sampler.seed if args.seed is None else args.seed
        return cls(command, parameters, seed, tolerance, args.out)

    def tol(self):
        return config.ToleranceConfig(**self.tolerance).make()


@dataclass
class Report:
    command: str
    config: dict
    result: dict
    elapsed_ms: int
    version: str = __version__
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)


def _invariants(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    c = ConfigurationFactory.make_from_file_on_disk(args.input, run.tol())
    restarts = settings.optimizer.restarts if args.restarts is None else args.restarts
    width = box_width_bound(c, restarts, run.seed, run.tol())
    ball = enclosing_ball(c, run.tol())
    sphere = is_spherical(c, run.tol()) if len(c) >= 2 else None
    result = {
        "label": c.label,
        "points": len(c),
        "dim": c.dim,
        "diameter": diameter(c),
        "box_width": width.to_dict(),
        "circumradius": ball.radius,
        "enclosing_ball": ball.to_dict(),
        "affine_dimension": affine_dimension(c, run.tol()),
        "spherical": sphere is not None,
        "sphere": None if sphere is None else sphere.to_dict(),
        "heights": simplex_heights(c, run.tol()) if len(c) >= 3 else None,
    }
    return result, EXIT_OK


def _verify_q5(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    report = verify_q5_lemma(full=args.full_q5, workers=args.workers)
    return report.to_dict(), EXIT_OK if report.passed else EXIT_WITNESS


def _verify_triples(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    if args.offsets:
        offsets = OffsetFactory.make_from_file_on_disk(args.offsets)
    elif args.extended_set:
        offsets = EXTENDED_OFFSETS
    else:
        offsets = THIRDS_GRID_OFFSETS
    csp = build_triple_csp(offsets)
    result = solve_triple_csp(csp)
    payload = result.to_dict(csp)
    payload["offset_values"] = [str(o) for o in csp.offsets]
    return payload, EXIT_OK if result.status is CspStatus.UNSAT else EXIT_WITNESS


def _make_rule(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    target = ConfigurationFactory.make_from_file_on_disk(args.target, run.tol())
    restarts = settings.optimizer.restarts if args.restarts is None else args.restarts
    if args.grid:
        rule = theorem_grid_rule(target, restarts, run.seed, run.tol())
    else:
        rule = theorem_block_rule(target, restarts, run.seed, run.tol())
    return {"rule": rule.to_dict(), "diameter": diameter(target)}, EXIT_OK


def _check_coloring(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    rule = RuleFactory.make_from_file_on_disk(args.rule)
    pattern = ConfigurationFactory.make_from_file_on_disk(args.pattern, run.tol())
    region = parse_region(args.region)
    trials = settings.sampler.trials if args.trials is None else args.trials
    batch_size = settings.sampler.batch_size if args.batch_size is None else args.batch_size
    sampler = verify_no_mono if PatternMode.make(args.mode) is PatternMode.MONOCHROMATIC else verify_no_rainbow
    report = sampler(rule, pattern, region, trials, run.seed, batch_size, run.tol())
    return report.to_dict(), EXIT_OK if report.clean else EXIT_WITNESS


def _find(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    s = ColoredPointSetFactory.make_from_file_on_disk(args.input, run.tol())
    target = ConfigurationFactory.make_from_file_on_disk(args.target, run.tol())
    query = PatternQuery(target, PatternMode.make(args.mode), run.tol())
    matches = find(s, query, args.limit)
    result = {
        "mode": query.mode.value,
        "count": len(matches),
        "matches": [m.to_dict(s.points) for m in matches],
    }
    return result, EXIT_WITNESS if args.expect_none and matches else EXIT_OK


def _parse_seed(text: str) -> Tuple[int, int]:
    try:
        index, color = text.split(":")
        return int(index), int(color)
    except ValueError:
        raise ValueError(f"cannot read seed {text!r}; expected INDEX:COLOR")


def _propagate(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    points = ConfigurationFactory.make_from_file_on_disk(args.points, run.tol())
    k2 = ConfigurationFactory.make_from_file_on_disk(args.k2, run.tol())
    seeds = [_parse_seed(s) for s in args.seeds or []]
    instance = build_instance(points, k2, args.colors, seeds, run.tol())
    result = propagate_fixpoint(instance, max_rounds=args.max_rounds)
    payload = result.to_dict()
    payload["report"] = forcing_report(instance, result, args.slab_axis, args.slab_value, run.tol())
    return payload, EXIT_OK


def _render(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    rule = RuleFactory.make_from_file_on_disk(args.rule)
    window = window_from_region(parse_region(args.window))
    ppu = settings.render.pixels_per_unit if args.ppu is None else args.ppu
    overlays = [ConfigurationFactory.make_from_file_on_disk(path, run.tol()) for path in args.overlay or []]
    svg = render_rule(rule, window, ppu, settings.render.palette, overlays, args.dim)
    save_svg(svg, args.svg)
    return {"svg": args.svg, "bytes": len(svg.encode()), "window": [list(w) for w in window],
            "pixels_per_unit": ppu, "overlays": len(overlays)}, EXIT_OK


def _suite(args, run: RunConfig, settings: config.Config) -> Tuple[dict, int]:
    from gallai import Gallai

    if not args.config:
        raise ValueError("suite needs --config FILE")
    gallai = Gallai(args.config)
    gallai.setup()
    results = gallai.run()
    passed = all(r.passed for r in results)
    return {"passed": passed, "checks": [r.to_dict() for r in results]}, EXIT_OK if passed else EXIT_WITNESS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gallai", description="Euclidean Gallai-Ramsey checks and searches.")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (default from config, else 0)")
    parser.add_argument("--tol-abs", type=float, default=None, help="absolute length tolerance")
    parser.add_argument("--tol-rel", type=float, default=None, help="relative length tolerance")
    parser.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    parser.add_argument("--config", default=None, help="YAML settings (tolerance, sampler, optimizer, render, operators)")
    parser.add_argument("--log-level", type=str.upper, default=os.environ.get("GALLAI_LOG_LEVEL", "WARNING").upper(),
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("invariants", help="metric invariants of a configuration")
    p.add_argument("--input", required=True)
    p.add_argument("--restarts", type=int, default=None)
    p.set_defaults(handler=_invariants)

    p = commands.add_parser("verify", help="exhaustive finite lemmas")
    verify = p.add_subparsers(dest="verify_command", required=True)
    q5 = verify.add_parser("q5", help="mono unit pair or rainbow unit square in every coloring")
    q5.add_argument("--full-q5", action="store_true", help="search all 32 cube points")
    q5.add_argument("--workers", type=int, default=1)
    q5.set_defaults(handler=_verify_q5)
    triples = verify.add_parser("triples", help="no spherical coloring avoids mono and rainbow l3")
    source = triples.add_mutually_exclusive_group()
    source.add_argument("--offsets", help="JSON list of rational offsets")
    source.add_argument("--builtin-proof-set", action="store_true", help="the 22-offset thirds grid (default)")
    source.add_argument("--extended-set", action="store_true", help="the grid plus 3/2, 5/2, 7/2 and 5/6")
    triples.set_defaults(handler=_verify_triples)

    p = commands.add_parser("make-rule", help="block coloring with no monochromatic copy of a target")
    p.add_argument("--target", required=True)
    p.add_argument("--grid", action="store_true", help="grid blocks for a target of zero box-width")
    p.add_argument("--restarts", type=int, default=None)
    p.set_defaults(handler=_make_rule)

    p = commands.add_parser("check-coloring", help="sample random placements of a pattern under a rule")
    p.add_argument("--rule", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--mode", choices=["mono", "rainbow"], default="mono")
    p.add_argument("--region", required=True, help='"x0,x1;y0,y1;..."')
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--batch-size", type=int, default=None)
    p.set_defaults(handler=_check_coloring)

    p = commands.add_parser("find", help="mono or rainbow copies in a colored point set")
    p.add_argument("--mode", choices=["mono", "rainbow"], required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--expect-none", action="store_true", help="exit 1 when a copy is found")
    p.set_defaults(handler=_find)

    p = commands.add_parser("propagate", help="forcing under no rainbow K2")
    p.add_argument("--points", required=True)
    p.add_argument("--k2", required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--seed", dest="seeds", action="append", metavar="INDEX:COLOR")
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--slab-axis", type=int, default=None)
    p.add_argument("--slab-value", type=float, default=0.0)
    p.set_defaults(handler=_propagate)

    p = commands.add_parser("render", help="SVG of a rule over a 2-D window")
    p.add_argument("--rule", required=True)
    p.add_argument("--window", required=True, help='"x0,x1;y0,y1"')
    p.add_argument("--svg", required=True)
    p.add_argument("--ppu", type=float, default=None, help="pixels per unit")
    p.add_argument("--dim", type=int, default=2, help="pad sample points with zeros up to this dimension")
    p.add_argument("--overlay", action="append", help="configuration JSON to outline")
    p.set_defaults(handler=_render)

    p = commands.add_parser("suite", help="run the check operators of a YAML config")
    p.set_defaults(handler=_suite)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, stream=sys.stderr, force=True)
    try:
        settings = config.load(args.config) if args.config else config.Config()
        run = RunConfig.from_args(args, settings)
        start = time.perf_counter()
        result, code = args.handler(args, run, settings)
        elapsed = int((time.perf_counter() - start) * 1000)
    except (ValueError, FileNotFoundError, DaciteError) as e:
        log.error(str(e))
        print(f"gallai: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    report = Report(run.command, asdict(run), result, elapsed)
    text = json.dumps(report.to_dict(), indent=2)
    if run.out:
        with open(run.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
