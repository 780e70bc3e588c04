from gallai.logger import Logger
from gallai.models.point import Configuration
from gallai.propagate import (
    bisector_chain,
    build_instance,
    flood_fill_two_point,
    forcing_report,
    lattice_points,
    propagate_fixpoint,
)

log = Logger(__name__)


def initialize(param):
    global settings
    settings = {
        "length": int(param.get("length", 11)),
        "colors": int(param.get("colors", 3)),
        "chain_step": float(param.get("chain_step", 1.5)),
        "chain_count": int(param.get("chain_count", 6)),
    }


def _forced_to_seed(points, d, seed_color=0):
    pair = Configuration(((0.0,) * points.dim, (d,) + (0.0,) * (points.dim - 1)), label="pair")
    instance = build_instance(points, pair, settings["colors"], [(0, seed_color)])
    result = propagate_fixpoint(instance)
    flood = flood_fill_two_point(points, 0, d)
    forced = [i for i in range(len(points)) if result.map.masks[i] == 1 << seed_color]
    return instance, result, flood, forced


def run():
    line = lattice_points((settings["length"],), label="integer line")
    instance, result, flood, forced = _forced_to_seed(line, 1.0)
    chain = bisector_chain(1.0, settings["chain_step"], settings["chain_count"])
    _, chain_result, chain_flood, chain_forced = _forced_to_seed(chain, 1.0)

    line_ok = len(forced) == len(line) and list(flood.forced) == forced
    chain_ok = len(chain_forced) == len(chain) and list(chain_flood.forced) == chain_forced
    passed = line_ok and chain_ok and not result.contradiction
    log.outcome(passed, line_forced=len(forced), line_rounds=result.rounds, chain_forced=len(chain_forced))
    return {
        "passed": passed,
        "line": forcing_report(instance, result),
        "line_constraints": len(instance.constraints),
        "chain_forced": len(chain_forced),
        "chain_points": len(chain),
        "chain_rounds": chain_result.rounds,
    }
