import math

from gallai.colorings import theorem_block_rule, verify_gallai
from gallai.geometry import box_width_bound, diameter
from gallai.logger import Logger
from gallai.models.point import Configuration

log = Logger(__name__)


def initialize(param):
    global settings, target, pattern
    settings = {
        "trials": int(param.get("trials", 100_000)),
        "seed": int(param.get("seed", 0)),
        "batch_size": int(param.get("batch_size", 4096)),
        "half_width": float(param.get("half_width", 20)),
    }
    a = float(param.get("a", 1.0))
    b = float(param.get("b", math.sqrt(3)))
    target = Configuration(((0, 0), (a, 0), (a, b), (0, b)), label=f"rectangle {a}x{b}")
    # three points of diameter below the block length: never rainbow
    side = float(param.get("pattern_side", 0.9 * a))
    pattern = Configuration(((0, 0), (side, 0), (side / 2, side * math.sqrt(3) / 2)), label="small triangle")


def run():
    rule = theorem_block_rule(target)
    h = settings["half_width"]
    region = ((-h, h), (-h, h))
    with log.timed(f"sampling {settings['trials']} placements"):
        report = verify_gallai(rule, target, pattern, region, settings["trials"], settings["seed"],
                               settings["batch_size"])
    log.outcome(report.clean, colors=rule.num_colors, mono_clean=report.mono.clean, rainbow_clean=report.rainbow.clean)
    return {
        "passed": report.clean,
        "rule": rule.to_dict(),
        "target": {"diameter": diameter(target), "box_width": box_width_bound(target).to_dict()},
        "pattern_diameter": diameter(pattern),
        "report": report.to_dict(),
    }
