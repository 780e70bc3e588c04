from gallai.colorings import SphericalFloorModRule, is_spherical_rule, verify_no_mono, verify_no_rainbow
from gallai.logger import Logger
from gallai.models.point import Configuration

log = Logger(__name__)


def initialize(param):
    global settings, rule, line
    settings = {
        "trials": int(param.get("trials", 100_000)),
        "seed": int(param.get("seed", 0)),
        "batch_size": int(param.get("batch_size", 4096)),
        "half_width": float(param.get("half_width", 50)),
    }
    rule = SphericalFloorModRule(int(param.get("m", 4)))
    line = Configuration(((0.0, 0.0), (1.0, 0.0), (2.0, 0.0)), label="l3")


def run():
    """
    floor(|x|^2) mod 4 has no monochromatic l3; being spherical, it must then
    have a rainbow one, which the sampler should find.
    """
    h = settings["half_width"]
    region = ((-h, h), (-h, h))
    mono = verify_no_mono(rule, line, region, settings["trials"], settings["seed"], settings["batch_size"])
    rainbow = verify_no_rainbow(rule, line, region, settings["trials"], settings["seed"], settings["batch_size"])
    spherical = is_spherical_rule(rule)
    passed = spherical and mono.clean and not rainbow.clean
    log.outcome(passed, m=rule.m, mono_clean=mono.clean, rainbow_found=not rainbow.clean)
    return {
        "passed": passed,
        "spherical": spherical,
        "mono": mono.to_dict(),
        "rainbow": rainbow.to_dict(),
    }
