from gallai.finite_verify import bell_number, verify_q5_lemma
from gallai.logger import Logger

log = Logger(__name__)


def initialize(param):
    global settings
    settings = {
        "full": bool(param.get("full", False)),
        "workers": int(param.get("workers", 1)),
    }
    log.debug(f"q5 lemma settings {settings}")


def run():
    with log.timed("q5 enumeration"):
        report = verify_q5_lemma(full=settings["full"], workers=settings["workers"])
    result = report.to_dict()
    if settings["full"]:
        result["passed"] = report.passed
    else:
        expected = bell_number(len(report.points))
        result["expected_partitions"] = expected
        result["passed"] = (
            report.passed
            and report.partitions_checked == expected
            and report.case1_hits + report.case2_hits == expected
        )
    log.outcome(result["passed"], colorings=report.partitions_checked, counterexamples=len(report.counterexamples))
    return result
