from gallai.finite_verify import (
    OPENING_OFFSETS,
    THIRDS_GRID_OFFSETS,
    PotentialTriple,
    build_triple_csp,
    is_potential_triple,
    potential_triples_for,
    realize_triple,
    solve_triple_csp,
)
from gallai.logger import Logger
from gallai.models.factory import OffsetFactory
from gallai.models.verdict import CspStatus

log = Logger(__name__)


def initialize(param):
    global offsets, base
    offsets = OffsetFactory.make_from_list(param["offsets"]) if param.get("offsets") else THIRDS_GRID_OFFSETS
    base = int(param.get("N", 100))


def _opening_triples():
    """(N+1, N, N+1), (N, N, N+2) and (N+2, N+1, N+2), each with its realization error."""
    rows = []
    for a, b, c in build_triple_csp(OPENING_OFFSETS).constraint_offsets():
        triple = PotentialTriple(base + a, base + b, base + c)
        row = {"triple": triple.to_list(), "potential": is_potential_triple(triple)}
        if row["potential"]:
            config = realize_triple(triple)
            norms = (config.array**2).sum(axis=1)
            row["norm_error"] = max(abs(float(n) - float(y)) for n, y in zip(norms, (triple.y1, triple.y2, triple.y3)))
        rows.append(row)
    return rows


def run():
    csp = build_triple_csp(offsets)
    result = solve_triple_csp(csp)
    opening = _opening_triples()
    at_bound = potential_triples_for(result.sufficient_n, csp)
    passed = (
        result.status is CspStatus.UNSAT
        and len(opening) == 3
        and all(row["potential"] and row["norm_error"] <= 1e-9 for row in opening)
        and all(ok for _, ok in at_bound)
    )
    log.outcome(passed, offsets=len(csp.offsets), status=result.status.value, nodes=result.nodes)
    return {
        "passed": passed,
        "csp": result.to_dict(csp),
        "opening_triples": opening,
        "all_potential_at_sufficient_N": all(ok for _, ok in at_bound),
    }
