import logging
import time
from typing import List

from gallai import config
from gallai.models.verdict import CheckResult

log = logging.getLogger(__name__)


class Gallai:
    def __init__(self, configPath):
        self.config = config.load(configPath)
        self.operators = None
        if self.config.operators:
            from gallai.operator import Operator

            self.operators = Operator(self.config.operators)

    def setup(self):
        if self.operators:
            self.operators.setup()

    def run(self) -> List[CheckResult]:
        """Run every configured check; a check that raises is reported as failed."""
        results = []
        if not self.operators:
            log.info("no operators configured")
            return results
        for name, module in self.operators.get().items():
            start = time.perf_counter()
            try:
                details = module.run()
                result = CheckResult(name, bool(details.get("passed")), details)
            except Exception as e:
                log.exception(f"operator {name} failed")
                result = CheckResult(name, False, errors=[f"{type(e).__name__}: {e}"])
            result.details["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
            log.info(f"{name}: {'passed' if result.passed else 'FAILED'}")
            results.append(result)
        return results
