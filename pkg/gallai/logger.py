import logging
import os
import time
from contextlib import contextmanager

logging.basicConfig(level=os.environ.get("GALLAI_LOG_LEVEL", "INFO"))


class Logger:
    """
    Logger handed to check operators. Adds a one-line outcome record and a
    timer around the standard logging calls.
    """

    def __init__(self, moduleName):
        self.check = moduleName.rsplit(".", 1)[-1]
        self.verbose = os.environ.get("GALLAI_VERBOSE", "0") == "1"
        self.log = logging.getLogger(moduleName)

    def info(self, msg, *args, **kwargs):
        self.log.info(msg, *args, **kwargs)

    def debug(self, msg):
        if self.verbose:
            self.log.info(msg)
        else:
            self.log.debug(msg)

    def error(self, msg, *args, **kwargs):
        self.log.error(msg, *args, **kwargs)

    def outcome(self, passed: bool, **fields):
        """Log `check=<name> passed=<bool> key=value ...` at INFO, or WARNING when the check fails."""
        details = " ".join(f"{k}={v}" for k, v in fields.items())
        level = logging.INFO if passed else logging.WARNING
        self.log.log(level, f"check={self.check} passed={passed} {details}".rstrip())

    @contextmanager
    def timed(self, label):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.debug(f"{label} took {(time.perf_counter() - start) * 1000:.1f} ms")
