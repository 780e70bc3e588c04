import importlib
import logging

from gallai.config import OperatorConfig

log = logging.getLogger(__name__)


class Operator:
    """Loads check operators from the top-level `operators` package by type name."""

    def __init__(self, config: OperatorConfig):
        self.active_operators = {}
        self.operators = config.parameters

    def setup(self):
        for operator in self.operators:
            log.info(f"setting up {operator.name} ({operator.type})")
            module_path = f"operators.{operator.type}.{operator.type}"
            module = importlib.import_module(module_path)
            module.initialize(operator.parameters or {})
            self.active_operators[operator.name] = module

    def get(self):
        return self.active_operators
