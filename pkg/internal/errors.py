"""
Exception hierarchy shared by generators, searches and the CLI.
"""
from typing import Optional


class GadgetError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(GadgetError, ValueError):
    """Invalid identifiers, parameters or unknown graph members."""


class RoleConflictError(InputError):
    """Two vertices with distinct non-Plain roles were identified."""


class ParseError(InputError):
    """A GraphDocument line could not be parsed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class MalformedCertificateError(GadgetError):
    """A certificate references ids that do not exist."""


class BudgetExceededError(GadgetError):
    """A search expanded more nodes than its budget allows."""

    def __init__(self, nodes: int, budget: Optional[int] = None):
        super().__init__(f"node budget exceeded after {nodes} nodes (budget {budget})")
        self.nodes = nodes
        self.budget = budget


class ConstructionError(GadgetError):
    """A gadget construction could not satisfy its structural conditions."""
