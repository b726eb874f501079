"""
Exception hierarchy for ramsey-forge
"""
from typing import Optional


class ForgeError(Exception):
    """Base class for every error raised by the library"""


class TreeParseError(ForgeError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NodeIndexError(ForgeError, IndexError):
    pass


class NotRigidSurjectionError(ForgeError):
    pass


class ArityError(ForgeError, ValueError):
    pass


class InstanceError(ForgeError, ValueError):
    pass


class EmptyPlacementsError(InstanceError):
    """No placement exists, so no coloring can be beaten"""


class FiberError(ForgeError, ValueError):
    pass


class NotPrimeError(ForgeError, ValueError):
    pass


class ConfigError(ForgeError, ValueError):
    pass


class UsageError(ForgeError):
    pass


class BudgetExhaustedError(ForgeError):
    def __init__(self, budget: int, nodes: int, context: Optional[str] = None):
        where = f" ({context})" if context else ""
        super().__init__(f"search budget of {budget} nodes exhausted after {nodes} nodes{where}")
        self.budget = budget
        self.nodes = nodes


class CapExceededError(ForgeError):
    def __init__(self, cap: int, required: int, what: str = "colorings"):
        super().__init__(f"{what} cap exceeded: {required} required, cap is {cap}")
        self.cap = cap
        self.required = required
