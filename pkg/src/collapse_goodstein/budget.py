"""Resource limits for the explosive computations (Hardy values, descents)."""
from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_MAX_STEPS = 10**6
DEFAULT_MAX_BITS = 2**20


@dataclass(frozen=True)
class Budget:
    max_steps: int = DEFAULT_MAX_STEPS
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.max_steps < 1 or self.max_bits < 1:
            raise ValueError("budget limits must be >= 1")

    def meter(self):
        return Meter(self)


DEFAULT_BUDGET = Budget()


class Meter:
    """Per-call consumption counter; never shared between calls."""

    __slots__ = ("budget", "steps")

    def __init__(self, budget=None):
        self.budget = budget or DEFAULT_BUDGET
        self.steps = 0

    def tick(self, n=1):
        self.steps += n
        if self.steps > self.budget.max_steps:
            raise BudgetExceeded(f"step budget of {self.budget.max_steps} exhausted")

    def check_bits(self, bits):
        if bits > self.budget.max_bits:
            raise BudgetExceeded(
                f"value needs about {bits} bits, over the limit of {self.budget.max_bits}")


def as_meter(budget):
    if isinstance(budget, Meter):
        return budget
    return Meter(budget)
