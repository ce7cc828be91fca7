"""Shared coordinate context for one computation.

All currents, forms, varieties and test data in a computation refer to
the same `VarContext`; mixing contexts is an error caught at operation
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VarContext:
    """n complex coordinates t1..tn on a chart of C^n."""

    n: int
    names: tuple = field(default=None)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("dimension must be a positive integer")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"t{j + 1}" for j in range(self.n)))
        elif len(self.names) != self.n:
            raise ValueError("need one name per variable")

    def name(self, j: int) -> str:
        return self.names[j]

    def check(self, other: "VarContext"):
        if self != other:
            raise ContextMismatch(f"contexts differ: {self} vs {other}")

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero_exp(self) -> tuple:
        return (0,) * self.n
