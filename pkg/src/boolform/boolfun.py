"""Boolean functions as truth tables.

A function of n variables is stored as an integer of 2**n bits.  Bit j of
the table holds the value of the function under the assignment encoded by j,
where x1 is the least significant bit of j, x2 the next one, and so on.
Read the serialized bit string left to right (most significant bit first)
and x1 alternates fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class InputError(ValueError):
    """Malformed argument (wrong length, bad serialization, ...)."""


@dataclass(frozen=True, order=True)
class Literal:
    """A variable x_i or its negation, i being 1-based."""

    var: int
    positive: bool = True

    def __post_init__(self) -> None:
        if self.var < 1:
            raise InputError("variable index must be >= 1")

    def negate(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return ("x%d" if self.positive else "~x%d") % self.var


def _assignment_index(assignment: Iterable[int]) -> tuple[int, int]:
    # x1 is bit 0 of the index, x2 bit 1, ...
    idx = 0
    count = 0
    for i, bit in enumerate(assignment):
        if bit not in (0, 1, True, False):
            raise InputError("assignment entries must be bits")
        if bit:
            idx |= 1 << i
        count += 1
    return idx, count


@dataclass(frozen=True)
class BoolFunc:
    """Truth table of a Boolean function on n >= 1 variables."""

    n: int
    table: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 24:
            raise InputError("n must be in 1..24")
        if not 0 <= self.table < (1 << (1 << self.n)):
            raise InputError("table does not fit in 2^n bits")

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(n: int, value: bool) -> "BoolFunc":
        size = 1 << n
        return BoolFunc(n, (1 << size) - 1 if value else 0)

    @staticmethod
    def from_literal(lit: Literal, n: int) -> "BoolFunc":
        if lit.var > n:
            raise InputError("literal variable exceeds n")
        size = 1 << n
        table = 0
        bit = 1 << (lit.var - 1)
        for idx in range(size):
            if bool(idx & bit) == lit.positive:
                table |= 1 << idx
        return BoolFunc(n, table)

    # -- core operations ----------------------------------------------

    def evaluate(self, assignment: Iterable[int]) -> bool:
        idx, count = _assignment_index(assignment)
        if count != self.n:
            raise InputError("assignment has %d bits, expected %d" % (count, self.n))
        return bool((self.table >> idx) & 1)

    def negate(self) -> "BoolFunc":
        size = 1 << self.n
        return BoolFunc(self.n, self.table ^ ((1 << size) - 1))

    def essential_vars(self) -> set[int]:
        """Variables whose flip changes the function somewhere."""
        result: set[int] = set()
        size = 1 << self.n
        for i in range(1, self.n + 1):
            bit = 1 << (i - 1)
            for idx in range(size):
                if idx & bit:
                    continue
                if ((self.table >> idx) & 1) != ((self.table >> (idx | bit)) & 1):
                    result.add(i)
                    break
        return result

    def is_constant(self) -> bool:
        return self.table in (0, (1 << (1 << self.n)) - 1)

    def lift(self, n: int) -> "BoolFunc":
        """The same function viewed on n >= self.n variables."""
        if n < self.n:
            raise InputError("cannot lift to fewer variables")
        table = self.table
        width = 1 << self.n
        for _ in range(n - self.n):
            table |= table << width
            width <<= 1
        return BoolFunc(n, table)

    # -- serialization ------------------------------------------------

    def to_string(self) -> str:
        digits = max(1, (1 << self.n) // 4)
        return "n:%d:%0*x" % (self.n, digits, self.table)

    @staticmethod
    def from_string(text: str) -> "BoolFunc":
        parts = text.strip().split(":")
        if len(parts) != 3 or parts[0] != "n":
            raise InputError("expected 'n:<count>:<hex>'")
        try:
            n = int(parts[1])
            table = int(parts[2], 16)
        except ValueError as exc:
            raise InputError("bad serialization: %r" % text) from exc
        return BoolFunc(n, table)

    def __str__(self) -> str:
        return self.to_string()
