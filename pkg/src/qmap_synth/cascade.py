"""Single-target stage decomposition of a reversible function.

The circuit is split into one stage per bit: stage s rewrites target bit
order[s] as a function of the intermediate state, which holds final
values on already-processed bits and original values elsewhere.  Each
stage's required flip is captured by a toggle table over intermediate
states; a state no input reaches stays a don't-care (None).

The decomposition exists only when, at every stage, all inputs reaching
the same intermediate state agree on the toggle value.  Bijections like
the 2-bit swap fail this for every ordering, which `decompose` reports
with a concrete witness pair instead of producing a wrong circuit.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .boolfn import ReversibleFunction
from .errors import CascadeInfeasible, NoFeasibleOrder, WidthOutOfRange

MAX_SEARCH_WIDTH = 8

__all__ = [
    "MAX_SEARCH_WIDTH",
    "StageOrder",
    "ToggleTable",
    "decompose",
    "find_feasible_order",
]


@dataclass(frozen=True)
class StageOrder:
    """The sequence in which target bits are rewritten."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation of 0..{len(self.order) - 1}: "
                             f"{self.order}")

    @classmethod
    def natural(cls, n: int) -> "StageOrder":
        return cls(tuple(range(n)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class ToggleTable:
    """Per-stage flip function over intermediate states.

    entries[v] is 1 if the target bit must flip when the stage sees
    intermediate state v, 0 if it must hold, None if no input reaches v.
    primed[j] marks bit j as already rewritten by an earlier stage.
    """

    stage: int
    target: int
    width: int
    entries: tuple[int | None, ...]
    primed: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 1 << self.width:
            raise ValueError("entry count must be 2^width")
        if len(self.primed) != self.width:
            raise ValueError("primed flags must cover every bit")

    def defined_states(self) -> list[int]:
        return [v for v, t in enumerate(self.entries) if t is not None]

    def is_zero(self) -> bool:
        return all(t in (0, None) for t in self.entries)


def decompose(f: ReversibleFunction,
              order: StageOrder | None = None) -> list[ToggleTable]:
    """Split f into one toggle table per stage of the given order.

    Raises CascadeInfeasible with a witness input pair when some stage's
    toggle value is not well defined on an intermediate state.
    """
    n = f.width
    if order is None:
        order = StageOrder.natural(n)
    if len(order) != n:
        raise ValueError(f"order length {len(order)} != width {n}")

    size = 1 << n
    # states[x] is the intermediate state input x has reached so far
    states = list(range(size))
    tables: list[ToggleTable] = []
    processed: list[int] = []

    for stage, target in enumerate(order):
        tbit = 1 << target
        entries: list[int | None] = [None] * size
        reached_by: list[int] = [0] * size
        for x in range(size):
            v = states[x]
            t = ((x ^ f.table[x]) >> target) & 1
            known = entries[v]
            if known is None:
                entries[v] = t
                reached_by[v] = x
            elif known != t:
                raise CascadeInfeasible(stage, target, v,
                                        (reached_by[v], x), n)
        for x in range(size):
            if ((states[x] ^ f.table[x]) & tbit) != 0:
                states[x] ^= tbit
        primed = tuple(j in processed for j in range(n))
        tables.append(ToggleTable(stage, target, n, tuple(entries), primed))
        processed.append(target)

    return tables


def replay(f_width: int, tables: Sequence[ToggleTable], x: int) -> int:
    """Apply the stage toggles to input x; the defining contract is
    replay(decompose(f)) == f on every input."""
    v = x
    for table in tables:
        t = table.entries[v]
        if t is None:
            raise ValueError(
                f"state {v:0{f_width}b} undefined at stage {table.stage}")
        v ^= t << table.target
    return v


def find_feasible_order(f: ReversibleFunction) -> StageOrder:
    """First stage order (lexicographic) for which decompose succeeds.

    Plain exhaustion over all n! orders, so the width is capped at
    MAX_SEARCH_WIDTH.  Raises NoFeasibleOrder when every order fails.
    """
    if f.width > MAX_SEARCH_WIDTH:
        raise WidthOutOfRange(
            f"order search is exhaustive; width {f.width} exceeds "
            f"{MAX_SEARCH_WIDTH}")
    for perm in permutations(range(f.width)):
        order = StageOrder(perm)
        try:
            decompose(f, order)
        except CascadeInfeasible:
            continue
        return order
    raise NoFeasibleOrder(
        f"all {f.width}! stage orders fail for this function")
