"""Basis-state simulation, permutation extraction, equivalence checking.

States are plain bit words (no amplitudes); a gate flips its target iff
every control matches its polarity.  Gates compile to mask triples once
per circuit, so sweeping all 2^n inputs stays cheap well past n = 8.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .boolfn import BitWord, ReversibleFunction
from .circuit import Circuit, Gate
from .errors import AncillaNotRestored, LineOutOfRange

__all__ = [
    "Counterexample",
    "apply_gate",
    "run",
    "permutation_of",
    "verify",
]


def _compile_gate(g: Gate, width: int) -> tuple[int, int, int]:
    """(positive control mask, negative control mask, target bit)."""
    if any(l >= width for l in g.lines):
        raise LineOutOfRange(
            f"gate {g} does not fit in {width} lines")
    pos = neg = 0
    for c in g.controls:
        if c.positive:
            pos |= 1 << c.line
        else:
            neg |= 1 << c.line
    return pos, neg, 1 << g.target


def _step(state: int, pos: int, neg: int, tbit: int) -> int:
    if (state & pos) == pos and (state & neg) == 0:
        return state ^ tbit
    return state


def apply_gate(s: BitWord, g: Gate) -> BitWord:
    """Flip the target bit iff every control matches its polarity."""
    pos, neg, tbit = _compile_gate(g, s.width)
    return BitWord(s.width, _step(s.value, pos, neg, tbit))


def _run_int(compiled: Sequence[tuple[int, int, int]], value: int) -> int:
    for pos, neg, tbit in compiled:
        if (value & pos) == pos and (value & neg) == 0:
            value ^= tbit
    return value


def run(c: Circuit, input: BitWord | int) -> BitWord:
    """Apply the circuit to one basis input with ancillas at 0; the data
    lines come back, and a nonzero final ancilla is a hard error."""
    x = input.value if isinstance(input, BitWord) else input
    if isinstance(input, BitWord) and input.width != c.data_width:
        raise ValueError(
            f"input width {input.width} != data width {c.data_width}")
    if not 0 <= x < (1 << c.data_width):
        raise ValueError(f"input {x} does not fit in {c.data_width} bits")
    compiled = [_compile_gate(g, c.total_width) for g in c.gates]
    out = _run_int(compiled, x)
    if out >> c.data_width:
        raise AncillaNotRestored(x, out >> c.data_width)
    return BitWord(c.data_width, out)


def permutation_of(c: Circuit) -> list[BitWord]:
    """The circuit's action on every data input, in ascending order."""
    compiled = [_compile_gate(g, c.total_width) for g in c.gates]
    n = c.data_width
    table = []
    for x in range(1 << n):
        out = _run_int(compiled, x)
        if out >> n:
            raise AncillaNotRestored(x, out >> n)
        table.append(BitWord(n, out))
    return table


@dataclass(frozen=True)
class Counterexample:
    input: BitWord
    got: BitWord
    expected: BitWord

    def __str__(self) -> str:
        return (f"input {self.input} -> {self.got}, expected {self.expected}")


def verify(c: Circuit, f: ReversibleFunction) -> Counterexample | None:
    """None when the circuit's permutation equals f; otherwise the first
    mismatching input in ascending order."""
    if c.data_width != f.width:
        raise ValueError(
            f"circuit width {c.data_width} != function width {f.width}")
    compiled = [_compile_gate(g, c.total_width) for g in c.gates]
    n = c.data_width
    for x in range(1 << n):
        out = _run_int(compiled, x)
        if out >> n:
            raise AncillaNotRestored(x, out >> n)
        if out != f.table[x]:
            return Counterexample(BitWord(n, x), BitWord(n, out),
                                  BitWord(n, f.table[x]))
    return None
