"""Classical reversible Boolean functions on n-bit words.

Bit q0 is the least significant bit of a word; printed words run
q_{n-1}...q_0 (MSB first).  Functions are stored as flat permutation
tables indexed by input value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateInputRow,
    MissingInputRow,
    NotBijective,
    TruthTableSyntaxError,
    WidthMismatch,
    WidthOutOfRange,
)

MAX_WIDTH = 16

__all__ = [
    "MAX_WIDTH",
    "BitWord",
    "ReversibleFunction",
    "is_bijective",
    "parse_truth_table",
    "render_truth_table",
    "gray_to_binary_function",
    "identity_function",
]


def _check_width(width: int) -> None:
    if not 1 <= width <= MAX_WIDTH:
        raise WidthOutOfRange(f"width must be in [1, {MAX_WIDTH}], got {width}")


@dataclass(frozen=True, order=True)
class BitWord:
    """A fixed-width unsigned word; bit i holds q_i."""

    width: int
    value: int

    def __post_init__(self) -> None:
        _check_width(self.width)
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    def bit(self, i: int) -> int:
        return (self.value >> i) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    @classmethod
    def parse(cls, text: str) -> "BitWord":
        text = text.strip()
        if not text or text.strip("01"):
            raise ValueError(f"not a binary word: {text!r}")
        return cls(len(text), int(text, 2))


@dataclass(frozen=True)
class ReversibleFunction:
    """A bijective mapping on n-bit words, stored as a permutation table."""

    width: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_width(self.width)
        if len(self.table) != 1 << self.width:
            raise ValueError(
                f"table has {len(self.table)} entries, expected {1 << self.width}")
        if not is_bijective(self.table):
            raise ValueError("table is not a permutation")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def word(self, x: int) -> BitWord:
        return BitWord(self.width, self.table[x])

    def inverse(self) -> "ReversibleFunction":
        inv = [0] * len(self.table)
        for x, y in enumerate(self.table):
            inv[y] = x
        return ReversibleFunction(self.width, tuple(inv))

    def compose(self, other: "ReversibleFunction") -> "ReversibleFunction":
        """self after other: x -> self(other(x))."""
        if other.width != self.width:
            raise ValueError("width mismatch")
        return ReversibleFunction(
            self.width, tuple(self.table[y] for y in other.table))


def is_bijective(table: Sequence[int] | Sequence[BitWord]) -> bool:
    """True iff the table is a permutation of {0, ..., len-1}."""
    values = [t.value if isinstance(t, BitWord) else t for t in table]
    return sorted(values) == list(range(len(values)))


_ROW_RE = re.compile(r"^([01]+)\s*->\s*([01]+)$")


def parse_truth_table(text: str | Iterable[str]) -> ReversibleFunction:
    """Parse the line-oriented truth-table format.

    Comments start with '#', a `.width N` header precedes exactly 2^N
    data lines of the form `<bits> -> <bits>` (MSB first, any order).
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = [line.rstrip("\n") for line in text]

    width: int | None = None
    table: list[int | None] = []
    seen_output: dict[int, int] = {}

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(".width"):
            if width is not None:
                raise TruthTableSyntaxError("duplicate .width header", lineno)
            fields = line.split()
            if len(fields) != 2 or not fields[1].isdigit():
                raise TruthTableSyntaxError(f"malformed header: {line!r}", lineno)
            width = int(fields[1])
            try:
                _check_width(width)
            except WidthOutOfRange as exc:
                raise TruthTableSyntaxError(str(exc), lineno) from None
            table = [None] * (1 << width)
            continue
        if line.startswith("."):
            raise TruthTableSyntaxError(f"unknown directive: {line!r}", lineno)

        m = _ROW_RE.match(line)
        if m is None:
            raise TruthTableSyntaxError(f"expected '<bits> -> <bits>': {line!r}", lineno)
        if width is None:
            raise TruthTableSyntaxError("data line before .width header", lineno)
        in_bits, out_bits = m.group(1), m.group(2)
        if len(in_bits) != width or len(out_bits) != width:
            raise WidthMismatch(
                f"row has widths {len(in_bits)}->{len(out_bits)}, expected {width}",
                lineno)
        x, y = int(in_bits, 2), int(out_bits, 2)
        if table[x] is not None:
            raise DuplicateInputRow(f"input {in_bits} appears twice", lineno)
        if y in seen_output:
            raise NotBijective(y, seen_output[y], x, width, lineno)
        table[x] = y
        seen_output[y] = x

    if width is None:
        raise TruthTableSyntaxError("missing .width header", len(lines) or 1)
    missing = [x for x, y in enumerate(table) if y is None]
    if missing:
        raise MissingInputRow(
            f"{len(missing)} input rows missing, first is "
            f"{format(missing[0], f'0{width}b')}")
    return ReversibleFunction(width, tuple(table))  # type: ignore[arg-type]


def render_truth_table(f: ReversibleFunction) -> str:
    """Canonical text form; `parse_truth_table` round-trips it."""
    fmt = f"0{f.width}b"
    lines = [f".width {f.width}"]
    lines += [f"{x:{fmt}} -> {y:{fmt}}" for x, y in enumerate(f.table)]
    return "\n".join(lines) + "\n"


def gray_to_binary_function(n: int) -> ReversibleFunction:
    """Gray-code-to-binary converter: output bit i is the XOR of input bits j >= i."""
    _check_width(n)
    table = []
    for g in range(1 << n):
        b = g
        g >>= 1
        while g:
            b ^= g
            g >>= 1
        table.append(b)
    return ReversibleFunction(n, tuple(table))


def identity_function(n: int) -> ReversibleFunction:
    _check_width(n)
    return ReversibleFunction(n, tuple(range(1 << n)))
