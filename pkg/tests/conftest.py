"""Shared fixtures: the 4-bit Gray-to-binary worked example and the two
hand-built reference circuits for it, plus small oracle helpers."""
from __future__ import annotations

import random

import pytest

from qmap_synth import Circuit, Gate, ReversibleFunction

# 4-bit Gray code -> binary, input q3q2q1q0 -> output, one row per line.
GRAY4_ROWS = [
    ("0000", "0000"),
    ("0001", "0001"),
    ("0011", "0010"),
    ("0010", "0011"),
    ("0110", "0100"),
    ("0111", "0101"),
    ("0101", "0110"),
    ("0100", "0111"),
    ("1100", "1000"),
    ("1101", "1001"),
    ("1111", "1010"),
    ("1110", "1011"),
    ("1010", "1100"),
    ("1011", "1101"),
    ("1001", "1110"),
    ("1000", "1111"),
]

# Toggle columns for the same rows: present state -> (T3, T2, T1, T0).
GRAY4_TOGGLES = {
    "0000": (0, 0, 0, 0),
    "0001": (0, 0, 0, 0),
    "0011": (0, 0, 0, 1),
    "0010": (0, 0, 0, 1),
    "0110": (0, 0, 1, 0),
    "0111": (0, 0, 1, 0),
    "0101": (0, 0, 1, 1),
    "0100": (0, 0, 1, 1),
    "1100": (0, 1, 0, 0),
    "1101": (0, 1, 0, 0),
    "1111": (0, 1, 0, 1),
    "1110": (0, 1, 0, 1),
    "1010": (0, 1, 1, 0),
    "1011": (0, 1, 1, 0),
    "1001": (0, 1, 1, 1),
    "1000": (0, 1, 1, 1),
}


def gray4_function() -> ReversibleFunction:
    table = [0] * 16
    for inp, out in GRAY4_ROWS:
        table[int(inp, 2)] = int(out, 2)
    return ReversibleFunction(4, tuple(table))


def gray4_text() -> str:
    lines = ["# 4-bit Gray code to binary", ".width 4"]
    lines += [f"{inp} -> {out}" for inp, out in GRAY4_ROWS]
    return "\n".join(lines) + "\n"


def optimized_reference_circuit() -> Circuit:
    """The hand-optimized 10-gate realization: 4 X + 4 CX + 2 CCX on
    four lines, no ancilla."""
    return Circuit(4, 0, (
        Gate.cx(2, 0),
        Gate.x(3),
        Gate.ccx(1, 3, 0),
        Gate.x(3),
        Gate.x(1),
        Gate.ccx(1, 3, 0),
        Gate.x(1),
        Gate.cx(2, 1),
        Gate.cx(3, 1),
        Gate.cx(3, 2),
    ))


def unoptimized_reference_circuit() -> Circuit:
    """The 27-gate realization over 2-control Toffolis with one ancilla
    (line 4): 12 X + 14 CCX + 1 CX."""
    return Circuit(4, 1, (
        Gate.x(2),
        Gate.x(3),
        Gate.ccx(2, 3, 4),
        Gate.ccx(1, 4, 0),
        Gate.ccx(2, 3, 4),
        Gate.x(2),
        Gate.ccx(2, 3, 4),
        Gate.x(1),
        Gate.ccx(1, 4, 0),
        Gate.ccx(2, 3, 4),
        Gate.x(3),
        Gate.x(2),
        Gate.ccx(2, 3, 4),
        Gate.ccx(1, 4, 0),
        Gate.x(1),
        Gate.ccx(2, 3, 4),
        Gate.x(2),
        Gate.ccx(2, 3, 4),
        Gate.ccx(1, 4, 0),
        Gate.ccx(2, 3, 4),
        Gate.x(2),
        Gate.ccx(2, 3, 1),
        Gate.x(2),
        Gate.x(3),
        Gate.ccx(2, 3, 1),
        Gate.x(3),
        Gate.cx(3, 2),
    ))


def random_bijection(n: int, rng: random.Random) -> ReversibleFunction:
    table = list(range(1 << n))
    rng.shuffle(table)
    return ReversibleFunction(n, tuple(table))


def swap2_function() -> ReversibleFunction:
    """f(q1, q0) = (q0, q1): infeasible for every stage order."""
    return ReversibleFunction(2, (0b00, 0b10, 0b01, 0b11))


@pytest.fixture
def gray4() -> ReversibleFunction:
    return gray4_function()


@pytest.fixture
def gray4_file(tmp_path):
    path = tmp_path / "gray4.tt"
    path.write_text(gray4_text())
    return path
