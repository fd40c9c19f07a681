"""OpenQASM 2.0 interchange, restricted to the x/cx/ccx subset.

Export is deterministic byte-for-byte; the parser accepts exactly what
export produces plus blank lines and // comments, and reports the line
number of anything else.  QASM has a single flat register, so a parsed
circuit comes back with every line as a data line; `split_ancillas`
reinterprets the top lines as ancillas when the caller knows the data
width.
"""
from __future__ import annotations

import re
from typing import Iterable

from .circuit import Circuit, Gate, GateKind
from .errors import QasmSyntaxError, UnloweredMct

__all__ = ["export_qasm", "parse_qasm", "split_ancillas"]

_MNEMONIC_ARITY = {"x": 1, "cx": 2, "ccx": 3}


def export_qasm(c: Circuit) -> str:
    """Render a lowered circuit; gates with three or more controls (or
    negative polarities) have no encoding in the subset and are refused."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{c.total_width}];",
    ]
    for g in c.gates:
        kind = g.kind
        if kind is GateKind.MCT:
            raise UnloweredMct(
                f"gate {g} must be lowered before QASM export")
        args = [c2.line for c2 in g.controls] + [g.target]
        lines.append(f"{kind.value} " + ",".join(f"q[{a}]" for a in args) + ";")
    return "\n".join(lines) + "\n"


_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]\s*;$")
_GATE_RE = re.compile(r"^([a-z]+)\s+(.*);$")
_ARG_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")


def parse_qasm(text: str | Iterable[str]) -> Circuit:
    """Parse the exported subset back into a circuit (all lines data)."""
    if isinstance(text, str):
        raw_lines = text.splitlines()
    else:
        raw_lines = [line.rstrip("\n") for line in text]

    statements: list[tuple[int, str]] = []
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.split("//", 1)[0].strip()
        if line:
            statements.append((lineno, line))

    if not statements or statements[0][1] != "OPENQASM 2.0;":
        lineno = statements[0][0] if statements else 1
        raise QasmSyntaxError('expected "OPENQASM 2.0;"', lineno)
    if len(statements) < 2 or statements[1][1] != 'include "qelib1.inc";':
        lineno = statements[1][0] if len(statements) > 1 else statements[0][0]
        raise QasmSyntaxError('expected "include \"qelib1.inc\";"', lineno)
    if len(statements) < 3:
        raise QasmSyntaxError("missing qreg declaration", statements[-1][0])
    lineno, decl = statements[2]
    m = _QREG_RE.match(decl)
    if m is None:
        raise QasmSyntaxError(f"expected qreg declaration, got {decl!r}", lineno)
    reg, width = m.group(1), int(m.group(2))
    if width == 0:
        raise QasmSyntaxError("register width must be positive", lineno)

    gates: list[Gate] = []
    for lineno, stmt in statements[3:]:
        gm = _GATE_RE.match(stmt)
        if gm is None:
            raise QasmSyntaxError(f"unparseable statement {stmt!r}", lineno)
        mnemonic, argtext = gm.group(1), gm.group(2)
        arity = _MNEMONIC_ARITY.get(mnemonic)
        if arity is None:
            raise QasmSyntaxError(
                f"unsupported gate {mnemonic!r} (subset is x/cx/ccx)", lineno)
        args = []
        for piece in argtext.split(","):
            am = _ARG_RE.match(piece.strip())
            if am is None:
                raise QasmSyntaxError(f"bad operand {piece.strip()!r}", lineno)
            if am.group(1) != reg:
                raise QasmSyntaxError(
                    f"unknown register {am.group(1)!r}", lineno)
            index = int(am.group(2))
            if index >= width:
                raise QasmSyntaxError(
                    f"index {index} out of range for q[{width}]", lineno)
            args.append(index)
        if len(args) != arity:
            raise QasmSyntaxError(
                f"{mnemonic} takes {arity} operands, got {len(args)}", lineno)
        try:
            gates.append(Gate.mct(args[:-1], args[-1]))
        except ValueError as exc:
            raise QasmSyntaxError(str(exc), lineno) from None

    return Circuit(width, 0, tuple(gates))


def split_ancillas(c: Circuit, data_width: int) -> Circuit:
    """Reinterpret the lines above data_width as ancillas."""
    if not 0 < data_width <= c.total_width:
        raise ValueError(
            f"data width {data_width} not in [1, {c.total_width}]")
    return Circuit(data_width, c.total_width - data_width, c.gates)
