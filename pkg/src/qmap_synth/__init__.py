"""Reversible-logic synthesis via Gray-labelled toggle maps.

Compiles a bijective truth table into a NOT/CNOT/Toffoli circuit: the
function is decomposed into single-target stages, each stage's toggle
function is minimized on a Karnaugh-style grid (disjoint-SOP or ESOP),
and the covers are realized as controlled flips and lowered to the
two-control basis.  A basis-state simulator verifies every result.
"""
from . import errors
from .boolfn import (
    BitWord,
    ReversibleFunction,
    gray_to_binary_function,
    identity_function,
    is_bijective,
    parse_truth_table,
    render_truth_table,
)
from .cascade import StageOrder, ToggleTable, decompose, find_feasible_order
from .circuit import (
    Circuit,
    Control,
    CostModel,
    Gate,
    GateKind,
    cost,
    invert,
    lower_mct,
    lower_polarity,
    realize_stage,
    synthesize,
)
from .qasm import export_qasm, parse_qasm, split_ancillas
from .qmap import (
    Cover,
    CoverMode,
    Cube,
    QMapGrid,
    build_qmap,
    cube_cells,
    minimize_disjoint,
    minimize_esop,
    pprm_cover,
    verify_cover,
)
from .sim import Counterexample, apply_gate, permutation_of, run, verify

__version__ = "0.1.0"

__all__ = [
    "errors",
    "BitWord",
    "ReversibleFunction",
    "gray_to_binary_function",
    "identity_function",
    "is_bijective",
    "parse_truth_table",
    "render_truth_table",
    "StageOrder",
    "ToggleTable",
    "decompose",
    "find_feasible_order",
    "Circuit",
    "Control",
    "CostModel",
    "Gate",
    "GateKind",
    "cost",
    "invert",
    "lower_mct",
    "lower_polarity",
    "realize_stage",
    "synthesize",
    "export_qasm",
    "parse_qasm",
    "split_ancillas",
    "Cover",
    "CoverMode",
    "Cube",
    "QMapGrid",
    "build_qmap",
    "cube_cells",
    "minimize_disjoint",
    "minimize_esop",
    "pprm_cover",
    "verify_cover",
    "Counterexample",
    "apply_gate",
    "permutation_of",
    "run",
    "verify",
]
