"""Linear-depth n-qubit Toffoli circuits over 2-qubit controlled x-rotations:
synthesis, depth scheduling, nearest-neighbor line routing, and a dense
simulation oracle to verify every stage."""

from .baseline import barenco_toffoli, serialized_depth
from .ir import (
    Circuit,
    DyadicAngle,
    Gate,
    Permutation,
    circuit_from_json,
    circuit_to_json,
    cprx,
    crx,
    dyadic,
    inverse,
    swap,
)
from .route import RoutedCircuit, restore_permutation, route_lnn, routed_metrics
from .sched import Schedule, asap_schedule, commutes, depth, group_depths
from .sim import (
    apply,
    equiv_global_phase,
    op_norm_error,
    reference_unitary,
    unitary_of,
)
from .synth import (
    basis_conjugate,
    gate_count,
    synth_approx,
    synth_recursive,
    synth_toffoli,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "DyadicAngle",
    "Gate",
    "Permutation",
    "RoutedCircuit",
    "Schedule",
    "apply",
    "asap_schedule",
    "barenco_toffoli",
    "basis_conjugate",
    "circuit_from_json",
    "circuit_to_json",
    "commutes",
    "cprx",
    "crx",
    "depth",
    "dyadic",
    "equiv_global_phase",
    "gate_count",
    "group_depths",
    "inverse",
    "op_norm_error",
    "reference_unitary",
    "restore_permutation",
    "route_lnn",
    "routed_metrics",
    "serialized_depth",
    "swap",
    "synth_approx",
    "synth_recursive",
    "synth_toffoli",
    "unitary_of",
    "__version__",
]
