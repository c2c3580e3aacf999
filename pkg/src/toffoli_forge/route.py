"""Nearest-neighbor line mapping of the flat construction.

The circuit runs as four rotation/SWAP pipelines plus two restore networks:

1. C1+C2 on all n wires: each pipeline walks one target leftward, firing the
   next rotation of its column just before each SWAP. Exit order is reversed.
2. C3 from the reversed line, one pipeline per control. Exit is the initial
   order rotated by one; an odd-even transposition network restores it.
3. C4+C5, the same forward pattern on the first n-1 wires.
4. C6, the same reversed pattern on the first n-1 wires, then a final
   restore back to the identity layout.

Gates in the emitted circuit act on line positions (wire index = position),
always adjacent. Slot parity alternates rotation/SWAP, so per-slot supports
are disjoint by construction; segment depths are 4n-6, 4n-10, n-1, 4n-10,
4n-14 and n-2. Every rotation's operands are read off the live layout and
the angle chosen by the logical (control, target) pair, so a misplaced
pipeline shows up as an assertion, not a silently wrong circuit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ir import (
    CRX,
    Circuit,
    DyadicAngle,
    Gate,
    Permutation,
    circuit_to_json,
    swap,
)

__all__ = [
    "SEGMENT_LABELS",
    "LayoutTrace",
    "RoutedCircuit",
    "route_lnn",
    "restore_permutation",
    "routed_metrics",
    "routed_to_json",
]

SEGMENT_LABELS = ("C1+C2", "C3", "restore1", "C4+C5", "C6", "restore2")


@dataclass(frozen=True)
class LayoutTrace:
    """(slot index, layout after that slot) for every slot containing SWAPs."""

    snapshots: tuple[tuple[int, Permutation], ...]


@dataclass(frozen=True)
class RoutedCircuit:
    circuit: Circuit
    trace: LayoutTrace
    final_layout: Permutation
    slots: tuple[tuple[Gate, ...], ...]
    segment_bounds: tuple[int, ...]  # 7 cumulative slot offsets, one per fence


def _fwd_angle(c: int, t: int, sign_c1: int) -> DyadicAngle:
    # 0-based logical wires; c == 0 rotations are the full-angle column
    if c == 0:
        return DyadicAngle(sign_c1, t - 1)
    return DyadicAngle(1, t - c)


def _pattern_forward(m: int, layout: list[int], sign_c1: int) -> list[list[Gate]]:
    """Pipelines j=1..m-1, one per target m-j (0-based), walking it to the
    left edge; rotation then SWAP at positions (m-i-1, m-i), control left."""
    depth = 4 * m - 6
    slots: list[list[Gate]] = [[] for _ in range(depth)]
    events: list[tuple[int, int, bool]] = []
    for j in range(1, m):
        for i in range(1, m - j + 1):
            s = 4 * (j - 1) + 2 * i - 1
            p = m - i - 1
            events.append((s, p, False))
            events.append((s + 1, p, True))
    events.sort()
    for s, p, is_swap in events:
        if is_swap:
            layout[p], layout[p + 1] = layout[p + 1], layout[p]
            slots[s - 1].append(swap(p, p + 1))
        else:
            c, t = layout[p], layout[p + 1]
            assert c < t, (c, t)
            slots[s - 1].append(Gate(CRX, p, p + 1, None, _fwd_angle(c, t, sign_c1)))
    assert layout[:m] == list(range(m - 1, -1, -1))
    return slots


def _pattern_reversed(m: int, layout: list[int]) -> list[list[Gate]]:
    """From the reversed segment: pipelines j=1..m-2, one per control j,
    rotation then SWAP at positions (m-i-2, m-i-1), target left."""
    depth = max(4 * m - 10, 0)
    slots: list[list[Gate]] = [[] for _ in range(depth)]
    events: list[tuple[int, int, bool]] = []
    for j in range(1, m - 1):
        for i in range(1, m - j):
            s = 4 * (j - 1) + 2 * i - 1
            p = m - i - 2
            events.append((s, p, False))
            events.append((s + 1, p, True))
    events.sort()
    for s, p, is_swap in events:
        if is_swap:
            layout[p], layout[p + 1] = layout[p + 1], layout[p]
            slots[s - 1].append(swap(p, p + 1))
        else:
            t, c = layout[p], layout[p + 1]
            assert 1 <= c < t, (c, t)
            slots[s - 1].append(Gate(CRX, p + 1, p, None, DyadicAngle(-1, t - c)))
    assert layout[:m] == [*range(1, m), 0]
    return slots


def _oddeven_slots(layout: list[int]) -> list[list[Gate]]:
    """Sort the layout with odd-even transposition rounds; only rounds that
    actually swap become slots."""
    width = len(layout)
    slots: list[list[Gate]] = []
    for r in range(width):
        if all(layout[p] == p for p in range(width)):
            break
        round_gates: list[Gate] = []
        for p in range(r % 2, width - 1, 2):
            if layout[p] > layout[p + 1]:
                layout[p], layout[p + 1] = layout[p + 1], layout[p]
                round_gates.append(swap(p, p + 1))
        if round_gates:
            slots.append(round_gates)
    assert all(layout[p] == p for p in range(width))
    return slots


def restore_permutation(p: Permutation) -> Circuit:
    """Adjacent-SWAP circuit that turns layout p into the identity layout."""
    layout = list(p.mapping)
    slots = _oddeven_slots(layout)
    return Circuit(len(p.mapping), tuple(g for sl in slots for g in sl))


def route_lnn(n: int) -> RoutedCircuit:
    if n < 3:
        raise ValueError("n must be >= 3")
    layout = list(range(n))
    slots: list[list[Gate]] = []
    bounds = [0]
    for part in (
        _pattern_forward(n, layout, 1),
        _pattern_reversed(n, layout),
        _oddeven_slots(layout),
        _pattern_forward(n - 1, layout, -1),
        _pattern_reversed(n - 1, layout),
        _oddeven_slots(layout),
    ):
        slots.extend(part)
        bounds.append(len(slots))
    assert layout == list(range(n))

    # replay the slots on a fresh layout: independent check + trace
    replay = list(range(n))
    snapshots = []
    for k, sl in enumerate(slots):
        swapped = False
        for g in sl:
            if g.kind == "swap":
                replay[g.target], replay[g.target2] = replay[g.target2], replay[g.target]
                swapped = True
        if swapped:
            snapshots.append((k, Permutation(tuple(replay))))
    final = Permutation(tuple(replay))
    assert final.is_identity()

    circuit = Circuit(n, tuple(g for sl in slots for g in sl))
    circuit.validate()
    return RoutedCircuit(
        circuit=circuit,
        trace=LayoutTrace(tuple(snapshots)),
        final_layout=final,
        slots=tuple(tuple(sl) for sl in slots),
        segment_bounds=tuple(bounds),
    )


def routed_metrics(r: RoutedCircuit) -> dict:
    """Depth/size record: totals plus per-segment depths and SWAP time steps."""
    b = r.segment_bounds
    seg_depths = tuple(b[k + 1] - b[k] for k in range(len(b) - 1))
    seg_swap_steps = tuple(
        sum(1 for sl in r.slots[b[k] : b[k + 1]] if any(g.kind == "swap" for g in sl))
        for k in range(len(b) - 1)
    )
    gates = r.circuit.gates
    return {
        "depth": len(r.slots),
        "crx_count": sum(1 for g in gates if g.kind == CRX),
        "swap_count": sum(1 for g in gates if g.kind == "swap"),
        "per_group_depths": seg_depths,
        "per_group_swap_steps": seg_swap_steps,
        "segments": SEGMENT_LABELS,
    }


def routed_to_json(r: RoutedCircuit) -> str:
    obj = json.loads(circuit_to_json(r.circuit))
    obj["trace"] = [
        {"layer": k, "layout": list(p.mapping)} for k, p in r.trace.snapshots
    ]
    return json.dumps(obj, indent=2)
