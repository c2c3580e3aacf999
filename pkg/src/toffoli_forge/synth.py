"""Ancilla-free synthesis of the n-qubit Toffoli over controlled x-rotations.

Three generators share one target operator (identity except Rx(pi) on the
last two basis states):

* synth_toffoli: the flat six-section form C1..C6. Linear depth after
  scheduling; 2n^2 - 6n + 5 gates.
* synth_recursive: the textbook recursion the flat form compresses. Same
  operator, exponentially many gates; kept as a cross-check.
* synth_approx: the flat form with rotations finer than pi/2^kmax dropped.

synth_toffoli uses 0-based wires; wire k-1 plays the role of the k-th line
a_k below. Within a section, gates sharing a control commute, so the emitted
target order (ascending) is one valid representative.
"""

from __future__ import annotations

from .ir import (
    CRX,
    SECTION_LABELS,
    Circuit,
    DyadicAngle,
    Gate,
    Section,
)

__all__ = [
    "gate_count",
    "section_sizes",
    "recursive_gate_count",
    "synth_toffoli",
    "synth_approx",
    "synth_recursive",
    "basis_conjugate",
]


def gate_count(n: int) -> int:
    """Gate total of the flat construction, 2n^2 - 6n + 5."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return 2 * n * n - 6 * n + 5


def section_sizes(n: int) -> tuple[int, int, int, int, int, int]:
    """Exact per-section counts (C1..C6) of the flat construction."""
    if n < 2:
        raise ValueError("n must be >= 2")
    tri1 = (n - 1) * (n - 2) // 2
    tri2 = (n - 2) * (n - 3) // 2
    return (tri1, n - 1, tri1, tri2, n - 2, tri2)


def _flat(n: int, kmax: int | None) -> tuple[list[Gate], list[int]]:
    """Emit C1..C6; returns (gates, section end offsets).

    kmax, when given, suppresses every rotation with canonical den_exp > kmax.
    """
    pos = [DyadicAngle(1, e) for e in range(max(n - 1, 1))]
    neg = [DyadicAngle(-1, e) for e in range(max(n - 1, 1))]
    keep = (lambda e: True) if kmax is None else (lambda e: e <= kmax)
    gates: list[Gate] = []
    ends: list[int] = []
    append = gates.append

    # C1: controls a_{n-1} down to a_2, each rotating every later wire.
    for k in range(n - 1, 1, -1):
        for t in range(k + 1, n + 1):
            if keep(t - k):
                append(Gate(CRX, k - 1, t - 1, None, pos[t - k]))
    ends.append(len(gates))
    # C2: control a_1 over all later wires; the a_2 rotation is a full pi.
    for t in range(2, n + 1):
        if keep(t - 2):
            append(Gate(CRX, 0, t - 1, None, pos[t - 2]))
    ends.append(len(gates))
    # C3: mirror of C1 with negated angles, controls ascending.
    for k in range(2, n):
        for t in range(k + 1, n + 1):
            if keep(t - k):
                append(Gate(CRX, k - 1, t - 1, None, neg[t - k]))
    ends.append(len(gates))
    # C4: like C1 restricted to targets below a_n.
    for k in range(n - 2, 1, -1):
        for t in range(k + 1, n):
            if keep(t - k):
                append(Gate(CRX, k - 1, t - 1, None, pos[t - k]))
    ends.append(len(gates))
    # C5: negated C2 restricted to targets below a_n.
    for t in range(2, n):
        if keep(t - 2):
            append(Gate(CRX, 0, t - 1, None, neg[t - 2]))
    ends.append(len(gates))
    # C6: mirror of C4 with negated angles, controls ascending.
    for k in range(2, n - 1):
        for t in range(k + 1, n):
            if keep(t - k):
                append(Gate(CRX, k - 1, t - 1, None, neg[t - k]))
    ends.append(len(gates))
    return gates, ends


def _sectioned(n: int, kmax: int | None) -> Circuit:
    gates, ends = _flat(n, kmax)
    sections = []
    start = 0
    for label, end in zip(SECTION_LABELS, ends):
        sections.append(Section(label, start, end))
        start = end
    return Circuit(n, tuple(gates), tuple(sections))


def synth_toffoli(n: int) -> Circuit:
    """Flat linear-depth-schedulable construction on n >= 2 wires."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return _sectioned(n, None)


def synth_approx(n: int, kmax: int) -> Circuit:
    """Flat construction with every rotation finer than pi/2^kmax removed."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    return _sectioned(n, kmax)


def recursive_gate_count(n: int) -> int:
    """Gate total of synth_recursive; grows exponentially."""
    if n < 2:
        raise ValueError("n must be >= 2")
    counts = [0, 0, 1]
    for m in range(3, n + 1):
        counts.append(2 * (m - 2) + 1 + 2 * sum(counts[2:m]))
    return counts[n]


def synth_recursive(n: int) -> Circuit:
    """Unfolded recursion: T(m) = prod_k [CRX(pi/2^{m-k}) T(k) CRX(-..) T(k)^-1]
    followed by CRX(pi/2^{m-2}) from the first wire; T(2) is a single CRX(pi).
    Same operator as synth_toffoli, exponentially longer."""
    if n < 2:
        raise ValueError("n must be >= 2")
    memo: dict[int, list[Gate]] = {2: [Gate(CRX, 0, 1, None, DyadicAngle(1, 0))]}

    def build(m: int) -> list[Gate]:
        got = memo.get(m)
        if got is not None:
            return got
        out: list[Gate] = []
        for k in range(m - 1, 1, -1):
            sub = build(k)
            out.append(Gate(CRX, k - 1, m - 1, None, DyadicAngle(1, m - k)))
            out.extend(sub)
            out.append(Gate(CRX, k - 1, m - 1, None, DyadicAngle(-1, m - k)))
            out.extend(
                Gate(CRX, g.control, g.target, None, -g.angle) for g in reversed(sub)
            )
        out.append(Gate(CRX, 0, m - 1, None, DyadicAngle(1, m - 2)))
        memo[m] = out
        return out

    return Circuit(n, tuple(build(n)))


def basis_conjugate(c: Circuit) -> Circuit:
    """Sandwich the circuit between per-wire diag(1, -i) and its adjoint.

    In the conjugated frame every computational basis state |x> is sent to
    the Toffoli image of x up to a unit phase, so the circuit reads as a
    classical bit flip on basis labels. The layer lives in metadata
    (basis_layer exponent -1 per wire); the simulator applies it.
    """
    if c.basis_layer is not None:
        layer = tuple((e - 1) % 4 for e in c.basis_layer)
    else:
        layer = (-1,) * c.n_qubits
    return Circuit(c.n_qubits, c.gates, c.sections, c.version, layer)
