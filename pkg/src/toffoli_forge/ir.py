"""Exact intermediate representation for controlled x-rotation circuits.

Angles are dyadic multiples of pi, s * pi / 2**e with integer s and e >= 0,
kept in canonical form so structural checks (cancellation, telescoping sums,
serialization round-trips) are bit-exact. Floating point enters only at the
simulation boundary.

Wire convention: wires are 0-based; wire 0 is the most significant bit of a
basis index, so at n=2 the state |10> has index 2. Controls are standard
|1>-controls.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple

__all__ = [
    "FORMAT_VERSION",
    "SECTION_LABELS",
    "CRX",
    "CPRX",
    "SWAP",
    "DyadicAngle",
    "dyadic",
    "angle_add",
    "Gate",
    "crx",
    "cprx",
    "swap",
    "Section",
    "Circuit",
    "Permutation",
    "inverse",
    "permute_outputs",
    "circuit_to_json",
    "circuit_from_json",
]

FORMAT_VERSION = "1"
SECTION_LABELS = ("C1", "C2", "C3", "C4", "C5", "C6")

# Gate kinds. crx is the controlled x-rotation Rx(theta) = exp(-i theta X / 2);
# cprx is the controlled phased x-rotation PRx(theta) = e^{i theta/2} Rx(theta),
# whose theta=pi instance is exactly X; swap is a first-class two-qubit SWAP.
CRX = "crx"
CPRX = "cprx"
SWAP = "swap"


class DyadicAngle(NamedTuple):
    """Angle s * pi / 2**e. Canonical: s == 0 implies e == 0, else s is odd."""

    num: int
    den_exp: int

    def __neg__(self) -> "DyadicAngle":
        return DyadicAngle(-self.num, self.den_exp)

    def to_radians(self) -> float:
        import math

        return self.num * math.pi / (1 << self.den_exp)

    def is_canonical(self) -> bool:
        if self.den_exp < 0:
            return False
        if self.num == 0:
            return self.den_exp == 0
        return self.num % 2 == 1 or self.den_exp == 0


def dyadic(num: int, den_exp: int = 0) -> DyadicAngle:
    """Build a canonical DyadicAngle, reducing s/2^e by halving while s is even."""
    if den_exp < 0:
        raise ValueError("den_exp must be >= 0")
    if num == 0:
        return DyadicAngle(0, 0)
    while num % 2 == 0 and den_exp > 0:
        num //= 2
        den_exp -= 1
    return DyadicAngle(num, den_exp)


def angle_add(a: DyadicAngle, b: DyadicAngle) -> DyadicAngle:
    """Exact sum of two dyadic angles, canonicalized."""
    e = max(a.den_exp, b.den_exp)
    num = a.num * (1 << (e - a.den_exp)) + b.num * (1 << (e - b.den_exp))
    return dyadic(num, e)


PI = DyadicAngle(1, 0)


class Gate(NamedTuple):
    """A two-qubit gate. target2 is used by SWAP only; angle by CRX/CPRX only."""

    kind: str
    control: int | None
    target: int
    target2: int | None
    angle: DyadicAngle | None

    def qubits(self) -> tuple[int, ...]:
        if self.kind == SWAP:
            return (self.target, self.target2)
        return (self.control, self.target)


def crx(angle: DyadicAngle, control: int, target: int) -> Gate:
    return Gate(CRX, control, target, None, angle)


def cprx(angle: DyadicAngle, control: int, target: int) -> Gate:
    return Gate(CPRX, control, target, None, angle)


def swap(a: int, b: int) -> Gate:
    return Gate(SWAP, None, a, b, None)


class Section(NamedTuple):
    """Half-open gate-index range [start, end) tagged with a construction label."""

    label: str
    start: int
    end: int


@dataclass(frozen=True)
class Permutation:
    """Line layout: position p holds logical qubit mapping[p]."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.mapping}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def is_identity(self) -> bool:
        return all(v == p for p, v in enumerate(self.mapping))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for p, v in enumerate(self.mapping):
            inv[v] = p
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class Circuit:
    """An ordered list of gates on n_qubits wires.

    sections, when present, must be contiguous, non-overlapping, ordered
    C1..C6, and jointly cover every gate. basis_layer, when present, is a
    per-wire exponent k: the simulator applies diag(1, i**k) on each wire
    before the gates and the adjoint after.
    """

    n_qubits: int
    gates: tuple[Gate, ...]
    sections: tuple[Section, ...] | None = None
    version: str = FORMAT_VERSION
    basis_layer: tuple[int, ...] | None = None

    def validate(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        if self.version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {self.version!r}")
        n = self.n_qubits
        for i, g in enumerate(self.gates):
            if g.kind not in (CRX, CPRX, SWAP):
                raise ValueError(f"gate {i}: unknown kind {g.kind!r}")
            if g.kind == SWAP:
                if g.control is not None or g.angle is not None:
                    raise ValueError(f"gate {i}: swap carries no control/angle")
                if not (0 <= g.target < n and 0 <= g.target2 < n):
                    raise ValueError(f"gate {i}: qubit index out of range")
                if g.target == g.target2:
                    raise ValueError(f"gate {i}: swap qubits must differ")
            else:
                if g.control is None or g.angle is None or g.target2 is not None:
                    raise ValueError(f"gate {i}: malformed rotation gate")
                if not (0 <= g.control < n and 0 <= g.target < n):
                    raise ValueError(f"gate {i}: qubit index out of range")
                if g.control == g.target:
                    raise ValueError(f"gate {i}: control equals target")
                if not g.angle.is_canonical():
                    raise ValueError(f"gate {i}: non-canonical angle {g.angle}")
        if self.sections is not None:
            labels = [s.label for s in self.sections]
            if labels != [l for l in SECTION_LABELS if l in labels]:
                raise ValueError("sections must be ordered C1..C6 without repeats")
            pos = 0
            for s in self.sections:
                if s.start != pos or s.end < s.start:
                    raise ValueError("sections must be contiguous and non-overlapping")
                pos = s.end
            if pos != len(self.gates):
                raise ValueError("sections must jointly cover all gates")
        if self.basis_layer is not None and len(self.basis_layer) != n:
            raise ValueError("basis_layer must list one exponent per wire")

    def section(self, label: str) -> tuple[Gate, ...]:
        if self.sections is None:
            raise ValueError("circuit has no sections")
        for s in self.sections:
            if s.label == label:
                return self.gates[s.start : s.end]
        raise KeyError(label)


def inverse(c: Circuit) -> Circuit:
    """Reverse gate order and negate rotation angles. Sections are dropped."""
    inv = tuple(
        g if g.kind == SWAP else g._replace(angle=-g.angle) for g in reversed(c.gates)
    )
    return Circuit(c.n_qubits, inv, None, c.version, c.basis_layer)


def permute_outputs(c: Circuit, p: Permutation) -> Circuit:
    """Relabel wires: wire w becomes p.mapping[w] in every gate."""
    if len(p.mapping) != c.n_qubits:
        raise ValueError("permutation width mismatch")
    m = p.mapping

    def remap(g: Gate) -> Gate:
        if g.kind == SWAP:
            return Gate(SWAP, None, m[g.target], m[g.target2], None)
        return Gate(g.kind, m[g.control], m[g.target], None, g.angle)

    layer = None
    if c.basis_layer is not None:
        out = [0] * c.n_qubits
        for w, e in enumerate(c.basis_layer):
            out[m[w]] = e
        layer = tuple(out)
    return Circuit(c.n_qubits, tuple(remap(g) for g in c.gates), c.sections, c.version, layer)


def _gate_to_obj(g: Gate) -> dict:
    if g.kind == SWAP:
        return {"kind": "swap", "a": g.target, "b": g.target2}
    return {
        "kind": g.kind,
        "control": g.control,
        "target": g.target,
        "angle": {"num": g.angle.num, "den_exp": g.angle.den_exp},
    }


def _gate_from_obj(obj: dict) -> Gate:
    kind = obj.get("kind")
    if kind == "swap":
        return swap(int(obj["a"]), int(obj["b"]))
    if kind in (CRX, CPRX):
        a = obj["angle"]
        ang = DyadicAngle(int(a["num"]), int(a["den_exp"]))
        if not ang.is_canonical():
            ang = dyadic(ang.num, ang.den_exp)
        return Gate(kind, int(obj["control"]), int(obj["target"]), None, ang)
    raise ValueError(f"unknown gate kind {kind!r}")


def circuit_to_json(c: Circuit) -> str:
    obj: dict = {
        "version": c.version,
        "n_qubits": c.n_qubits,
        "gates": [_gate_to_obj(g) for g in c.gates],
    }
    if c.sections is not None:
        obj["sections"] = [
            {"label": s.label, "start": s.start, "end": s.end} for s in c.sections
        ]
    if c.basis_layer is not None:
        obj["basis_layer"] = list(c.basis_layer)
    return json.dumps(obj, indent=2)


def circuit_from_json(text: str) -> Circuit:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid circuit JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("circuit JSON must be an object")
    version = obj.get("version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {version!r}")
    gates = tuple(_gate_from_obj(g) for g in obj.get("gates", []))
    sections = None
    if "sections" in obj:
        sections = tuple(
            Section(s["label"], int(s["start"]), int(s["end"])) for s in obj["sections"]
        )
    layer = None
    if "basis_layer" in obj:
        layer = tuple(int(e) for e in obj["basis_layer"])
    c = Circuit(int(obj["n_qubits"]), gates, sections, version, layer)
    c.validate()
    return c
