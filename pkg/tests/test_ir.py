"""Angle arithmetic, gate/circuit validation, serialization."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toffoli_forge import ir

angles = st.builds(ir.dyadic, st.integers(-4096, 4096), st.integers(0, 12))


@given(angles)
def test_dyadic_always_canonical(a):
    assert a.is_canonical()
    if a.num == 0:
        assert a.den_exp == 0
    elif a.den_exp > 0:
        assert a.num % 2 == 1


@given(st.integers(-4096, 4096), st.integers(0, 12))
def test_canonicalization_preserves_value(num, e):
    a = ir.dyadic(num, e)
    assert math.isclose(a.to_radians(), num * math.pi / 2**e, abs_tol=1e-15)


@given(angles, angles)
def test_angle_add_is_exact(a, b):
    s = ir.angle_add(a, b)
    assert s.is_canonical()
    # compare in the common denominator, no floats involved
    e = max(a.den_exp, b.den_exp, s.den_exp)
    lhs = s.num << (e - s.den_exp)
    rhs = (a.num << (e - a.den_exp)) + (b.num << (e - b.den_exp))
    assert lhs == rhs


@given(angles)
def test_neg_cancels(a):
    assert ir.angle_add(a, -a) == ir.dyadic(0)
    assert (-a).is_canonical()


def test_dyadic_rejects_negative_exponent():
    with pytest.raises(ValueError):
        ir.dyadic(1, -1)


def test_pi_constant():
    assert ir.PI == ir.DyadicAngle(1, 0)
    assert math.isclose(ir.PI.to_radians(), math.pi)


def test_gate_factories():
    g = ir.crx(ir.PI, 0, 2)
    assert g.qubits() == (0, 2) and g.kind == ir.CRX
    s = ir.swap(3, 1)
    assert s.qubits() == (3, 1) and s.control is None and s.angle is None


@pytest.mark.parametrize(
    "gates",
    [
        (ir.crx(ir.PI, 0, 0),),                      # control equals target
        (ir.swap(1, 1),),                            # swap needs two wires
        (ir.crx(ir.PI, 0, 5),),                      # out of range
        (ir.Gate(ir.CRX, 0, 1, None, ir.DyadicAngle(2, 1)),),  # non-canonical
        (ir.Gate("h", None, 0, None, None),),        # unknown kind
        (ir.Gate(ir.SWAP, 0, 1, 2, None),),          # swap with control set
    ],
)
def test_validate_rejects_malformed_gates(gates):
    with pytest.raises(ValueError):
        ir.Circuit(3, gates).validate()


def test_validate_sections_must_cover():
    gates = (ir.crx(ir.PI, 0, 1), ir.crx(ir.PI, 1, 2))
    bad = ir.Circuit(3, gates, (ir.Section("C1", 0, 1),))
    with pytest.raises(ValueError):
        bad.validate()
    ok = ir.Circuit(3, gates, (ir.Section("C1", 0, 1), ir.Section("C2", 1, 2)))
    ok.validate()
    assert ok.section("C2") == gates[1:]
    with pytest.raises(KeyError):
        ok.section("C4")


def test_validate_sections_order():
    gates = (ir.crx(ir.PI, 0, 1),)
    with pytest.raises(ValueError):
        ir.Circuit(2, gates, (ir.Section("C2", 0, 1), ir.Section("C1", 1, 1))).validate()


def test_basis_layer_width_checked():
    with pytest.raises(ValueError):
        ir.Circuit(3, (), basis_layer=(-1, -1)).validate()


def test_permutation_basics():
    p = ir.Permutation((2, 0, 1))
    assert p.inverse().mapping == (1, 2, 0)
    assert ir.Permutation.identity(3).is_identity()
    assert not p.is_identity()
    with pytest.raises(ValueError):
        ir.Permutation((0, 0, 2))


def test_inverse_reverses_and_negates():
    c = ir.Circuit(3, (ir.crx(ir.dyadic(1, 2), 0, 1), ir.swap(1, 2)))
    inv = ir.inverse(c)
    assert inv.gates[0] == ir.swap(1, 2)
    assert inv.gates[1].angle == ir.dyadic(-1, 2)


def test_permute_outputs_relabels():
    c = ir.Circuit(3, (ir.crx(ir.PI, 0, 2),), basis_layer=(1, 0, 3))
    out = ir.permute_outputs(c, ir.Permutation((1, 2, 0)))
    assert out.gates[0].control == 1 and out.gates[0].target == 0
    assert out.basis_layer == (3, 1, 0)
    with pytest.raises(ValueError):
        ir.permute_outputs(c, ir.Permutation((1, 0)))


@st.composite
def small_circuits(draw):
    n = draw(st.integers(2, 6))
    gates = []
    for _ in range(draw(st.integers(0, 12))):
        q = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        kind = draw(st.sampled_from(("crx", "cprx", "swap")))
        if kind == "swap":
            gates.append(ir.swap(q[0], q[1]))
        else:
            a = draw(angles.filter(lambda x: x.num != 0))
            gates.append(ir.Gate(kind, q[0], q[1], None, a))
    layer = draw(
        st.none()
        | st.tuples(*[st.integers(-3, 3) for _ in range(n)]).map(tuple)
    )
    return ir.Circuit(n, tuple(gates), basis_layer=layer)


@given(small_circuits())
def test_json_round_trip(c):
    back = ir.circuit_from_json(ir.circuit_to_json(c))
    assert back.n_qubits == c.n_qubits
    assert back.gates == c.gates
    assert back.basis_layer == c.basis_layer


def test_json_round_trip_keeps_sections():
    gates = (ir.crx(ir.PI, 0, 1), ir.crx(ir.dyadic(1, 1), 0, 2))
    c = ir.Circuit(3, gates, (ir.Section("C1", 0, 0), ir.Section("C2", 0, 2)))
    back = ir.circuit_from_json(ir.circuit_to_json(c))
    assert back.sections == c.sections


def test_json_rejects_bad_version():
    text = ir.circuit_to_json(ir.Circuit(2, (ir.crx(ir.PI, 0, 1),)))
    with pytest.raises(ValueError):
        ir.circuit_from_json(text.replace('"version": "1"', '"version": "9"'))
