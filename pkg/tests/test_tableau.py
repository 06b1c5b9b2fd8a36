import itertools
import random

import numpy as np
import pytest

from cxsynth.circuit import circuit_from_gates, decompose_to_base, gate, parse_qasm
from cxsynth.tableau import (
    Permutation,
    Tableau,
    UnsupportedGateError,
    apply_circuit,
    apply_gate,
    equivalent,
    equivalent_xz,
    from_circuit,
    initial_tableau,
    is_symplectic,
    permute_columns,
    recover_phase,
    render,
)

FIG_GATES = [gate("cx", 0, 1), gate("s", 1), gate("cx", 0, 1), gate("x", 1)]
# Worked 2-qubit example: target after CX(0,1) S(1) CX(0,1) X(1).
FIG_X = np.array([[1, 0], [0, 1], [0, 0], [0, 0]], dtype=bool)
FIG_Z = np.array([[1, 1], [1, 1], [1, 0], [0, 1]], dtype=bool)
FIG_R = np.array([1, 1, 0, 1], dtype=bool)
# Equivalent single-CNOT normal form: SH on q1, CX, then S(0), H(1).
NF_GATES = [gate("s", 1), gate("h", 1), gate("cx", 0, 1), gate("s", 0), gate("h", 1)]


def random_clifford_gates(n, length, rng):
    gates = []
    for _ in range(length):
        k = rng.randrange(3 if n >= 2 else 2)
        if k == 0:
            gates.append(gate("h", rng.randrange(n)))
        elif k == 1:
            gates.append(gate("s", rng.randrange(n)))
        else:
            a, b = rng.sample(range(n), 2)
            gates.append(gate("cx", a, b))
    return gates


def test_initial_tableau_small():
    t = initial_tableau(1)
    assert t.x.astype(int).tolist() == [[1], [0]]
    assert t.z.astype(int).tolist() == [[0], [1]]
    assert t.r.astype(int).tolist() == [0, 0]

    t = initial_tableau(2)
    assert t.x.astype(int).tolist() == [[1, 0], [0, 1], [0, 0], [0, 0]]
    assert t.z.astype(int).tolist() == [[0, 0], [0, 0], [1, 0], [0, 1]]

    t = initial_tableau(3)
    assert np.array_equal(t.x[:3, :], np.eye(3, dtype=bool))
    assert np.array_equal(t.z[3:, :], np.eye(3, dtype=bool))
    assert not t.x[3:, :].any() and not t.z[:3, :].any()

    with pytest.raises(ValueError):
        initial_tableau(0)


def test_update_chain_matches_worked_example():
    t = apply_gate(initial_tableau(2), gate("cx", 0, 1))
    assert t.x.astype(int).tolist() == [[1, 1], [0, 1], [0, 0], [0, 0]]
    assert t.z.astype(int).tolist() == [[0, 0], [0, 0], [1, 0], [1, 1]]

    t = apply_gate(t, gate("s", 1))
    assert t.z.astype(int).tolist() == [[0, 1], [0, 1], [1, 0], [1, 1]]

    t = apply_gate(t, gate("cx", 0, 1))
    t = apply_gate(t, gate("x", 1))
    assert np.array_equal(t.x, FIG_X)
    assert np.array_equal(t.z, FIG_Z)
    assert np.array_equal(t.r, FIG_R)


def test_from_circuit_matches_fold():
    circ = circuit_from_gates(2, FIG_GATES)
    assert equivalent(from_circuit(circ), apply_circuit(initial_tableau(2), FIG_GATES))


def test_from_circuit_empty():
    assert equivalent(from_circuit(parse_qasm("qreg q[2];")), initial_tableau(2))


def test_opaque_gate_rejected():
    circ = parse_qasm("qreg q[1]; t q[0];")
    with pytest.raises(UnsupportedGateError):
        from_circuit(circ)


def test_normal_form_matches_on_xz_only():
    target = apply_circuit(initial_tableau(2), FIG_GATES)
    nf = apply_circuit(initial_tableau(2), NF_GATES)
    assert equivalent_xz(nf, target)
    assert not equivalent(nf, target)


def test_pauli_prefix_completes_normal_form():
    target = apply_circuit(initial_tableau(2), FIG_GATES)
    repaired = apply_circuit(
        initial_tableau(2),
        [gate("z", 0), gate("z", 1), gate("x", 1)] + NF_GATES,
    )
    assert equivalent(repaired, target)


def test_involutions():
    rng = random.Random(7)
    for n in (1, 2, 3):
        t = apply_circuit(initial_tableau(n), random_clifford_gates(n, 30, rng))
        for q in range(n):
            assert equivalent(apply_gate(apply_gate(t, gate("h", q)), gate("h", q)), t)
            s4 = t
            for _ in range(4):
                s4 = apply_gate(s4, gate("s", q))
            assert equivalent(s4, t)
        if n >= 2:
            twice = apply_circuit(t, [gate("cx", 0, 1), gate("cx", 0, 1)])
            assert equivalent(twice, t)


def test_pauli_gates_only_touch_phase():
    rng = random.Random(11)
    t = apply_circuit(initial_tableau(3), random_clifford_gates(3, 40, rng))
    for kind in ("x", "y", "z"):
        for q in range(3):
            u = apply_gate(t, gate(kind, q))
            assert equivalent_xz(u, t)


def test_hsh_equals_shs_on_xz():
    rng = random.Random(13)
    for n in (1, 2, 3):
        t = apply_circuit(initial_tableau(n), random_clifford_gates(n, 25, rng))
        for q in range(n):
            hsh = apply_circuit(t, [gate("h", q), gate("s", q), gate("h", q)])
            shs = apply_circuit(t, [gate("s", q), gate("h", q), gate("s", q)])
            assert equivalent_xz(hsh, shs)


def test_y_equals_x_then_z():
    rng = random.Random(17)
    t = apply_circuit(initial_tableau(2), random_clifford_gates(2, 30, rng))
    for q in range(2):
        via_y = apply_gate(t, gate("y", q))
        via_xz = apply_gate(apply_gate(t, gate("x", q)), gate("z", q))
        assert equivalent(via_y, via_xz)


def test_composite_gates_match_their_decomposition():
    rng = random.Random(19)
    t = apply_circuit(initial_tableau(3), random_clifford_gates(3, 30, rng))
    for g in [gate("sdg", 1), gate("cz", 0, 2), gate("swap", 1, 2), gate("y", 0), gate("id", 2)]:
        direct = apply_gate(t, g)
        stepped = apply_circuit(t, decompose_to_base(g))
        assert equivalent(direct, stepped)


def test_swap_decomposition_swaps_columns():
    t = from_circuit(circuit_from_gates(2, decompose_to_base(gate("swap", 0, 1))))
    ref = permute_columns(initial_tableau(2), Permutation((1, 0)))
    assert equivalent_xz(t, ref)


def test_equivalence_errors_on_size_mismatch():
    with pytest.raises(ValueError):
        equivalent(initial_tableau(2), initial_tableau(3))
    with pytest.raises(ValueError):
        equivalent_xz(initial_tableau(2), initial_tableau(3))


def test_recover_phase_examples():
    target = apply_circuit(initial_tableau(2), FIG_GATES)
    synth = apply_circuit(initial_tableau(2), NF_GATES)
    seq = recover_phase(synth, target)
    assert [(g.kind.value, g.qubits) for g in seq] == [("z", (0,)), ("z", (1,)), ("x", (1,))]

    assert recover_phase(target, target) == []

    # r difference only in the stabilizer half -> X gates.
    t0 = initial_tableau(2)
    t1 = initial_tableau(2)
    t1.r[2] = t1.r[3] = True
    seq = recover_phase(t0, t1)
    assert [(g.kind.value, g.qubits) for g in seq] == [("x", (0,)), ("x", (1,))]
    assert equivalent(apply_circuit(t0, seq), t1)


def test_recover_phase_requires_matching_xz():
    with pytest.raises(ValueError):
        recover_phase(initial_tableau(2), apply_gate(initial_tableau(2), gate("h", 0)))


def test_recover_phase_random_closed_loop():
    rng = random.Random(23)
    for n in (1, 2, 3):
        for _ in range(20):
            body = random_clifford_gates(n, 25, rng)
            target = apply_circuit(initial_tableau(n), body)
            # Corrupt the phase by prepending random Paulis, then recover.
            paulis = [
                gate(rng.choice(["x", "y", "z"]), q) for q in range(n) if rng.random() < 0.6
            ]
            synth = apply_circuit(initial_tableau(n), paulis + body)
            fix = recover_phase(synth, target)
            assert equivalent(apply_circuit(initial_tableau(n), fix + paulis + body), target)


def test_permute_columns():
    t = initial_tableau(2)
    assert equivalent(permute_columns(t, Permutation((0, 1))), t)

    swapped = permute_columns(t, Permutation((1, 0)))
    assert swapped.x.astype(int).tolist() == [[0, 1], [1, 0], [0, 0], [0, 0]]
    assert is_symplectic(swapped)

    with pytest.raises(ValueError):
        permute_columns(t, Permutation((0, 1, 2)))


def test_permute_columns_matches_relabeled_circuit():
    # Relabeling wires before a circuit equals permuting initial-tableau columns.
    perm = Permutation((1, 2, 0))
    gates = [gate("cx", 0, 1), gate("s", 2), gate("h", 0), gate("cx", 2, 1)]
    lhs = apply_circuit(permute_columns(initial_tableau(3), perm), gates)
    relabeled = [
        gate(g.kind.value, *[perm.inverse()(q) for q in g.qubits]) for g in gates
    ]
    rhs = permute_columns(apply_circuit(initial_tableau(3), relabeled), perm)
    assert equivalent(lhs, rhs)


def test_permutation_helpers():
    p = Permutation((2, 0, 1))
    assert p.inverse().map == (1, 2, 0)
    assert p.compose(p.inverse()).is_identity
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_simulated_tableaux_stay_symplectic():
    rng = random.Random(29)
    for n in (1, 2, 3, 4):
        t = apply_circuit(initial_tableau(n), random_clifford_gates(n, 50, rng))
        assert is_symplectic(t)


def test_render_shape():
    text = render(initial_tableau(2))
    assert text.splitlines()[0] == "1 0 | 0 0 | 0"
    assert len(text.splitlines()) == 4
