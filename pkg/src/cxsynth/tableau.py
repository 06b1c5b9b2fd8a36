"""Stabilizer tableau simulation of Clifford circuits.

An n-qubit tableau is the Boolean triple (x, z, r) with x and z of shape
(2n, n) and r of length 2n.  Row i < n holds the i-th destabilizer generator,
row n+i the i-th stabilizer.  Gate application updates whole columns, which is
a single vectorized XOR per rule.  Global phase is out of model: two circuits
are considered equal when their tableaux match exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CLIFFORD_1Q, CLIFFORD_2Q, Circuit, Gate, GateKind, decompose_to_base


class UnsupportedGateError(ValueError):
    """Raised when a non-Clifford (OPAQUE) gate reaches the simulator."""


@dataclass(frozen=True)
class Permutation:
    """A relabeling of qubit indices: i -> map[i]."""

    map: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.map) != list(range(len(self.map))):
            raise ValueError(f"not a bijection on 0..{len(self.map) - 1}: {self.map}")

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    @property
    def is_identity(self) -> bool:
        return all(self.map[i] == i for i in range(self.n))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.map):
            inv[j] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.map[other.map[i]] for i in range(self.n)))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))


class Tableau:
    __slots__ = ("n", "x", "z", "r")

    def __init__(self, n: int, x: np.ndarray, z: np.ndarray, r: np.ndarray):
        self.n = n
        self.x = x
        self.z = z
        self.r = r

    def copy(self) -> "Tableau":
        return Tableau(self.n, self.x.copy(), self.z.copy(), self.r.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return equivalent(self, other)

    def __repr__(self):
        return f"Tableau(n={self.n})\n{render(self)}"


def initial_tableau(n: int) -> Tableau:
    """Tableau of the empty circuit: x[i,i] = z[n+i,i] = 1, everything else 0."""
    if n < 1:
        raise ValueError("need at least one qubit")
    x = np.zeros((2 * n, n), dtype=bool)
    z = np.zeros((2 * n, n), dtype=bool)
    x[np.arange(n), np.arange(n)] = True
    z[np.arange(n, 2 * n), np.arange(n)] = True
    return Tableau(n, x, z, np.zeros(2 * n, dtype=bool))


def apply_gate(t: Tableau, g: Gate) -> Tableau:
    """Return a new tableau with g applied (column update rules)."""
    t = t.copy()
    _apply_inplace(t, g)
    return t


def _apply_inplace(t: Tableau, g: Gate):
    kind = g.kind
    x, z, r = t.x, t.z, t.r
    if kind is GateKind.CX:
        a, b = g.qubits
        r ^= x[:, a] & z[:, b] & ~(x[:, b] ^ z[:, a])
        x[:, b] ^= x[:, a]
        z[:, a] ^= z[:, b]
    elif kind is GateKind.H:
        (a,) = g.qubits
        r ^= x[:, a] & z[:, a]
        x[:, a], z[:, a] = z[:, a].copy(), x[:, a].copy()
    elif kind is GateKind.S:
        (a,) = g.qubits
        r ^= x[:, a] & z[:, a]
        z[:, a] ^= x[:, a]
    elif kind is GateKind.X:
        (a,) = g.qubits
        r ^= z[:, a]
    elif kind is GateKind.Z:
        (a,) = g.qubits
        r ^= x[:, a]
    elif kind is GateKind.Y:
        # Y = X then Z; both only touch the phase column.
        (a,) = g.qubits
        r ^= x[:, a] ^ z[:, a]
    elif kind is GateKind.I:
        pass
    elif kind in CLIFFORD_1Q or kind in CLIFFORD_2Q:
        for sub in decompose_to_base(g):
            _apply_inplace(t, sub)
    else:
        raise UnsupportedGateError(f"cannot simulate {g}")


def apply_circuit(t: Tableau, circ: Circuit | list[Gate] | tuple[Gate, ...]) -> Tableau:
    gates = circ.gates if isinstance(circ, Circuit) else circ
    t = t.copy()
    for g in gates:
        _apply_inplace(t, g)
    return t


def from_circuit(circ: Circuit) -> Tableau:
    """Left fold of apply_gate over the circuit, from the initial tableau."""
    return apply_circuit(initial_tableau(circ.num_qubits), circ)


def _check_same_size(a: Tableau, b: Tableau):
    if a.n != b.n:
        raise ValueError(f"tableau size mismatch: {a.n} vs {b.n}")


def equivalent(a: Tableau, b: Tableau) -> bool:
    """Full equality: x, z and the phase column r."""
    _check_same_size(a, b)
    return (
        np.array_equal(a.x, b.x)
        and np.array_equal(a.z, b.z)
        and np.array_equal(a.r, b.r)
    )


def equivalent_xz(a: Tableau, b: Tableau) -> bool:
    """Equality of x and z only; the phase column is ignored."""
    _check_same_size(a, b)
    return np.array_equal(a.x, b.x) and np.array_equal(a.z, b.z)


def recover_phase(synth: Tableau, target: Tableau) -> list[Gate]:
    """Pauli gates that, prepended to the circuit producing `synth`, repair r.

    Prepending Z_i flips r_i and X_i flips r_{n+i}; x and z are untouched, so
    this requires equivalent_xz(synth, target).
    """
    _check_same_size(synth, target)
    if not equivalent_xz(synth, target):
        raise ValueError("phase recovery requires equal x and z matrices")
    seq: list[Gate] = []
    n = synth.n
    for i in range(n):
        if synth.r[i] != target.r[i]:
            seq.append(Gate(GateKind.Z, (i,)))
        if synth.r[n + i] != target.r[n + i]:
            seq.append(Gate(GateKind.X, (i,)))
    return seq


def permute_columns(t: Tableau, p: Permutation) -> Tableau:
    """Move column a of x and z to column p(a); r is unchanged."""
    if p.n != t.n:
        raise ValueError(f"permutation size {p.n} != tableau size {t.n}")
    x = np.empty_like(t.x)
    z = np.empty_like(t.z)
    for a in range(t.n):
        x[:, p(a)] = t.x[:, a]
        z[:, p(a)] = t.z[:, a]
    return Tableau(t.n, x, z, t.r.copy())


def is_symplectic(t: Tableau) -> bool:
    """Whether the rows form valid generators: [x|z] invertible over GF(2)."""
    m = np.concatenate([t.x, t.z], axis=1).astype(np.uint8)
    size = 2 * t.n
    rank = 0
    col = 0
    m = m.copy()
    for col in range(size):
        pivot = None
        for row in range(rank, size):
            if m[row, col]:
                pivot = row
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for row in range(size):
            if row != rank and m[row, col]:
                m[row, :] ^= m[rank, :]
        rank += 1
    return rank == size


def render(t: Tableau) -> str:
    """Debug rendering as the block matrix (x | z | r)."""
    rows = []
    for i in range(2 * t.n):
        xs = " ".join(str(int(v)) for v in t.x[i])
        zs = " ".join(str(int(v)) for v in t.z[i])
        rows.append(f"{xs} | {zs} | {int(t.r[i])}")
    return "\n".join(rows)


def packed_xz(t: Tableau) -> tuple[int, ...]:
    """Hashable key of the (x, z) part, one packed integer per column pair."""
    out = []
    for a in range(t.n):
        v = 0
        for i in range(2 * t.n):
            if t.x[i, a]:
                v |= 1 << i
            if t.z[i, a]:
                v |= 1 << (2 * t.n + i)
        out.append(v)
    return tuple(out)
