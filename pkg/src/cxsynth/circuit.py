"""Circuit data model and OPENQASM 2.0 ingestion/emission.

The model is deliberately small: a circuit is an ordered list of gates over a
flat qubit index space.  Gates are either Clifford primitives we know how to
simulate, or OPAQUE gates whose original QASM text is carried along verbatim so
that re-emission is lossless.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class QasmParseError(ValueError):
    """Malformed QASM input; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GateKind(Enum):
    H = "h"
    S = "s"
    SDG = "sdg"
    I = "id"
    X = "x"
    Y = "y"
    Z = "z"
    CX = "cx"
    CZ = "cz"
    SWAP = "swap"
    OPAQUE = "opaque"


# Gates the tableau simulator understands, by arity.
CLIFFORD_1Q = frozenset(
    {GateKind.H, GateKind.S, GateKind.SDG, GateKind.I, GateKind.X, GateKind.Y, GateKind.Z}
)
CLIFFORD_2Q = frozenset({GateKind.CX, GateKind.CZ, GateKind.SWAP})


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    label: str | None = None  # original QASM text, OPAQUE only

    def __post_init__(self):
        if self.kind in CLIFFORD_1Q and len(self.qubits) != 1:
            raise ValueError(f"{self.kind.value} acts on exactly 1 qubit, got {self.qubits}")
        if self.kind in CLIFFORD_2Q:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"{self.kind.value} needs 2 distinct qubits, got {self.qubits}")
        if self.kind is GateKind.OPAQUE and self.label is None:
            raise ValueError("OPAQUE gate requires its original QASM text")

    @property
    def is_clifford(self) -> bool:
        return self.kind is not GateKind.OPAQUE


def gate(kind: GateKind | str, *qubits: int, label: str | None = None) -> Gate:
    """Convenience constructor: gate('cx', 0, 1)."""
    if isinstance(kind, str):
        kind = GateKind(kind)
    return Gate(kind, tuple(qubits), label)


@dataclass(frozen=True)
class Metrics:
    cx_count: int
    cx_depth: int
    gate_count: int


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...]
    header: tuple[str, ...] = ()
    # (name, size) per quantum register, flattened in declaration order
    registers: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"qubit index {q} out of range for n={self.num_qubits}")
        if not self.registers and self.num_qubits:
            object.__setattr__(self, "registers", (("q", self.num_qubits),))

    @property
    def is_clifford(self) -> bool:
        return all(g.is_clifford for g in self.gates)

    def replace_gates(self, gates) -> "Circuit":
        return Circuit(self.num_qubits, tuple(gates), self.header, self.registers)


def circuit_from_gates(num_qubits: int, gates) -> Circuit:
    """Build a bare circuit (canonical single register, default header)."""
    header = (
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{num_qubits}];",
    )
    return Circuit(num_qubits, tuple(gates), header, (("q", num_qubits),))


_GATE_NAMES = {
    "h": GateKind.H,
    "s": GateKind.S,
    "sdg": GateKind.SDG,
    "id": GateKind.I,
    "x": GateKind.X,
    "y": GateKind.Y,
    "z": GateKind.Z,
    "cx": GateKind.CX,
    "cz": GateKind.CZ,
    "swap": GateKind.SWAP,
}

_REF_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]")
_HEADER_RE = re.compile(r"^(OPENQASM\b|include\b|qreg\b|creg\b|gate\b|opaque\b)")


def _split_statements(text: str):
    """Yield (statement, line_number) pairs; line comments stripped."""
    line_no = 1
    buf: list[str] = []
    buf_line = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "/" and text[i : i + 2] == "//":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            line_no += 1
            i += 1
            if any(not c.isspace() for c in buf):
                buf.append(" ")
            continue
        if ch in ";{":
            stmt = "".join(buf).strip()
            if ch == "{":
                # gate-definition body: keep through the matching '}' verbatim
                depth = 1
                body = ["{"]
                i += 1
                while i < len(text) and depth:
                    if text[i] == "{":
                        depth += 1
                    elif text[i] == "}":
                        depth -= 1
                    elif text[i] == "\n":
                        line_no += 1
                    body.append(text[i] if text[i] != "\n" else " ")
                    i += 1
                yield stmt + " " + "".join(body), buf_line
            else:
                i += 1
                if stmt:
                    yield stmt, buf_line
            buf = []
            buf_line = line_no
            continue
        if ch.isspace() and not any(not c.isspace() for c in buf):
            buf_line = line_no
            i += 1
            continue
        if not buf:
            buf_line = line_no
        buf.append(ch)
        i += 1
    tail = "".join(buf).strip()
    if tail:
        raise QasmParseError(f"unterminated statement: {tail!r}", buf_line)


class _RegisterMap:
    def __init__(self):
        self.order: list[tuple[str, int]] = []
        self.offsets: dict[str, int] = {}
        self.total = 0

    def add(self, name: str, size: int):
        self.offsets[name] = self.total
        self.order.append((name, size))
        self.total += size

    def flat(self, name: str, idx: int, line: int) -> int:
        if name not in self.offsets:
            raise QasmParseError(f"unknown quantum register {name!r}", line)
        size = dict(self.order)[name]
        if not 0 <= idx < size:
            raise QasmParseError(f"index {name}[{idx}] out of range (size {size})", line)
        return self.offsets[name] + idx


def parse_qasm(text: str) -> Circuit:
    """Parse the OPENQASM 2.0 subset into a Circuit.

    Recognized Clifford gates are classified; everything else (t, rz, ccx,
    barrier, measure, ...) becomes an OPAQUE gate that keeps its original text
    and records which qubits it touches.  Multiple qregs are flattened into one
    index space in declaration order.
    """
    regs = _RegisterMap()
    cregs: set[str] = set()
    header: list[str] = []
    gates: list[Gate] = []

    for stmt, line in _split_statements(text):
        low = stmt.lower()
        if _HEADER_RE.match(stmt) or _HEADER_RE.match(low):
            word = low.split()[0]
            if word == "qreg":
                m = _REF_RE.search(stmt)
                if not m:
                    raise QasmParseError(f"malformed qreg declaration: {stmt!r}", line)
                regs.add(m.group(1), int(m.group(2)))
            elif word == "creg":
                m = _REF_RE.search(stmt)
                if m:
                    cregs.add(m.group(1))
            header.append(stmt + ";" if not stmt.endswith("}") else stmt)
            continue

        name = low.split()[0].split("(")[0]
        refs = [
            (r, int(i))
            for r, i in _REF_RE.findall(stmt)
            if r in regs.offsets
        ]
        kind = _GATE_NAMES.get(name)
        if kind is None:
            # Unrecognized instruction: keep verbatim.  Whole-register
            # references (e.g. "barrier q;") touch every qubit of the register.
            touched = [regs.flat(r, i, line) for r, i in refs]
            if not touched:
                for tok in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", stmt)[1:]:
                    if tok in regs.offsets:
                        base = regs.offsets[tok]
                        touched.extend(range(base, base + dict(regs.order)[tok]))
            touched = sorted(set(touched))
            if not touched:
                raise QasmParseError(f"instruction references no known qubit: {stmt!r}", line)
            gates.append(Gate(GateKind.OPAQUE, tuple(touched), stmt + ";"))
            continue

        if refs:
            flats = [regs.flat(r, i, line) for r, i in refs]
        else:
            # broadcast form, e.g. "h q;"
            regs_named = [t for t in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", stmt)[1:] if t in regs.offsets]
            if kind in CLIFFORD_2Q or len(regs_named) != 1:
                raise QasmParseError(f"unsupported broadcast form: {stmt!r}", line)
            rname = regs_named[0]
            base = regs.offsets[rname]
            for k in range(dict(regs.order)[rname]):
                gates.append(Gate(kind, (base + k,)))
            continue

        expected = 2 if kind in CLIFFORD_2Q else 1
        if len(flats) != expected:
            raise QasmParseError(
                f"{name} expects {expected} qubit argument(s), got {len(flats)}", line
            )
        try:
            gates.append(Gate(kind, tuple(flats)))
        except ValueError as exc:
            raise QasmParseError(str(exc), line) from None

    return Circuit(regs.total, tuple(gates), tuple(header), tuple(regs.order))


def _qubit_ref(circ: Circuit, flat: int) -> str:
    off = 0
    for name, size in circ.registers:
        if flat < off + size:
            return f"{name}[{flat - off}]"
        off += size
    raise ValueError(f"qubit index {flat} outside all registers")


def emit_qasm(circ: Circuit) -> str:
    """Render a Circuit back to OPENQASM 2.0 text.

    parse_qasm(emit_qasm(c)) is gate-for-gate identical to c; OPAQUE labels are
    re-emitted verbatim.
    """
    lines = list(circ.header)
    if not lines:
        lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
        lines += [f"qreg {name}[{size}];" for name, size in circ.registers]
    for g in circ.gates:
        if g.kind is GateKind.OPAQUE:
            lines.append(g.label)
        else:
            args = ",".join(_qubit_ref(circ, q) for q in g.qubits)
            lines.append(f"{g.kind.value} {args};")
    return "\n".join(lines) + "\n"


def compute_metrics(circ: Circuit) -> Metrics:
    """CX count, CX depth (per-qubit counters) and total gate count.

    Only literal CX instructions count; CZ/SWAP contribute after explicit
    decomposition, never implicitly.
    """
    depth = [0] * circ.num_qubits
    cx = 0
    for g in circ.gates:
        if g.kind is GateKind.CX:
            cx += 1
            a, b = g.qubits
            d = 1 + max(depth[a], depth[b])
            depth[a] = depth[b] = d
    return Metrics(cx, max(depth, default=0), len(circ.gates))


def decompose_to_base(g: Gate) -> list[Gate]:
    """Rewrite a non-OPAQUE gate over the base set {H, S, CX, X, Y, Z}.

    Tableau-equivalent by construction: Sdg = S^3, CZ(a,b) = H(b) CX(a,b) H(b),
    SWAP(a,b) = CX(a,b) CX(b,a) CX(a,b).
    """
    if g.kind is GateKind.OPAQUE:
        raise ValueError("cannot decompose an OPAQUE gate")
    if g.kind is GateKind.I:
        return []
    if g.kind is GateKind.SDG:
        (q,) = g.qubits
        return [Gate(GateKind.S, (q,))] * 3
    if g.kind is GateKind.CZ:
        a, b = g.qubits
        return [Gate(GateKind.H, (b,)), Gate(GateKind.CX, (a, b)), Gate(GateKind.H, (b,))]
    if g.kind is GateKind.SWAP:
        a, b = g.qubits
        return [Gate(GateKind.CX, (a, b)), Gate(GateKind.CX, (b, a)), Gate(GateKind.CX, (a, b))]
    return [g]
