"""Gate-level circuit representation.

Bit convention, fixed once for the whole package: a basis state of a
w-qubit register is the integer whose binary expansion reads qubit 0 first,
i.e. qubit 0 is the most significant bit.  Data qubits come first
(0 .. n_data-1), ancilla qubits after them.

Gates are immutable tagged values.  ``MultiControlledPhase`` multiplies
``exp(1j*theta)`` onto every amplitude whose control bits match their
polarities and whose target bit is 1; with ``target=None`` the condition is
the controls alone (an all-zeros pattern cannot place a target on a 1-bit).
``OracleCompute`` XORs the fixed-point code of a classical eigenvalue
function into the ancilla register and ``OracleUncompute`` undoes it;
``AncillaPhaseRamp`` applies ``exp(-1j * t * value_scale * v)`` where v is
the two's-complement integer held by the ancilla register (first listed
ancilla qubit = sign bit).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, RangeOverflow


@dataclass(frozen=True)
class OracleDef:
    """Serializable eigenvalue function plus its fixed-point format.

    ``lambda_x = gamma * sum_i weights[i] * exp(2j*pi*x*support[i]/n_vertices)``
    (real part), encoded in two's complement with k_int integer bits and
    k_frac fractional bits, round-to-nearest.
    """

    n_vertices: int
    support: tuple[int, ...]
    weights: tuple[float, ...]
    gamma: float
    k_int: int
    k_frac: int

    @property
    def n_bits(self) -> int:
        return self.k_int + self.k_frac

    def eigenvalues(self) -> np.ndarray:
        x = np.arange(self.n_vertices)[:, None]
        y = np.asarray(self.support, dtype=float)[None, :]
        phases = np.exp(2j * np.pi * x * y / self.n_vertices)
        return (self.gamma * phases @ np.asarray(self.weights)).real

    def encode_table(self) -> np.ndarray:
        """Two's-complement codes of all eigenvalues, as uint64 per vertex."""
        lams = self.eigenvalues()
        bound = 2.0 ** (self.k_int - 1)
        worst = float(np.max(np.abs(lams))) if len(lams) else 0.0
        if worst >= bound:
            raise RangeOverflow(
                f"|lambda| = {worst:g} >= 2^(k_int-1) = {bound:g}; raise k_int"
            )
        codes = np.rint(lams * 2.0 ** self.k_frac).astype(np.int64)
        half = np.int64(1) << (self.n_bits - 1)
        if np.any(codes >= half) or np.any(codes < -half):
            raise RangeOverflow("rounded eigenvalue code leaves the signed range")
        return (codes & ((np.int64(1) << self.n_bits) - 1)).astype(np.uint64)

    def truncated_eigenvalues(self) -> np.ndarray:
        """Eigenvalues after round-to-nearest at k_frac fractional bits."""
        return np.rint(self.eigenvalues() * 2.0 ** self.k_frac) / 2.0 ** self.k_frac


@dataclass(frozen=True)
class Hadamard:
    target: int


@dataclass(frozen=True)
class PauliX:
    target: int


@dataclass(frozen=True)
class Phase:
    target: int
    theta: float


@dataclass(frozen=True)
class MultiControlledPhase:
    controls: tuple[tuple[int, int], ...]  # (qubit, required bit 0/1)
    target: int | None
    theta: float


@dataclass(frozen=True)
class Swap:
    a: int
    b: int


@dataclass(frozen=True)
class OracleCompute:
    data: tuple[int, ...]
    ancilla: tuple[int, ...]
    oracle_id: str
    oracle: OracleDef = field(compare=False)


@dataclass(frozen=True)
class OracleUncompute:
    data: tuple[int, ...]
    ancilla: tuple[int, ...]
    oracle_id: str
    oracle: OracleDef = field(compare=False)


@dataclass(frozen=True)
class AncillaPhaseRamp:
    ancilla: tuple[int, ...]  # sign bit first
    t: float
    value_scale: float


Gate = (
    Hadamard
    | PauliX
    | Phase
    | MultiControlledPhase
    | Swap
    | OracleCompute
    | OracleUncompute
    | AncillaPhaseRamp
)


def gate_qubits(gate: Gate) -> tuple[int, ...]:
    """All qubits a gate touches (controls included)."""
    if isinstance(gate, (Hadamard, PauliX, Phase)):
        return (gate.target,)
    if isinstance(gate, MultiControlledPhase):
        qs = [q for q, _ in gate.controls]
        if gate.target is not None:
            qs.append(gate.target)
        return tuple(qs)
    if isinstance(gate, Swap):
        return (gate.a, gate.b)
    if isinstance(gate, (OracleCompute, OracleUncompute)):
        return gate.data + gate.ancilla
    return tuple(gate.ancilla)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over n_data data qubits and n_ancilla ancillas."""

    n_data: int
    n_ancilla: int
    gates: tuple[Gate, ...]

    @property
    def width(self) -> int:
        return self.n_data + self.n_ancilla

    def __post_init__(self):
        w = self.width
        pending: list[tuple] = []
        for gate in self.gates:
            qs = gate_qubits(gate)
            if len(set(qs)) != len(qs):
                raise IndexOutOfRange(f"repeated qubit in {gate!r}")
            for q in qs:
                if not 0 <= q < w:
                    raise IndexOutOfRange(f"qubit {q} outside width {w} in {gate!r}")
            theta = getattr(gate, "theta", 0.0)
            if not np.isfinite(theta):
                raise ValueError(f"non-finite phase in {gate!r}")
            if isinstance(gate, OracleCompute):
                pending.append((gate.oracle_id, gate.data, gate.ancilla))
            elif isinstance(gate, OracleUncompute):
                key = (gate.oracle_id, gate.data, gate.ancilla)
                if not pending or pending[-1] != key:
                    raise ValueError(
                        f"OracleUncompute({gate.oracle_id!r}) without a matching "
                        "enclosing OracleCompute"
                    )
                pending.pop()
        if pending:
            raise ValueError(f"OracleCompute({pending[-1][0]!r}) never uncomputed")

    def concatenated(self, other: "Circuit") -> "Circuit":
        if (self.n_data, self.n_ancilla) != (other.n_data, other.n_ancilla):
            raise IndexOutOfRange("cannot concatenate circuits of different shape")
        return Circuit(self.n_data, self.n_ancilla, self.gates + other.gates)


@dataclass(frozen=True)
class CircuitStats:
    n_data: int
    n_ancilla: int
    width: int
    total_gates: int
    depth: int
    counts: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict:
        return {
            "n_data": self.n_data,
            "n_ancilla": self.n_ancilla,
            "width": self.width,
            "total_gates": self.total_gates,
            "depth": self.depth,
            "counts": dict(self.counts),
        }


_GATE_KINDS = {
    Hadamard: "hadamard",
    PauliX: "pauli_x",
    Phase: "phase",
    MultiControlledPhase: "mcphase",
    Swap: "swap",
    OracleCompute: "oracle_compute",
    OracleUncompute: "oracle_uncompute",
    AncillaPhaseRamp: "phase_ramp",
}


def circuit_stats(circuit: Circuit) -> CircuitStats:
    """Gate counts by variant, width, and greedy-layered depth."""
    counts: dict[str, int] = {}
    frontier = [0] * max(circuit.width, 1)
    depth = 0
    for gate in circuit.gates:
        kind = _GATE_KINDS[type(gate)]
        counts[kind] = counts.get(kind, 0) + 1
        qs = gate_qubits(gate)
        layer = 1 + max((frontier[q] for q in qs), default=depth)
        for q in qs:
            frontier[q] = layer
        depth = max(depth, layer)
    return CircuitStats(
        n_data=circuit.n_data,
        n_ancilla=circuit.n_ancilla,
        width=circuit.width,
        total_gates=len(circuit.gates),
        depth=depth,
        counts=tuple(sorted(counts.items())),
    )


# ---- JSON serialization -----------------------------------------------------

def _gate_to_dict(gate: Gate) -> dict:
    kind = _GATE_KINDS[type(gate)]
    if isinstance(gate, (Hadamard, PauliX)):
        return {"kind": kind, "targets": [gate.target]}
    if isinstance(gate, Phase):
        return {"kind": kind, "targets": [gate.target], "theta": gate.theta}
    if isinstance(gate, MultiControlledPhase):
        return {
            "kind": kind,
            "targets": [] if gate.target is None else [gate.target],
            "controls": [[q, pol] for q, pol in gate.controls],
            "theta": gate.theta,
        }
    if isinstance(gate, Swap):
        return {"kind": kind, "targets": [gate.a, gate.b]}
    if isinstance(gate, (OracleCompute, OracleUncompute)):
        return {
            "kind": kind,
            "data": list(gate.data),
            "ancilla": list(gate.ancilla),
            "oracle": gate.oracle_id,
        }
    return {
        "kind": kind,
        "ancilla": list(gate.ancilla),
        "t": gate.t,
        "value_scale": gate.value_scale,
    }


def _gate_from_dict(d: dict, oracles: dict[str, OracleDef]) -> Gate:
    kind = d["kind"]
    if kind == "hadamard":
        return Hadamard(d["targets"][0])
    if kind == "pauli_x":
        return PauliX(d["targets"][0])
    if kind == "phase":
        return Phase(d["targets"][0], float(d["theta"]))
    if kind == "mcphase":
        targets = d.get("targets", [])
        return MultiControlledPhase(
            controls=tuple((int(q), int(p)) for q, p in d.get("controls", [])),
            target=targets[0] if targets else None,
            theta=float(d["theta"]),
        )
    if kind == "swap":
        return Swap(d["targets"][0], d["targets"][1])
    if kind in ("oracle_compute", "oracle_uncompute"):
        cls = OracleCompute if kind == "oracle_compute" else OracleUncompute
        oid = d["oracle"]
        if oid not in oracles:
            raise KeyError(f"circuit file references unknown oracle {oid!r}")
        return cls(
            data=tuple(d["data"]),
            ancilla=tuple(d["ancilla"]),
            oracle_id=oid,
            oracle=oracles[oid],
        )
    if kind == "phase_ramp":
        return AncillaPhaseRamp(
            ancilla=tuple(d["ancilla"]),
            t=float(d["t"]),
            value_scale=float(d["value_scale"]),
        )
    raise ValueError(f"unknown gate kind {kind!r}")


def circuit_to_dict(circuit: Circuit) -> dict:
    oracles: dict[str, OracleDef] = {}
    for gate in circuit.gates:
        if isinstance(gate, (OracleCompute, OracleUncompute)):
            oracles[gate.oracle_id] = gate.oracle
    out = {
        "schema_version": 1,
        "n_data": circuit.n_data,
        "n_ancilla": circuit.n_ancilla,
        "gates": [_gate_to_dict(g) for g in circuit.gates],
    }
    if oracles:
        out["oracles"] = {
            oid: {
                "n_vertices": o.n_vertices,
                "support": list(o.support),
                "weights": list(o.weights),
                "gamma": o.gamma,
                "k_int": o.k_int,
                "k_frac": o.k_frac,
            }
            for oid, o in sorted(oracles.items())
        }
    return out


def circuit_from_dict(d: dict) -> Circuit:
    oracles = {
        oid: OracleDef(
            n_vertices=int(o["n_vertices"]),
            support=tuple(o["support"]),
            weights=tuple(o["weights"]),
            gamma=float(o["gamma"]),
            k_int=int(o["k_int"]),
            k_frac=int(o["k_frac"]),
        )
        for oid, o in d.get("oracles", {}).items()
    }
    return Circuit(
        n_data=int(d["n_data"]),
        n_ancilla=int(d["n_ancilla"]),
        gates=tuple(_gate_from_dict(g, oracles) for g in d["gates"]),
    )


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(circuit_to_dict(circuit), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_circuit(path) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return circuit_from_dict(json.load(fh))
