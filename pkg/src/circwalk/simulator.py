"""Exact dense statevector execution of circuits.

Amplitudes are complex double precision over basis states indexed big-endian
(qubit 0 = most significant bit); data qubits precede ancilla qubits, so a
full-width index is ``x * 2**n_ancilla + a``.  Gate application mutates
strided views of one contiguous array; no gate matrix is ever materialized
except in ``circuit_unitary``.

Two execution paths:

* ``run`` - honest dense simulation of the full register, guarded at
  26 qubits total.
* ``output_state`` - returns the data-register state of a walk circuit.
  Below the guard it runs dense and strips the (verified clean) ancilla
  block; above it, it switches to a compressed representation that stores
  one ancilla bit-pattern per data basis state, which is exact for compiled
  circuits because only the oracle gates touch ancillas and they act as
  classical functions of the data register.

Sampling uses the counter-based Philox generator (numpy.random.Philox keyed
by the seed) with inverse-CDF draws, so shot counts are reproducible across
platforms bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import (
    AncillaPhaseRamp,
    Circuit,
    Gate,
    Hadamard,
    MultiControlledPhase,
    OracleCompute,
    OracleUncompute,
    PauliX,
    Phase,
    Swap,
)
from .errors import (
    IndexOutOfRange,
    NotPowerOfTwo,
    WidthExceeded,
    WidthMismatch,
    ZeroVector,
)

DENSE_WIDTH_GUARD = 26
COMPRESSED_PREFERRED_WIDTH = 20
UNITARY_WIDTH_GUARD = 12
NORM_TOL = 1e-10
NEGATIVE_PROB_TOL = 1e-12
ANCILLA_RESTORE_TOL = 1e-9

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over 2**n_qubits basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** self.n_qubits,):
            raise WidthMismatch(
                f"expected {2 ** self.n_qubits} amplitudes, got {amps.shape}"
            )
        if abs(float(np.linalg.norm(amps)) - 1.0) > NORM_TOL:
            raise ZeroVector(
                f"state norm {np.linalg.norm(amps):.12g} deviates from 1"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class Distribution:
    """Probabilities over vertex outcomes; tiny float negativity clamped."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.size == 0:
            raise ValueError("empty distribution")
        if p.min() < -NEGATIVE_PROB_TOL:
            raise ValueError(f"probability {p.min():.3e} below clamping threshold")
        p = np.clip(p, 0.0, None)
        total = float(p.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {total:.12g}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @property
    def n_outcomes(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class ShotCounts:
    """Multinomial sample: outcome -> count, with its provenance."""

    counts: dict[int, int]
    shots: int
    seed: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")


def basis_state(x: int, width: int) -> StateVector:
    """|x> on a ``width``-qubit register."""
    if width < 1:
        raise WidthMismatch("width must be >= 1")
    if not 0 <= x < 2 ** width:
        raise IndexOutOfRange(f"basis index {x} outside [0, 2^{width})")
    amps = np.zeros(2 ** width, dtype=complex)
    amps[x] = 1.0
    return StateVector(width, amps)


def state_from_amplitudes(amps) -> StateVector:
    """Normalize a complex vector of power-of-two length into a state."""
    amps = np.asarray(amps, dtype=complex)
    n = len(amps)
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwo(f"amplitude vector of length {n}")
    norm = float(np.linalg.norm(amps))
    if norm < 1e-12:
        raise ZeroVector("cannot normalize a zero vector")
    return StateVector(n.bit_length() - 1, amps / norm)


# ---- gate kernels ------------------------------------------------------------
# Each kernel mutates ``arr`` in place; arr has shape (2,)*width (+ optional
# trailing batch axes) and qubit q is axis q.

def _kernel_hadamard(arr: np.ndarray, q: int) -> None:
    v = np.moveaxis(arr, q, 0)
    a = v[0].copy()
    b = v[1].copy()
    v[0] = (a + b) * _INV_SQRT2
    v[1] = (a - b) * _INV_SQRT2


def _kernel_x(arr: np.ndarray, q: int) -> None:
    v = np.moveaxis(arr, q, 0)
    tmp = v[0].copy()
    v[0] = v[1]
    v[1] = tmp


def _kernel_phase(arr: np.ndarray, q: int, theta: float) -> None:
    v = np.moveaxis(arr, q, 0)
    v[1] *= np.exp(1j * theta)


def _kernel_swap(arr: np.ndarray, a: int, b: int) -> None:
    v = np.moveaxis(arr, (a, b), (0, 1))
    tmp = v[0, 1].copy()
    v[0, 1] = v[1, 0]
    v[1, 0] = tmp


def _kernel_mcphase(arr: np.ndarray, gate: MultiControlledPhase) -> None:
    idx: list = [slice(None)] * arr.ndim
    for q, pol in gate.controls:
        idx[q] = pol
    if gate.target is not None:
        idx[gate.target] = 1
    arr[tuple(idx)] *= np.exp(1j * gate.theta)


def _kernel_phase_ramp(arr: np.ndarray, gate: AncillaPhaseRamp) -> None:
    # One independent phase per register bit; the sign bit carries negative
    # weight, so the product over set bits is exp(-i*t*scale*value).
    k = len(gate.ancilla)
    for j, q in enumerate(gate.ancilla):
        weight = gate.value_scale * 2.0 ** (k - 1 - j)
        if j == 0:
            weight = -weight
        _kernel_phase(arr, q, -gate.t * weight)


def _kernel_oracle_xor(arr: np.ndarray, gate: OracleCompute | OracleUncompute, width: int) -> None:
    n = len(gate.data)
    k = len(gate.ancilla)
    if gate.data != tuple(range(n)) or gate.ancilla != tuple(range(n, n + k)):
        raise IndexOutOfRange(
            "oracle gates require the compiled register layout "
            "(data qubits first, ancilla register contiguous after them)"
        )
    codes = gate.oracle.encode_table()
    view = arr.reshape(2 ** n, 2 ** k, -1)
    base = np.arange(2 ** k, dtype=np.uint64)
    perm_cache: dict[int, np.ndarray] = {}
    for x in range(2 ** n):
        code = int(codes[x])
        if code == 0:
            continue
        perm = perm_cache.get(code)
        if perm is None:
            perm = (base ^ np.uint64(code)).astype(np.int64)
            perm_cache[code] = perm
        view[x] = view[x][perm]


def _apply_gate_inplace(arr: np.ndarray, gate: Gate, width: int) -> None:
    if isinstance(gate, Hadamard):
        _kernel_hadamard(arr, gate.target)
    elif isinstance(gate, PauliX):
        _kernel_x(arr, gate.target)
    elif isinstance(gate, Phase):
        _kernel_phase(arr, gate.target, gate.theta)
    elif isinstance(gate, Swap):
        _kernel_swap(arr, gate.a, gate.b)
    elif isinstance(gate, MultiControlledPhase):
        _kernel_mcphase(arr, gate)
    elif isinstance(gate, AncillaPhaseRamp):
        _kernel_phase_ramp(arr, gate)
    elif isinstance(gate, (OracleCompute, OracleUncompute)):
        _kernel_oracle_xor(arr, gate, width)
    else:
        raise TypeError(f"unknown gate {gate!r}")


def evolve_amplitudes(amps: np.ndarray, circuit: Circuit) -> np.ndarray:
    """Apply a circuit to a raw amplitude array (no normalization checks).

    The input may carry trailing batch axes after the 2**width leading one.
    """
    w = circuit.width
    arr = np.ascontiguousarray(amps, dtype=complex).copy()
    batch = arr.shape[1:]
    view = arr.reshape((2,) * w + batch)
    for gate in circuit.gates:
        _apply_gate_inplace(view, gate, w)
    return arr


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Single-gate action on a state (exact linear algebra)."""
    w = state.n_qubits
    for q in _gate_indices(gate):
        if not 0 <= q < w:
            raise IndexOutOfRange(f"qubit {q} outside width {w}")
    arr = state.amplitudes.copy()
    _apply_gate_inplace(arr.reshape((2,) * w), gate, w)
    return StateVector(w, arr)


def _gate_indices(gate: Gate) -> tuple[int, ...]:
    from .circuits import gate_qubits

    return gate_qubits(gate)


def _embed_input(circuit: Circuit, state: StateVector) -> np.ndarray:
    if state.n_qubits == circuit.width:
        return state.amplitudes.copy()
    if state.n_qubits == circuit.n_data and circuit.n_ancilla > 0:
        anc = np.zeros(2 ** circuit.n_ancilla, dtype=complex)
        anc[0] = 1.0
        return np.kron(state.amplitudes, anc)
    raise WidthMismatch(
        f"input covers {state.n_qubits} qubits; circuit has {circuit.n_data} data"
        f" + {circuit.n_ancilla} ancilla"
    )


def run(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply all gates in order; dense over the full register.

    An input covering only the data qubits gets ancillas appended in |0...0>.
    """
    if circuit.width > DENSE_WIDTH_GUARD:
        raise WidthExceeded(
            f"{circuit.width} qubits exceed the dense guard of {DENSE_WIDTH_GUARD}; "
            "use output_state for compiled oracle circuits"
        )
    amps = _embed_input(circuit, state)
    return StateVector(circuit.width, evolve_amplitudes(amps, circuit))


def output_state(circuit: Circuit, state: StateVector) -> StateVector:
    """Data-register output of a compiled walk circuit.

    Verifies the ancilla register ends in |0...0> (probability deviation at
    most 1e-9) and returns the 2**n_data amplitudes.  Wide oracle circuits
    run in the compressed representation, which tracks one classical ancilla
    pattern per data basis state instead of 2**k dense dimensions.
    """
    if state.n_qubits != circuit.n_data:
        raise WidthMismatch(
            f"output_state expects a data-register input of {circuit.n_data} qubits"
        )
    if circuit.n_ancilla > 0 and circuit.width > COMPRESSED_PREFERRED_WIDTH:
        try:
            return _run_compressed(circuit, state)
        except (WidthExceeded, IndexOutOfRange):
            if circuit.width > DENSE_WIDTH_GUARD:
                raise  # no dense fallback exists above the guard
    if circuit.width <= DENSE_WIDTH_GUARD:
        full = run(circuit, state)
        block = full.amplitudes.reshape(2 ** circuit.n_data, -1)
        data = block[:, 0].copy()
        residual = 1.0 - float(np.sum(np.abs(data) ** 2))
        if residual > ANCILLA_RESTORE_TOL:
            raise WidthMismatch(
                f"ancilla register not restored to zero (leak {residual:.3e})"
            )
        return StateVector(circuit.n_data, data / np.linalg.norm(data))
    return _run_compressed(circuit, state)


def _run_compressed(circuit: Circuit, state: StateVector) -> StateVector:
    n = circuit.n_data
    amps = state.amplitudes.copy()
    anc = np.zeros(2 ** n, dtype=np.uint64)
    view = amps.reshape((2,) * n)
    for gate in circuit.gates:
        if isinstance(gate, (OracleCompute, OracleUncompute)):
            k = len(gate.ancilla)
            if gate.data != tuple(range(n)) or gate.ancilla != tuple(range(n, n + k)):
                raise IndexOutOfRange("oracle gates require the compiled register layout")
            anc ^= gate.oracle.encode_table()
        elif isinstance(gate, AncillaPhaseRamp):
            k = len(gate.ancilla)
            if gate.ancilla != tuple(range(n, n + circuit.n_ancilla)):
                raise IndexOutOfRange("phase ramp must cover the whole ancilla register")
            signed = anc.astype(np.int64)
            signed = np.where(signed >= np.int64(1) << (k - 1), signed - (np.int64(1) << k), signed)
            amps *= np.exp(-1j * gate.t * gate.value_scale * signed)
        else:
            qs = _gate_indices(gate)
            if any(q >= n for q in qs):
                raise WidthExceeded(
                    f"compressed path cannot apply {gate!r} to ancilla qubits"
                )
            if isinstance(gate, (Hadamard, PauliX, Swap)) and np.any(anc != anc[0]):
                raise WidthExceeded(
                    "compressed path needs a uniform ancilla register for "
                    "amplitude-mixing data gates"
                )
            _apply_gate_inplace(view, gate, n)
    if np.any(anc[np.abs(amps) > 1e-15] != 0):
        raise WidthMismatch("ancilla register not restored to zero")
    return StateVector(n, amps / np.linalg.norm(amps))


def probabilities(state: StateVector, n_data: int) -> Distribution:
    """Vertex distribution: marginal of |amplitude|^2 over ancilla qubits."""
    if not 1 <= n_data <= state.n_qubits:
        raise WidthMismatch(
            f"cannot marginalize {state.n_qubits} qubits onto {n_data} data qubits"
        )
    block = state.amplitudes.reshape(2 ** n_data, -1)
    return Distribution(np.sum(np.abs(block) ** 2, axis=1))


def sample(dist: Distribution, shots: int, seed: int) -> ShotCounts:
    """Seeded multinomial draws via inverse-CDF on a Philox stream."""
    if shots < 0:
        raise ValueError("shots must be >= 0")
    if shots == 0:
        return ShotCounts(counts={}, shots=0, seed=seed)
    rng = np.random.Generator(np.random.Philox(key=seed))
    cdf = np.cumsum(dist.probabilities)
    cdf[-1] = 1.0  # guard against float undershoot in the last bin
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    counted = np.bincount(draws, minlength=dist.n_outcomes)
    counts = {int(i): int(c) for i, c in enumerate(counted) if c > 0}
    return ShotCounts(counts=counts, shots=shots, seed=seed)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense matrix of the circuit: column j is the image of |j>."""
    w = circuit.width
    if w > UNITARY_WIDTH_GUARD:
        raise WidthExceeded(
            f"unitary extraction guarded at {UNITARY_WIDTH_GUARD} qubits, got {w}"
        )
    return evolve_amplitudes(np.eye(2 ** w, dtype=complex), circuit)


# ---- state files -------------------------------------------------------------

def state_to_dict(state: StateVector) -> dict:
    return {
        "schema_version": 1,
        "n": state.n_qubits,
        "re": [float(a.real) for a in state.amplitudes],
        "im": [float(a.imag) for a in state.amplitudes],
    }


def state_from_dict(d: dict) -> StateVector:
    amps = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
    return state_from_amplitudes(amps)
