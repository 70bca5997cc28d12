"""Compilation of exp(-i*t*H) into gate lists for circulant graphs with N = 2^n.

The walk operator factors as Qdag * exp(-i*t*Lambda) * Q where Q is the
Fourier matrix of Eq-free convention ``Q[j, k] = omega**(j*k)/sqrt(N)``,
``omega = exp(2j*pi/N)``.  Circuits therefore apply the QFT first, then a
diagonal phase block, then the inverse QFT.  Three diagonal strategies:

* ``few_eigenvalues`` - one multi-controlled phase per nonzero eigenvalue
  pattern, with groups merged into a single gate when their index set forms
  a subcube of {0,1}^n (shared don't-care bits);
* ``oracle`` - compute the eigenvalue into a fixed-point ancilla register,
  apply a phase ramp linear in the register value, uncompute;
* ``hadamard_complete`` - the Hadamard-basis shortcut for complete graphs
  (H then X on every qubit, one phase on the all-ones pattern, X then H).

Everything is big-endian: qubit 0 carries the most significant bit of the
vertex index, and the QFT ends with explicit swaps so its matrix equals the
Fourier matrix exactly, not up to bit reversal.
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
    OracleDef,
    OracleUncompute,
    PauliX,
    Phase,
    Swap,
)
from .errors import NotPowerOfTwo, QasmExportError, WidthExceeded
from .graph import (
    CirculantGraph,
    EigenvalueOracle,
    Spectrum,
    eigenvalue_oracle,
    spectrum,
)

QFT_MAX_QUBITS = 14
ZERO_EIGENVALUE_TOL = 1e-12
MAX_ORACLE_BITS = 62  # fixed-point codes are held in uint64


@dataclass(frozen=True)
class CompilerOptions:
    """Knobs for compile_ctqw.

    strategy: ``few_eigenvalues``, ``oracle``, ``hadamard_complete`` or
    ``auto``.  ``auto`` picks the Hadamard shortcut for complete graphs,
    ``few_eigenvalues`` while the number of distinct nonzero eigenvalue
    groups stays at or below ``few_group_limit``, and ``oracle`` beyond.

    k_frac / k_int: fractional and integer bits of the two's-complement
    eigenvalue register (oracle strategy).  k_int defaults to the smallest
    width that fits max |lambda|.
    """

    strategy: str = "auto"
    k_frac: int = 24
    k_int: int | None = None
    grouping_tol: float = 1e-9
    few_group_limit: int = 64


STRATEGIES = ("auto", "few_eigenvalues", "oracle", "hadamard_complete")


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwo(f"dimension {n} is not a power of two")
    return n.bit_length() - 1


def qft_circuit(n: int, inverse: bool = False) -> Circuit:
    """Quantum Fourier transform circuit on n qubits.

    Emits n Hadamards, n(n-1)/2 controlled phases and floor(n/2) terminal
    swaps; the extracted matrix equals omega**(j*k)/sqrt(2^n) with positive
    omega.  ``inverse=True`` reverses the gate order and negates phases.
    """
    if not 1 <= n <= QFT_MAX_QUBITS:
        raise WidthExceeded(f"qft supports 1..{QFT_MAX_QUBITS} qubits, got {n}")
    gates: list[Gate] = []
    for i in range(n):
        gates.append(Hadamard(i))
        for j in range(i + 1, n):
            theta = 2.0 * np.pi / 2.0 ** (j - i + 1)
            gates.append(MultiControlledPhase(((j, 1),), i, theta))
    for i in range(n // 2):
        gates.append(Swap(i, n - 1 - i))
    if inverse:
        gates = [_reverse_gate(g) for g in reversed(gates)]
    return Circuit(n_data=n, n_ancilla=0, gates=tuple(gates))


def _reverse_gate(gate: Gate) -> Gate:
    if isinstance(gate, MultiControlledPhase):
        return MultiControlledPhase(gate.controls, gate.target, -gate.theta)
    if isinstance(gate, Phase):
        return Phase(gate.target, -gate.theta)
    return gate  # Hadamard and Swap are self-inverse


def pattern_phase_gate(pattern: int, conditioned: int, n: int, theta: float) -> MultiControlledPhase:
    """Phase gate on the basis states matching ``pattern`` on the
    ``conditioned`` bit positions (bit n-1-q of the masks <-> qubit q).

    The highest-index conditioned qubit holding a 1 becomes the target;
    every other conditioned qubit becomes a control with the pattern bit as
    polarity.  An all-zero pattern has no qubit to place a target on, so the
    gate is all controls (target None); no conditioned bits at all yields a
    pure global-phase gate.
    """
    qubits = [q for q in range(n) if (conditioned >> (n - 1 - q)) & 1]
    ones = [q for q in qubits if (pattern >> (n - 1 - q)) & 1]
    target = ones[-1] if ones else None
    controls = tuple(
        (q, (pattern >> (n - 1 - q)) & 1) for q in qubits if q != target
    )
    return MultiControlledPhase(controls, target, theta)


def basis_phase_gate(m: int, n: int, theta: float) -> MultiControlledPhase:
    """Phase theta on the single basis state |m> of an n-qubit register."""
    return pattern_phase_gate(m, (1 << n) - 1, n, theta)


def diagonal_phase_circuit(phases) -> Circuit:
    """Circuit applying exp(1j*phases[x]) to each basis state |x>.

    One multi-controlled phase per nonzero entry; used directly by the IQP
    probability tests and as the building block of the few-eigenvalue
    strategy.
    """
    phases = np.asarray(phases, dtype=float)
    n = _log2_exact(len(phases))
    gates = tuple(
        basis_phase_gate(m, n, float(phases[m]))
        for m in range(len(phases))
        if phases[m] != 0.0
    )
    return Circuit(n_data=n, n_ancilla=0, gates=gates)


def _subcube_gate(indices: tuple[int, ...], n: int, theta: float) -> MultiControlledPhase | None:
    """Single gate covering ``indices`` if they form an exact subcube."""
    size = len(indices)
    if size & (size - 1):
        return None
    acc_and = acc_or = indices[0]
    for m in indices[1:]:
        acc_and &= m
        acc_or |= m
    free = acc_or & ~acc_and
    if size != 1 << bin(free).count("1"):
        return None
    conditioned = ((1 << n) - 1) & ~free
    return pattern_phase_gate(acc_and, conditioned, n, theta)


def diagonal_circuit_few(spec: Spectrum, t: float) -> Circuit:
    """Diagonal block exp(-1j*t*lambda_m) via per-pattern phase gates.

    Zero eigenvalue groups are skipped.  A group whose index set is an exact
    subcube of {0,1}^n collapses to one gate with don't-care bits dropped;
    any other group emits one gate per index with its exact eigenvalue.
    """
    n = _log2_exact(spec.n)
    eigs = spec.eigenvalues
    gates: list[Gate] = []
    for value, indices in spec.groups:
        if abs(value) <= ZERO_EIGENVALUE_TOL:
            continue
        merged = _subcube_gate(indices, n, -t * value)
        if merged is not None:
            gates.append(merged)
        else:
            gates.extend(
                basis_phase_gate(m, n, -t * float(eigs[m])) for m in indices
            )
    return Circuit(n_data=n, n_ancilla=0, gates=tuple(gates))


def _auto_k_int(max_abs_eig: float) -> int:
    k_int = 1
    while max_abs_eig >= 2.0 ** (k_int - 1):
        k_int += 1
    return k_int


def diagonal_circuit_oracle(
    oracle: EigenvalueOracle, t: float, options: CompilerOptions | None = None
) -> Circuit:
    """Diagonal block via eigenvalue-register phase kickback.

    |x>|0> -> |x>|enc(lambda_x)> -> e^{-1j*t*lam~_x}|x>|enc(lambda_x)> -> e^{...}|x>|0>
    with lam~_x the k-bit round-to-nearest truncation, so the per-amplitude
    phase error is at most t * 2^-k_frac.
    """
    options = options or CompilerOptions()
    n = _log2_exact(oracle.n_vertices)
    lams = oracle.evaluate_all()
    max_abs = float(np.max(np.abs(lams))) if len(lams) else 0.0
    k_int = options.k_int if options.k_int is not None else _auto_k_int(max_abs)
    if k_int < 1 or options.k_frac < 1:
        raise ValueError("k_int and k_frac must both be >= 1")
    k = k_int + options.k_frac
    if k > MAX_ORACLE_BITS:
        raise WidthExceeded(f"eigenvalue register of {k} bits exceeds {MAX_ORACLE_BITS}")
    odef = OracleDef(
        n_vertices=oracle.n_vertices,
        support=oracle.support,
        weights=oracle.weights,
        gamma=oracle.gamma,
        k_int=k_int,
        k_frac=options.k_frac,
    )
    odef.encode_table()  # raises RangeOverflow if k_int too small
    data = tuple(range(n))
    ancilla = tuple(range(n, n + k))
    gates: tuple[Gate, ...] = (
        OracleCompute(data, ancilla, "f0", odef),
        AncillaPhaseRamp(ancilla, t, 2.0 ** (-options.k_frac)),
        OracleUncompute(data, ancilla, "f0", odef),
    )
    return Circuit(n_data=n, n_ancilla=k, gates=gates)


def complete_graph_circuit(
    n: int, t: float, gamma: float = 1.0, self_loops: bool = True
) -> Circuit:
    """Walk circuit for the complete graph on 2^n vertices, Hadamard basis.

    H then X on every qubit, one phase of -2^n*gamma*t on the all-ones
    pattern, X then H.  With ``self_loops`` the circuit equals exp(-1j*t*H)
    exactly; without, it differs by the unobservable global phase
    exp(1j*gamma*t) (the adjacency loses the identity part).
    """
    if n < 1:
        raise NotPowerOfTwo(f"need at least one qubit, got n={n}")
    theta = -(2.0 ** n) * gamma * t
    pre: list[Gate] = []
    post: list[Gate] = []
    for q in range(n):
        pre += [Hadamard(q), PauliX(q)]
        post += [PauliX(q), Hadamard(q)]
    all_ones = pattern_phase_gate((1 << n) - 1, (1 << n) - 1, n, theta)
    return Circuit(n_data=n, n_ancilla=0, gates=tuple(pre + [all_ones] + post))


def _is_complete_row(graph: CirculantGraph) -> bool:
    row = graph.first_row
    return (
        graph.n_vertices >= 2
        and all(c == 1.0 for c in row[1:])
        and row[0] in (0.0, 1.0)
    )


def compile_ctqw(
    graph: CirculantGraph, t: float, options: CompilerOptions | None = None
) -> Circuit:
    """Compile the full walk operator for a 2^n-vertex circulant graph.

    QFT-based strategies emit qft(n) + diagonal + inverse-qft(n) (the
    circuit applies Q first); the Hadamard shortcut replaces the whole
    sandwich for complete graphs.
    """
    options = options or CompilerOptions()
    if options.strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {options.strategy!r}; choose from {STRATEGIES}")
    n = _log2_exact(graph.n_vertices)

    strategy = options.strategy
    if strategy == "auto":
        if _is_complete_row(graph):
            strategy = "hadamard_complete"
        else:
            spec = spectrum(graph, options.grouping_tol)
            nonzero = sum(
                1 for value, _ in spec.groups if abs(value) > ZERO_EIGENVALUE_TOL
            )
            strategy = "few_eigenvalues" if nonzero <= options.few_group_limit else "oracle"

    if strategy == "hadamard_complete":
        if not _is_complete_row(graph):
            raise ValueError("hadamard_complete strategy is only valid for complete graphs")
        return complete_graph_circuit(
            n, t, gamma=graph.gamma, self_loops=graph.first_row[0] == 1.0
        )
    if strategy == "few_eigenvalues":
        diag = diagonal_circuit_few(spectrum(graph, options.grouping_tol), t)
    else:
        diag = diagonal_circuit_oracle(eigenvalue_oracle(graph), t, options)

    fwd = qft_circuit(n)
    inv = qft_circuit(n, inverse=True)
    return Circuit(
        n_data=n,
        n_ancilla=diag.n_ancilla,
        gates=fwd.gates + diag.gates + inv.gates,
    )


# ---- lowering to single- and two-qubit gates --------------------------------

def _cx(control: int, target: int) -> list[Gate]:
    # CX from the native set: H t, CZ(c,t), H t.
    return [
        Hadamard(target),
        MultiControlledPhase(((control, 1),), target, np.pi),
        Hadamard(target),
    ]


def _phase_on_all_ones(qubits: list[int], theta: float) -> list[Gate]:
    """Gates phasing exp(1j*theta) exactly when every listed qubit is 1."""
    if len(qubits) == 1:
        return [Phase(qubits[0], theta)]
    if len(qubits) == 2:
        return [MultiControlledPhase(((qubits[0], 1),), qubits[1], theta)]
    rest, a, b = qubits[:-2], qubits[-2], qubits[-1]
    # theta*r*a*b = theta/2*(r*a + r*b - r*(a xor b)); the xor is folded
    # into qubit a by CX conjugation.
    out = _phase_on_all_ones(rest + [a], theta / 2.0)
    out += _phase_on_all_ones(rest + [b], theta / 2.0)
    out += _cx(b, a)
    out += _phase_on_all_ones(rest + [a], -theta / 2.0)
    out += _cx(b, a)
    return out


def _lower_mcphase(gate: MultiControlledPhase) -> list[Gate]:
    flips = [PauliX(q) for q, pol in gate.controls if pol == 0]
    qubits = [q for q, _ in gate.controls]
    if gate.target is not None:
        qubits.append(gate.target)
    if not qubits:
        return [gate]  # pure global phase, already primitive
    if len(qubits) == 2 and not flips and gate.target is not None:
        return [gate]  # single if-1 control: already a two-qubit primitive
    body = _phase_on_all_ones(qubits, gate.theta)
    return flips + body + list(reversed(flips))


def lower_multicontrolled(circuit: Circuit) -> Circuit:
    """Rewrite every multi-controlled phase into H/X/Phase/CZ-level gates.

    Recursive phase-halving: a phase on the AND of m qubits splits into
    three phases on m-1 qubits (two at theta/2, one at -theta/2 conjugated
    by CX), bottoming out at single- and two-qubit phases.  if-0 controls
    are conjugated by Pauli-X.  Other gates pass through unchanged.
    """
    gates: list[Gate] = []
    for gate in circuit.gates:
        if isinstance(gate, MultiControlledPhase):
            gates.extend(_lower_mcphase(gate))
        else:
            gates.append(gate)
    return Circuit(circuit.n_data, circuit.n_ancilla, tuple(gates))


# ---- OpenQASM 2.0 export -----------------------------------------------------

def to_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text for oracle-free circuits.

    Multi-controlled phases are lowered first; the output uses only
    h/x/u1/cu1/swap from qelib1.  Circuits containing oracle gates (opaque
    classical functions) have no QASM representation and raise
    QasmExportError.  A conditioned-on-nothing phase gate becomes a global
    phase, expressed as u1 on both halves of qubit 0.
    """
    for gate in circuit.gates:
        if isinstance(gate, (OracleCompute, OracleUncompute, AncillaPhaseRamp)):
            raise QasmExportError(
                "circuit uses the eigenvalue-oracle strategy; its opaque "
                "classical-function gates cannot be expressed in OpenQASM 2.0"
            )
    lowered = lower_multicontrolled(circuit)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.width}];",
    ]
    for gate in lowered.gates:
        if isinstance(gate, Hadamard):
            lines.append(f"h q[{gate.target}];")
        elif isinstance(gate, PauliX):
            lines.append(f"x q[{gate.target}];")
        elif isinstance(gate, Phase):
            lines.append(f"u1({gate.theta!r}) q[{gate.target}];")
        elif isinstance(gate, Swap):
            lines.append(f"swap q[{gate.a}],q[{gate.b}];")
        elif isinstance(gate, MultiControlledPhase):
            if gate.controls and gate.target is not None:
                (ctrl, _), = gate.controls
                lines.append(f"cu1({gate.theta!r}) q[{ctrl}],q[{gate.target}];")
            elif gate.target is not None:
                lines.append(f"u1({gate.theta!r}) q[{gate.target}];")
            else:
                # global phase: u1 on |1> plus X-conjugated u1 on |0>
                lines.append(f"u1({gate.theta!r}) q[0];")
                lines.append("x q[0];")
                lines.append(f"u1({gate.theta!r}) q[0];")
                lines.append("x q[0];")
        else:  # pragma: no cover - filtered above
            raise QasmExportError(f"cannot export {gate!r}")
    return "\n".join(lines) + "\n"
