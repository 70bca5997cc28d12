"""Classical reference oracles and the walk-analysis quantities.

Evolution oracles work on plain complex amplitude vectors of any length N
(Paley graphs are not power-of-two sized), so they accept either a
StateVector or an array and always return an ndarray of amplitudes:

* ``dense_evolution``   - eigendecomposition of H, the ground truth.
* ``fft_evolution``     - O(N log N) evolution through the Fourier basis,
  with the forward kernel ``omega**(+j*k)/sqrt(N)`` so its diagonal phases
  line up with the analytic Fourier-order spectrum.

``p_d`` is the all-zeros outcome probability of a Hadamard-sandwiched
diagonal circuit, computed by direct summation; the SWAP-test estimators
and distribution/density fidelities mirror the published K4 analysis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    LengthMismatch,
    NotPowerOfTwo,
    ShapeMismatch,
    TooLarge,
    WidthMismatch,
    ZeroExact,
)
from .graph import CirculantGraph, adjacency_matrix, fourier_eigenvalues
from .simulator import StateVector

DENSE_EVOLUTION_GUARD = 2 ** 12

HERMITICITY_TOL = 1e-6
TRACE_TOL = 2e-3
PSD_TOL = 5e-3


def _amplitudes(state) -> np.ndarray:
    if isinstance(state, StateVector):
        return np.asarray(state.amplitudes, dtype=complex)
    return np.asarray(state, dtype=complex)


def dense_evolution(graph: CirculantGraph, t: float, state) -> np.ndarray:
    """exp(-1j*t*H) applied through a dense Hermitian eigendecomposition."""
    n = graph.n_vertices
    if n > DENSE_EVOLUTION_GUARD:
        raise TooLarge(f"dense evolution refused for N={n} > {DENSE_EVOLUTION_GUARD}")
    psi = _amplitudes(state)
    if len(psi) != n:
        raise WidthMismatch(f"state has {len(psi)} amplitudes for {n} vertices")
    h = graph.gamma * adjacency_matrix(graph)
    w, v = np.linalg.eigh(h)
    return v @ (np.exp(-1j * t * w) * (v.conj().T @ psi))


def fft_evolution(graph: CirculantGraph, t: float, state) -> np.ndarray:
    """Evolution through the Fourier basis: O(N log N), any N >= 1."""
    psi = _amplitudes(state)
    if len(psi) != graph.n_vertices:
        raise WidthMismatch(
            f"state has {len(psi)} amplitudes for {graph.n_vertices} vertices"
        )
    lam = fourier_eigenvalues(graph)
    # Q psi = sqrt(N) * ifft(psi); Qdag phi = fft(phi)/sqrt(N); the sqrt(N)
    # factors cancel across the round trip.
    return np.fft.fft(np.exp(-1j * t * lam) * np.fft.ifft(psi))


def state_fidelity(a, b) -> float:
    """|<a|b>|^2 - global-phase-free agreement of two pure states."""
    av, bv = _amplitudes(a), _amplitudes(b)
    if av.shape != bv.shape:
        raise WidthMismatch(f"states of shapes {av.shape} and {bv.shape}")
    return float(np.abs(np.vdot(av, bv)) ** 2)


def p_d(phases, n: int) -> float:
    """All-zeros outcome probability |2^-n sum_x exp(1j*theta_x)|^2."""
    phases = np.asarray(phases, dtype=float)
    if len(phases) != 2 ** n:
        raise NotPowerOfTwo(f"{len(phases)} phases for n={n} qubits")
    return float(np.abs(np.mean(np.exp(1j * phases))) ** 2)


@dataclass(frozen=True)
class MultiplicativeErrorReport:
    epsilon: float
    satisfied_below_half: bool


def multiplicative_error(p_approx: float, p_exact: float) -> MultiplicativeErrorReport:
    """Relative approximation error |p~ - p| / p with the < 1/2 flag."""
    if p_exact < 0:
        raise ValueError("exact probability must be nonnegative")
    if p_exact == 0:
        if p_approx == 0:
            return MultiplicativeErrorReport(0.0, True)
        raise ZeroExact("no finite multiplicative error against p_exact = 0")
    eps = abs(p_approx - p_exact) / p_exact
    return MultiplicativeErrorReport(eps, eps < 0.5)


@dataclass(frozen=True)
class SwapTestResult:
    """Overlap |<phi|psi>|^2 and the ancilla outcome-1 probability."""

    overlap: float
    p_one: float
    shots_used: int

    def __post_init__(self):
        if not -1e-12 <= self.p_one <= 0.5 + 1e-12:
            raise ValueError(f"p_one {self.p_one} outside [0, 1/2]")
        if abs(self.overlap - (1.0 - 2.0 * self.p_one)) > 1e-9:
            raise ValueError("overlap and p_one disagree")


def swap_test_exact(psi, phi) -> SwapTestResult:
    overlap = state_fidelity(psi, phi)
    overlap = min(overlap, 1.0)
    return SwapTestResult(overlap=overlap, p_one=0.5 * (1.0 - overlap), shots_used=0)


def swap_test_sampled(psi, phi, shots: int, seed: int) -> SwapTestResult:
    """Bernoulli draws of the ancilla outcome, deterministic per seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    exact = swap_test_exact(psi, phi)
    rng = np.random.Generator(np.random.Philox(key=seed))
    ones = int(np.count_nonzero(rng.random(shots) < exact.p_one))
    p_hat = min(ones / shots, 0.5)
    return SwapTestResult(overlap=1.0 - 2.0 * p_hat, p_one=p_hat, shots_used=shots)


def classical_swap_estimate(phases, phases_tilde, samples: int, seed: int = 0) -> float:
    """|mean of D_xx * D~_xx|^2 over sampled x; exact when samples == N.

    The two diagonals enter as phase lists (D_xx = exp(1j*theta_x)); with
    ``samples`` equal to the full dimension the estimator averages over every
    x deterministically, otherwise it draws uniform indices from a Philox
    stream.
    """
    th = np.asarray(phases, dtype=float)
    tt = np.asarray(phases_tilde, dtype=float)
    if th.shape != tt.shape:
        raise LengthMismatch(f"phase lists of lengths {len(th)} and {len(tt)}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if samples == len(th):
        return float(np.abs(np.mean(np.exp(1j * (th + tt)))) ** 2)
    rng = np.random.Generator(np.random.Philox(key=seed))
    idx = rng.integers(0, len(th), size=samples)
    return float(np.abs(np.mean(np.exp(1j * (th[idx] + tt[idx])))) ** 2)


def average_distribution_fidelity(pairs) -> float:
    """Mean Bhattacharyya coefficient sum_i sqrt(p_i * q_i) over the pairs.

    Observed rows enter exactly as recorded (no renormalization), matching
    how the published fidelities were computed from the printed tables.
    """
    if not pairs:
        raise ShapeMismatch("need at least one (ideal, observed) pair")
    total = 0.0
    for ideal, observed in pairs:
        p = np.asarray(ideal, dtype=float)
        q = np.asarray(observed, dtype=float)
        if p.shape != q.shape:
            raise ShapeMismatch(f"distribution shapes {p.shape} and {q.shape}")
        if p.min() < -1e-12 or q.min() < -1e-12:
            raise ShapeMismatch("negative probabilities in fidelity input")
        total += float(np.sum(np.sqrt(np.clip(p, 0, None) * np.clip(q, 0, None))))
    return total / len(pairs)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian trace-one matrix with the tomography-fixture slack."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatch(f"density matrix of shape {m.shape}")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITICITY_TOL:
            raise ShapeMismatch(f"not Hermitian: max deviation {herm:.3e}")
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ShapeMismatch(f"trace {tr:.4f} outside 1 +- {TRACE_TOL}")
        min_eig = float(np.linalg.eigvalsh(m).min())
        if min_eig < -PSD_TOL:
            raise ShapeMismatch(f"minimum eigenvalue {min_eig:.4e} below -{PSD_TOL}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries).min())

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


@dataclass(frozen=True)
class DensityFidelityResult:
    """Both common pure-target fidelity conventions.

    f_linear = <phi|rho|phi>; f_sqrt is its square root.  The published K4
    tomography numbers follow the square-root convention (see fixtures).
    """

    f_linear: float
    f_sqrt: float


def density_fidelity(rho: DensityMatrix, phi) -> DensityFidelityResult:
    v = _amplitudes(phi)
    if len(v) != rho.dim:
        raise ShapeMismatch(f"state of length {len(v)} against dim {rho.dim}")
    v = v / np.linalg.norm(v)
    f_lin = float(np.real(np.vdot(v, rho.entries @ v)))
    f_lin = max(f_lin, 0.0)
    return DensityFidelityResult(f_linear=f_lin, f_sqrt=float(np.sqrt(f_lin)))
