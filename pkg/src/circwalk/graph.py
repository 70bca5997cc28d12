"""Circulant graphs, their Hamiltonians and analytic spectra.

A circulant graph on N vertices is fully described by the first row
``c = (c_0, ..., c_{N-1})`` of its adjacency matrix; row j is the first row
right-rotated j times, so ``A[j, k] = c[(k - j) mod N]``.  Undirectedness
requires ``c_j == c_{N-j}``.  The walk Hamiltonian is ``H = gamma * A``.

The Fourier matrix with entries ``omega**(j*k) / sqrt(N)``,
``omega = exp(2*pi*1j/N)``, diagonalizes every such matrix; the eigenvalue
attached to Fourier index m is

    lambda_m = gamma * sum_k c_k * omega**(-m*k)

which is real whenever the row is symmetric.  All operations here index
vertices and eigenvalues from 0.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyRow,
    InvalidSize,
    NonRealSpectrum,
    SymmetryViolation,
    TooLarge,
)

SYMMETRY_TOL = 1e-12
IMAG_RESIDUE_TOL = 1e-10
DEFAULT_GROUPING_TOL = 1e-9
DENSE_GUARD = 2 ** 14

GRAPH_KINDS = (
    "complete",
    "complete_no_loops",
    "cycle",
    "moebius_ladder",
    "complete_bipartite",
    "paley",
)


@dataclass(frozen=True)
class CirculantGraph:
    """Circulant graph with real edge weights and hopping rate gamma."""

    n_vertices: int
    first_row: tuple[float, ...]
    gamma: float = 1.0

    def hamiltonian_row(self) -> np.ndarray:
        """First row of H = gamma * A."""
        return self.gamma * np.asarray(self.first_row, dtype=float)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in Fourier order plus their distinct-value grouping.

    ``groups`` is a list of ``(value, indices)`` pairs ordered by descending
    value; the index lists partition ``range(N)``.  Values closer than the
    grouping tolerance are merged transitively and represented by their mean.
    """

    eigenvalues: np.ndarray
    groups: tuple[tuple[float, tuple[int, ...]], ...]

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(idx) for _, idx in self.groups)


@dataclass(frozen=True)
class EigenvalueOracle:
    """Classical eigenvalue function built from the nonzero row positions.

    ``evaluate(x)`` returns lambda_x as

        gamma * sum_{y in support} c_y * exp(2j*pi*x*y / N)

    with the (float-noise) imaginary residue discarded.  For a symmetric row
    this agrees with the Fourier-order spectrum entry by entry.
    """

    n_vertices: int
    support: tuple[int, ...]
    weights: tuple[float, ...]
    gamma: float
    closed_form_tag: str | None = None

    def evaluate(self, x: int) -> float:
        phases = np.exp(2j * np.pi * x * np.asarray(self.support) / self.n_vertices)
        value = self.gamma * np.dot(np.asarray(self.weights), phases)
        return float(value.real)

    def evaluate_all(self) -> np.ndarray:
        """lambda_x for every vertex x, as one vectorized sweep."""
        x = np.arange(self.n_vertices)[:, None]
        y = np.asarray(self.support)[None, :]
        phases = np.exp(2j * np.pi * x * y / self.n_vertices)
        values = self.gamma * phases @ np.asarray(self.weights)
        return values.real


def circulant_from_row(first_row, gamma: float = 1.0) -> CirculantGraph:
    """Build a circulant graph from the first row of its adjacency matrix.

    Raises EmptyRow for a zero-length row and SymmetryViolation when
    ``c_j != c_{N-j}`` beyond 1e-12 (the matrix would not be symmetric).
    """
    row = [float(c) for c in first_row]
    if len(row) == 0:
        raise EmptyRow("first_row must contain at least one weight")
    if not all(math.isfinite(c) for c in row):
        raise ValueError("first_row contains non-finite weights")
    if not math.isfinite(gamma) or gamma == 0.0:
        raise ValueError("gamma must be finite and nonzero")
    n = len(row)
    for j in range(1, n):
        if abs(row[j] - row[n - j]) > SYMMETRY_TOL:
            raise SymmetryViolation(
                f"c[{j}]={row[j]!r} != c[{n - j}]={row[n - j]!r}; "
                "circulant adjacency must satisfy c_j = c_(N-j)"
            )
    return CirculantGraph(n_vertices=n, first_row=tuple(row), gamma=gamma)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, int(math.isqrt(p)) + 1):
        if p % d == 0:
            return False
    return True


def standard_graph(kind: str, n: int, gamma: float = 1.0) -> CirculantGraph:
    """Construct a named circulant family.

    kind: one of ``complete``, ``complete_no_loops``, ``cycle``,
    ``moebius_ladder``, ``complete_bipartite``, ``paley``.  ``n`` is the
    vertex count (for paley, the prime p = 1 mod 4).
    """
    if kind not in GRAPH_KINDS:
        raise InvalidSize(f"unknown graph kind {kind!r}; choose from {GRAPH_KINDS}")
    if n < 1:
        raise InvalidSize(f"{kind}: vertex count must be >= 1, got {n}")

    if kind == "complete":
        row = [1.0] * n
    elif kind == "complete_no_loops":
        if n < 2:
            raise InvalidSize("complete_no_loops: needs at least 2 vertices")
        row = [0.0] + [1.0] * (n - 1)
    elif kind == "cycle":
        if n < 3:
            raise InvalidSize(f"cycle: needs at least 3 vertices, got {n}")
        row = [0.0] * n
        row[1] = row[n - 1] = 1.0
    elif kind == "moebius_ladder":
        if n < 4 or n % 2 != 0:
            raise InvalidSize(f"moebius_ladder: needs even N >= 4, got {n}")
        row = [0.0] * n
        row[1] = row[n - 1] = 1.0
        row[n // 2] = 1.0
    elif kind == "complete_bipartite":
        if n < 2 or n % 2 != 0:
            raise InvalidSize(f"complete_bipartite: needs even N >= 2, got {n}")
        row = [1.0 if j % 2 == 1 else 0.0 for j in range(n)]
    else:  # paley
        if not _is_prime(n) or n % 4 != 1:
            raise InvalidSize(f"paley: needs a prime p = 1 (mod 4), got {n}")
        residues = {(x * x) % n for x in range(1, n)}
        row = [1.0 if j in residues else 0.0 for j in range(n)]
        row[0] = 0.0
    return circulant_from_row(row, gamma=gamma)


def fourier_eigenvalues(graph: CirculantGraph) -> np.ndarray:
    """Eigenvalues lambda_m in Fourier order, without grouping (O(N log N)).

    The DFT of the first row gives ``sum_k c_k exp(-2j*pi*m*k/N)`` directly;
    an imaginary residue above 1e-10 signals a corrupted (asymmetric) row and
    raises NonRealSpectrum.
    """
    values = graph.gamma * np.fft.fft(np.asarray(graph.first_row, dtype=float))
    residue = float(np.max(np.abs(values.imag))) if len(values) else 0.0
    if residue > IMAG_RESIDUE_TOL:
        raise NonRealSpectrum(
            f"imaginary residue {residue:.3e} exceeds {IMAG_RESIDUE_TOL:.0e}"
        )
    return values.real


def spectrum(graph: CirculantGraph, grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    """Analytic eigenvalues lambda_m in Fourier order, with grouping."""
    eigs = fourier_eigenvalues(graph).copy()
    eigs.setflags(write=False)
    return Spectrum(eigenvalues=eigs, groups=_group_values(eigs, grouping_tol))


def _group_values(values: np.ndarray, tol: float) -> tuple[tuple[float, tuple[int, ...]], ...]:
    """Partition indices by transitive closeness of their values within tol."""
    order = np.argsort(values)
    groups: list[list[int]] = []
    for idx in order:
        if groups and values[idx] - values[groups[-1][-1]] <= tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    out = [
        (float(np.mean(values[g])), tuple(sorted(g)))
        for g in groups
    ]
    out.sort(key=lambda pair: -pair[0])
    return tuple(out)


def eigenvalue_oracle(graph: CirculantGraph) -> EigenvalueOracle:
    """Sparse eigenvalue function f(x) from the nonzero row positions."""
    row = np.asarray(graph.first_row)
    support = tuple(int(j) for j in np.nonzero(row)[0])
    weights = tuple(float(row[j]) for j in support)
    tag = None
    n = graph.n_vertices
    if n >= 3 and support == (1, n - 1) and weights == (1.0, 1.0):
        tag = "cycle_cosine"  # evaluate(x) == 2*gamma*cos(2*pi*x/N)
    return EigenvalueOracle(
        n_vertices=n,
        support=support,
        weights=weights,
        gamma=graph.gamma,
        closed_form_tag=tag,
    )


def adjacency_matrix(graph: CirculantGraph) -> np.ndarray:
    """Dense N x N adjacency matrix (row j = first row right-rotated j times)."""
    n = graph.n_vertices
    if n > DENSE_GUARD:
        raise TooLarge(f"dense adjacency refused for N={n} > {DENSE_GUARD}")
    row = np.asarray(graph.first_row, dtype=float)
    shift = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[shift]


# ---- graph spec files -------------------------------------------------------

def graph_to_spec(graph: CirculantGraph) -> dict:
    """JSON-serializable description, round-trips through graph_from_spec."""
    return {
        "schema_version": 1,
        "n": graph.n_vertices,
        "row": list(graph.first_row),
        "gamma": graph.gamma,
    }


def graph_from_spec(spec: dict) -> CirculantGraph:
    """Build a graph from a spec dict: either an explicit row or a named kind.

    Accepted shapes::

        {"n": 4, "row": [1, 1, 1, 1], "gamma": 1.0}
        {"kind": "paley", "params": {"n": 13}, "gamma": 1.0}
    """
    gamma = float(spec.get("gamma", 1.0))
    if "row" in spec:
        row = spec["row"]
        if "n" in spec and int(spec["n"]) != len(row):
            raise InvalidSize(f"spec n={spec['n']} does not match row length {len(row)}")
        return circulant_from_row(row, gamma=gamma)
    if "kind" in spec:
        params = spec.get("params", {})
        n = params.get("n", params.get("p"))
        if n is None:
            raise InvalidSize("graph spec with 'kind' needs params.n (or params.p)")
        return standard_graph(str(spec["kind"]), int(n), gamma=gamma)
    raise InvalidSize("graph spec needs either 'row' or 'kind'")


def load_graph_spec(path) -> CirculantGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_spec(json.load(fh))
