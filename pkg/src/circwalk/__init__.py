"""Continuous-time quantum walks on circulant graphs.

Analytic circulant spectra, compiled Qdag*D*Q walk circuits, exact dense
simulation, classical reference oracles, and the published K4 fixtures.
"""
from .analysis import (
    DensityFidelityResult,
    DensityMatrix,
    MultiplicativeErrorReport,
    SwapTestResult,
    average_distribution_fidelity,
    classical_swap_estimate,
    dense_evolution,
    density_fidelity,
    fft_evolution,
    multiplicative_error,
    p_d,
    state_fidelity,
    swap_test_exact,
    swap_test_sampled,
)
from .circuits import (
    AncillaPhaseRamp,
    Circuit,
    CircuitStats,
    Gate,
    Hadamard,
    MultiControlledPhase,
    OracleCompute,
    OracleDef,
    OracleUncompute,
    PauliX,
    Phase,
    Swap,
    circuit_from_dict,
    circuit_stats,
    circuit_to_dict,
    load_circuit,
    save_circuit,
)
from .compiler import (
    CompilerOptions,
    compile_ctqw,
    complete_graph_circuit,
    diagonal_circuit_few,
    diagonal_circuit_oracle,
    diagonal_phase_circuit,
    lower_multicontrolled,
    qft_circuit,
    to_qasm,
)
from .errors import CircwalkError
from .graph import (
    CirculantGraph,
    EigenvalueOracle,
    Spectrum,
    adjacency_matrix,
    circulant_from_row,
    eigenvalue_oracle,
    fourier_eigenvalues,
    graph_from_spec,
    graph_to_spec,
    load_graph_spec,
    spectrum,
    standard_graph,
)
from .simulator import (
    Distribution,
    ShotCounts,
    StateVector,
    apply_gate,
    basis_state,
    circuit_unitary,
    output_state,
    probabilities,
    run,
    sample,
    state_from_amplitudes,
)

__version__ = "0.1.0"
