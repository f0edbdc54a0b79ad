"""Single-photon transport and trapping in a 1D coupled cavity array.

Analytic reflection/transmission for chains with one or two embedded
three-level nodes, an independent finite-lattice oracle, a complex-momentum
trapped-mode solver, and a deterministic parameter-sweep engine with a CLI.
"""

from .errors import (
    CavityChainError,
    ConfigError,
    DegenerateDecompositionError,
    InsufficientChainError,
    IntegratorDriftError,
    LimitWindowError,
    NoSolutionError,
    OutOfBandError,
    PlacementError,
    ResonanceDenominatorError,
    SingularPotentialError,
)
from .model import (
    AtomParams,
    LatticeParams,
    PotentialDecomposition,
    decompose_potential,
    dispersion_energy,
    dispersion_energy_continued,
    effective_potential,
    fwhm,
    in_band,
    momentum_from_energy,
)
from .oracle import (
    ChainSpec,
    EigenMode,
    SingleExcitationState,
    WavepacketResult,
    WavepacketSpec,
    build_hamiltonian,
    design_wavepacket,
    eigenmodes,
    propagate_wavepacket,
    solve_stationary,
)
from .quasibound import (
    QuasiboundMode,
    bound_profile,
    find_quasibound_modes,
    quantized_momenta,
    quasibound_residual,
)
from .scattering import (
    ScatteringResult,
    TwoNodeConfig,
    find_perfect_reflection,
    find_perfect_transmission,
    limit_scatter,
    loss_ratio,
    single_node_scatter,
    two_node_scatter,
)

__version__ = "0.1.0"

__all__ = [
    "AtomParams",
    "CavityChainError",
    "ChainSpec",
    "ConfigError",
    "DegenerateDecompositionError",
    "EigenMode",
    "InsufficientChainError",
    "IntegratorDriftError",
    "LatticeParams",
    "LimitWindowError",
    "NoSolutionError",
    "OutOfBandError",
    "PlacementError",
    "PotentialDecomposition",
    "QuasiboundMode",
    "ResonanceDenominatorError",
    "ScatteringResult",
    "SingleExcitationState",
    "SingularPotentialError",
    "TwoNodeConfig",
    "WavepacketResult",
    "WavepacketSpec",
    "bound_profile",
    "build_hamiltonian",
    "decompose_potential",
    "design_wavepacket",
    "dispersion_energy",
    "dispersion_energy_continued",
    "effective_potential",
    "eigenmodes",
    "find_perfect_reflection",
    "find_perfect_transmission",
    "find_quasibound_modes",
    "fwhm",
    "in_band",
    "limit_scatter",
    "loss_ratio",
    "momentum_from_energy",
    "propagate_wavepacket",
    "quantized_momenta",
    "quasibound_residual",
    "single_node_scatter",
    "solve_stationary",
    "two_node_scatter",
    "__version__",
]
