"""Closed-form reflection and transmission for one or two embedded nodes.

Direction convention, fixed once for the whole package and enforced by the
finite-lattice solver in :mod:`cavitychain.oracle`: the incident wave is
e^{+ikj} travelling toward +j, the reflected wave is r e^{-ikj}, the
transmitted wave s e^{+ikj}.  Under this convention the single-node
amplitudes are

    r = V / (2 i t sin k - V),    s = 1 + r,

and the two-node amplitudes (first node at site 0, second at site D) are

    r = [b (V1 + p V2) - V1 V2 (1 - p)] / den,    s = b^2 / den,
    den = (b - V1)(b - V2) - p V1 V2,

with b = 2 i t sin k and p = e^{2ikD}.  An equivalent form of the two-node
pair circulates with the opposite sign on the imaginary transport term; it
is the complex conjugate of this one (with conjugated potentials) and agrees
in |r|, |s| for real potentials, but only the form above matches the lattice
solver in phase, with and without decay.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    LimitWindowError,
    NoSolutionError,
    ResonanceDenominatorError,
    SingularPotentialError,
)
from .model import (
    SINGULAR_TOL,
    AtomParams,
    LatticeParams,
    dispersion_energy,
    effective_potential,
    momentum_from_energy,
)

#: Half-width of the momentum windows in which the limit lineshapes apply.
LIMIT_WINDOW = 0.2

#: Relative scale below which the two-node denominator counts as resonant.
RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class ScatteringResult:
    """Amplitudes and derived probabilities at one momentum.

    ``singular`` marks points where a diverging potential forced the
    analytic limit (r = -1 at the diverging node).
    """

    k: float
    E: float
    r: complex
    s: complex
    singular: bool = False

    @property
    def R(self) -> float:
        """Reflectance |r|^2."""
        return abs(self.r) ** 2

    @property
    def T(self) -> float:
        """Transmittance |s|^2."""
        return abs(self.s) ** 2

    @property
    def xi(self) -> float:
        """Loss ratio 1 - (R + T); zero for elastic scattering."""
        return 1.0 - (self.R + self.T)


@dataclass(frozen=True)
class TwoNodeConfig:
    """Two nodes a positive integer number of sites apart."""

    atom1: AtomParams
    atom2: AtomParams
    D: int

    def __post_init__(self) -> None:
        if not (isinstance(self.D, int) and self.D >= 1):
            raise ValueError(f"node separation D must be an integer >= 1, got {self.D!r}")


def single_node_scatter(
    k: float,
    atom: AtomParams,
    lat: LatticeParams,
    *,
    singular_tol: float = SINGULAR_TOL,
) -> ScatteringResult:
    """Scatter a photon of momentum ``k`` off one node at the origin.

    At a potential singularity the exact limit r = -1, s = 0 is returned
    instead of dividing through: the node is a perfect mirror there.
    """
    E = dispersion_energy(k, lat)
    try:
        v = effective_potential(E, atom, singular_tol=singular_tol)
    except SingularPotentialError:
        return ScatteringResult(k=k, E=E, r=-1.0 + 0.0j, s=0.0j, singular=True)
    r = v / (2j * lat.t * math.sin(k) - v)
    return ScatteringResult(k=k, E=E, r=r, s=1.0 + r)


def loss_ratio(k: float, atom: AtomParams, lat: LatticeParams) -> float:
    """Probability lost to the decay channels, 1 - (R + T)."""
    return single_node_scatter(k, atom, lat).xi


def _transport_denominator(
    k: complex,
    cfg: TwoNodeConfig,
    lat: LatticeParams,
    *,
    singular_tol: float = SINGULAR_TOL,
) -> complex:
    """Common denominator of the two-node r and s, complex-momentum capable."""
    E = lat.omega - 2.0 * lat.t * cmath.cos(k)
    v1 = effective_potential(E, cfg.atom1, singular_tol=singular_tol)
    v2 = effective_potential(E, cfg.atom2, singular_tol=singular_tol)
    b = 2j * lat.t * cmath.sin(k)
    p = cmath.exp(2j * k * cfg.D)
    return (b - v1) * (b - v2) - p * v1 * v2


def two_node_scatter(
    k: float,
    cfg: TwoNodeConfig,
    lat: LatticeParams,
    *,
    singular_tol: float = SINGULAR_TOL,
    resonance_tol: float = RESONANCE_TOL,
) -> ScatteringResult:
    """Scatter off two nodes, the first at site 0 and the second at site D.

    Diverging potentials are resolved by their limits: a singular first node
    reflects everything with r = -1; a singular second node reflects
    everything with a round-trip phase.  Raises ResonanceDenominatorError
    when the transport denominator vanishes at real k, which only happens on
    exact trapped-mode parameter sets.
    """
    E = dispersion_energy(k, lat)
    b = 2j * lat.t * math.sin(k)
    p = cmath.exp(2j * k * cfg.D)

    v1: complex | None
    try:
        v1 = effective_potential(E, cfg.atom1, singular_tol=singular_tol)
    except SingularPotentialError:
        v1 = None
    if v1 is None:
        return ScatteringResult(k=k, E=E, r=-1.0 + 0.0j, s=0.0j, singular=True)

    try:
        v2 = effective_potential(E, cfg.atom2, singular_tol=singular_tol)
    except SingularPotentialError:
        # Perfect mirror at site D: u(D) = 0, so the photon reflects with the
        # phase accumulated on the round trip to the far node.
        r = (v1 * (1.0 - p) - p * b) / (b - v1 * (1.0 - p))
        return ScatteringResult(k=k, E=E, r=r, s=0.0j, singular=True)

    den = (b - v1) * (b - v2) - p * v1 * v2
    scale = max(abs(b) ** 2, abs(b * v1), abs(b * v2), abs(v1 * v2))
    if abs(den) < resonance_tol * scale:
        raise ResonanceDenominatorError(
            f"two-node denominator vanished at k={k!r} (trapped-mode condition)"
        )
    r = (b * (v1 + p * v2) - v1 * v2 * (1.0 - p)) / den
    s = b * b / den
    return ScatteringResult(k=k, E=E, r=r, s=s)


def limit_scatter(
    k: float,
    regime: str,
    atom: AtomParams,
    lat: LatticeParams,
    *,
    window: float = LIMIT_WINDOW,
    singular_tol: float = SINGULAR_TOL,
) -> ScatteringResult:
    """Band-edge and band-centre lineshapes.

    ``regime="high"`` linearises the dispersion about k = pi/2,
    eps = (omega - t pi - delta) + 2 t k, and uses r = V/(2it - V);
    ``regime="low"`` uses the quadratic bottom-of-band dispersion
    eps = (omega - 2t - delta) + t k^2 and r = V/(2itk - V).  The potential
    itself is always evaluated exactly at E = eps + delta.
    """
    if regime == "high":
        if abs(k - 0.5 * math.pi) > window:
            raise LimitWindowError(
                f"high-energy window is |k - pi/2| <= {window}, got k={k!r}"
            )
        eps = (lat.omega - lat.t * math.pi - atom.delta) + 2.0 * lat.t * k
        transport = 2j * lat.t
    elif regime == "low":
        if not 0.0 < k <= window:
            raise LimitWindowError(f"low-energy window is 0 < k <= {window}, got k={k!r}")
        eps = (lat.omega - 2.0 * lat.t - atom.delta) + lat.t * k * k
        transport = 2j * lat.t * k
    else:
        raise ValueError(f"regime must be 'high' or 'low', got {regime!r}")

    E = eps + atom.delta
    try:
        v = effective_potential(E, atom, singular_tol=singular_tol)
    except SingularPotentialError:
        return ScatteringResult(k=k, E=E, r=-1.0 + 0.0j, s=0.0j, singular=True)
    r = v / (transport - v)
    return ScatteringResult(k=k, E=E, r=r, s=1.0 + r)


def find_perfect_reflection(
    target_k: float,
    atom: AtomParams,
    lat: LatticeParams,
    free: str = "Omega",
    *,
    match_tol: float = 1e-9,
) -> list[float]:
    """Solve (E - omega_e)(E - delta) = Omega^2 for one free node parameter.

    ``free="Omega"`` returns the Rabi frequency as a single nonnegative
    magnitude (the two signs are physically equivalent); ``free="delta"``
    returns the detuning.  E is the band energy at ``target_k``.  Raises
    NoSolutionError when no real solution exists, in particular at the
    two-photon resonance E = delta where the node is pinned transparent.
    """
    E = dispersion_energy(target_k, lat)
    if free == "Omega":
        scale = max(1.0, abs(E), abs(atom.delta))
        if abs(E - atom.delta) <= match_tol * scale:
            raise NoSolutionError(
                "E coincides with the two-photon resonance; the potential is "
                "identically zero there and no Rabi frequency reflects"
            )
        rhs = (E - atom.omega_e) * (E - atom.delta)
        if rhs < 0.0:
            if abs(E - atom.omega_e) <= match_tol * max(1.0, abs(atom.omega_e)):
                return [0.0]  # bare two-level resonance up to rounding
            raise NoSolutionError(
                f"(E - omega_e)(E - delta) = {rhs!r} < 0 admits no real Rabi frequency"
            )
        return [math.sqrt(rhs)]
    if free == "delta":
        scale = max(1.0, abs(E), abs(atom.omega_e))
        if abs(E - atom.omega_e) <= match_tol * scale:
            if atom.Omega == 0.0:
                raise NoSolutionError(
                    "E sits on the bare two-level resonance; every detuning reflects"
                )
            raise NoSolutionError(
                "E sits on the bare excited level; no finite detuning solves the "
                "resonance condition for a nonzero Rabi frequency"
            )
        return [E - atom.Omega * atom.Omega / (E - atom.omega_e)]
    raise ValueError(f"free parameter must be 'Omega' or 'delta', got {free!r}")


def find_perfect_transmission(atom: AtomParams, lat: LatticeParams) -> float:
    """Momentum of the transparency point, where E(k) = delta and r = 0.

    Raises OutOfBandError when the detuning lies outside the band.  The
    returned momentum gives r = 0 exactly only for a decay-free node.
    """
    return momentum_from_energy(atom.delta, lat)
