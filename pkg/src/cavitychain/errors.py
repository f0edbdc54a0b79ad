"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CavityChainError(Exception):
    """Base class for all package-specific errors."""


class OutOfBandError(CavityChainError):
    """Requested energy lies on or outside the cosine band edges."""


class SingularPotentialError(CavityChainError):
    """The effective potential diverges at the requested energy.

    This signals a perfect-reflection resonance, not a numerical failure;
    callers that want the analytic limit should catch it and use r = -1.
    """

    def __init__(self, energy: complex, denominator: float):
        self.energy = energy
        self.denominator = denominator
        super().__init__(
            f"effective potential singular at E={energy} "
            f"(|denominator|={denominator:.3e})"
        )


class DegenerateDecompositionError(CavityChainError):
    """Both resonant frequencies coincide; no two-pole split exists."""


class LimitWindowError(CavityChainError):
    """Momentum lies outside the configured high/low energy window."""


class NoSolutionError(CavityChainError):
    """The perfect-reflection condition has no real solution here."""


class ResonanceDenominatorError(CavityChainError):
    """Two-node transport denominator vanished at real momentum.

    The parameters sit exactly on a trapped-mode condition; reflection and
    transmission are not defined as scattering amplitudes at this point.
    """


class PlacementError(CavityChainError):
    """Node placement violates the chain geometry constraints."""


class InsufficientChainError(CavityChainError):
    """The chain is too short for the wavepacket to scatter cleanly."""


class IntegratorDriftError(CavityChainError):
    """Time integration lost more norm than the decay-free budget allows."""


class ConfigError(CavityChainError):
    """Invalid or unknown run-configuration entry."""
