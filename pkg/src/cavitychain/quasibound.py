"""Trapped modes of the secondary cavity formed by two nodes.

A photon caught between two node "mirrors" lives at the complex momenta
where the two-node transport denominator vanishes,

    (b - V1)(b - V2) - e^{2ikD} V1 V2 = 0,    b = 2 i t sin k,

with both potentials evaluated at the continued band energy E(k).  In the
perfect-mirror limit (both potentials diverging) the condition collapses to
e^{2ikD} = 1, quantising the trapped momentum to k = pi n / D; away from
that limit the roots move into the lower half plane and the mode leaks at a
rate -2 Im E.  Interior sites run over 1..D-1, with the first node at 0 and
the second at D.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    SINGULAR_TOL,
    LatticeParams,
    dispersion_energy_continued,
    effective_potential,
)
from .scattering import TwoNodeConfig

log = logging.getLogger(__name__)

#: Search rectangle in complex momentum, Re k in (0, pi) by Im k below.
DEFAULT_IM_WINDOW = (-0.5, 0.05)

#: Scaled-residual target for Newton convergence.
NEWTON_TOL = 1e-12

#: Scaled-residual bound a converged root must meet to be reported.
VERIFY_TOL = 1e-10


@dataclass(frozen=True)
class QuasiboundMode:
    """One root of the trapped-mode condition.

    ``leakage`` is -2 Im E, the decay rate of the trapped probability;
    ``n`` is the quantised mode index when the root sits near pi n / D;
    ``residual`` is the scaled residual left at the converged root.
    """

    k: complex
    E: complex
    leakage: float
    n: int | None
    residual: float


def quasibound_residual(
    k: complex,
    cfg: TwoNodeConfig,
    lat: LatticeParams,
    *,
    singular_tol: float = SINGULAR_TOL,
) -> complex:
    """Transport denominator at complex momentum; zero exactly on a mode.

    Propagates SingularPotentialError when E(k) lands on a potential pole
    within tolerance.
    """
    E = dispersion_energy_continued(k, lat)
    v1 = effective_potential(E, cfg.atom1, singular_tol=singular_tol)
    v2 = effective_potential(E, cfg.atom2, singular_tol=singular_tol)
    b = 2j * lat.t * cmath.sin(k)
    # Expanded on purpose: kept algebraically independent of the factored
    # form used by the scattering formulas so tests can cross-check them.
    return b * b - b * (v1 + v2) + v1 * v2 * (1.0 - cmath.exp(2j * k * cfg.D))


def _entire_residual(k: complex, cfg: TwoNodeConfig, lat: LatticeParams) -> tuple[complex, float]:
    """Pole-free form of the residual and its natural magnitude scale.

    Multiplying the denominator by both potential denominators clears every
    pole, so Newton iterations stay smooth arbitrarily close to the
    perfect-mirror limit.  Returns (value, scale).
    """
    E = dispersion_energy_continued(k, lat)
    b = 2j * lat.t * cmath.sin(k)
    factors = []
    numerators = []
    for atom in (cfg.atom1, cfg.atom2):
        we = atom.excited_level
        dm = atom.metastable_level
        if atom.Omega == 0.0:
            num = atom.g * atom.g + 0.0j
            den = E - we
        else:
            num = atom.g * atom.g * (E - dm)
            den = (E - we) * (E - dm) - atom.Omega * atom.Omega
        factors.append(b * den - num)
        numerators.append(num)
    phase = cmath.exp(2j * k * cfg.D)
    term1 = factors[0] * factors[1]
    term2 = phase * numerators[0] * numerators[1]
    scale = max(abs(term1), abs(term2), 1e-300)
    return term1 - term2, scale


def _newton(
    seed: complex,
    cfg: TwoNodeConfig,
    lat: LatticeParams,
    found: list[complex],
    *,
    tol: float,
    max_iter: int,
) -> complex | None:
    """Deflated Newton iteration on the pole-free residual."""
    k = seed
    for _ in range(max_iter):
        value, scale = _entire_residual(k, cfg, lat)
        deflate = 1.0 + 0.0j
        for root in found:
            deflate *= k - root
        if abs(deflate) < 1e-14:
            return None
        f = value / deflate
        h = 1e-7 * (1.0 + abs(k))
        vp, _ = _entire_residual(k + h, cfg, lat)
        vm, _ = _entire_residual(k - h, cfg, lat)
        dp = 1.0 + 0.0j
        dm = 1.0 + 0.0j
        for root in found:
            dp *= k + h - root
            dm *= k - h - root
        dfdk = (vp / dp - vm / dm) / (2.0 * h)
        if dfdk == 0:
            return None
        step = f / dfdk
        if abs(step) > 0.3:
            step *= 0.3 / abs(step)
        k = k - step
        if abs(k) > 10.0 or not (math.isfinite(k.real) and math.isfinite(k.imag)):
            return None
        if abs(step) < 1e-13 * (1.0 + abs(k)):
            value, scale = _entire_residual(k, cfg, lat)
            if abs(value) <= tol * scale * 1e2:
                return k
            return None
    value, scale = _entire_residual(k, cfg, lat)
    return k if abs(value) <= tol * scale * 1e2 else None


def find_quasibound_modes(
    cfg: TwoNodeConfig,
    lat: LatticeParams,
    *,
    re_window: tuple[float, float] = (0.0, math.pi),
    im_window: tuple[float, float] = DEFAULT_IM_WINDOW,
    n_re: int = 48,
    n_im: int = 10,
    newton_tol: float = NEWTON_TOL,
    verify_tol: float = VERIFY_TOL,
    max_iter: int = 100,
    edge_margin: float = 1e-6,
    return_diagnostics: bool = False,
) -> list[QuasiboundMode] | tuple[list[QuasiboundMode], dict]:
    """Find every trapped-mode root inside the complex momentum window.

    A grid of seeds covers the rectangle, each polished by Newton with
    deflation of the roots already found.  A root is kept when its scaled
    residual is below ``verify_tol`` and it lies inside the window; the
    window bounds are exclusive by ``edge_margin``, which also discards the
    structural zeros at the band edges k = 0 and k = pi (where the group
    velocity and the round-trip phase vanish together for every parameter
    set).  Non-convergent seeds are counted, never fatal.  Results are
    sorted by (Re k, Im k).  With ``return_diagnostics`` the seed statistics
    are returned alongside the modes.
    """
    re_lo = re_window[0] + edge_margin
    re_hi = re_window[1] - edge_margin
    im_lo, im_hi = im_window
    seeds_re = np.linspace(re_lo, re_hi, n_re + 2)[1:-1]
    seeds_im = np.linspace(im_lo, im_hi, n_im + 2)[1:-1]
    roots: list[complex] = []
    failed = 0
    for si in seeds_im:
        for sr in seeds_re:
            k = _newton(
                complex(sr, si), cfg, lat, roots, tol=newton_tol, max_iter=max_iter
            )
            if k is None:
                failed += 1
                continue
            if any(abs(k - r) < 1e-8 for r in roots):
                continue
            # Re-polish without deflation so deflation noise never shifts a root.
            polished = _newton(k, cfg, lat, [], tol=newton_tol, max_iter=max_iter)
            if polished is not None:
                k = polished
            if any(abs(k - r) < 1e-8 for r in roots):
                continue
            if not (re_lo < k.real < re_hi and im_lo < k.imag < im_hi):
                continue
            roots.append(k)
    modes = []
    for k in roots:
        value, scale = _entire_residual(k, cfg, lat)
        residual = abs(value) / scale
        if residual > verify_tol:
            log.debug("dropping root %s with residual %.3e", k, residual)
            failed += 1
            continue
        E = dispersion_energy_continued(k, lat)
        n = _mode_index(k, cfg.D)
        modes.append(
            QuasiboundMode(k=k, E=E, leakage=-2.0 * E.imag, n=n, residual=residual)
        )
    modes.sort(key=lambda m: (m.k.real, m.k.imag))
    if return_diagnostics:
        return modes, {"failed_seeds": failed, "total_seeds": int(n_re * n_im)}
    return modes


def _mode_index(k: complex, D: int) -> int | None:
    n = round(k.real * D / math.pi)
    if 1 <= n <= D - 1 and abs(k - math.pi * n / D) < 0.25 * math.pi / D:
        return n
    return None


def quantized_momenta(D: int, n_max: int | None = None) -> list[float]:
    """Perfect-mirror momenta pi n / D inside the band, n = 1..min(n_max, D-1)."""
    if not (isinstance(D, int) and D >= 1):
        raise ValueError(f"node separation D must be an integer >= 1, got {D!r}")
    top = D - 1 if n_max is None else min(n_max, D - 1)
    return [math.pi * n / D for n in range(1, top + 1)]


def bound_profile(D: int, n: int) -> np.ndarray:
    """Normalised standing-wave profile sin(pi n j / D) on sites j = 0..D.

    The end sites carry exactly zero amplitude.  Raises ValueError unless
    1 <= n <= D - 1.
    """
    if not (isinstance(D, int) and D >= 2):
        raise ValueError(f"need D >= 2 for an interior profile, got {D!r}")
    if not 1 <= n <= D - 1:
        raise ValueError(f"mode index must satisfy 1 <= n <= D-1, got n={n!r}")
    j = np.arange(D + 1)
    u = np.sin(math.pi * n * j / D)
    u[0] = 0.0
    u[D] = 0.0
    return u / np.linalg.norm(u)
