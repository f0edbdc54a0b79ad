"""Brute-force finite-lattice checks of the closed-form scattering theory.

Everything here works on the single-excitation sector of an N-site chain
with embedded nodes: one basis state per cavity plus an excited and a
metastable amplitude per node.  The stationary solver imposes exact
plane-wave constraint rows at two probe sites on each end (incident plus
reflected on the left, transmitted on the right), so its r and s do not
depend on N beyond conditioning.  The wavepacket propagator and the
eigenmode decomposition provide dynamic and spectral cross-checks.

The solver fixes the package-wide direction convention: the incident wave
is e^{+ikx} moving toward +x, with x measured from the first node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientChainError,
    IntegratorDriftError,
    PlacementError,
)
from .model import AtomParams, LatticeParams, dispersion_energy

#: Decay-free probability budget the integrator may lose over one run.
DRIFT_TOL = 1e-8

#: Probability allowed to touch the chain ends before the run is rejected.
EDGE_TOL = 1e-7


@dataclass(frozen=True)
class ChainSpec:
    """Finite chain with nodes at fixed sites.

    ``placements`` maps site indices to node parameters; sites must stay at
    least ``buffer`` sites away from both ends.  ``kappa`` adds a uniform
    -i kappa/2 cavity leakage to every site (off by default).
    """

    n_sites: int
    placements: tuple[tuple[int, AtomParams], ...]
    lat: LatticeParams
    buffer: int = 4
    kappa: float = 0.0

    def __post_init__(self) -> None:
        if self.n_sites < 16:
            raise PlacementError(f"need at least 16 sites, got {self.n_sites}")
        if self.buffer < 4:
            raise PlacementError(f"buffer must be at least 4, got {self.buffer}")
        if self.kappa < 0:
            raise PlacementError("cavity leakage kappa must be nonnegative")
        sites = [site for site, _ in self.placements]
        if len(set(sites)) != len(sites):
            raise PlacementError(f"duplicate node sites in {sites}")
        if sorted(sites) != sites:
            raise PlacementError("placements must be sorted by site index")
        for site in sites:
            if not self.buffer <= site <= self.n_sites - self.buffer:
                raise PlacementError(
                    f"site {site} outside [{self.buffer}, {self.n_sites - self.buffer}]"
                )

    @property
    def sites(self) -> tuple[int, ...]:
        return tuple(site for site, _ in self.placements)

    @property
    def dimension(self) -> int:
        """Sites plus two internal amplitudes per node."""
        return self.n_sites + 2 * len(self.placements)

    @property
    def origin(self) -> int:
        """Coordinate origin: the first node, or the chain centre without nodes."""
        return self.sites[0] if self.placements else self.n_sites // 2

    @property
    def is_decay_free(self) -> bool:
        return self.kappa == 0.0 and all(a.is_decay_free for _, a in self.placements)


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian probe packet: exp(-(j - x0)^2 / (4 sigma^2) + i k0 j).

    ``dt=None`` picks the coarser of the 0.05/t heuristic and the step that
    keeps the decay-free norm drift inside the 1e-8 budget over ``tmax``.
    ``absorber_width > 0`` enables smooth complex absorbing layers at both
    ends; absorbed probability is then reported separately.
    """

    k0: float
    sigma: float
    x0: int
    tmax: float
    dt: float | None = None
    absorber_width: int = 0
    absorber_strength: float = 0.2

    def __post_init__(self) -> None:
        if self.sigma < 4:
            raise ValueError(f"packet width sigma must be >= 4 sites, got {self.sigma}")
        if not 0.0 < self.k0 < math.pi:
            raise ValueError(f"carrier momentum must lie in (0, pi), got {self.k0}")
        if self.tmax <= 0:
            raise ValueError("tmax must be positive")
        if self.dt is not None and self.dt <= 0:
            raise ValueError("dt must be positive")


@dataclass
class SingleExcitationState:
    """Amplitudes over the chain sites and the node internals."""

    u: np.ndarray
    u_e: np.ndarray
    u_a: np.ndarray

    @property
    def norm(self) -> float:
        """Total occupation probability."""
        total = float(np.sum(np.abs(self.u) ** 2))
        total += float(np.sum(np.abs(self.u_e) ** 2) + np.sum(np.abs(self.u_a) ** 2))
        return total

    def normalized(self) -> "SingleExcitationState":
        scale = 1.0 / math.sqrt(self.norm)
        return SingleExcitationState(self.u * scale, self.u_e * scale, self.u_a * scale)

    def to_vector(self) -> np.ndarray:
        parts = [self.u]
        for e, a in zip(self.u_e, self.u_a):
            parts.append(np.array([e, a]))
        return np.concatenate(parts) if len(parts) > 1 else self.u.copy()

    @classmethod
    def from_vector(cls, vec: np.ndarray, n_sites: int) -> "SingleExcitationState":
        n_atoms = (len(vec) - n_sites) // 2
        tail = vec[n_sites:]
        return cls(
            u=np.asarray(vec[:n_sites]),
            u_e=tail[0::2][:n_atoms].copy(),
            u_a=tail[1::2][:n_atoms].copy(),
        )


@dataclass(frozen=True)
class EigenMode:
    """One eigenpair with its localisation metrics."""

    energy: complex
    vector: np.ndarray
    ipr: float
    interior_weight: float


@dataclass(frozen=True)
class WavepacketResult:
    """Scattering probabilities measured after the packet has cleared."""

    R_meas: float
    T_meas: float
    norm_history: np.ndarray
    times: np.ndarray
    absorbed_left: float = 0.0
    absorbed_right: float = 0.0
    drift: float = 0.0


def build_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Single-excitation Hamiltonian; Hermitian exactly when decay-free.

    Basis order: the N sites, then (excited, metastable) per node.  Decay
    rates appear as -i Gamma / -i gamma on the node diagonals and cavity
    leakage as -i kappa/2 on every site diagonal.
    """
    n = spec.n_sites
    dim = spec.dimension
    H = np.zeros((dim, dim), dtype=np.complex128)
    idx = np.arange(n)
    H[idx, idx] = spec.lat.omega
    H[idx[:-1], idx[:-1] + 1] = -spec.lat.t
    H[idx[:-1] + 1, idx[:-1]] = -spec.lat.t
    for m, (site, atom) in enumerate(spec.placements):
        e = n + 2 * m
        a = e + 1
        H[e, e] = atom.excited_level
        H[a, a] = atom.metastable_level
        H[site, e] = atom.g
        H[e, site] = atom.g
        H[e, a] = atom.Omega
        H[a, e] = atom.Omega
    if spec.kappa:
        H[idx, idx] -= 0.5j * spec.kappa
    return H


def solve_stationary(
    spec: ChainSpec,
    k: float,
    *,
    return_state: bool = False,
) -> tuple[complex, complex] | tuple[complex, complex, SingleExcitationState]:
    """Solve the full stationary scattering system for (r, s) at momentum k.

    The node amplitudes stay in the system (nothing is eliminated).  Four
    constraint rows pin two probe sites per end to the plane-wave form, which
    is exact on the free chain, so the result is N-independent up to
    conditioning.
    """
    E = dispersion_energy(k, spec.lat)
    n = spec.n_sites
    dim = spec.dimension + 2
    idx_r = spec.dimension
    idx_s = spec.dimension + 1
    origin = spec.origin

    M = np.zeros((dim, dim), dtype=np.complex128)
    b = np.zeros(dim, dtype=np.complex128)
    row = 0
    for j in (0, 1):
        x = j - origin
        M[row, j] = 1.0
        M[row, idx_r] = -np.exp(-1j * k * x)
        b[row] = np.exp(1j * k * x)
        row += 1
    site_potentials: dict[int, int] = {site: m for m, (site, _) in enumerate(spec.placements)}
    omega_site = spec.lat.omega - 0.5j * spec.kappa
    for j in range(1, n - 1):
        M[row, j] = omega_site - E
        M[row, j - 1] = -spec.lat.t
        M[row, j + 1] = -spec.lat.t
        if j in site_potentials:
            m = site_potentials[j]
            M[row, n + 2 * m] = spec.placements[m][1].g
        row += 1
    for j in (n - 2, n - 1):
        x = j - origin
        M[row, j] = 1.0
        M[row, idx_s] = -np.exp(1j * k * x)
        row += 1
    for m, (site, atom) in enumerate(spec.placements):
        e = n + 2 * m
        a = e + 1
        M[row, e] = atom.excited_level - E
        M[row, site] = atom.g
        M[row, a] = atom.Omega
        row += 1
        M[row, a] = atom.metastable_level - E
        M[row, e] = atom.Omega
        row += 1

    sol = np.linalg.solve(M, b)
    r = complex(sol[idx_r])
    s = complex(sol[idx_s])
    if not return_state:
        return r, s
    state = SingleExcitationState.from_vector(sol[: spec.dimension], n)
    return r, s, state


def eigenmodes(spec: ChainSpec) -> list[EigenMode]:
    """Eigen-decomposition with per-mode localisation metrics.

    ``interior_weight`` is the probability on the sites strictly between the
    first and last node (zero when fewer than two nodes are placed); ``ipr``
    is sum |u|^4 of the normalised mode.  Modes are sorted by Re(energy).
    """
    H = build_hamiltonian(spec)
    if spec.is_decay_free:
        values, vectors = np.linalg.eigh(H.real)
        values = values.astype(np.complex128)
        vectors = vectors.astype(np.complex128)
    else:
        values, vectors = np.linalg.eig(H)
    sites = spec.sites
    interior_slice = slice(sites[0] + 1, sites[-1]) if len(sites) >= 2 else slice(0, 0)
    modes = []
    for i in np.argsort(values.real):
        vec = vectors[:, i]
        vec = vec / np.linalg.norm(vec)
        prob = np.abs(vec) ** 2
        ipr = float(np.sum(prob * prob))
        interior = float(np.sum(prob[interior_slice]))
        modes.append(EigenMode(complex(values[i]), vec, ipr, interior))
    return modes


def _gaussian_packet(spec: ChainSpec, wp: WavepacketSpec) -> np.ndarray:
    j = np.arange(spec.n_sites)
    envelope = np.exp(-((j - wp.x0) ** 2) / (4.0 * wp.sigma**2))
    psi = envelope * np.exp(1j * wp.k0 * j)
    vec = np.zeros(spec.dimension, dtype=np.complex128)
    vec[: spec.n_sites] = psi / np.linalg.norm(psi)
    return vec


def _spectral_radius_bound(spec: ChainSpec) -> float:
    bound = abs(spec.lat.omega) + 2.0 * spec.lat.t + 0.5 * spec.kappa
    for _, atom in spec.placements:
        bound = max(
            bound,
            abs(spec.lat.omega) + 2.0 * spec.lat.t + atom.g + 0.5 * spec.kappa,
            abs(atom.omega_e) + atom.Gamma + atom.g + atom.Omega,
            abs(atom.delta) + atom.gamma + atom.Omega,
        )
    return bound


def _choose_dt(spec: ChainSpec, wp: WavepacketSpec) -> float:
    if wp.dt is not None:
        return wp.dt
    heuristic = 0.05 / spec.lat.t
    # Classical RK4 loses about (lambda dt)^6 / 72 probability per step on a
    # Hermitian problem; keep the accumulated loss an order below the budget.
    lam = _spectral_radius_bound(spec)
    budget = (72.0 * 0.1 * DRIFT_TOL / (wp.tmax * lam**6)) ** 0.2
    return min(heuristic, budget)


def design_scattering_run(
    atoms: tuple[AtomParams, ...],
    lat: LatticeParams,
    k0: float,
    sigma: float,
    *,
    D: int = 1,
    dt: float | None = None,
    buffer: int = 4,
) -> tuple[ChainSpec, WavepacketSpec]:
    """Build a chain just large enough for one clean scattering event.

    Places one node (or two, ``D`` sites apart), sizes the chain so the
    incoming and both outgoing packets stay 6 sigma clear of the ends, and
    returns the matching packet specification.
    """
    if len(atoms) not in (1, 2):
        raise ValueError("design_scattering_run takes one or two nodes")
    approach = int(math.ceil(6.0 * sigma)) + 10
    clearance = int(math.ceil(6.0 * sigma)) + 5
    travel_out = approach - 5
    first = approach + travel_out + clearance
    last = first + (D if len(atoms) == 2 else 0)
    n = last + travel_out + clearance + 1
    if len(atoms) == 1:
        placements: tuple[tuple[int, AtomParams], ...] = ((first, atoms[0]),)
    else:
        placements = ((first, atoms[0]), (last, atoms[1]))
    spec = ChainSpec(n, placements, lat, buffer=buffer)
    return spec, design_wavepacket(spec, k0, sigma, dt=dt)


def design_wavepacket(
    spec: ChainSpec,
    k0: float,
    sigma: float,
    *,
    dt: float | None = None,
) -> WavepacketSpec:
    """Place a packet and pick a propagation time from the chain geometry.

    The packet starts 6 sigma plus a margin before the first node and the
    run ends with both outgoing packets at least 6 sigma clear of the ends.
    Raises InsufficientChainError when the chain cannot host that layout.
    """
    if not spec.placements:
        raise InsufficientChainError("design_wavepacket needs at least one node")
    first, last = spec.sites[0], spec.sites[-1]
    approach = int(math.ceil(6.0 * sigma)) + 10
    clearance = int(math.ceil(6.0 * sigma)) + 5
    x0 = first - approach
    travel_out = approach - 5
    if x0 - travel_out < clearance - 5:
        raise InsufficientChainError(
            f"chain too short on the left: packet at {x0} cannot clear the end"
        )
    if last + travel_out > spec.n_sites - 1 - clearance + 5:
        raise InsufficientChainError(
            f"chain too short on the right of site {last} for the outgoing packet"
        )
    v_g = 2.0 * spec.lat.t * math.sin(k0)
    tmax = ((first - x0) + (last - first) + travel_out) / v_g
    return WavepacketSpec(k0=k0, sigma=sigma, x0=x0, tmax=tmax, dt=dt)


def propagate_wavepacket(spec: ChainSpec, wp: WavepacketSpec) -> WavepacketResult:
    """Propagate the packet through the chain and measure R and T.

    R_meas is the probability left of the first node after the run,
    T_meas the probability right of the last node, each augmented by the
    probability its absorbing layer removed when absorbers are enabled.
    Raises IntegratorDriftError when a decay-free run loses more than the
    norm budget and InsufficientChainError when probability reaches the
    chain ends with absorbers off.
    """
    if wp.x0 - 5.0 * wp.sigma < 2:
        raise InsufficientChainError(
            f"packet centre {wp.x0} is closer than 5 sigma to the left end"
        )
    if spec.placements and not wp.x0 + 5.0 * wp.sigma < spec.sites[0]:
        raise InsufficientChainError(
            f"packet centre {wp.x0} is closer than 5 sigma to the first node"
        )

    n = spec.n_sites
    n_atoms = len(spec.placements)
    dt = _choose_dt(spec, wp)
    n_steps = max(1, int(math.ceil(wp.tmax / dt)))
    dt = wp.tmax / n_steps

    site_diag = np.full(n, spec.lat.omega, dtype=np.complex128)
    if spec.kappa:
        site_diag -= 0.5j * spec.kappa
    cap = np.zeros(n)
    if wp.absorber_width > 0:
        w = wp.absorber_width
        ramp = (np.arange(w, 0, -1) / w) ** 2
        cap[:w] = wp.absorber_strength * ramp
        cap[-w:] = wp.absorber_strength * ramp[::-1]
        site_diag = site_diag - 1j * cap
    t_hop = spec.lat.t
    atom_sites = np.array(spec.sites, dtype=int)
    g_arr = np.array([a.g for _, a in spec.placements])
    Om_arr = np.array([a.Omega for _, a in spec.placements])
    e_diag = np.array([a.excited_level for _, a in spec.placements], dtype=np.complex128)
    a_diag = np.array([a.metastable_level for _, a in spec.placements], dtype=np.complex128)

    def rhs(y: np.ndarray) -> np.ndarray:
        out = np.empty_like(y)
        u = y[:n]
        hu = site_diag * u
        hu[:-1] -= t_hop * u[1:]
        hu[1:] -= t_hop * u[:-1]
        if n_atoms:
            ue = y[n::2]
            ua = y[n + 1 :: 2]
            hu[atom_sites] += g_arr * ue
            out[n::2] = e_diag * ue + g_arr * u[atom_sites] + Om_arr * ua
            out[n + 1 :: 2] = a_diag * ua + Om_arr * ue
        out[:n] = hu
        return -1j * out

    y = _gaussian_packet(spec, wp)
    decay_free = spec.is_decay_free and wp.absorber_width == 0
    norm_history = np.empty(n_steps + 1)
    norm_history[0] = float(np.vdot(y, y).real)
    absorbed_left = 0.0
    absorbed_right = 0.0
    mid = spec.origin
    check_every = 100

    for step in range(n_steps):
        if wp.absorber_width > 0:
            u = y[:n]
            flux = 2.0 * cap * np.abs(u) ** 2 * dt
            absorbed_left += float(np.sum(flux[:mid]))
            absorbed_right += float(np.sum(flux[mid:]))
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norm_history[step + 1] = float(np.vdot(y, y).real)
        if decay_free:
            if abs(norm_history[step + 1] - norm_history[0]) > DRIFT_TOL:
                raise IntegratorDriftError(
                    f"norm drift {abs(norm_history[step + 1] - norm_history[0]):.3e} "
                    f"exceeded {DRIFT_TOL:.1e} at t={dt * (step + 1):.3f}; reduce dt"
                )
            if step % check_every == 0:
                edges = float(
                    np.sum(np.abs(y[:3]) ** 2) + np.sum(np.abs(y[n - 3 : n]) ** 2)
                )
                if edges > EDGE_TOL:
                    raise InsufficientChainError(
                        f"probability {edges:.3e} reached the chain ends at "
                        f"t={dt * step:.3f}; enlarge the chain or enable absorbers"
                    )

    u = y[:n]
    prob = np.abs(u) ** 2
    if spec.placements:
        left_cut = spec.sites[0]
        right_cut = spec.sites[-1]
    else:
        left_cut = right_cut = mid
    R_meas = float(np.sum(prob[:left_cut])) + absorbed_left
    T_meas = float(np.sum(prob[right_cut + 1 :])) + absorbed_right
    drift = float(np.max(np.abs(norm_history - norm_history[0]))) if decay_free else 0.0
    times = np.linspace(0.0, wp.tmax, n_steps + 1)
    return WavepacketResult(
        R_meas=R_meas,
        T_meas=T_meas,
        norm_history=norm_history,
        times=times,
        absorbed_left=absorbed_left,
        absorbed_right=absorbed_right,
        drift=drift,
    )


def write_state_csv(path, spec: ChainSpec, vector: np.ndarray) -> None:
    """Dump a state vector as CSV rows of (kind, index, Re, Im)."""
    n = spec.n_sites
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("kind,index,re,im\n")
        for j in range(n):
            fh.write(f"site,{j},{vector[j].real:.17g},{vector[j].imag:.17g}\n")
        for m, (site, _) in enumerate(spec.placements):
            e = vector[n + 2 * m]
            a = vector[n + 2 * m + 1]
            fh.write(f"excited,{site},{e.real:.17g},{e.imag:.17g}\n")
            fh.write(f"metastable,{site},{a.real:.17g},{a.imag:.17g}\n")
