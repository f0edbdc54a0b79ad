"""Shared random-draw utilities for the test suite."""

from __future__ import annotations

import math

import numpy as np

from cavitychain import AtomParams, LatticeParams, TwoNodeConfig


def draw_lattice(rng: np.random.Generator) -> LatticeParams:
    return LatticeParams(omega=rng.uniform(-2.0, 2.0), t=rng.uniform(0.5, 4.0))


def draw_atom(
    rng: np.random.Generator,
    *,
    two_level: bool = False,
    decay: bool = False,
    g_range: tuple[float, float] = (0.6, 1.5),
) -> AtomParams:
    return AtomParams(
        omega_e=rng.uniform(-3.0, 3.0),
        delta=rng.uniform(-3.0, 3.0),
        Omega=0.0 if two_level else rng.uniform(0.0, 3.0),
        g=rng.uniform(*g_range),
        Gamma=rng.uniform(0.0, 0.2) if decay else 0.0,
        gamma=rng.uniform(0.0, 0.2) if decay else 0.0,
    )


def draw_momentum(rng: np.random.Generator) -> float:
    return rng.uniform(0.05, math.pi - 0.05)


def draw_two_node(
    rng: np.random.Generator, *, decay: bool = False, d_max: int = 12
) -> TwoNodeConfig:
    flavors = (False, True)
    return TwoNodeConfig(
        draw_atom(rng, two_level=rng.choice(flavors), decay=decay),
        draw_atom(rng, two_level=rng.choice(flavors), decay=decay),
        int(rng.integers(1, d_max + 1)),
    )
