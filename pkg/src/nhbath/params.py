"""Model parameters, emitter layout and single-excitation state containers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

PERIODIC = "periodic"
OPEN = "open"
BOUNDARIES = (PERIODIC, OPEN)

ORIGINAL = "original"
MAPPED = "mapped"
PICTURES = (ORIGINAL, MAPPED)


@dataclass(frozen=True)
class LatticeParams:
    """Two-band lossy cavity array: N cells, each holding a neutral cavity (a)
    and a lossy cavity (b) with loss rate gamma.

    t1 is the intra-cell hopping, t2 sets the scale of all inter-cell
    hoppings (the uniform model has t1 == t2 == J).  All cavity frequencies
    are taken as the zero of energy.
    """

    n_cells: int
    t1: float
    t2: float
    gamma: float
    boundary: str = PERIODIC

    def __post_init__(self):
        if not isinstance(self.n_cells, (int, np.integer)) or self.n_cells < 2:
            raise ValueError(f"n_cells must be an integer >= 2, got {self.n_cells!r}")
        if self.t1 <= 0:
            raise ValueError(f"t1 must be positive, got {self.t1}")
        if self.t2 <= 0:
            raise ValueError(f"t2 must be positive, got {self.t2}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")

    @property
    def periodic(self) -> bool:
        return self.boundary == PERIODIC

    @property
    def n_modes(self) -> int:
        """Number of photon modes (two per cell)."""
        return 2 * self.n_cells

    @property
    def uniform(self) -> bool:
        """True when t1 == t2 (the single-hopping-rate model)."""
        return abs(self.t1 - self.t2) <= 1e-12 * max(self.t1, self.t2)

    def a_index(self, cell: int) -> int:
        """Photon-block index of the neutral cavity of `cell` (1-based)."""
        return 2 * (cell - 1)

    def b_index(self, cell: int) -> int:
        """Photon-block index of the lossy cavity of `cell` (1-based)."""
        return 2 * (cell - 1) + 1

    def check_cell(self, cell: int) -> int:
        if not 1 <= cell <= self.n_cells:
            raise ValueError(f"cell index {cell} out of range 1..{self.n_cells}")
        return cell

    def replace(self, **kw) -> "LatticeParams":
        d = dict(n_cells=self.n_cells, t1=self.t1, t2=self.t2,
                 gamma=self.gamma, boundary=self.boundary)
        d.update(kw)
        return LatticeParams(**d)


@dataclass(frozen=True)
class EmitterLayout:
    """Emitters locally coupled (strength g) to the lossy cavity of the
    listed cells (1-based, distinct)."""

    cells: tuple
    g: float

    def __init__(self, cells: Iterable[int], g: float):
        cells = tuple(int(c) for c in cells)
        if len(cells) == 0:
            raise ValueError("layout needs at least one emitter")
        if len(set(cells)) != len(cells):
            raise ValueError(f"emitter cells must be distinct, got {cells}")
        if g <= 0:
            raise ValueError(f"g must be positive, got {g}")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "g", float(g))

    @property
    def n_emitters(self) -> int:
        return len(self.cells)

    def validate_against(self, params: LatticeParams) -> None:
        for c in self.cells:
            params.check_cell(c)


def weak_coupling_warnings(params: LatticeParams, layout: EmitterLayout) -> list:
    """Diagnostics for the validity of second-order (weak-coupling) results.

    Returns a list of human-readable messages; empty when g is comfortably
    perturbative.
    """
    msgs = []
    n = params.n_cells
    if layout.g >= 0.3 * params.t2:
        msgs.append(
            f"g = {layout.g} is not small against the hopping t2 = {params.t2}; "
            "second-order results are unreliable")
    if params.gamma > 0 and layout.g >= params.gamma / np.sqrt(n):
        msgs.append(
            f"g = {layout.g} >= gamma/sqrt(N) = {params.gamma / np.sqrt(n):.4g}; "
            "extended dressed states are not normalized to leading order")
    if layout.g >= params.t2 / np.sqrt(n):
        msgs.append(
            f"g = {layout.g} >= t2/sqrt(N) = {params.t2 / np.sqrt(n):.4g}; "
            "boundary-condition insensitivity of the induced couplings may degrade")
    return msgs


@dataclass
class SingleExcitationState:
    """Amplitudes of a single excitation shared between emitters and photons.

    Basis order: emitters first (layout order), then cells 1..N with the two
    sublattice modes per cell -- (a, b) in the original picture, (alpha, beta)
    in the mapped one.
    """

    emitter_amps: np.ndarray
    photon_amps: np.ndarray
    picture: str = ORIGINAL

    def __post_init__(self):
        self.emitter_amps = np.asarray(self.emitter_amps, dtype=complex)
        self.photon_amps = np.asarray(self.photon_amps, dtype=complex)
        if self.picture not in PICTURES:
            raise ValueError(f"picture must be one of {PICTURES}, got {self.picture!r}")
        if self.photon_amps.size % 2 != 0:
            raise ValueError("photon amplitude vector must have even length")

    @property
    def n_emitters(self) -> int:
        return self.emitter_amps.size

    @property
    def n_cells(self) -> int:
        return self.photon_amps.size // 2

    def vector(self) -> np.ndarray:
        return np.concatenate([self.emitter_amps, self.photon_amps])

    @classmethod
    def from_vector(cls, vec: Sequence[complex], n_emitters: int,
                    picture: str = ORIGINAL) -> "SingleExcitationState":
        vec = np.asarray(vec, dtype=complex)
        return cls(vec[:n_emitters].copy(), vec[n_emitters:].copy(), picture)

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector()))

    def photon_amp(self, cell: int, sublattice: str) -> complex:
        """Amplitude on one cavity; sublattice 'a'/'b' or 'alpha'/'beta'."""
        offset = {"a": 0, "alpha": 0, "b": 1, "beta": 1}[sublattice]
        return complex(self.photon_amps[2 * (cell - 1) + offset])

    def copy(self) -> "SingleExcitationState":
        return SingleExcitationState(
            self.emitter_amps.copy(), self.photon_amps.copy(), self.picture)


def excited_emitter_state(params: LatticeParams, layout: EmitterLayout,
                          which: int = 1,
                          picture: str = ORIGINAL) -> SingleExcitationState:
    """Field vacuum with emitter number `which` (1-based) excited."""
    if not 1 <= which <= layout.n_emitters:
        raise ValueError(f"emitter index {which} out of range 1..{layout.n_emitters}")
    e = np.zeros(layout.n_emitters, dtype=complex)
    e[which - 1] = 1.0
    return SingleExcitationState(e, np.zeros(params.n_modes, dtype=complex), picture)
