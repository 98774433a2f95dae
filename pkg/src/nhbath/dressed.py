"""Metastable emitter-photon dressed states in the fully directional regime
gamma = 2J, and the probe couplings they mediate."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import transform_picture
from .params import MAPPED, EmitterLayout, LatticeParams, SingleExcitationState


@dataclass
class DressedState:
    """Emitter dressed by a photonic cloud, quasi-stationary to order g^2.

    The state is stored in the mapped (alpha, beta) picture, unnormalized
    with unit emitter amplitude; `energy` is the complex quasi-eigenvalue
    -i g^2/(4J).  kind is "bulk" (two-cell cloud) or "edge" (chain-filling
    cloud of the last-cell emitter on the open chain).
    """

    state: SingleExcitationState
    energy: complex
    source_cell: int
    kind: str
    g: float

    def normalized(self) -> SingleExcitationState:
        v = self.state.vector()
        return SingleExcitationState.from_vector(
            v / np.linalg.norm(v), 1, self.state.picture)


def _require_directional(params: LatticeParams) -> float:
    if not params.uniform:
        raise ValueError("dressed states require t1 == t2 == J")
    j = params.t1
    if abs(params.gamma - 2 * j) > 1e-12 * j:
        raise ValueError("dressed states exist at gamma = 2J exactly")
    return j


def bulk_dressed_state(params: LatticeParams, source_cell: int,
                       g: float) -> DressedState:
    """Emitter in `source_cell` dressed by its two-cell photonic cloud.

    The cloud occupies beta of the source cell and alpha of the next cell,
    each with amplitude g/(sqrt(2) gamma) relative to the emitter.  On the
    open chain the source must not be the last cell (its cloud has nowhere
    to spill); on the ring any cell works.
    """
    j = _require_directional(params)
    params.check_cell(source_cell)
    if g <= 0:
        raise ValueError("g must be positive")
    if not params.periodic and source_cell == params.n_cells:
        raise ValueError("the last cell of the open chain hosts the edge "
                         "dressed state, not a bulk one")
    gamma = params.gamma
    amps = np.zeros(params.n_modes, dtype=complex)
    nxt = source_cell % params.n_cells + 1
    amps[params.b_index(source_cell)] = -1j * g / (np.sqrt(2) * gamma)
    amps[params.a_index(nxt)] = -g / (np.sqrt(2) * gamma)
    state = SingleExcitationState(np.array([1.0 + 0.0j]), amps, MAPPED)
    return DressedState(state, -1j * g ** 2 / (4 * j), source_cell, "bulk", g)


def edge_dressed_state(params: LatticeParams, g: float) -> DressedState:
    """Dressed state of an emitter in the last cell of the open chain.

    Its photonic cloud extends over the whole chain with staggered-sign
    amplitudes g/(sqrt(2) gamma): cell n carries (-1)^(N+n) times
    (-1, -i) on (alpha, beta), doubled on alpha of cell 1 and on beta of
    cell N.
    """
    j = _require_directional(params)
    if params.periodic:
        raise ValueError("the edge dressed state lives on the open chain")
    if g <= 0:
        raise ValueError("g must be positive")
    N, gamma = params.n_cells, params.gamma
    c = g / (np.sqrt(2) * gamma)
    amps = np.zeros(params.n_modes, dtype=complex)
    for n in range(1, N + 1):
        ph = (-1) ** (N + n)
        amps[params.a_index(n)] = -c * ph * (2 if n == 1 else 1)
        amps[params.b_index(n)] = -1j * c * ph * (2 if n == N else 1)
    state = SingleExcitationState(np.array([1.0 + 0.0j]), amps, MAPPED)
    return DressedState(state, -1j * g ** 2 / (4 * j), N, "edge", g)


def verify_eigenstate(hamiltonian: np.ndarray, dressed: DressedState) -> float:
    """Residual ||H v - E v|| / ||v|| of a dressed state against the full
    single-emitter Hamiltonian (same picture as the stored state).

    Scales as g^3 for a correct dressed state, g^1 for a wrong ansatz.
    """
    v = dressed.state.vector()
    if hamiltonian.shape[0] != v.size:
        raise ValueError("hamiltonian dimension does not match the dressed state")
    r = hamiltonian @ v - dressed.energy * v
    return float(np.linalg.norm(r) / np.linalg.norm(v))


def coupling_from_dressed(dressed: DressedState, probe_cell: int,
                          g_probe: float = None) -> complex:
    """Coupling a weak probe emitter in `probe_cell` picks up from the
    dressed emitter: the probe's own coupling rate (defaults to the dressed
    emitter's g) times the cloud amplitude on the probe's lossy cavity in
    the original picture.

    Reproduces the directional couplings: +i Gamma one cell to the right of
    a bulk source (and on cell 1 for the edge state via the boundary),
    -i Gamma back-action on the source cell, zero elsewhere.
    """
    st = transform_picture(dressed.state, "to_original")
    if not 1 <= probe_cell <= st.n_cells:
        raise ValueError(f"probe_cell {probe_cell} out of range 1..{st.n_cells}")
    if g_probe is None:
        g_probe = dressed.g
    return g_probe * st.photon_amp(probe_cell, "b")
