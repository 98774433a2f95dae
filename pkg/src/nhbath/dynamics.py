"""Non-unitary time evolution and derived observables."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .params import ORIGINAL, SingleExcitationState
from .lattice import transform_picture


@dataclass
class Trajectory:
    """Sampled solution of i d(psi)/dt = H psi for a non-Hermitian H.

    `states[k]` is the state at `times[k]`; `norm_history` tracks the decaying
    norm (the lost weight is the emitted/absorbed population).
    """

    times: np.ndarray
    states: list
    norm_history: np.ndarray

    @property
    def n_steps(self) -> int:
        return self.times.size

    def amplitudes(self) -> np.ndarray:
        """All state vectors stacked into a (n_steps, dim) array."""
        return np.array([s.vector() for s in self.states])


def evolve(hamiltonian: np.ndarray, initial: SingleExcitationState,
           times: Sequence[float], tol: float = 1e-9) -> Trajectory:
    """Propagate `initial` under `hamiltonian` and sample at `times`.

    Times must start at 0 and increase.  On a uniform grid a single cached
    matrix exponential is reused per step; the accumulated state at the final
    time is checked against a direct exponential and the whole trajectory is
    recomputed step-by-step from exact exponentials if the drift exceeds
    `tol`.  Non-uniform grids always use direct exponentials.
    """
    H = np.asarray(hamiltonian, dtype=complex)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("need at least two sample times")
    if abs(times[0]) > 1e-15:
        raise ValueError("time grid must start at t = 0")
    dts = np.diff(times)
    if np.any(dts <= 0):
        raise ValueError("times must be strictly increasing")
    if not np.all(np.isfinite(H)):
        raise ValueError("hamiltonian contains non-finite entries")
    psi0 = initial.vector()
    if H.shape[0] != psi0.size:
        raise ValueError("state dimension does not match the hamiltonian")

    uniform = np.allclose(dts, dts[0], rtol=1e-12, atol=0.0)
    vectors = [psi0.copy()]
    if uniform:
        U = expm(-1j * H * dts[0])
        psi = psi0.copy()
        for _ in range(times.size - 1):
            psi = U @ psi
            vectors.append(psi.copy())
        ref = expm(-1j * H * times[-1]) @ psi0
        if np.linalg.norm(vectors[-1] - ref) > tol * max(1.0, np.linalg.norm(ref)):
            uniform = False  # stepping drifted; fall back to direct sampling
            vectors = [psi0.copy()]
    if not uniform:
        for t in times[1:]:
            vectors.append(expm(-1j * H * t) @ psi0)

    states = [initial.copy()]
    for v in vectors[1:]:
        states.append(SingleExcitationState.from_vector(
            v, initial.n_emitters, initial.picture))
    norms = np.array([np.linalg.norm(v) for v in vectors])
    return Trajectory(times.copy(), states, norms)


def emitter_populations(traj: Trajectory) -> np.ndarray:
    """|amplitude|^2 of every emitter at every sample, shape (n_steps, n_e)."""
    return np.array([np.abs(s.emitter_amps) ** 2 for s in traj.states])


def photon_density(traj: Trajectory, picture: str = ORIGINAL) -> np.ndarray:
    """Photon mode populations, shape (n_steps, 2N), in the chosen picture."""
    out = np.empty((traj.n_steps, traj.states[0].photon_amps.size))
    for k, s in enumerate(traj.states):
        if s.picture != picture:
            direction = "to_mapped" if picture != ORIGINAL else "to_original"
            s = transform_picture(s, direction)
        out[k] = np.abs(s.photon_amps) ** 2
    return out


@dataclass(frozen=True)
class LocalizationReport:
    """Time-averaged split of the photonic weight around an emitter's cell.

    Probabilities are conditioned on the photon being in the field and
    normalized so p_local + p_left + p_right == 1.  "Local" means the
    emitter's cell and the one to its right, the pair that hosts the bound
    photonic cloud in the fully directional regime.
    """

    p_local: float
    p_left: float
    p_right: float
    atom_cell: int
    t_average: float


def localization_report(traj: Trajectory, atom_cell: int,
                        t_average: float) -> LocalizationReport:
    """Average the photonic density over [0, t_average] and split it into
    local / left-of-emitter / right-of-emitter weights (cells are 1-based)."""
    times = traj.times
    if t_average > times[-1] + 1e-12:
        raise ValueError("t_average exceeds the sampled time span")
    mask = times <= t_average + 1e-12
    dens = photon_density(traj)[mask]
    tms = times[mask]
    cell_prob = dens[:, 0::2] + dens[:, 1::2]
    n_cells = cell_prob.shape[1]
    if not 1 <= atom_cell <= n_cells:
        raise ValueError(f"atom_cell {atom_cell} out of range 1..{n_cells}")
    avg = np.trapezoid(cell_prob, tms, axis=0) / (tms[-1] - tms[0])
    c = atom_cell - 1
    local = avg[c] + (avg[c + 1] if c + 1 < n_cells else 0.0)
    left = float(avg[:c].sum())
    right = float(avg[c + 2:].sum())
    total = local + left + right
    if total <= 0:
        raise ValueError("no photonic weight accumulated; nothing to localize")
    return LocalizationReport(float(local / total), left / total,
                              right / total, atom_cell, float(t_average))


def fit_decay_rate(times: Sequence[float], population: Sequence[float],
                   t_min: float, t_max: float) -> float:
    """Exponential decay rate of a population from a log-linear fit.

    Fits log(p) = -rate * t + c over t_min <= t <= t_max and returns rate.
    """
    times = np.asarray(times, dtype=float)
    population = np.asarray(population, dtype=float)
    mask = (times >= t_min) & (times <= t_max) & (population > 0)
    if mask.sum() < 2:
        raise ValueError("fit window contains fewer than two usable samples")
    slope = np.polyfit(times[mask], np.log(population[mask]), 1)[0]
    return float(-slope)
