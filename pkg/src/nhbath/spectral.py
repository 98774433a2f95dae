"""Band structure, boundary spectra, defectivity and point-gap topology."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lattice import build_bare_hamiltonian
from .params import LatticeParams


@dataclass(frozen=True)
class BlochMatrix:
    """2x2 momentum-space Hamiltonian at quasimomentum q."""

    q: float
    matrix: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.matrix)

    def determinant(self, e0: complex = 0.0) -> complex:
        """det(matrix - e0), the quantity whose phase winds around loops."""
        m = self.matrix
        return complex((m[0, 0] - e0) * (m[1, 1] - e0) - m[0, 1] * m[1, 0])


def bloch_matrix(params: LatticeParams, q: float) -> BlochMatrix:
    """Momentum-space Hamiltonian of the translation-invariant array.

    Off-diagonal t1 + t2 cos q; diagonal -+ t2 sin q, with the loss -i*gamma
    on the lossy sublattice.
    """
    off = params.t1 + params.t2 * np.cos(q)
    m = np.array([[-params.t2 * np.sin(q), off],
                  [off, params.t2 * np.sin(q) - 1j * params.gamma]],
                 dtype=complex)
    return BlochMatrix(float(q), m)


@dataclass
class SpectrumResult:
    """Complex eigenvalues of the array, with non-normality diagnostics.

    `defectivity` is the reciprocal condition number (smallest over largest
    singular value) of the right-eigenvector matrix; it drops to ~0 when the
    spectrum becomes defective.  For periodic spectra assembled from Bloch
    blocks, `q_values` holds the quasimomentum of each eigenvalue and the
    defectivity is the worst over all blocks.
    """

    eigenvalues: np.ndarray
    boundary: str
    defectivity: float
    q_values: Optional[np.ndarray] = None
    right_vectors: Optional[np.ndarray] = None
    left_vectors: Optional[np.ndarray] = None

    @property
    def n_levels(self) -> int:
        return self.eigenvalues.size


def _eig_defectivity(matrix: np.ndarray) -> float:
    _, vecs = np.linalg.eig(matrix)
    s = np.linalg.svd(vecs, compute_uv=False)
    return float(s[-1] / s[0])


def bloch_spectrum(params: LatticeParams) -> SpectrumResult:
    """All 2N eigenvalues of the periodic array from its N Bloch blocks."""
    if not params.periodic:
        raise ValueError("bloch_spectrum requires periodic boundary conditions")
    n = params.n_cells
    evs = np.empty(2 * n, dtype=complex)
    qs = np.empty(2 * n, dtype=float)
    defect = 1.0
    for k in range(n):
        q = 2 * np.pi * k / n
        bm = bloch_matrix(params, q)
        evs[2 * k:2 * k + 2] = bm.eigenvalues()
        qs[2 * k:2 * k + 2] = q
        defect = min(defect, _eig_defectivity(bm.matrix))
    return SpectrumResult(evs, params.boundary, defect, q_values=qs)


def dense_spectrum(params: LatticeParams) -> SpectrumResult:
    """Eigen-decomposition of the dense real-space Hamiltonian.

    Left eigenvectors are obtained from the adjoint and reordered to pair
    with the right ones (columns match eigenvalue by eigenvalue).
    """
    H = build_bare_hamiltonian(params)
    evs, right = np.linalg.eig(H)
    evs_l, left = np.linalg.eig(H.conj().T)
    # pair each left eigenvalue with the closest remaining right one
    order = np.full(evs.size, -1)
    used = np.zeros(evs.size, dtype=bool)
    for i, lam in enumerate(np.conj(evs_l)):
        d = np.abs(evs - lam)
        d[used] = np.inf
        j = int(np.argmin(d))
        order[j] = i
        used[j] = True
    left = left[:, order]
    s = np.linalg.svd(right, compute_uv=False)
    return SpectrumResult(evs, params.boundary, float(s[-1] / s[0]),
                          right_vectors=right, left_vectors=left)


def obc_spectrum(params: LatticeParams) -> SpectrumResult:
    """Spectrum of the finite open chain."""
    if params.periodic:
        raise ValueError("obc_spectrum requires open boundary conditions")
    return dense_spectrum(params)


def band_centroid(params: LatticeParams, band: str = "upper",
                  n_points: int = 512) -> complex:
    """Mean of one eigenvalue branch over the Brillouin zone.

    Branches are sorted by real part at each q; band is "upper" (larger real
    part) or "lower".  Useful as a reference energy inside one spectral loop.
    """
    if band not in ("upper", "lower"):
        raise ValueError("band must be 'upper' or 'lower'")
    pick = -1 if band == "upper" else 0
    acc = 0.0 + 0.0j
    for k in range(n_points):
        ev = bloch_matrix(params, 2 * np.pi * k / n_points).eigenvalues()
        acc += ev[np.argsort(ev.real)][pick]
    return acc / n_points


def point_gap_winding(params: LatticeParams, e0: complex,
                      n_points: int = 4096) -> int:
    """Integer winding of det(B(q) - e0) around zero as q sweeps the zone.

    Raises if the boundary is not periodic or if e0 (numerically) touches the
    spectral curve, where the winding is undefined.
    """
    if not params.periodic:
        raise ValueError("point-gap winding is defined for the periodic array")
    m = int(n_points)
    for _ in range(3):
        qs = np.arange(m + 1) * (2 * np.pi / m)
        dets = np.array([bloch_matrix(params, q).determinant(e0) for q in qs])
        scale = (params.t1 + params.t2 + params.gamma + abs(e0)) ** 2
        if np.min(np.abs(dets)) < 1e-12 * scale:
            raise ValueError("reference energy lies on the spectral curve")
        phases = np.unwrap(np.angle(dets))
        steps = np.abs(np.diff(phases))
        total = phases[-1] - phases[0]
        w = total / (2 * np.pi)
        if steps.max() < 1.0 and abs(w - round(w)) < 1e-6:
            return int(round(w))
        m *= 4  # refine when the discretization is too coarse
    raise ValueError("winding did not converge; reference energy may be "
                     "too close to the spectral curve")
