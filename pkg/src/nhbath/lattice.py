"""Single-excitation Hamiltonians of the lossy cavity array, in both the
original (a, b) picture and the intra-cell-rotated (alpha, beta) picture."""
from __future__ import annotations

from typing import Union

import numpy as np

from .params import (MAPPED, ORIGINAL, EmitterLayout, LatticeParams,
                     SingleExcitationState)


def build_bare_hamiltonian(params: LatticeParams) -> np.ndarray:
    """Photonic Hamiltonian in the original (a, b) basis.

    Each cell couples its two cavities with rate t1; neighbouring cells are
    connected by four inter-cell links of magnitude t2/2: two reciprocal
    cross links (a_n <-> b_{n+1}, b_n <-> a_{n+1}) and two imaginary
    same-sublattice links (-i t2/2 for a_n -> a_{n+1}, +i t2/2 for
    b_n -> b_{n+1}, Hermitian within each pair).  Every b cavity carries the
    anti-Hermitian loss -i*gamma.
    """
    n, t1, t2, gamma = params.n_cells, params.t1, params.t2, params.gamma
    H = np.zeros((2 * n, 2 * n), dtype=complex)

    def a(k):
        return 2 * (k % n)

    def b(k):
        return 2 * (k % n) + 1

    for k in range(n):
        H[a(k), b(k)] += t1
        H[b(k), a(k)] += t1
        H[b(k), b(k)] += -1j * gamma
        if k == n - 1 and not params.periodic:
            continue
        m = (k + 1) % n
        H[a(k), b(m)] += t2 / 2
        H[b(m), a(k)] += t2 / 2
        H[b(k), a(m)] += t2 / 2
        H[a(m), b(k)] += t2 / 2
        H[a(k), a(m)] += -1j * t2 / 2
        H[a(m), a(k)] += 1j * t2 / 2
        H[b(k), b(m)] += 1j * t2 / 2
        H[b(m), b(k)] += -1j * t2 / 2
    return H


def build_mapped_hamiltonian(params: LatticeParams) -> np.ndarray:
    """Photonic Hamiltonian after the intra-cell rotation, (alpha, beta) basis.

    The rotation turns the model into an asymmetric-hopping chain: intra-cell
    rates t1 +/- gamma/2 (alpha -> beta gains, beta -> alpha loses), a
    reciprocal inter-cell rate t2, and a uniform on-site loss -i*gamma/2.
    Equals the similarity transform of `build_bare_hamiltonian` by
    `picture_unitary`.
    """
    n, t1, t2, gamma = params.n_cells, params.t1, params.t2, params.gamma
    H = np.zeros((2 * n, 2 * n), dtype=complex)

    def al(k):
        return 2 * (k % n)

    def be(k):
        return 2 * (k % n) + 1

    for k in range(n):
        H[al(k), be(k)] += t1 + gamma / 2
        H[be(k), al(k)] += t1 - gamma / 2
        H[al(k), al(k)] += -1j * gamma / 2
        H[be(k), be(k)] += -1j * gamma / 2
        if k == n - 1 and not params.periodic:
            continue
        m = (k + 1) % n
        H[al(m), be(k)] += t2
        H[be(k), al(m)] += t2
    return H


def intracell_unitary() -> np.ndarray:
    """2x2 rotation from (a, b) to (alpha, beta) amplitudes within one cell."""
    return np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=complex) / np.sqrt(2.0)


def picture_unitary(n_cells: int, n_emitters: int = 0) -> np.ndarray:
    """Block-diagonal unitary mapping original amplitudes to mapped ones.

    Acts as the identity on the first `n_emitters` components and as
    `intracell_unitary` on each cell block.
    """
    dim = n_emitters + 2 * n_cells
    U = np.eye(dim, dtype=complex)
    uc = intracell_unitary()
    for k in range(n_cells):
        i = n_emitters + 2 * k
        U[i:i + 2, i:i + 2] = uc
    return U


def transform_picture(obj: Union[SingleExcitationState, np.ndarray],
                      direction: str,
                      n_emitters: int = 0):
    """Move a state or an operator between the two pictures.

    direction is "to_mapped" or "to_original".  For a
    `SingleExcitationState` the stored picture tag must agree with the
    requested source picture and `n_emitters` is ignored; for a square matrix
    the photon block is assumed to start at row/column `n_emitters`.
    """
    if direction not in ("to_mapped", "to_original"):
        raise ValueError(f"direction must be 'to_mapped' or 'to_original', got {direction!r}")
    to_mapped = direction == "to_mapped"

    if isinstance(obj, SingleExcitationState):
        expect = ORIGINAL if to_mapped else MAPPED
        if obj.picture != expect:
            raise ValueError(f"state is already in the {obj.picture} picture")
        U = picture_unitary(obj.n_cells)
        amps = U @ obj.photon_amps if to_mapped else U.conj().T @ obj.photon_amps
        return SingleExcitationState(obj.emitter_amps.copy(), amps,
                                     MAPPED if to_mapped else ORIGINAL)

    M = np.asarray(obj, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("operator must be a square matrix")
    if (M.shape[0] - n_emitters) % 2 != 0 or M.shape[0] <= n_emitters:
        raise ValueError("matrix size inconsistent with n_emitters")
    n_cells = (M.shape[0] - n_emitters) // 2
    U = picture_unitary(n_cells, n_emitters)
    if to_mapped:
        return U @ M @ U.conj().T
    return U.conj().T @ M @ U


def build_total_hamiltonian(params: LatticeParams, layout: EmitterLayout,
                            picture: str = ORIGINAL) -> np.ndarray:
    """Emitters + photons Hamiltonian, emitters first in layout order.

    In the original picture each emitter couples to the lossy cavity of its
    cell with rate g.  In the mapped picture the same coupling becomes
    bi-local over the cell: g/sqrt(2) to beta and -+ i g/sqrt(2) to alpha
    (emitter row -i, alpha row +i).
    """
    layout.validate_against(params)
    if picture not in (ORIGINAL, MAPPED):
        raise ValueError(f"unknown picture {picture!r}")
    ne = layout.n_emitters
    dim = ne + params.n_modes
    H = np.zeros((dim, dim), dtype=complex)
    if picture == ORIGINAL:
        H[ne:, ne:] = build_bare_hamiltonian(params)
        for i, cell in enumerate(layout.cells):
            bi = ne + params.b_index(cell)
            H[i, bi] = layout.g
            H[bi, i] = layout.g
    else:
        H[ne:, ne:] = build_mapped_hamiltonian(params)
        gr = layout.g / np.sqrt(2.0)
        for i, cell in enumerate(layout.cells):
            ai = ne + params.a_index(cell)
            bi = ne + params.b_index(cell)
            H[i, bi] = gr
            H[bi, i] = gr
            H[i, ai] = -1j * gr
            H[ai, i] = 1j * gr
    return H
