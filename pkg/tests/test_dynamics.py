import numpy as np
import pytest

from nhbath import (EmitterLayout, LatticeParams, build_total_hamiltonian,
                    emitter_populations, evolve, excited_emitter_state,
                    fit_decay_rate, localization_report, photon_density)


def _setup(n=8, gamma=1.0, g=0.1, boundary="open", cell=3):
    p = LatticeParams(n, 1.0, 1.0, gamma, boundary)
    lay = EmitterLayout([cell], g)
    H = build_total_hamiltonian(p, lay)
    return p, lay, H


class TestEvolve:
    def test_initial_state_kept(self):
        _, lay, H = _setup()
        psi0 = excited_emitter_state(LatticeParams(8, 1.0, 1.0, 1.0, "open"), lay)
        traj = evolve(H, psi0, np.linspace(0, 5, 11))
        assert traj.n_steps == 11
        np.testing.assert_array_equal(traj.states[0].vector(), psi0.vector())
        assert traj.norm_history[0] == pytest.approx(1.0)

    def test_lossless_norm_conserved(self):
        p, lay, H = _setup(gamma=0.0)
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 20, 101))
        np.testing.assert_allclose(traj.norm_history, 1.0, atol=1e-10)

    def test_norm_monotone_with_loss(self):
        p, lay, H = _setup(gamma=1.0)
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 20, 101))
        assert np.all(np.diff(traj.norm_history) <= 1e-12)

    def test_uniform_and_irregular_grids_agree(self):
        p, lay, H = _setup()
        psi0 = excited_emitter_state(p, lay)
        uniform = np.linspace(0, 3, 7)
        jitter = uniform.copy()
        jitter[3] += 1e-4  # breaks uniformity, forces direct exponentials
        tu = evolve(H, psi0, uniform)
        tj = evolve(H, psi0, jitter)
        for k in (1, 2, 5, 6):
            np.testing.assert_allclose(tu.states[k].vector(),
                                       tj.states[k].vector(), atol=1e-9)

    def test_bad_inputs(self):
        p, lay, H = _setup()
        psi0 = excited_emitter_state(p, lay)
        with pytest.raises(ValueError):
            evolve(H, psi0, [0.0])
        with pytest.raises(ValueError):
            evolve(H, psi0, [1.0, 2.0])
        with pytest.raises(ValueError):
            evolve(H, psi0, [0.0, 2.0, 1.0])
        bad = H.copy()
        bad[0, 0] = np.nan
        with pytest.raises(ValueError):
            evolve(bad, psi0, [0.0, 1.0])
        with pytest.raises(ValueError):
            evolve(H[:-2, :-2], psi0, [0.0, 1.0])


class TestObservables:
    def test_population_conservation_split(self):
        p, lay, H = _setup(gamma=0.0)
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 10, 41))
        pe = emitter_populations(traj).sum(axis=1)
        pf = photon_density(traj).sum(axis=1)
        np.testing.assert_allclose(pe + pf, 1.0, atol=1e-10)

    def test_density_is_picture_covariant_not_invariant(self):
        p, lay, H = _setup(gamma=2.0)
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 5, 21))
        orig = photon_density(traj, picture="original")
        mapped = photon_density(traj, picture="mapped")
        # total photonic weight agrees (the rotation is unitary) ...
        np.testing.assert_allclose(orig.sum(axis=1), mapped.sum(axis=1), atol=1e-10)
        # ... but the site-resolved profiles differ
        assert np.max(np.abs(orig - mapped)) > 1e-4


class TestLocalizationReport:
    def test_probabilities_normalized(self):
        p, lay, H = _setup(n=30, gamma=1.0, g=0.05, cell=10)
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 20, 101))
        rep = localization_report(traj, 10, 20.0)
        assert rep.p_local + rep.p_left + rep.p_right == pytest.approx(1.0)
        assert rep.atom_cell == 10 and rep.t_average == 20.0

    def test_directional_regime_emits_nothing_left(self):
        p, lay, H = _setup(n=30, gamma=2.0, g=0.05, cell=10)
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 20, 101))
        rep = localization_report(traj, 10, 20.0)
        assert rep.p_local > 0.9
        assert rep.p_right < 1e-10  # nothing propagates to the right either

    def test_window_validation(self):
        p, lay, H = _setup()
        psi0 = excited_emitter_state(p, lay)
        traj = evolve(H, psi0, np.linspace(0, 5, 11))
        with pytest.raises(ValueError):
            localization_report(traj, 3, 50.0)
        with pytest.raises(ValueError):
            localization_report(traj, 99, 5.0)


class TestFitDecayRate:
    def test_recovers_synthetic_rate(self):
        t = np.linspace(0, 50, 200)
        pops = 0.7 * np.exp(-0.013 * t)
        assert fit_decay_rate(t, pops, 5.0, 45.0) == pytest.approx(0.013, rel=1e-10)

    def test_empty_window(self):
        with pytest.raises(ValueError):
            fit_decay_rate([0.0, 1.0], [1.0, 0.5], 5.0, 6.0)
