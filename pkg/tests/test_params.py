import numpy as np
import pytest

from nhbath import (EmitterLayout, LatticeParams, SingleExcitationState,
                    excited_emitter_state, weak_coupling_warnings)


class TestLatticeParams:
    def test_valid(self):
        p = LatticeParams(8, 1.0, 2.0, 0.5, "open")
        assert p.n_modes == 16
        assert not p.periodic
        assert not p.uniform

    @pytest.mark.parametrize("kw", [
        dict(n_cells=1), dict(n_cells=2.5), dict(t1=0.0), dict(t1=-1.0),
        dict(t2=0.0), dict(gamma=-0.1), dict(boundary="twisted"),
    ])
    def test_invalid(self, kw):
        base = dict(n_cells=4, t1=1.0, t2=1.0, gamma=1.0, boundary="periodic")
        base.update(kw)
        with pytest.raises(ValueError):
            LatticeParams(**base)

    def test_indices(self):
        p = LatticeParams(5, 1.0, 1.0, 1.0)
        assert p.a_index(1) == 0
        assert p.b_index(1) == 1
        assert p.a_index(5) == 8
        assert p.b_index(5) == 9
        with pytest.raises(ValueError):
            p.check_cell(6)
        with pytest.raises(ValueError):
            p.check_cell(0)

    def test_replace(self):
        p = LatticeParams(5, 1.0, 1.0, 1.0)
        q = p.replace(gamma=2.0, boundary="open")
        assert q.gamma == 2.0 and q.boundary == "open"
        assert p.gamma == 1.0  # original untouched


class TestEmitterLayout:
    def test_valid(self):
        lay = EmitterLayout([3, 1, 7], 0.1)
        assert lay.cells == (3, 1, 7)
        assert lay.n_emitters == 3

    def test_duplicate_cells(self):
        with pytest.raises(ValueError, match="distinct"):
            EmitterLayout([2, 2], 0.1)

    def test_bad_g(self):
        with pytest.raises(ValueError):
            EmitterLayout([1], 0.0)

    def test_range_check(self):
        lay = EmitterLayout([9], 0.1)
        with pytest.raises(ValueError, match="out of range"):
            lay.validate_against(LatticeParams(5, 1.0, 1.0, 1.0))


class TestWeakCouplingWarnings:
    def test_quiet_when_perturbative(self):
        p = LatticeParams(100, 1.0, 1.0, 2.0)
        assert weak_coupling_warnings(p, EmitterLayout([15], 0.05)) == []

    def test_strong_g_flagged(self):
        p = LatticeParams(4, 1.0, 1.0, 2.0)
        msgs = weak_coupling_warnings(p, EmitterLayout([1], 0.6))
        assert any("t2" in m for m in msgs)
        assert any("sqrt(N)" in m for m in msgs)


class TestSingleExcitationState:
    def test_vector_round_trip(self):
        s = SingleExcitationState(np.array([0.5j]), np.arange(6) * 1.0)
        t = SingleExcitationState.from_vector(s.vector(), 1)
        assert np.array_equal(s.vector(), t.vector())
        assert t.n_emitters == 1 and t.n_cells == 3

    def test_photon_amp_lookup(self):
        amps = np.arange(6) * 1.0
        s = SingleExcitationState(np.zeros(1), amps)
        assert s.photon_amp(2, "a") == 2.0
        assert s.photon_amp(3, "b") == 5.0
        assert s.photon_amp(3, "beta") == 5.0

    def test_norm(self):
        s = SingleExcitationState(np.array([3.0]), np.array([4.0, 0.0]))
        assert s.norm() == pytest.approx(5.0)

    def test_bad_picture(self):
        with pytest.raises(ValueError):
            SingleExcitationState(np.zeros(1), np.zeros(4), "weird")

    def test_excited_emitter_state(self):
        p = LatticeParams(4, 1.0, 1.0, 1.0)
        lay = EmitterLayout([2, 3], 0.1)
        s = excited_emitter_state(p, lay, which=2)
        v = s.vector()
        assert v[1] == 1.0 and np.count_nonzero(v) == 1
        with pytest.raises(ValueError):
            excited_emitter_state(p, lay, which=3)
