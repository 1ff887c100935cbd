import math

import numpy as np
import pytest

import triqed


def reference():
    return triqed.CouplingSet.dimensionless(5.0, 4.8, 0.6, 0.1, 0.3)


def test_version():
    assert triqed.__version__ == "1.0.0"


def test_couplings_and_resonance():
    c = reference()
    assert c.Delta == pytest.approx(0.2)
    assert c.kappa == pytest.approx(4.0)
    assert triqed.parametric_resonance_residual(c) == pytest.approx(0.0, abs=1e-15)
    assert triqed.at_parametric_resonance(c)
    off = triqed.CouplingSet.dimensionless(5.0, 4.7, 0.6, 0.1, 0.3)
    assert not triqed.at_parametric_resonance(off)


def test_hamiltonian_shape_and_hermiticity():
    c = reference()
    dims = triqed.HilbertDims(4, 10)
    h = triqed.build_full_hamiltonian(c, dims)
    assert h.shape == (80, 80)
    assert np.max(np.abs(h - h.conj().T)) < 1e-12
    # diagonal element of |na=1, nb=2, g>
    k = dims.index(1, 2, 1)
    assert h[k, k] == pytest.approx(5.0 * 1 + 1.0 * 2 - 0.5 * 4.8)


def test_closed_form_ground_level():
    c = reference()
    assert triqed.eigenvalue(c, 1, 0, 0) == pytest.approx(
        1.8271375596216686, rel=1e-14
    )
    with pytest.raises(triqed.PhysicsError):
        triqed.eigenvalue(
            triqed.CouplingSet.dimensionless(5.0, 4.7, 0.6, 0.1, 0.3), 1, 0, 0
        )
    with pytest.raises(triqed.ConfigError):
        triqed.eigenvalue(c, 3, 0, 0)


def test_closed_level_against_dense():
    c = reference()
    sub = triqed.reduce_subspace(c, 0).to_matrix(50)
    es = triqed.dense_eigensystem(sub)
    assert es.eigenvalues[0] == pytest.approx(triqed.eigenvalue(c, 1, 0, 0), rel=1e-10)


def test_echo_periodicity():
    c = reference()
    spec = triqed.make_echo_spec(c, 1, 0, 2, 0, 0.0)
    period = 2.0 * math.pi / c.omegaM
    assert triqed.loschmidt_echo(c, spec, 0.0) == pytest.approx(1.0)
    le = triqed.loschmidt_echo(c, spec, 1.3)
    assert triqed.loschmidt_echo(c, spec, 1.3 + period) == pytest.approx(le, rel=1e-12)
    assert 0.0 < le <= 1.0


def test_inversion_starts_excited():
    c = triqed.CouplingSet.dimensionless(5.0, 4.0, 0.0, 0.0, 0.3)
    ens = triqed.ensemble_fock(c, 2, 1.0)
    assert ens.kind == triqed.EnsembleKind.fock
    assert ens.weights.sum() == pytest.approx(1.0)
    assert triqed.population_inversion(c, ens, 0.0) == pytest.approx(1.0)
    times = triqed.time_grid(0.0, 10.0, 21)
    series = triqed.inversion_series(c, ens, times)
    assert series.values.shape == (21,)
    assert np.all(np.abs(series.values) <= 1.0 + 1e-12)


def test_spin_orbit_block():
    c = triqed.CouplingSet.dimensionless(2.0, 1.3, 0.0, 0.0, 0.08)
    b = triqed.block_2x2(c, 1.0, 0.0)
    assert b.g_lm == pytest.approx(2.0 * 0.08 * math.sqrt(2.0))
    blocks = triqed.assemble_blocks(c, 1.0)
    assert len(blocks) == 4
    levels, advisory = triqed.hp_limit_spectrum(c, 1000.0, 3)
    assert advisory is None
    assert levels[0].g_n == pytest.approx(2.0 * 0.08 * math.sqrt(2000.0))
