import math

import numpy as np
import pytest

from qdmfluor import (
    BRANCH_LABELS,
    BroadeningModel,
    GridSpec,
    SweepRange,
    delta_values_from_field,
    dressed_energy_curves,
    intensity_map,
    resolvable_maxima,
    temperature_series,
    transition_branches,
)
from qdmfluor import DriveParams, EmitterParams

from helpers import strong_drive

SQRT_002 = math.sqrt(0.02)


def _model():
    return BroadeningModel(gamma0=75e-6, a_coef=22e-6, gamma_rad=75e-6)


def test_sweep_range_validation():
    with pytest.raises(ValueError):
        SweepRange(lo=1.0, hi=0.0, steps=5)
    with pytest.raises(ValueError):
        SweepRange(lo=0.0, hi=1.0, steps=1)
    with pytest.raises(ValueError):
        SweepRange(lo=0.0, hi=1.0, steps=5, axis="voltage")
    rng = SweepRange(lo=0.0, hi=1.0, steps=5)
    assert np.array_equal(rng.values(), np.linspace(0.0, 1.0, 5))


class TestEnergyCurves:
    def test_row_at_zero_splitting(self):
        emitter, drive = strong_drive(delta=0.0)
        rng = SweepRange(lo=-0.01, hi=0.01, steps=3)
        curves = dressed_energy_curves(rng, emitter, drive)
        mid = curves.energies[1]
        assert np.allclose(mid, [-SQRT_002, 0.0, SQRT_002], atol=1e-10)
        assert (np.diff(curves.energies, axis=1) >= 0.0).all()

    def test_zero_couplings_reproduce_bare_triples(self):
        emitter = EmitterParams(e_xd=1.0, delta=0.0, t=0.0)
        drive = DriveParams(n=2, g=0.0, hw_l=0.99)
        rng = SweepRange(lo=-0.2, hi=0.2, steps=9)
        curves = dressed_energy_curves(rng, emitter, drive)
        for delta, row in zip(curves.delta, curves.energies):
            assert row.tolist() == sorted([0.99 - 1.0, 0.0, float(delta)])

    def test_large_splitting_endpoint(self):
        emitter, drive = strong_drive(delta=0.0)
        rng = SweepRange(lo=0.0, hi=50.0, steps=11)
        curves = dressed_energy_curves(rng, emitter, drive)
        last = curves.energies[-1]
        assert last[0] == pytest.approx(-0.1, abs=0.1**2 / 50.0)
        assert last[1] == pytest.approx(0.1, abs=0.1**2 / 50.0)

    def test_requires_delta_axis(self):
        emitter, drive = strong_drive(delta=0.0)
        with pytest.raises(ValueError):
            dressed_energy_curves(SweepRange(0.0, 1.0, 3, axis="field"), emitter, drive)


class TestBranches:
    def test_multiset_at_zero_splitting(self):
        emitter, drive = strong_drive(delta=0.0)
        rng = SweepRange(lo=0.0, hi=0.01, steps=2)
        table = transition_branches(rng, emitter, drive)
        row = np.sort(table.a[0])
        expected = np.sort(
            [0.0, 0.0, 0.0, -SQRT_002, -SQRT_002, SQRT_002, SQRT_002, -2 * SQRT_002, 2 * SQRT_002]
        )
        assert np.allclose(row, expected, atol=1e-10)

    def test_central_branches_identically_zero(self):
        emitter, drive = strong_drive(delta=0.0)
        rng = SweepRange(lo=-0.05, hi=0.05, steps=21)
        table = transition_branches(rng, emitter, drive)
        for k, (i, j) in enumerate(BRANCH_LABELS):
            if i == j:
                assert np.array_equal(table.a[:, k], np.zeros(21))

    def test_seven_distinct_values_at_generic_splitting(self):
        emitter, drive = strong_drive(delta=0.0)
        rng = SweepRange(lo=0.008, hi=0.009, steps=2)
        table = transition_branches(rng, emitter, drive)
        distinct = {round(v, 9) for v in table.a[0]}
        assert len(distinct) == 7

    def test_branch_continuity(self):
        emitter, drive = strong_drive(delta=0.0)
        rng = SweepRange(lo=-0.02, hi=0.02, steps=401)  # 1e-4 step
        table = transition_branches(rng, emitter, drive)
        jumps = np.abs(np.diff(table.a, axis=0))
        for k in range(9):
            col = jumps[:, k]
            local = np.maximum((np.roll(col, 1) + np.roll(col, -1)) / 2.0, 1e-12)
            assert (col[1:-1] <= 10.0 * local[1:-1]).all()


class TestTemperatureSeries:
    def test_heights_strictly_decrease(self):
        emitter, drive = strong_drive(delta=0.008)
        grids = temperature_series([5.0, 20.0, 40.0], emitter, drive, _model(), GridSpec(-0.35, 0.35, 3501))
        maxima = [g.intensity.max() for g in grids]
        assert maxima[0] > maxima[1] > maxima[2]
        assert all(g.meta["temp_k"] == t for g, t in zip(grids, (5.0, 20.0, 40.0)))

    def test_zero_temperature_uses_floor_linewidth(self):
        emitter, drive = strong_drive(delta=0.008)
        (grid,) = temperature_series([0.0], emitter, drive, _model(), GridSpec(-0.35, 0.35, 501))
        assert grid.meta["gamma_pop_ev"] == pytest.approx(75e-6, rel=1e-12)

    def test_duplicate_temperatures_identical(self):
        emitter, drive = strong_drive(delta=0.008)
        grids = temperature_series([20.0, 20.0], emitter, drive, _model(), GridSpec(-0.35, 0.35, 501))
        assert np.array_equal(grids[0].intensity, grids[1].intensity)

    def test_empty_and_negative_rejected(self):
        emitter, drive = strong_drive(delta=0.008)
        with pytest.raises(ValueError):
            temperature_series([], emitter, drive, _model(), GridSpec(-0.35, 0.35, 501))
        with pytest.raises(ValueError):
            temperature_series([-1.0], emitter, drive, _model(), GridSpec(-0.35, 0.35, 501))


class TestIntensityMap:
    def test_rows_equal_standalone_runs(self):
        from dataclasses import replace

        from qdmfluor import diagonalize, linewidth, reduced_hamiltonian, synthesize, transitions

        emitter, drive = strong_drive(delta=0.0)
        model = _model()
        grid = GridSpec(-0.35, 0.35, 801)
        rng = SweepRange(lo=0.0, hi=0.01, steps=2)
        result = intensity_map(rng, grid, emitter, drive, model, temp_k=0.0)
        gamma = linewidth(model, 0.0)
        for r, delta in enumerate(result.delta_axis):
            dressed = diagonalize(reduced_hamiltonian(replace(emitter, delta=float(delta)), drive))
            standalone = synthesize(transitions(dressed, emitter.mu), gamma, model.gamma_rad, grid)
            assert np.array_equal(result.values[r], standalone.intensity)

    def test_mu_scaling_is_quadratic(self):
        emitter, drive = strong_drive(delta=0.004)
        grid = GridSpec(-0.35, 0.35, 401)
        rng = SweepRange(lo=0.0, hi=0.02, steps=3)
        base = intensity_map(rng, grid, emitter, drive, _model())
        doubled_emitter = EmitterParams(
            e_xd=emitter.e_xd, delta=emitter.delta, t=emitter.t, mu=2.0, d=emitter.d, e0=emitter.e0
        )
        doubled = intensity_map(rng, grid, doubled_emitter, drive, _model())
        assert np.allclose(doubled.values, 4.0 * base.values, rtol=1e-12, atol=0.0)

    def test_workers_do_not_change_results(self):
        emitter, drive = strong_drive(delta=0.0)
        grid = GridSpec(-0.35, 0.35, 401)
        rng = SweepRange(lo=0.0, hi=0.06, steps=13)
        serial = intensity_map(rng, grid, emitter, drive, _model(), workers=1)
        threaded = intensity_map(rng, grid, emitter, drive, _model(), workers=4)
        assert np.array_equal(serial.values, threaded.values)

    def test_default_map_regimes_at_small_splitting(self):
        emitter, drive = strong_drive(delta=0.0)
        grid = GridSpec(-0.35, 0.35, 7001)
        rng = SweepRange(lo=0.0, hi=0.06, steps=241)
        result = intensity_map(rng, grid, emitter, drive, _model(), temp_k=0.0)
        assert len(resolvable_maxima(result.values[0])) == 5
        near_001 = [r for r, d in enumerate(result.delta_axis) if 0.0095 <= d <= 0.0105]
        for r in near_001:
            assert len(resolvable_maxima(result.values[r])) == 7

    def test_temperature_series_workers_identical(self):
        emitter, drive = strong_drive(delta=0.008)
        grid = GridSpec(-0.35, 0.35, 501)
        serial = temperature_series([5.0, 20.0, 40.0], emitter, drive, _model(), grid, workers=1)
        threaded = temperature_series([5.0, 20.0, 40.0], emitter, drive, _model(), grid, workers=3)
        for a, b in zip(serial, threaded):
            assert np.array_equal(a.intensity, b.intensity)


def test_field_axis_premap():
    rng = SweepRange(lo=0.0, hi=50.0, steps=6, axis="field")
    deltas = delta_values_from_field(rng, delta_zero_field=0.05, d_nm=10.0)
    expected = 0.05 - 10.0 * rng.values() * 1e-4
    assert np.allclose(deltas, expected, atol=1e-15)
    assert deltas[-1] == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        delta_values_from_field(SweepRange(0.0, 1.0, 3, axis="delta"), 0.05, 10.0)
