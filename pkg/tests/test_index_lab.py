import math

import numpy as np
import pytest

from spingeo.index_lab import (
    SpectralModel,
    delta_limit_error,
    dirac_symbol,
    dlambda_index,
    dlambda_model,
    flat_dirac_square_residual,
    hodge_supertrace,
    line_heat_kernel,
    mckean_singer_check,
    mehler_kernel,
    oscillator_eigen_expansion,
    semigroup_residual,
    sphere2_hodge_model,
    sphere2_tail_bound,
    symbol_is_elliptic,
    torus2_hodge_model,
    torus_dirac_model,
)


class TestSpectralModel:
    def test_entry_validation(self):
        with pytest.raises(ValueError):
            SpectralModel("bad", [(-1.0, 1, 1)], 1)
        with pytest.raises(ValueError):
            SpectralModel("bad", [(1.0, 0, 1)], 1)
        with pytest.raises(ValueError):
            SpectralModel("bad", [(1.0, 1, 2)], 1)

    def test_supertrace_needs_positive_time(self):
        model = SpectralModel("m", [(0.0, 1, 1)], 1)
        with pytest.raises(ValueError):
            model.supertrace(0.0)

    def test_kernel_and_symmetry(self):
        model = SpectralModel("m", [(0.0, 2, 1), (3.0, 1, 1), (3.0, 1, -1)], 1)
        assert model.kernel_dim() == 2
        assert model.spectral_symmetry_holds()
        assert model.supertrace(1.0) == pytest.approx(2.0)


class TestDLambda:
    def test_integer_lambda(self):
        got = dlambda_index(3, cutoff=10)
        assert got == {"kernel_dim": 1, "cokernel_dim": 1, "index": 0}

    def test_noninteger_lambda(self):
        got = dlambda_index(0.5, cutoff=10)
        assert got == {"kernel_dim": 0, "cokernel_dim": 0, "index": 0}

    def test_index_vanishes_on_sweep(self):
        for lam in np.linspace(-3, 3, 25):
            assert dlambda_index(float(lam), cutoff=8)["index"] == 0

    def test_cutoff_precondition(self):
        with pytest.raises(ValueError):
            dlambda_index(5, cutoff=5)

    def test_model_supertrace_is_zero(self):
        # n -> -n matches the two sides, so the spectra agree for any λ
        for lam in (0.25, 1.0):
            model = dlambda_model(lam, cutoff=30)
            assert abs(model.supertrace(0.2)) <= 1e-12
            assert model.spectral_symmetry_holds()


class TestTorusDirac:
    def test_kernel_only_for_trivial_structure(self):
        assert torus_dirac_model((0, 0), cutoff=3).kernel_dim() == 2
        for delta in ((0, 0.5), (0.5, 0), (0.5, 0.5)):
            assert torus_dirac_model(delta, cutoff=3).kernel_dim() == 0

    def test_supertrace_vanishes_identically(self):
        for delta in ((0, 0), (0, 0.5), (0.5, 0), (0.5, 0.5)):
            model = torus_dirac_model(delta, cutoff=6)
            for t in (0.05, 0.2, 1.0):
                assert abs(model.supertrace(t)) <= 1e-12

    def test_spectral_symmetry(self):
        model = torus_dirac_model((0.5, 0.5), cutoff=4)
        assert model.spectral_symmetry_holds()

    def test_bad_offsets_rejected(self):
        with pytest.raises(ValueError):
            torus_dirac_model((0.3, 0), cutoff=3)
        with pytest.raises(ValueError):
            torus_dirac_model((0, 0), cutoff=0)


class TestHodgeSupertraces:
    def test_sphere_value_is_euler_characteristic(self):
        for t in (0.1, 0.5, 2.0):
            assert hodge_supertrace("sphere2", t, l_max=40) == pytest.approx(2.0, abs=1e-12)

    def test_torus_value_is_zero(self):
        for t in (0.1, 0.5, 2.0):
            assert hodge_supertrace("torus2", t, l_max=20) == pytest.approx(0.0, abs=1e-12)

    def test_tail_bound_controls_truncation(self):
        t = 0.1
        coarse = sphere2_hodge_model(12).supertrace(t)
        fine = sphere2_hodge_model(60).supertrace(t)
        assert abs(coarse - fine) <= sphere2_tail_bound(t, 12)

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            hodge_supertrace("klein", 0.5, l_max=5)

    def test_lmax_precondition(self):
        with pytest.raises(ValueError):
            sphere2_hodge_model(0)


class TestMcKeanSinger:
    def test_indices_across_models(self):
        grid = [0.1, 0.3, 1.0, 2.5]
        cases = [
            (sphere2_hodge_model(40), 2),
            (torus2_hodge_model(15), 0),
            (torus_dirac_model((0, 0), 6), 0),
            (dlambda_model(0.5, 40), 0),
        ]
        for model, index in cases:
            got = mckean_singer_check(model, grid)
            assert got["inferred_index"] == index
            assert got["max_deviation_from_integer"] <= 1e-10

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            mckean_singer_check(sphere2_hodge_model(5), [])


class TestHeatKernels:
    def test_line_kernel_normalization(self):
        # peak value and symmetry
        assert line_heat_kernel(0.25, 0, 0) == pytest.approx(1 / math.sqrt(math.pi))
        assert line_heat_kernel(0.3, 1.0, -0.5) == line_heat_kernel(0.3, -0.5, 1.0)

    def test_positive_time_required(self):
        with pytest.raises(ValueError):
            line_heat_kernel(0, 0, 0)
        with pytest.raises(ValueError):
            mehler_kernel(-1, 0, 0, 1)

    def test_mehler_symmetry(self):
        assert mehler_kernel(0.2, 0.7, -0.3, 1.5) == pytest.approx(
            mehler_kernel(0.2, -0.3, 0.7, 1.5)
        )

    def test_mehler_matches_eigenfunction_oracle(self):
        for x in (-1.0, -0.25, 0.0, 0.5, 1.5):
            for y in (-0.5, 0.0, 1.0):
                closed = mehler_kernel(0.3, x, y, 1.0)
                series = oscillator_eigen_expansion(0.3, x, y, 1.0)
                assert abs(closed - series) <= 1e-8

    def test_mehler_degenerates_to_line_kernel(self):
        for x, y in [(0.0, 0.0), (0.5, -0.4), (1.2, 0.9)]:
            assert abs(mehler_kernel(0.4, x, y, 1e-6) - line_heat_kernel(0.4, x, y)) <= 1e-8
        assert mehler_kernel(0.4, 0.3, -0.1, 0) == line_heat_kernel(0.4, 0.3, -0.1)

    def test_line_semigroup_property(self):
        xs = (-1.0, 0.0, 0.7)
        assert semigroup_residual(line_heat_kernel, 0.5, 0.5, xs) <= 1e-6

    def test_mehler_semigroup_property(self):
        def kernel(t, x, y):
            return mehler_kernel(t, x, y, 1.0)

        xs = (-0.8, 0.0, 0.6)
        assert semigroup_residual(kernel, 0.2, 0.3, xs) <= 1e-6

    def test_delta_limit(self):
        def f(y):
            return math.cos(y) + 0.2 * y

        err = delta_limit_error(line_heat_kernel, f, t=1e-4, x=0.3)
        assert err <= 1e-3


class TestDiracAlgebra:
    def test_flat_square_identity(self):
        assert flat_dirac_square_residual(2) == 0.0
        assert flat_dirac_square_residual(4) == 0.0

    def test_symbol_squares_to_norm(self):
        for n in (2, 4):
            xi = np.arange(1.0, n + 1)
            sym = dirac_symbol(xi, n)
            norm2 = float(xi @ xi)
            assert np.allclose(sym @ sym, norm2 * np.eye(sym.shape[0]))

    def test_ellipticity(self):
        assert symbol_is_elliptic([1.0, -2.0], 2)
        assert symbol_is_elliptic([0.5, 0.0, 0.0, 3.0], 4)
        assert not symbol_is_elliptic([0.0, 0.0], 2)
