import numpy as np
import pytest

from infodyn.demos import (demo_lag_sweep, demo_null_study, demo_schreiber_tent,
                           demo_schreiber_ulam, run_demo)


class TestLagSweep:
    def test_argmax_at_true_delay(self, tmp_path):
        argmaxes = demo_lag_sweep(tmp_path, seed=42, n=5000, delay=3)
        assert argmaxes == {"discrete": 3, "ksg": 3, "kernel": 3}
        assert (tmp_path / "lag_sweep.csv").exists()
        assert (tmp_path / "lag_sweep_summary.txt").exists()


class TestNullStudy:
    def test_surrogate_vs_analytic_ratio(self, tmp_path):
        ratio_disc, ratio_gauss = demo_null_study(tmp_path, seed=42, n=1000,
                                                  n_surrogates=1500)
        assert 0.85 <= ratio_disc <= 1.15
        assert 0.85 <= ratio_gauss <= 1.15


class TestSchreiberStyle:
    def test_tent_curve_monotone(self, tmp_path):
        couplings, means = demo_schreiber_tent(tmp_path, seed=42, n=3000, trials=4)
        assert means[-1] > means[0] + 0.05
        assert np.all(np.diff(means) >= -0.01)

    def test_ulam_curve_rises(self, tmp_path):
        couplings, means = demo_schreiber_ulam(tmp_path, seed=42, n=1200, trials=3)
        assert means[-1] > means[0] + 0.2
        assert np.all(np.diff(means) >= -0.05)


class TestRunner:
    def test_ca_demo_writes_reports(self, tmp_path):
        run_demo("ca", tmp_path, seed=11)
        for name in ("ca_ais.csv", "ca_te_right.csv", "ca_te_left.csv", "ca_raw.csv",
                     "ca_summary.txt"):
            assert (tmp_path / name).exists()

    def test_unknown_demo(self, tmp_path):
        from infodyn.exceptions import DataError
        with pytest.raises(DataError):
            run_demo("nope", tmp_path)
