import numpy as np
import pytest

from infodyn.discrete import DiscreteMutualInfo, DiscreteTransferEntropy
from infodyn.exceptions import LifecycleError, PropertyError
from infodyn.ksg import KsgMutualInfo
from infodyn.registry import make_calculator, supported_measures


class TestParams:
    def test_get_params_roundtrip(self):
        calc = DiscreteTransferEntropy(alphabet=2, k=3, u=2)
        params = calc.get_params()
        assert params["k"] == 3 and params["u"] == 2 and params["alphabet"] == 2
        clone = DiscreteTransferEntropy(**params)
        assert clone.get_params() == params

    def test_set_params_unknown_key(self):
        with pytest.raises(PropertyError, match="bogus"):
            DiscreteMutualInfo().set_params(bogus=1)

    def test_set_property_parses_types(self):
        calc = KsgMutualInfo()
        calc.set_property("K", "7")
        calc.set_property("noise_scale", "0")
        calc.set_property("algorithm", "2")
        assert calc.K == 7 and calc.noise_scale == 0.0 and calc.algorithm == 2

    def test_set_property_unknown_key_named(self):
        with pytest.raises(PropertyError, match="'tau_j'"):
            KsgMutualInfo().set_property("tau_j", "2")

    def test_set_property_bad_value(self):
        with pytest.raises(PropertyError, match="'K'"):
            KsgMutualInfo().set_property("K", "four")


class TestLifecycle:
    def test_add_before_initialise(self):
        calc = DiscreteMutualInfo(alphabet=2)
        with pytest.raises(LifecycleError):
            calc.add_observations([0, 1], [1, 0])

    def test_compute_before_observations(self):
        calc = DiscreteMutualInfo(alphabet=2)
        with pytest.raises(LifecycleError):
            calc.compute_average()

    def test_add_after_finalise(self):
        calc = DiscreteMutualInfo(alphabet=2)
        calc.set_observations([0, 1, 0, 1], [0, 1, 1, 0])
        with pytest.raises(LifecycleError):
            calc.add_observations([0, 1], [1, 0])

    def test_initialise_resets(self):
        calc = DiscreteMutualInfo(alphabet=2)
        first = calc.fit([0, 1, 0, 1], [0, 1, 0, 1]).average_
        second = calc.fit([0, 0, 1, 1], [0, 1, 0, 1]).average_
        assert first == pytest.approx(1.0)
        assert second == pytest.approx(0.0, abs=1e-14)

    def test_fit_sets_attributes(self):
        calc = DiscreteMutualInfo(alphabet=2).fit([0, 1, 0, 1], [0, 1, 0, 1])
        assert calc.average_ == pytest.approx(1.0)
        assert calc.local_.shape == (4,)
        assert calc.n_observations_ == 4

    def test_ensemble_matches_concatenation_when_no_embedding(self):
        rng = np.random.default_rng(0)
        x1, y1 = rng.integers(0, 2, 50), rng.integers(0, 2, 50)
        x2, y2 = rng.integers(0, 2, 70), rng.integers(0, 2, 70)
        calc = DiscreteMutualInfo(alphabet=2)
        calc.initialise()
        calc.add_observations(x1, y1)
        calc.add_observations(x2, y2)
        calc.finalise()
        combined = DiscreteMutualInfo(alphabet=2).fit(
            np.concatenate([x1, x2]), np.concatenate([y1, y2]))
        assert calc.compute_average() == combined.average_


class TestRegistry:
    def test_make_calculator(self):
        calc = make_calculator("te", "discrete", alphabet=2, k=2)
        assert calc.measure == "te" and calc.k == 2

    def test_unknown_combination(self):
        with pytest.raises(PropertyError, match="not implemented"):
            make_calculator("separable", "ksg")

    def test_unknown_names(self):
        with pytest.raises(PropertyError):
            make_calculator("zz", "discrete")
        with pytest.raises(PropertyError):
            make_calculator("mi", "zz")

    def test_supported_measures_cover_spec_table(self):
        assert set(supported_measures("discrete")) >= {
            "entropy", "mi", "cmi", "multi", "rate", "ais", "pi", "te", "cte",
            "collective-te", "separable"}
        assert set(supported_measures("gaussian")) >= {"entropy", "mi", "cmi", "te", "cte", "ais"}
        assert set(supported_measures("kernel")) >= {"entropy", "mi", "multi", "te", "ais"}
        assert set(supported_measures("ksg")) >= {
            "entropy", "mi", "cmi", "multi", "te", "cte", "ais", "pi"}
        assert set(supported_measures("symbolic")) >= {"entropy", "te"}
