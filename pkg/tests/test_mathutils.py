import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from infodyn.exceptions import AlphabetError, DataError
from infodyn.mathutils import (combine_values, decode_values, digamma, digamma_vec,
                               discretise, normalise)

EULER_GAMMA = 0.5772156649015329


class TestDigamma:
    def test_known_values(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-10)
        assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-10)
        assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2.0 * math.log(2.0), abs=1e-10)

    def test_recurrence_identity(self):
        for x in (0.5, 1.0, 2.0, 10.0, 100.0):
            assert digamma(x + 1.0) - digamma(x) == pytest.approx(1.0 / x, abs=1e-10)

    def test_against_scipy_grid(self):
        xs = np.concatenate([
            np.geomspace(1e-6, 1.0, 40),
            np.linspace(1.0, 50.0, 60),
            np.geomspace(50.0, 1e6, 30),
        ])
        for x in xs:
            expected = float(scipy.special.digamma(x))
            # 1e-10 absolute, widened by the float64 ulp once |psi| nears 1e6
            tol = 1e-10 + 2.0 * np.spacing(abs(expected))
            assert digamma(float(x)) == pytest.approx(expected, abs=tol)

    def test_domain_error(self):
        with pytest.raises(DataError):
            digamma(0.0)
        with pytest.raises(DataError):
            digamma(-1.5)

    def test_vectorised_matches_scalar(self):
        values = np.array([1, 2, 3, 3, 7, 1])
        out = digamma_vec(values)
        assert out.shape == values.shape
        for v, o in zip(values, out):
            assert o == digamma(float(v))


class TestNormalise:
    def test_two_points(self):
        out = normalise([0.0, 2.0])
        assert out == pytest.approx([-1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)])

    def test_constant_maps_to_zero(self):
        assert normalise([5.0, 5.0, 5.0]).tolist() == [0.0, 0.0, 0.0]

    def test_mean_zero_std_one(self):
        out = normalise([1.0, 2.0, 3.0])
        assert out.mean() == pytest.approx(0.0, abs=1e-15)
        assert out.std(ddof=1) == pytest.approx(1.0, abs=1e-12)


class TestDiscretise:
    def test_even_interior_edge_goes_high(self):
        # 0.5 sits exactly on the interior edge and lands in the upper bin
        assert discretise([0.0, 0.5, 1.0], 2, "even").tolist() == [0, 1, 1]

    def test_even_constant_series(self):
        assert discretise([1.0, 1.0, 1.0, 1.0], 2, "even").tolist() == [0, 0, 0, 0]

    def test_even_max_in_top_bin(self):
        out = discretise([0.0, 0.25, 0.75, 1.0], 4, "even")
        assert out.tolist() == [0, 1, 3, 3]

    def test_max_entropy_example(self):
        out = discretise([5.0, 1.0, 3.0, 2.0, 4.0, 6.0], 3, "max_entropy")
        assert out.tolist() == [2, 0, 1, 0, 1, 2]

    def test_max_entropy_too_many_bins(self):
        with pytest.raises(DataError):
            discretise([1.0, 2.0], 3, "max_entropy")

    @given(st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=4, max_size=60,
                    unique=True),
           st.integers(min_value=2, max_value=4))
    @settings(max_examples=50, deadline=None)
    def test_max_entropy_counts_balanced(self, values, bins):
        if bins > len(values):
            return
        out = discretise(values, bins, "max_entropy")
        counts = np.bincount(out, minlength=bins)
        assert counts.max() - counts.min() <= 1


class TestCombineValues:
    def test_examples(self):
        assert combine_values([[1, 0]], 2).tolist() == [2]
        assert combine_values([[0, 0]], 3).tolist() == [0]
        assert combine_values([[1, 2]], 3).tolist() == [5]

    def test_out_of_alphabet(self):
        with pytest.raises(AlphabetError):
            combine_values([[2, 0]], 2)

    @given(st.integers(min_value=2, max_value=4), st.integers(min_value=1, max_value=4),
           st.integers(min_value=0, max_value=10 ** 6))
    @settings(max_examples=80, deadline=None)
    def test_bijection_roundtrip(self, m, d, raw):
        code = raw % (m ** d)
        row = decode_values(np.array([code]), m, d)
        assert combine_values(row, m).tolist() == [code]

    def test_roundtrip_full_enumeration(self):
        m, d = 3, 3
        codes = np.arange(m ** d)
        rows = decode_values(codes, m, d)
        assert combine_values(rows, m).tolist() == codes.tolist()
