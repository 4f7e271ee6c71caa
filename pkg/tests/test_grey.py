import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sagdbscan import Dataset, GreyMatrix, grey_degree, grey_matrix
from sagdbscan.errors import DimensionMismatch, NonFiniteInput

from oracles import scalar_grey_degree

TOL = 1e-12


class TestGreyDegree:
    def test_identical_vectors_give_one(self):
        for n in (1, 2, 3, 7):
            v = np.linspace(-3.0, 5.0, n)
            assert grey_degree(v, v) == 1.0

    @pytest.mark.parametrize("a, b, expected", [
        ((0, 0, 0), (1, 1, 1), 0.5),          # d0=3, d1=d2=0
        ((0, 1), (1, 0), 0.25),               # d0=2, d1=2, d2 empty
        ((5.0,), (7.0,), 1.0 / 3.0),          # d0=2, d1 and d2 empty
        ((1, 2, 3), (1, 2, 3), 1.0),
    ])
    def test_hand_values(self, a, b, expected):
        assert abs(grey_degree(a, b) - expected) <= TOL

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            grey_degree([1.0, 2.0], [1.0])

    def test_non_finite_input(self):
        with pytest.raises(NonFiniteInput):
            grey_degree([np.nan, 0.0], [0.0, 0.0])
        with pytest.raises(NonFiniteInput):
            grey_degree([0.0], [np.inf])

    def test_matches_scalar_oracle(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 9))
            a = rng.normal(scale=10.0, size=n)
            b = rng.normal(scale=10.0, size=n)
            assert abs(grey_degree(a, b) - scalar_grey_degree(a, b)) <= TOL


@st.composite
def vector_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
    a = draw(st.lists(finite, min_size=n, max_size=n))
    b = draw(st.lists(finite, min_size=n, max_size=n))
    return np.asarray(a), np.asarray(b)


class TestGreyDegreeProperties:
    @given(vector_pairs())
    @settings(max_examples=200, deadline=None)
    def test_range_and_symmetry(self, pair):
        a, b = pair
        d = grey_degree(a, b)
        assert 0.0 < d <= 1.0
        assert d == grey_degree(b, a)

    @given(vector_pairs(), st.floats(min_value=-1e3, max_value=1e3, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_translation_invariance(self, pair, shift):
        a, b = pair
        c = np.full_like(a, shift)
        assert abs(grey_degree(a + c, b + c) - grey_degree(a, b)) <= TOL

    @given(vector_pairs(), st.floats(min_value=1.5, max_value=50.0))
    @settings(max_examples=200, deadline=None)
    def test_scaling_the_gap_decreases_the_degree(self, pair, lam):
        a, b = pair
        gap = a - b
        if np.abs(gap).sum() < 1e-6:
            return  # identical vectors stay at degree 1 under any scaling
        assert grey_degree(a, a - lam * gap) < grey_degree(a, a - gap)


class TestGreyMatrix:
    def test_single_object(self):
        G = grey_matrix(np.array([[3.5, 1.0]]))
        assert G.values.shape == (1, 1)
        assert G.values[0, 0] == 1.0

    def test_three_points_on_a_line(self):
        G = grey_matrix(np.array([[0.0], [1.0], [3.0]]))
        expected = np.array([
            [1.0, 0.5, 0.25],
            [0.5, 1.0, 1.0 / 3.0],
            [0.25, 1.0 / 3.0, 1.0],
        ])
        assert np.max(np.abs(G.values - expected)) <= TOL

    def test_equals_pairwise_degree_calls(self, rng):
        data = rng.normal(size=(50, 4))
        G = grey_matrix(data)
        for i in range(50):
            for j in range(50):
                assert G.values[i, j] == grey_degree(data[i], data[j])

    def test_invariants_on_random_data(self, rng):
        data = rng.uniform(-5.0, 5.0, size=(40, 3))
        G = grey_matrix(data)
        assert np.array_equal(G.values, G.values.T)
        assert np.all(np.diagonal(G.values) == 1.0)
        assert np.all((G.values > 0.0) & (G.values <= 1.0))

    def test_chunking_does_not_change_results(self, rng):
        data = rng.normal(size=(37, 5))
        full = grey_matrix(data, chunk=1000).values
        for chunk in (1, 2, 7, 36):
            assert np.array_equal(grey_matrix(data, chunk=chunk).values, full)

    def test_row_permutation_permutes_the_matrix(self, rng):
        data = rng.normal(size=(25, 4))
        perm = rng.permutation(25)
        G = grey_matrix(data).values
        G_perm = grey_matrix(data[perm]).values
        assert np.array_equal(G_perm, G[np.ix_(perm, perm)])

    def test_accepts_dataset_objects(self, rng):
        data = rng.normal(size=(10, 2))
        assert np.array_equal(grey_matrix(Dataset(data)).values, grey_matrix(data).values)

    def test_rejects_invalid_matrices(self):
        with pytest.raises(ValueError):
            GreyMatrix(np.array([[1.0, 0.5], [0.4, 1.0]]))  # asymmetric
        with pytest.raises(ValueError):
            GreyMatrix(np.array([[0.9]]))  # diagonal not 1
        with pytest.raises(ValueError):
            GreyMatrix(np.array([[1.0, 0.0], [0.0, 1.0]]))  # zero degree out of range
