import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdhits import SparseTensor, ShapeError, WeightError, contract, contract_all
from mdhits import from_edge_list, mode_support
from oracles import dense_contract, to_dense
from conftest import random_tensor

C = 2 ** -0.5


def test_four_node_fixture_has_ten_entries(four_node):
    assert four_node.nnz == 10
    assert four_node.shape == (4, 4, 3, 3, 1)
    assert four_node.is_temporal_multilayer


def test_duplicates_are_summed():
    t = from_edge_list([((0, 1), 1.0), ((0, 1), 1.0)], (2, 2))
    assert t.nnz == 1
    assert t.weights[0] == 2.0


def test_empty_list_gives_zero_tensor():
    t = from_edge_list([], (3, 3, 1, 1, 1))
    assert t.is_zero and t.nnz == 0
    for m in t.marginals:
        assert np.all(m == 0)


def test_entries_sorted_lexicographically(rng):
    t = random_tensor(rng, (4, 4, 3, 3, 2), 40)
    rows = [tuple(r) for r in t.indices]
    assert rows == sorted(rows)
    assert len(set(rows)) == len(rows)


@pytest.mark.parametrize(
    "records, err",
    [
        ([((0, 5), 1.0)], ShapeError),
        ([((0, -1), 1.0)], ShapeError),
        ([((0, 1), 0.0)], WeightError),
        ([((0, 1), -2.0)], WeightError),
        ([((0, 1), float("nan"))], WeightError),
        ([((0, 1), float("inf"))], WeightError),
        ([((0, 1, 2), 1.0)], ShapeError),
    ],
)
def test_invalid_records_rejected(records, err):
    with pytest.raises(err):
        from_edge_list(records, (3, 3))


def test_error_names_record_position():
    with pytest.raises(ShapeError, match="record 2"):
        from_edge_list([((0, 0), 1.0), ((1, 1), 1.0), ((0, 9), 1.0)], (3, 3))


def test_invalid_shapes():
    with pytest.raises(ShapeError):
        from_edge_list([], (3,))
    with pytest.raises(ShapeError):
        from_edge_list([], (3, 0))


def test_canonicalization_idempotent(rng):
    t = random_tensor(rng, (5, 5, 2, 2, 3), 30)
    again = from_edge_list(t.edge_records(), t.shape)
    assert again == t


def test_tensor_is_read_only(four_node):
    with pytest.raises(ValueError):
        four_node.weights[0] = 5.0


def test_mode_support_curse(curse):
    hub = mode_support(curse, 0)
    auth = mode_support(curse, 1)
    assert hub.inactive.tolist() == [5]
    assert auth.inactive.tolist() == [0]
    assert hub.active.tolist() == [0, 1, 2, 3, 4]


def test_mode_support_dense_all_ones():
    shape = (2, 3, 2)
    idx = np.array(list(np.ndindex(*shape)))
    t = SparseTensor.from_arrays(idx, np.ones(len(idx)), shape)
    for s in range(3):
        assert mode_support(t, s).inactive.size == 0


def test_mode_support_bounds(curse):
    with pytest.raises(ShapeError):
        mode_support(curse, 2)


def test_contract_at_ones_gives_marginals(four_node):
    ones = [np.ones(n) for n in four_node.shape]
    for s in range(5):
        np.testing.assert_array_equal(contract(four_node, s, ones), four_node.marginals[s])


def test_contract_curse_hub_slice(curse):
    a = np.array([0, C, C, C, C, 1.0])
    out = contract(curse, 0, [a])
    np.testing.assert_allclose(out, [4 * C, 1, 1, 1, 1, 0], rtol=1e-15)


def test_contract_matches_dense_oracle(rng):
    shape = (4, 4, 3, 3, 2)
    t = random_tensor(rng, shape, 20)
    xs = [rng.uniform(0.1, 1.0, n) for n in shape]
    dense = to_dense(t)
    for s in range(5):
        expected = dense_contract(dense, s, xs)
        np.testing.assert_allclose(contract(t, s, xs), expected, rtol=1e-12, atol=0)
        np.testing.assert_allclose(
            contract(t, s, xs, compensated=True), expected, rtol=1e-12, atol=0
        )
    allc = contract_all(t, xs)
    for s in range(5):
        np.testing.assert_allclose(allc[s], dense_contract(dense, s, xs), rtol=1e-12)


def test_contract_accepts_m_minus_one_vectors(rng):
    t = random_tensor(rng, (3, 4, 2), 10)
    xs = [rng.random(n) for n in t.shape]
    full = contract(t, 1, xs)
    short = contract(t, 1, [xs[0], xs[2]])
    np.testing.assert_array_equal(full, short)


def test_contract_length_mismatch_names_mode(four_node):
    xs = [np.ones(n) for n in four_node.shape]
    xs[3] = np.ones(7)
    with pytest.raises(ShapeError, match="mode 3"):
        contract(four_node, 0, xs)


def test_contract_zero_on_inactive(curse):
    a = np.array([0.3, 0.5, 0.2, 0.9, 0.1, 0.7])
    out = contract(curse, 0, [a])
    assert out[5] == 0.0
    assert np.all(out[:5] > 0)


def test_parallel_contract_all_identical(rng):
    from concurrent.futures import ThreadPoolExecutor

    t = random_tensor(rng, (30, 30, 20, 20, 4), 3000)
    xs = [rng.random(n) for n in t.shape]
    serial = contract_all(t, xs)
    with ThreadPoolExecutor(4) as ex:
        par = contract_all(t, xs, executor=ex)
    for a, b in zip(serial, par):
        np.testing.assert_array_equal(a, b)


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 2**31),
    mu=st.lists(st.floats(0.1, 10.0), min_size=5, max_size=5),
)
def test_multilinearity(seed, mu):
    rng = np.random.default_rng(seed)
    shape = (4, 3, 3, 2, 2)
    t = random_tensor(rng, shape, 25)
    xs = [rng.uniform(0.1, 1.0, n) for n in shape]
    scaled = [m * x for m, x in zip(mu, xs)]
    for s in range(5):
        factor = np.prod([m for t_, m in enumerate(mu) if t_ != s])
        np.testing.assert_allclose(
            contract(t, s, scaled), factor * contract(t, s, xs), rtol=1e-12
        )


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31), nnz=st.integers(1, 60))
def test_oracle_equivalence_property(seed, nnz):
    rng = np.random.default_rng(seed)
    shape = tuple(int(n) for n in rng.integers(1, 5, size=4))
    t = random_tensor(rng, shape, nnz)
    xs = [rng.uniform(0.0, 1.0, n) for n in shape]
    dense = to_dense(t)
    for s in range(len(shape)):
        np.testing.assert_allclose(
            contract(t, s, xs), dense_contract(dense, s, xs), rtol=1e-12, atol=1e-300
        )
