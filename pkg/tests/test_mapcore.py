import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdhits import (
    InactiveModeError,
    NonconformingError,
    apply_map,
    beta_norm,
    contract,
    from_edge_list,
    hilbert_distance,
    make_config,
    normalize,
)
from mdhits.tensor import SupportSet
from conftest import random_tensor

C = 2 ** -0.5


def _conforming(rng, tensor, low=0.05):
    masks = tensor.support().masks
    return [np.where(m, rng.uniform(low, 1.0, m.size), 0.0) for m in masks]


def test_apply_map_at_ones(four_node):
    alpha = np.array([0.1, 0.2, 0.3, 0.4, 0.5])
    out = apply_map(four_node, alpha, [np.ones(n) for n in four_node.shape])
    for s in range(5):
        np.testing.assert_allclose(out[s], four_node.marginals[s] ** alpha[s], rtol=1e-15)


def test_apply_map_curse_fixed_point(curse):
    h = np.array([1, C, C, C, C, 0])
    a = np.array([0, C, C, C, C, 1])
    out = apply_map(curse, make_config([1 / 3, 1 / 3]), [h, a])
    lam = (4 * C) ** (1 / 3)
    assert lam == pytest.approx(2**0.5, rel=1e-15)
    np.testing.assert_allclose(out[0], lam * h, rtol=1e-14, atol=0)
    np.testing.assert_allclose(out[1], lam * a, rtol=1e-14, atol=0)


def test_apply_map_zero_tensor():
    t = from_edge_list([], (3, 3, 1, 1, 1))
    out = apply_map(t, np.full(5, 0.2), [np.ones(n) for n in t.shape])
    assert all(np.all(v == 0) for v in out)


def test_normalize_examples():
    out = normalize([np.array([2.0, 4.0, 0.0]), np.array([3.0, 3.0])])
    np.testing.assert_array_equal(out[0], [0.5, 1.0, 0.0])
    np.testing.assert_array_equal(out[1], [1.0, 1.0])
    again = normalize(out)
    for a, b in zip(out, again):
        np.testing.assert_array_equal(a, b)
    y = [np.array([0.3, 0.7]), np.array([1.1, 0.2, 0.4])]
    for a, b in zip(normalize(y), normalize([5 * v for v in y])):
        np.testing.assert_allclose(a, b, rtol=1e-15)


def test_normalize_zero_slice_names_mode():
    with pytest.raises(InactiveModeError) as err:
        normalize([np.ones(2), np.zeros(3)])
    assert err.value.mode == 1


def test_beta_norm_examples():
    x = normalize([np.array([0.2, 0.9]), np.array([4.0, 1.0, 2.0])])
    assert beta_norm(x, [0.3, 0.7]) == pytest.approx(1.0, abs=1e-15)
    assert beta_norm([np.zeros(2), np.zeros(3)], [0.5, 0.5]) == 0.0
    assert beta_norm([np.array([0.0, 2.0]), np.array([1.0, 3.0])], [0.5, 0.5]) == 2.5


def _full_support(*sizes):
    return SupportSet(tuple(np.ones(n, dtype=bool) for n in sizes))


def test_hilbert_examples():
    sup = _full_support(2, 2)
    beta = [0.5, 0.5]
    x = [np.array([1.0, 2.0]), np.array([1.0, 1.0])]
    y = [np.array([2.0, 2.0]), np.array([1.0, 1.0])]
    assert hilbert_distance(x, x, beta, sup) == 0.0
    assert hilbert_distance(x, [3 * x[0], 0.1 * x[1]], beta, sup) == pytest.approx(0, abs=1e-15)
    assert hilbert_distance(x, y, beta, sup) == pytest.approx(0.5 * np.log(2), rel=1e-15)


def test_hilbert_nonconforming():
    sup = SupportSet((np.array([True, False]), np.array([True, True])))
    ok = [np.array([1.0, 0.0]), np.array([1.0, 1.0])]
    bad = [np.array([1.0, 0.5]), np.array([1.0, 1.0])]
    zero_active = [np.array([0.0, 0.0]), np.array([1.0, 1.0])]
    assert hilbert_distance(ok, ok, [0.5, 0.5], sup) == 0.0
    with pytest.raises(NonconformingError):
        hilbert_distance(ok, bad, [0.5, 0.5], sup)
    with pytest.raises(NonconformingError):
        hilbert_distance(zero_active, ok, [0.5, 0.5], sup)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_hilbert_symmetry_and_triangle(seed):
    rng = np.random.default_rng(seed)
    t = random_tensor(rng, (5, 5, 3, 3, 2), 12)
    beta = make_config(np.full(5, 0.2)).beta
    sup = t.support()
    x, y, z = (_conforming(rng, t) for _ in range(3))
    dxy = hilbert_distance(x, y, beta, sup)
    assert dxy == pytest.approx(hilbert_distance(y, x, beta, sup), abs=1e-12)
    assert dxy <= hilbert_distance(x, z, beta, sup) + hilbert_distance(z, y, beta, sup) + 1e-12
    assert dxy >= 0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_contraction_in_hilbert_metric(seed):
    rng = np.random.default_rng(seed)
    t = random_tensor(rng, (6, 6, 3, 3, 2), 25)
    while True:
        alpha = rng.uniform(0.02, 0.6, 5)
        cfg = make_config(alpha)
        if cfg.feasible:
            break
    sup = t.support()
    x, y = _conforming(rng, t, 1e-3), _conforming(rng, t, 1e-3)
    gx, gy = normalize(apply_map(t, cfg, x)), normalize(apply_map(t, cfg, y))
    before = hilbert_distance(x, y, cfg.beta, sup)
    after = hilbert_distance(gx, gy, cfg.beta, sup)
    assert after <= cfg.rho * before + 1e-10


def test_homogeneity_multilinear_and_powered(rng):
    t = random_tensor(rng, (5, 4, 3, 3, 2), 30)
    alpha = np.array([0.3, 0.1, 0.2, 0.15, 0.05])
    x = [rng.uniform(0.1, 1.0, n) for n in t.shape]
    mu = rng.uniform(0.2, 5.0, 5)
    mx = [m * v for m, v in zip(mu, x)]
    fx, fmx = apply_map(t, alpha, x), apply_map(t, alpha, mx)
    for s in range(5):
        factor = np.prod(np.delete(mu, s))
        np.testing.assert_allclose(contract(t, s, mx), factor * contract(t, s, x), rtol=1e-12)
        np.testing.assert_allclose(fmx[s], factor ** alpha[s] * fx[s], rtol=1e-12)
