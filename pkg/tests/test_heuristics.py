import numpy as np
import pytest

from l1pca import (
    fixed_point_multi,
    fixed_point_single,
    greedy_deflation,
    metric_l1,
    solve_multi_poly,
    solve_poly,
)


def ascent_ok(trace, scale):
    return bool(np.all(np.diff(trace.metrics) >= -1e-12 * scale))


def test_fixed_point_hand_iteration():
    # X^T X [1,-1] = [2,0] -> sign gives [1,1] (sign(0)=+1); [1,1] is stable.
    x = np.array([[2.0, 1.0], [0.0, 1.0]])
    res = fixed_point_single(x, b0=np.array([1.0, -1.0]))
    assert np.array_equal(res.signs, [1, 1])
    assert res.metric == pytest.approx(np.sqrt(10.0))
    assert res.trace.converged
    assert res.trace.iterations == 2
    assert not res.exact


def test_fixed_point_at_fixed_start():
    x = np.array([[2.0, 1.0], [0.0, 1.0]])
    res = fixed_point_single(x, b0=np.array([1.0, 1.0]))
    assert res.trace.iterations == 1
    assert res.trace.converged


def test_fixed_point_default_start_is_deterministic():
    x = np.random.default_rng(0).standard_normal((3, 8))
    a, b = fixed_point_single(x), fixed_point_single(x)
    assert np.array_equal(a.signs, b.signs)
    assert a.metric == b.metric


def test_fixed_point_rejects_bad_start():
    with pytest.raises(ValueError):
        fixed_point_single(np.eye(2), b0=np.array([1.0, 0.5]))


@pytest.mark.parametrize("seed", range(60))
def test_fixed_point_ascends_terminates_and_is_bounded(seed):
    rng = np.random.default_rng((1, seed))
    x = rng.standard_normal((3, 10))
    res = fixed_point_single(x)
    assert res.trace.converged
    assert ascent_ok(res.trace, res.metric)
    assert res.metric <= solve_poly(x).metric * (1 + 1e-9)


def test_fixed_point_multi_k1_matches_single_trajectory():
    rng = np.random.default_rng(2)
    x = rng.standard_normal((3, 7))
    b0 = np.where(rng.random(7) < 0.5, -1.0, 1.0)
    single = fixed_point_single(x, b0=b0)
    r0 = (x @ b0 / np.linalg.norm(x @ b0))[:, None]
    multi = fixed_point_multi(x, 1, r0=r0)
    assert multi.metric == pytest.approx(single.metric, rel=1e-9)
    assert np.array_equal(multi.signs.ravel(), single.signs)


def test_fixed_point_multi_identity_start():
    # sign(0) = +1 maps R0 = I to the all-ones sign matrix, a fixed point
    # with metric 2 (the global optimum 2*sqrt(2) is not reached from here).
    res = fixed_point_multi(np.eye(2), 2, r0=np.eye(2))
    assert res.trace.converged
    assert res.metric == pytest.approx(2.0)
    assert res.metric <= 2.0 * np.sqrt(2.0)


@pytest.mark.parametrize("seed", range(40))
def test_fixed_point_multi_bounded_by_optimum(seed):
    rng = np.random.default_rng((3, seed))
    x = rng.standard_normal((4, 8))
    res = fixed_point_multi(x, 2)
    assert res.trace.converged
    assert res.metric <= solve_multi_poly(x, 2).metric * (1 + 1e-9)
    assert metric_l1(x, res.basis) == pytest.approx(res.metric, rel=1e-9)


def test_fixed_point_restarts_only_improve():
    rng = np.random.default_rng(7)
    for _ in range(10):
        x = rng.standard_normal((3, 9))
        base = fixed_point_single(x)
        multi = fixed_point_single(x, restarts=8, seed=3)
        again = fixed_point_single(x, restarts=8, seed=3)
        assert multi.metric >= base.metric
        assert multi.metric == again.metric  # seeded restarts reproduce


def test_fixed_point_cap_reports_nonconvergence():
    x = np.random.default_rng(8).standard_normal((4, 12))
    res = fixed_point_single(x, b0=np.where(
        np.random.default_rng(9).random(12) < 0.5, -1.0, 1.0), max_iter=1)
    assert res.trace.iterations == 1
    # a single allowed iteration can only converge if the start was fixed
    if not res.trace.converged:
        assert len(res.trace.metrics) == 2


def test_greedy_k1_equals_fixed_point():
    x = np.random.default_rng(4).standard_normal((3, 9))
    a = greedy_deflation(x, 1)
    b = fixed_point_single(x)
    assert a.metric == pytest.approx(b.metric, rel=1e-9)


def test_greedy_orthonormal_basis():
    rng = np.random.default_rng(5)
    x = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 9))
    res = greedy_deflation(x, 2)
    assert np.allclose(res.basis.T @ res.basis, np.eye(2), atol=1e-10)
    assert not res.exact


@pytest.mark.parametrize("seed", range(40))
def test_greedy_bounded_by_joint_optimum(seed):
    rng = np.random.default_rng((6, seed))
    x = rng.standard_normal((4, 8))
    res = greedy_deflation(x, 2)
    assert res.metric <= solve_multi_poly(x, 2).metric * (1 + 1e-9)


def test_greedy_rejects_k_above_rank():
    x = np.outer([1.0, 2.0], [1.0, -1.0, 3.0])
    with pytest.raises(Exception):
        greedy_deflation(x, 2)
