import numpy as np
import pytest

from l1pca import (
    BudgetError,
    RankError,
    eigen_basis,
    metric_l1,
    solve,
    solve_exhaustive,
    solve_poly,
    solve_rank1,
    solve_rank1_approx,
    solve_rank2,
)

SQ2 = np.sqrt(2.0)


def random_rank(rng, d, n, dim=None):
    return rng.standard_normal((dim or d, d)) @ rng.standard_normal((d, n))


def test_metric_l1_hand_values():
    x = np.eye(2)
    assert metric_l1(x, np.array([1.0, 0.0])) == pytest.approx(1.0)
    assert metric_l1(x, np.array([1.0, 1.0]) / SQ2) == pytest.approx(SQ2)


def test_metric_l1_equals_entrywise_sum():
    rng = np.random.default_rng(0)
    x, r = rng.standard_normal((3, 7)), rng.standard_normal((3, 2))
    brute = sum(abs(x[:, j] @ r[:, k]) for j in range(7) for k in range(2))
    assert metric_l1(x, r) == pytest.approx(brute)


def test_exhaustive_hand_case():
    res = solve_exhaustive(np.array([[2.0, 1.0], [0.0, 1.0]]))
    assert np.array_equal(res.signs, [1, 1])
    assert res.metric == pytest.approx(np.sqrt(10.0))
    assert np.allclose(res.basis[:, 0], np.array([3.0, 1.0]) / np.sqrt(10.0))
    assert res.candidates_evaluated == 2


def test_exhaustive_tie_takes_first_in_order():
    res = solve_exhaustive(np.eye(2))
    assert res.metric == pytest.approx(SQ2)
    assert np.array_equal(res.signs, [1, 1])  # [1, 1] enumerates before [1, -1]
    assert res.ties == 1


def test_exhaustive_three_samples():
    res = solve_exhaustive(np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]))
    assert np.array_equal(res.signs, [1, 1, 1])
    assert res.metric == pytest.approx(2.0 * SQ2)


def test_exhaustive_budget_refusal():
    x = np.random.default_rng(1).standard_normal((3, 30))
    with pytest.raises(BudgetError, match="solve_poly"):
        solve_exhaustive(x, budget=1 << 20)


def test_rank1_collinear_columns():
    res = solve_rank1(np.array([[1.0, -1.0], [2.0, -2.0]]))
    assert res.metric == pytest.approx(2.0 * np.sqrt(5.0))
    assert np.allclose(np.abs(res.basis[:, 0]), np.array([1.0, 2.0]) / np.sqrt(5.0))


def test_rank1_scalar():
    res = solve_rank1(np.array([[3.0]]))
    assert res.metric == pytest.approx(3.0)
    assert np.allclose(res.basis, [[1.0]])


@pytest.mark.parametrize("seed", range(10))
def test_rank1_matches_exhaustive(seed):
    rng = np.random.default_rng((2, seed))
    x = np.outer(rng.standard_normal(4), rng.standard_normal(9))
    assert solve_rank1(x).metric == pytest.approx(
        solve_exhaustive(x).metric, rel=1e-9
    )


def test_rank1_rejects_higher_rank():
    with pytest.raises(RankError):
        solve_rank1(np.eye(2))


def test_rank1_approx_is_exact_on_rank1():
    x = np.outer([1.0, -2.0], [3.0, 1.0, -1.0])
    a, b = solve_rank1_approx(x), solve_rank1(x)
    assert a.metric == pytest.approx(b.metric, rel=1e-12)
    assert a.exact


def test_rank1_approx_bounded_by_optimum():
    x = np.array([[2.0, 1.0], [0.0, 1.0]])
    res = solve_rank1_approx(x)
    assert not res.exact
    assert res.metric <= np.sqrt(10.0) + 1e-12


@pytest.mark.parametrize("seed", range(25))
def test_rank1_approx_ratio_never_exceeds_one(seed):
    x = np.random.default_rng((3, seed)).standard_normal((3, 8))
    ratio = solve_rank1_approx(x).metric / solve_exhaustive(x).metric
    assert 0.0 < ratio <= 1.0 + 1e-12


def test_rank2_hand_case():
    res = solve_rank2(np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]))
    assert res.metric == pytest.approx(2.0 * SQ2)
    assert np.array_equal(res.signs, [1, 1, 1])


@pytest.mark.parametrize("seed", range(60))
def test_rank2_matches_exhaustive(seed):
    rng = np.random.default_rng((4, seed))
    x = random_rank(rng, 2, int(rng.integers(3, 17)), dim=int(rng.integers(2, 6)))
    assert solve_rank2(x).metric == pytest.approx(
        solve_exhaustive(x).metric, rel=1e-9
    )


def test_rank2_candidate_count_is_n():
    x = random_rank(np.random.default_rng(5), 2, 11)
    assert solve_rank2(x).candidates_evaluated == 11


def test_rank2_rejects_other_ranks():
    with pytest.raises(RankError):
        solve_rank2(np.eye(3))


def test_poly_agrees_with_rank1_on_rank1_data():
    x = np.outer([2.0, -1.0], [1.0, 4.0, -2.0])
    assert solve_poly(x).metric == pytest.approx(solve_rank1(x).metric, rel=1e-12)


def test_poly_candidate_count_generic_3_8():
    x = np.random.default_rng(6).standard_normal((3, 8))
    res = solve_poly(x)
    assert res.candidates_evaluated == 29


@pytest.mark.parametrize("seed", range(60))
def test_poly_matches_exhaustive(seed):
    rng = np.random.default_rng((7, seed))
    x = rng.standard_normal((int(rng.integers(2, 6)), int(rng.integers(4, 13))))
    assert solve_poly(x).metric == pytest.approx(
        solve_exhaustive(x).metric, rel=1e-9
    )


def test_l1_metric_equals_sign_objective_on_solves():
    for seed in range(20):
        rng = np.random.default_rng((8, seed))
        x = rng.standard_normal((4, 9))
        res = solve(x)
        assert metric_l1(x, res.basis) == pytest.approx(res.metric, rel=1e-9)


def test_eval_through_eigenbasis_matches_direct():
    # With N < D the solver scores through Q^T b; the two routes agree.
    rng = np.random.default_rng(9)
    x = rng.standard_normal((8, 4))
    q = eigen_basis(x).q
    for _ in range(20):
        b = np.where(rng.random(4) < 0.5, -1.0, 1.0)
        assert np.linalg.norm(q.T @ b) == pytest.approx(
            np.linalg.norm(x @ b), rel=1e-9
        )


def test_dispatch_rank2_for_wide_rank2_data():
    x = random_rank(np.random.default_rng(10), 2, 50)
    assert solve(x).method == "rank2"


def test_dispatch_exhaustive_when_samples_scarce():
    x = np.random.default_rng(11).standard_normal((5, 3))
    res = solve(x)
    assert res.method == "exhaustive"
    assert res.candidates_evaluated == 4


def test_dispatch_poly_for_moderate_rank():
    x = random_rank(np.random.default_rng(12), 4, 10)
    assert solve(x).method == "poly"


def test_dispatch_rank1():
    x = np.outer([1.0, 1.0], np.arange(1.0, 6.0))
    assert solve(x).method == "rank1"


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        solve(np.eye(2), strategy="newton")


def test_positive_scale_equivariance():
    x = np.random.default_rng(13).standard_normal((3, 7))
    a, b = solve(x), solve(2.5 * x)
    assert np.array_equal(a.signs, b.signs)
    assert np.allclose(a.basis, b.basis)
    assert b.metric == pytest.approx(2.5 * a.metric, rel=1e-12)


def test_column_permutation_equivariance():
    rng = np.random.default_rng(14)
    x = rng.standard_normal((3, 8))
    perm = rng.permutation(8)
    a, b = solve(x), solve(x[:, perm])
    assert b.metric == pytest.approx(a.metric, rel=1e-12)
    assert np.allclose(np.abs(a.basis), np.abs(b.basis), atol=1e-9)
    from l1pca.candidates import canonicalize

    assert np.array_equal(canonicalize(a.signs[perm]), b.signs)


def test_sign_class_invariance_of_metric():
    rng = np.random.default_rng(15)
    x = rng.standard_normal((3, 6))
    for _ in range(10):
        b = np.where(rng.random(6) < 0.5, -1.0, 1.0)
        assert np.linalg.norm(x @ b) == pytest.approx(np.linalg.norm(x @ -b))


@pytest.mark.parametrize("seed", range(25))
def test_poly_bounded_even_on_degenerate_data(seed):
    # Exact sign ties void the candidate set's completeness guarantee;
    # the returned metric is still attained, hence never above the optimum,
    # and the exhaustive route stays exact on the same input.
    rng = np.random.default_rng((17, seed))
    x = rng.integers(-2, 3, size=(3, int(rng.integers(4, 10)))).astype(float)
    if not x.any():
        return
    opt = solve_exhaustive(x).metric
    assert solve_poly(x).metric <= opt * (1 + 1e-12)
    assert metric_l1(x, solve_poly(x).basis) <= opt * (1 + 1e-9)


@pytest.mark.parametrize("seed", range(25))
def test_rank2_exact_even_on_degenerate_data(seed):
    # The angle walk visits every cell one flip at a time, so exact ties
    # (duplicate flip angles) only add harmless intermediate patterns.
    rng = np.random.default_rng((18, seed))
    n = int(rng.integers(3, 12))
    x = rng.integers(-2, 3, size=(2, 2)).astype(float) @ rng.integers(
        -2, 3, size=(2, n)
    ).astype(float)
    try:
        res = solve_rank2(x)
    except RankError:
        return
    assert res.metric == pytest.approx(solve_exhaustive(x).metric, rel=1e-9)


def test_exhaustive_workers_invariant():
    x = np.random.default_rng(16).standard_normal((4, 12))
    a = solve_exhaustive(x, workers=1)
    b = solve_exhaustive(x, workers=2)
    assert a.metric == b.metric
    assert np.array_equal(a.signs, b.signs)
    assert a.ties == b.ties
