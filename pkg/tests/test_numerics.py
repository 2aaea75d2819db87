import numpy as np
import pytest

from l1pca.numerics import (
    ZeroRankError,
    compact_svd,
    eigen_basis,
    nuclear_norm,
    null_space_vector,
    procrustes,
    sign,
)


def test_sign_convention():
    assert sign(3.7) == 1.0
    assert sign(-0.2) == -1.0
    assert sign(0.0) == 1.0
    assert np.array_equal(sign(np.array([1.5, -0.0, 0.0, -2.0])), [1, 1, 1, -1])


def test_compact_svd_diagonal():
    f = compact_svd(np.diag([3.0, 4.0]))
    assert f.rank == 2
    assert np.allclose(f.s, [4.0, 3.0])


def test_compact_svd_rank_one():
    f = compact_svd(np.array([[1.0, -1.0], [2.0, -2.0]]))
    assert f.rank == 1
    assert np.allclose(f.s, [np.sqrt(10.0)])


def test_compact_svd_reconstructs():
    m = np.random.default_rng(0).standard_normal((5, 8))
    f = compact_svd(m)
    err = np.linalg.norm((f.u * f.s) @ f.v.T - m) / np.linalg.norm(m)
    assert err <= 1e-8


def test_compact_svd_zero_matrix():
    with pytest.raises(ZeroRankError):
        compact_svd(np.zeros((3, 4)))


def test_compact_svd_rank_scale_invariant():
    rng = np.random.default_rng(1)
    m = rng.standard_normal((4, 3)) @ rng.standard_normal((3, 6))
    for scale in (1e-6, 1.0, 1e6):
        assert compact_svd(scale * m).rank == 3


def test_eigen_basis_orthogonal_rows():
    eb = eigen_basis(np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]]))
    assert eb.rank == 2
    norms = np.sort(np.linalg.norm(eb.q, axis=0))
    assert np.allclose(norms, [1.0, 2.0])


def test_eigen_basis_rank_one():
    x = np.outer([1.0, 2.0], [3.0, -1.0, 2.0])
    eb = eigen_basis(x)
    assert eb.q.shape == (3, 1)
    lam = compact_svd(x).s[0] ** 2
    assert np.isclose(eb.q[:, 0] @ eb.q[:, 0], lam)


def test_eigen_basis_residual():
    x = np.random.default_rng(2).standard_normal((3, 6))
    eb = eigen_basis(x)
    gram = x.T @ x
    err = np.linalg.norm(eb.q @ eb.q.T - gram, 2) / np.linalg.norm(gram, 2)
    assert err <= 1e-8


def test_null_space_vector_axis():
    c = null_space_vector(np.array([[1.0, 0.0]]))
    assert np.allclose(np.abs(c), [0.0, 1.0])


def test_null_space_vector_canonical_rows():
    c = null_space_vector(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    assert np.allclose(np.abs(c), [0.0, 0.0, 1.0])


def test_null_space_vector_deficient():
    assert null_space_vector(np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])) is None


@pytest.mark.parametrize("seed", range(20))
def test_null_space_vector_properties(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 7))
    a = rng.standard_normal((m - 1, m))
    c = null_space_vector(a)
    assert np.isclose(np.linalg.norm(c), 1.0)
    assert np.linalg.norm(a @ c) <= 1e-8 * np.linalg.norm(a, 2)


def test_nuclear_norm_values():
    assert nuclear_norm(np.diag([3.0, 4.0])) == pytest.approx(7.0)
    assert nuclear_norm(np.zeros((2, 3))) == 0.0
    b = np.array([[1.0, 1.0], [1.0, -1.0]])
    assert nuclear_norm(b) == pytest.approx(2.0 * np.sqrt(2.0))


def test_procrustes_identity_and_rotation():
    assert np.allclose(procrustes(np.eye(2)), np.eye(2))
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    r = procrustes(rot)
    assert np.allclose(r, rot)
    assert np.trace(r.T @ rot) == pytest.approx(2.0)


@pytest.mark.parametrize("seed", range(20))
def test_procrustes_attains_nuclear_norm(seed):
    a = np.random.default_rng(seed).standard_normal((5, 2))
    r = procrustes(a)
    assert np.allclose(r.T @ r, np.eye(2), atol=1e-10)
    assert np.trace(r.T @ a) == pytest.approx(nuclear_norm(a), rel=1e-9)


def test_procrustes_rank_deficient_pads():
    u = np.array([1.0, 2.0, -1.0])
    a = np.stack([u, u], axis=1)  # rank 1, K = 2
    r = procrustes(a)
    assert np.allclose(r.T @ r, np.eye(2), atol=1e-10)
    assert np.trace(r.T @ a) == pytest.approx(nuclear_norm(a), rel=1e-9)
