import numpy as np
import pytest
from scipy.special import factorial

import symplecta as sp
from symplecta.errors import DomainError, NotQuantumPairError

from conftest import rand_spd


def test_blob_generator_and_volume_identity():
    for seed in range(12):
        n = 1 + seed % 3
        hbar = (0.5, 1.0, 2.0)[seed % 3]
        S = sp.random_symplectic(seed, n)
        blob = sp.blob_from_symplectic(S, hbar=hbar)
        assert sp.is_symplectic(blob.G, tol=1e-8)
        assert np.all(np.linalg.eigvalsh(blob.G) > 0)
        expect = (np.pi * hbar) ** n / factorial(n)
        np.testing.assert_allclose(blob.volume(), expect, rtol=1e-9)
        np.testing.assert_allclose(sp.volume(blob.as_ellipsoid()), expect,
                                   rtol=1e-9)


def test_blob_from_symplectic_rejects_non_symplectic():
    with pytest.raises(Exception):
        sp.blob_from_symplectic(np.diag([2.0, 1.0]))


def test_blob_normal_form_recovers_construction():
    rng = np.random.default_rng(51)
    for seed in range(10):
        n = 1 + seed % 3
        L0 = rand_spd(rng, n)
        P0 = 0.5 * (lambda A: A + A.T)(rng.standard_normal((n, n)))
        blob = sp.blob_from_symplectic(sp.shear(P0) @ sp.scaling(L0))
        P, L = sp.blob_normal_form(blob)
        np.testing.assert_allclose(P, P0, atol=1e-9)
        np.testing.assert_allclose(L, L0, atol=1e-9)
        # the rotation factor never changes the blob itself
        R = sp.random_symplectic_rotation(seed, n)
        blob2 = sp.blob_from_symplectic(sp.shear(P0) @ sp.scaling(L0) @ R)
        np.testing.assert_allclose(blob2.G, blob.G, atol=1e-9)


def test_projections_match_inverse_block_oracle():
    for seed in range(12):
        n = 1 + seed % 3
        blob = sp.blob_from_symplectic(sp.random_symplectic(seed, n))
        proj = sp.project_blob(blob)
        Ginv = np.linalg.inv(blob.G)
        np.testing.assert_allclose(np.linalg.inv(proj.X.Q), Ginv[:n, :n],
                                   atol=1e-8)
        np.testing.assert_allclose(np.linalg.inv(proj.P.Q), Ginv[n:, n:],
                                   atol=1e-8)
        assert proj.X.space == "x" and proj.P.space == "p"


def test_projections_form_quantum_pair():
    for seed in range(12):
        n = 1 + seed % 3
        blob = sp.blob_from_symplectic(sp.random_symplectic(seed, n))
        proj = sp.project_blob(blob)
        report = sp.quantum_pair_check(proj.X, proj.P)
        assert report.holds
        assert report.lambda_max >= 1.0 - 1e-9


def test_projection_saturation_iff_scaling_blob():
    rng = np.random.default_rng(52)
    for seed in range(8):
        n = 1 + seed % 3
        L = rand_spd(rng, n)
        pure = sp.blob_from_symplectic(sp.scaling(L))
        assert sp.project_blob(pure).saturated
        assert sp.quantum_pair_check(sp.project_blob(pure).X,
                                     sp.project_blob(pure).P).saturated
        P = 0.5 * (lambda A: A + A.T)(rng.standard_normal((n, n)))
        P += np.sign(P[0, 0] or 1.0) * 0.3 * np.eye(n)
        mixed = sp.blob_from_symplectic(sp.shear(P) @ sp.scaling(L))
        assert not sp.project_blob(mixed).saturated


def test_john_of_ellipsoid_pair_is_direct_sum():
    rng = np.random.default_rng(53)
    A = rand_spd(rng, 2)
    B = rand_spd(rng, 2)
    res = sp.john_of_pair(A, B, hbar=0.5)
    np.testing.assert_allclose(res.ellipsoid.Q[:2, :2], A, atol=1e-12)
    np.testing.assert_allclose(res.ellipsoid.Q[2:, 2:], B, atol=1e-12)
    np.testing.assert_allclose(res.ellipsoid.Q[:2, 2:], 0, atol=1e-12)
    assert res.ellipsoid.space == "z"
    # the direct sum is a blob exactly when B = A^{-1}
    assert not res.is_blob
    saturated = sp.john_of_pair(A, np.linalg.inv(A))
    assert saturated.is_blob
    assert saturated.symplectic_residual < 1e-10


def test_john_of_box_product_matches_closed_form():
    widths_x = [0.8, 1.3]
    widths_p = [2.0, 0.9]
    for hbar in (0.5, 1.0):
        X = sp.box(widths_x, hbar=hbar, space="x")
        P = sp.box(widths_p, hbar=hbar, space="p")
        E = sp.john_of_polytope_product(X, P)
        semi = np.array(widths_x + widths_p)
        np.testing.assert_allclose(E.Q, np.diag(hbar / semi ** 2), atol=1e-6)
        assert sp.contains(_product_box(X, P), E, tol=1e-6).ok


def _product_box(X, P):
    widths = [v for v in np.max(X.vertices, axis=0)]
    widths += [v for v in np.max(P.vertices, axis=0)]
    return sp.box(widths, hbar=X.hbar, space="z")


def test_john_of_hexagon_product_beats_direct_sum_candidate():
    theta = np.pi * np.arange(6) / 3.0
    hexagon = np.column_stack([np.cos(theta), np.sin(theta)])
    X = sp.polytope_from_vertices(hexagon, space="x")
    P = sp.polytope_from_vertices(1.5 * hexagon, space="p")
    E = sp.john_of_polytope_product(X, P)
    # feasible direct-sum candidate: inscribed circles of both hexagons
    r1, r2 = np.sqrt(3) / 2, 1.5 * np.sqrt(3) / 2
    candidate = np.diag([1 / r1 ** 2, 1 / r1 ** 2, 1 / r2 ** 2, 1 / r2 ** 2])
    vol_cand = sp.volume(sp.ellipsoid(candidate, space="z"))
    assert sp.volume(E) >= vol_cand * (1 - 1e-6)


def test_john_of_polytope_product_validates_input():
    X = sp.box([1.0], space="x")
    with pytest.raises(DomainError):
        sp.john_of_polytope_product(X, sp.ellipsoid(np.eye(1), space="p"))
    with pytest.raises(DomainError):
        sp.john_of_polytope_product(X, sp.box([1.0], space="x"))


def test_rescaled_blob_family_containment():
    A = np.array([[1.0]])
    B = np.array([[0.25]])
    john = sp.john_of_pair(A, B).ellipsoid
    for lam in (1.0, 1.5, 2.0):
        res = sp.rescaled_blob_family(A, B, lam)
        assert res.contained.ok
        assert res.contained.margin >= -1e-9
        assert sp.contains(john, res.blob.as_ellipsoid(), tol=1e-9).ok
    edge = sp.rescaled_blob_family(A, B, 2.0)
    assert abs(edge.contained.margin) < 1e-9


def test_rescaled_blob_family_ab_member():
    rng = np.random.default_rng(54)
    for trial in range(6):
        n = 1 + trial % 2
        A = rand_spd(rng, n)
        B = np.linalg.inv(A) * (1.0 + rng.uniform(0.2, 1.0))
        B = 0.5 * (B + B.T)
        if not sp.quantum_pair_check(sp.ellipsoid(A, space="x"),
                                     sp.ellipsoid(B, space="p")).holds:
            continue
        res = sp.rescaled_blob_family(A, B, "AB")
        assert res.contained.ok
        assert res.contained.margin >= -1e-9


def test_rescaled_blob_family_domain_errors():
    A = np.array([[1.0]])
    with pytest.raises(NotQuantumPairError) as info:
        sp.rescaled_blob_family(A, np.array([[4.0]]), 1.0)
    assert info.value.payload["lambda_max"] < 1.0
    with pytest.raises(DomainError) as info2:
        sp.rescaled_blob_family(A, np.array([[0.25]]), 2.5)
    assert info2.value.payload["lambda_max"] == pytest.approx(2.0)
    with pytest.raises(DomainError):
        sp.rescaled_blob_family(A, np.array([[0.25]]), 0.5)


def test_gamma_blob_to_gaussian_shear_example():
    blob = sp.blob_from_symplectic(sp.shear(np.array([[1.0]])))
    np.testing.assert_allclose(blob.G, [[2.0, -1.0], [-1.0, 1.0]], atol=1e-12)
    state = sp.blob_to_gaussian(blob)
    np.testing.assert_allclose(state.W, [[1.0]], atol=1e-12)
    np.testing.assert_allclose(state.Y, [[-1.0]], atol=1e-12)


def test_gamma_wigner_matrix_example():
    state = sp.GaussianState(W=np.array([[1.0]]), Y=np.array([[1.0]]),
                             hbar=1.0)
    np.testing.assert_allclose(sp.wigner_matrix(state),
                               [[2.0, 1.0], [1.0, 1.0]], atol=1e-12)


def test_gamma_round_trips():
    rng = np.random.default_rng(55)
    for seed in range(12):
        n = 1 + seed % 3
        hbar = (0.5, 1.0, 2.0)[seed % 3]
        blob = sp.blob_from_symplectic(sp.random_symplectic(seed, n),
                                       hbar=hbar)
        back = sp.gaussian_to_blob(sp.blob_to_gaussian(blob))
        np.testing.assert_allclose(back.G, blob.G, atol=1e-9)
        W = rand_spd(rng, n)
        Y = 0.5 * (lambda A: A + A.T)(rng.standard_normal((n, n)))
        state = sp.GaussianState(W=W, Y=Y, hbar=hbar)
        again = sp.blob_to_gaussian(sp.gaussian_to_blob(state))
        np.testing.assert_allclose(again.W, W, atol=1e-9)
        np.testing.assert_allclose(again.Y, Y, atol=1e-9)
