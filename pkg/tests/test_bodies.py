import numpy as np
import pytest
from scipy.spatial import ConvexHull
from scipy.special import gamma

import symplecta as sp
from symplecta.bodies import _lambda_max_bisect
from symplecta.errors import (DegenerateBodyError, DomainError,
                              NotPositiveDefiniteError)

from conftest import gauge_by_linprog, rand_spd, rand_symmetric_points


def test_body_constructors_validate_inputs():
    with pytest.raises(NotPositiveDefiniteError):
        sp.ellipsoid(np.diag([1.0, -1.0]))
    with pytest.raises(Exception):
        sp.ellipsoid(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        sp.ellipsoid(np.eye(2), hbar=-1.0)
    with pytest.raises(DomainError):
        sp.ellipsoid(np.eye(2), space="q")
    with pytest.raises(DegenerateBodyError):
        sp.polytope_from_vertices(np.array([[0.0, 1.0], [1.0, 0.0],
                                            [1.0, 1.0]]))


def test_support_function_matches_boundary_sampling():
    rng = np.random.default_rng(3)
    for trial in range(10):
        n = 2 + trial % 3
        Q = rand_spd(rng, n)
        E = sp.ellipsoid(Q, hbar=1.5)
        W = np.linalg.cholesky(np.linalg.inv(Q))
        boundary = np.sqrt(1.5) * (W @ _unit_sphere(rng, n, 400).T).T
        for _ in range(5):
            u = rng.standard_normal(n)
            h = sp.support_function(E, u)
            assert h >= np.max(boundary @ u) - 1e-9
            assert h <= np.max(boundary @ u) + 0.1 * np.linalg.norm(u)


def _unit_sphere(rng, n, m):
    pts = rng.standard_normal((m, n))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def test_polytope_support_is_vertex_maximum():
    rng = np.random.default_rng(4)
    K = sp.polytope_from_vertices(rand_symmetric_points(rng, 7, 2))
    for _ in range(10):
        u = rng.standard_normal(2)
        assert np.isclose(sp.support_function(K, u), np.max(K.vertices @ u))


def test_polytope_volume_matches_qhull():
    rng = np.random.default_rng(11)
    for trial in range(12):
        n = 2 + trial % 3
        pts = rand_symmetric_points(rng, 4 + n, n)
        K = sp.polytope_from_vertices(pts)
        hull = ConvexHull(pts)
        np.testing.assert_allclose(sp.volume(K), hull.volume, rtol=1e-10)


def test_ellipsoid_volume_against_polygon_limit():
    rng = np.random.default_rng(12)
    Q = rand_spd(rng, 2)
    E = sp.ellipsoid(Q, hbar=1.3)
    theta = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    circle = np.column_stack([np.cos(theta), np.sin(theta)])
    W = np.linalg.cholesky(np.linalg.inv(Q))
    boundary = np.sqrt(1.3) * circle @ W.T
    hull = ConvexHull(boundary)
    np.testing.assert_allclose(sp.volume(E), hull.volume, rtol=1e-5)


def test_ball_volume_closed_form():
    for n in (1, 2, 3, 4):
        for hbar in (0.5, 1.0, 2.0):
            B = sp.ball(n, hbar=hbar)
            expect = np.pi ** (n / 2) * hbar ** (n / 2) / gamma(n / 2 + 1)
            np.testing.assert_allclose(sp.volume(B), expect, rtol=1e-12)


def test_linear_image_scales_volume_by_determinant():
    rng = np.random.default_rng(13)
    K = sp.polytope_from_vertices(rand_symmetric_points(rng, 6, 2))
    L = rng.standard_normal((2, 2)) + 2 * np.eye(2)
    np.testing.assert_allclose(sp.volume(sp.linear_image(K, L)),
                               abs(np.linalg.det(L)) * sp.volume(K),
                               rtol=1e-10)
    E = sp.ellipsoid(rand_spd(rng, 3))
    L3 = rng.standard_normal((3, 3)) + 2 * np.eye(3)
    np.testing.assert_allclose(sp.volume(sp.linear_image(E, L3)),
                               abs(np.linalg.det(L3)) * sp.volume(E),
                               rtol=1e-10)


def test_polar_dual_support_matches_gauge_oracle():
    rng = np.random.default_rng(21)
    for hbar in (0.5, 1.0, 2.0):
        K = sp.polytope_from_vertices(rand_symmetric_points(rng, 6, 2),
                                      hbar=hbar)
        dual = sp.polar_dual(K)
        assert dual.space == "p"
        for _ in range(8):
            u = rng.standard_normal(2)
            expect = hbar * gauge_by_linprog(K.vertices, u)
            np.testing.assert_allclose(sp.support_function(dual, u), expect,
                                       rtol=1e-8)


def test_polar_dual_of_ellipsoid_support_identity():
    rng = np.random.default_rng(22)
    for hbar in (0.5, 1.0, 2.0):
        Q = rand_spd(rng, 3)
        dual = sp.polar_dual(sp.ellipsoid(Q, hbar=hbar))
        for _ in range(8):
            u = rng.standard_normal(3)
            np.testing.assert_allclose(sp.support_function(dual, u),
                                       np.sqrt(hbar * u @ Q @ u), rtol=1e-10)


def test_biduality_is_exact():
    rng = np.random.default_rng(23)
    K = sp.polytope_from_vertices(rand_symmetric_points(rng, 6, 2), hbar=2.0)
    back = sp.polar_dual(sp.polar_dual(K))
    assert back.space == "x"
    got = sorted(map(tuple, np.round(back.vertices, 12)))
    want = sorted(map(tuple, np.round(K.vertices, 12)))
    np.testing.assert_allclose(got, want, atol=1e-12)
    Q = rand_spd(rng, 4)
    E = sp.ellipsoid(Q, hbar=0.5)
    np.testing.assert_allclose(sp.polar_dual(sp.polar_dual(E)).Q, Q,
                               atol=1e-12)


def test_ball_is_self_dual():
    for hbar in (0.5, 1.0, 2.0):
        B = sp.ball(2, hbar=hbar)
        D = sp.polar_dual(B)
        np.testing.assert_allclose(D.Q, B.Q, atol=1e-15)
        assert D.hbar == B.hbar


def test_duality_is_antimonotone():
    rng = np.random.default_rng(24)
    for trial in range(10):
        Q = rand_spd(rng, 2)
        X = sp.ellipsoid(Q)
        Y = sp.scale_body(X, 1.0 + rng.uniform(0.1, 1.0))
        assert sp.contains(Y, X)
        assert sp.contains(sp.polar_dual(X), sp.polar_dual(Y))


def test_duality_scaling_rule():
    rng = np.random.default_rng(25)
    K = sp.polytope_from_vertices(rand_symmetric_points(rng, 5, 2))
    lam = 1.7
    left = sp.polar_dual(sp.scale_body(K, lam))
    right = sp.scale_body(sp.polar_dual(K), 1.0 / lam)
    for _ in range(8):
        u = rng.standard_normal(2)
        np.testing.assert_allclose(sp.support_function(left, u),
                                   sp.support_function(right, u), rtol=1e-12)


def test_duality_linear_image_rule():
    rng = np.random.default_rng(26)
    Q = rand_spd(rng, 2)
    X = sp.ellipsoid(Q)
    L = rng.standard_normal((2, 2)) + 2 * np.eye(2)
    left = sp.polar_dual(sp.linear_image(X, L))
    right = sp.linear_image(sp.polar_dual(X), np.linalg.inv(L).T)
    np.testing.assert_allclose(left.Q, right.Q, atol=1e-12)


def test_polar_dual_rejects_phase_space_bodies():
    with pytest.raises(DomainError):
        sp.polar_dual(sp.ball(2, space="z"))


def test_contains_margins_and_witness():
    inner = sp.ellipsoid(np.diag([1.0, 4.0]))
    outer = sp.ellipsoid(np.diag([0.25, 1.0]))
    inc = sp.contains(outer, inner)
    assert inc.ok and inc.margin > 0
    rev = sp.contains(inner, outer)
    assert not rev.ok and rev.margin < 0
    assert rev.witness is not None
    w = np.asarray(rev.witness)
    # the boundary point of the candidate inner body along the witness
    # direction must fall outside the claimed outer body
    t = np.sqrt(outer.hbar / (w @ outer.Q @ w))
    assert t ** 2 * (w @ inner.Q @ w) > inner.hbar * (1 - 1e-9)


def test_contains_mixed_kinds():
    square = sp.box([1.0, 1.0])
    disc = sp.ellipsoid(np.eye(2))
    assert sp.contains(square, disc)
    assert not sp.contains(disc, square)
    small = sp.polytope_from_vertices(0.3 * square.vertices)
    assert sp.contains(disc, small)
    assert sp.contains(square, small)


def test_quantum_pair_interval_example():
    X = sp.interval(0.5, space="x")
    P = sp.interval(4.0, space="p")
    report = sp.quantum_pair_check(X, P)
    assert report.holds
    assert report.lambda_max == pytest.approx(2.0, abs=1e-12)
    assert not report.saturated
    tight = sp.quantum_pair_check(sp.interval(0.5, space="x"),
                                  sp.interval(2.0, space="p"))
    assert tight.holds and tight.saturated
    assert tight.lambda_max == pytest.approx(1.0, abs=1e-12)


def test_quantum_pair_failure_produces_witness():
    X = sp.interval(0.5, space="x")
    P = sp.interval(1.0, space="p")
    report = sp.quantum_pair_check(X, P)
    assert not report.holds
    assert report.lambda_max < 1.0
    assert report.witness is not None


def test_quantum_pair_lambda_against_bisection():
    rng = np.random.default_rng(31)
    for trial in range(12):
        n = 1 + trial % 3
        A = rand_spd(rng, n)
        B = rand_spd(rng, n)
        X = sp.ellipsoid(A, space="x")
        P = sp.ellipsoid(B, space="p")
        report = sp.quantum_pair_check(X, P)
        lam_b = _lambda_max_bisect(sp.polar_dual(X), P)
        np.testing.assert_allclose(report.lambda_max, lam_b, atol=1e-8)
        assert report.holds == (report.lambda_max >= 1.0 - 1e-9)


def test_quantum_pair_mixed_kinds_against_bisection():
    rng = np.random.default_rng(32)
    X_ell = sp.ellipsoid(rand_spd(rng, 2), space="x")
    P_box = sp.box([3.0, 2.5], space="p")
    X_box = sp.box([0.8, 1.2], space="x")
    P_ell = sp.ellipsoid(0.2 * rand_spd(rng, 2), space="p")
    for X, P in ((X_ell, P_box), (X_box, P_ell)):
        report = sp.quantum_pair_check(X, P)
        lam_b = _lambda_max_bisect(sp.polar_dual(X), P)
        np.testing.assert_allclose(report.lambda_max, lam_b, atol=1e-8)


def test_quantum_pair_validates_tags():
    with pytest.raises(DomainError):
        sp.quantum_pair_check(sp.ball(1, space="p"), sp.ball(1, space="p"))
    with pytest.raises(DomainError):
        sp.quantum_pair_check(sp.ball(1, space="x"),
                              sp.ball(1, hbar=2.0, space="p"))


def test_mahler_volume_bounds_and_equalities():
    rng = np.random.default_rng(41)
    # ellipsoids meet the Blaschke-Santalo bound with equality
    for n in (1, 2, 3):
        rep = sp.mahler_volume(sp.ellipsoid(rand_spd(rng, n)))
        np.testing.assert_allclose(rep.mahler, rep.santalo_bound, rtol=1e-10)
    # interval and square meet the lower bound with equality
    for hbar in (0.5, 1.0, 2.0):
        rep1 = sp.mahler_volume(sp.interval(0.7, hbar=hbar))
        np.testing.assert_allclose(rep1.mahler, 4.0 * hbar, rtol=1e-12)
        rep2 = sp.mahler_volume(sp.box([0.9, 1.4], hbar=hbar))
        np.testing.assert_allclose(rep2.mahler, rep2.mahler_bound, rtol=1e-12)
    # random polygons sit between the two bounds
    for _ in range(10):
        K = sp.polytope_from_vertices(rand_symmetric_points(rng, 6, 2))
        rep = sp.mahler_volume(K)
        assert rep.mahler <= rep.santalo_bound * (1 + 1e-10)
        assert rep.mahler >= rep.mahler_bound * (1 - 1e-10)


def test_mahler_volume_higher_dimension_skips_lower_bound():
    rng = np.random.default_rng(42)
    rep = sp.mahler_volume(sp.ellipsoid(rand_spd(rng, 3)))
    assert rep.mahler <= rep.santalo_bound * (1 + 1e-10)
