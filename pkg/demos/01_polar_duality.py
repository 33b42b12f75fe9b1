"""Polar duality of centered convex bodies.

Walks through the hbar-scaled polar dual on an ellipse and a polygon:
biduality, the antimonotone scaling rule, self-duality of the ball of
radius sqrt(hbar), and the Mahler volume sandwich between the lower
bound 4 hbar (squares) and the Blaschke-Santalo ceiling (ellipsoids).
"""

import numpy as np

import symplecta as sp

rng = np.random.default_rng(1)

print("== ellipse and its dual ==")
Q = np.array([[2.0, 0.6], [0.6, 1.0]])
X = sp.ellipsoid(Q, hbar=1.0, space="x")
D = sp.polar_dual(X)
print("Q of X:\n", X.Q)
print("Q of X^h (inverse):\n", D.Q)
print("bidual equals original:",
      np.allclose(sp.polar_dual(D).Q, Q, atol=1e-14))

print()
print("== polygon dual via vertex/facet exchange ==")
pts = rng.standard_normal((4, 2))
K = sp.polytope_from_vertices(np.vstack([pts, -pts]), hbar=1.0)
DK = sp.polar_dual(K)
print(f"polygon with {K.vertices.shape[0]} vertices "
      f"-> dual with {DK.vertices.shape[0]} vertices")
u = np.array([1.0, 0.5])
print("support of dual at u:", sp.support_function(DK, u))

print()
print("== scaling makes the dual shrink ==")
for lam in (1.0, 1.5, 2.0):
    h = sp.support_function(sp.polar_dual(sp.scale_body(K, lam)), u)
    print(f"  lambda = {lam}: support of (lambda K)^h at u = {h:.6f}")

print()
print("== the ball of radius sqrt(hbar) is its own dual ==")
for hbar in (0.5, 1.0, 2.0):
    B = sp.ball(2, hbar=hbar)
    print(f"  hbar = {hbar}: max |dual Q - Q| =",
          np.max(np.abs(sp.polar_dual(B).Q - B.Q)))

print()
print("== Mahler volumes ==")
for name, body in [("square", sp.box([1.0, 1.0])),
                   ("ellipse", X),
                   ("polygon", K)]:
    rep = sp.mahler_volume(body)
    print(f"  {name:8s} v = {rep.mahler:.6f} in "
          f"[{rep.mahler_bound:.6f}, {rep.santalo_bound:.6f}]")
