"""Symplectic capacities: ellipsoids, planar bodies, products, projections.

The capacity of an ellipsoid is pi hbar over its largest symplectic
eigenvalue; for planar convex bodies it is the area.  For a quantum pair
(X, P) at n = 1 the product X x P has capacity exactly 4 lambda_max hbar,
which beats the inscribed John blob's pi hbar.  Finally, projections of
symplectic balls can never shrink below the Gromov bound pi R^2.
"""

import numpy as np

import symplecta as sp

print("== ellipsoid capacity ==")
M = np.diag([9.0, 9.0, 1.0, 1.0])
E = sp.ellipsoid(M, space="z")
cap = sp.ellipsoid_capacity(E)
print("symplectic spectrum:", sp.symplectic_eigenvalues(M))
print("capacity:", cap.value, "= pi hbar / 3")

print()
print("== every blob has capacity pi hbar ==")
for seed in (0, 1, 2):
    blob = sp.blob_from_symplectic(sp.random_symplectic(seed, 2))
    print("  seed", seed, "capacity =",
          sp.ellipsoid_capacity(blob.as_ellipsoid()).value)

print()
print("== planar capacity is the area ==")
hexagon = sp.polytope_from_vertices(
    np.array([[np.cos(t), np.sin(t)]
              for t in np.pi * np.arange(6) / 3.0]), space="z")
print("regular hexagon capacity:", sp.hz_planar(hexagon).value,
      " area oracle:", 3.0 * np.sqrt(3) / 2.0)

print()
print("== product capacity for interval pairs ==")
X = sp.interval(0.5, space="x")
P = sp.interval(4.0, space="p")
report = sp.quantum_pair_check(X, P)
cap = sp.hz_product_pair(X, P)
print("lambda_max =", report.lambda_max, " capacity =", cap.value,
      "= 4 lambda hbar")
tight = sp.hz_product_pair(sp.interval(0.5, space="x"),
                           sp.interval(2.0, space="p"))
print("saturated pair capacity:", tight.value, "= 4 hbar exactly")
blob_cap = sp.ellipsoid_capacity(
    sp.john_of_pair(np.array([[4.0]]), np.array([[0.25]])).ellipsoid)
print("inscribed John blob capacity:", blob_cap.value, "= pi hbar")

print()
print("== Gromov-style projection bound ==")
S = sp.random_symplectic(7, 2)
for j in (1, 2):
    rep = sp.projection_area_check(S, 1.0, j)
    print(f"  plane {j}: area = {rep.area:.6f} >= {rep.lower_bound:.6f}",
          "ok" if rep.passes else "VIOLATED")
d = np.diag([0.5, 2.0])
rep = sp.projection_area_check(sp.scaling(d), 1.0, 1)
print("block-diagonal scaling achieves equality:", rep.area, "= pi")
