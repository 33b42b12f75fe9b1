"""Quantum blobs, their projections, and the John ellipsoid of a product.

A quantum blob is the image of the phase-space ball of radius sqrt(hbar)
under a linear symplectic map.  Projecting a blob onto the position and
momentum subspaces produces a quantum pair X, P (the dual of X fits
inside P), with saturation exactly for pure rescalings.  The John
ellipsoid of X x P recovers the blob in the saturated case.
"""

import numpy as np

import symplecta as sp

print("== a blob and its normal form ==")
S = sp.shear(np.array([[0.4]])) @ sp.scaling(np.array([[1.3]]))
blob = sp.blob_from_symplectic(S)
print("G =\n", blob.G)
P, L = sp.blob_normal_form(blob)
print("shear part P =", P.ravel(), " scaling part L =", L.ravel())
print("volume =", blob.volume(), " (pi hbar)^n / n! =", np.pi)

print()
print("== projections form a quantum pair ==")
proj = sp.project_blob(blob)
print("X body Q =", proj.X.Q.ravel(), " P body Q =", proj.P.Q.ravel())
report = sp.quantum_pair_check(proj.X, proj.P)
print("pair holds:", report.holds, " lambda_max =", report.lambda_max,
      " saturated:", proj.saturated)

print()
print("== saturation happens only without shear ==")
pure = sp.blob_from_symplectic(sp.scaling(np.array([[1.3]])))
print("scaling blob saturated:", sp.project_blob(pure).saturated)

print()
print("== John ellipsoid of an ellipsoid product ==")
A = np.array([[1.0]])
B = np.array([[0.25]])
res = sp.john_of_pair(A, B)
print("direct sum Q =\n", res.ellipsoid.Q)
print("is a blob:", res.is_blob,
      " (symplectic residual", res.symplectic_residual, ")")

print()
print("== rescaled blobs inside the John ellipsoid ==")
for lam in (1.0, 1.5, 2.0, "AB"):
    fam = sp.rescaled_blob_family(A, B, lam)
    print(f"  lambda = {lam}: contained = {fam.contained.ok}, "
          f"margin = {fam.contained.margin:.3e}")

print()
print("== John ellipsoid of a polytope product (solver) ==")
X = sp.box([0.5], space="x")
Pb = sp.box([4.0], space="p")
E = sp.john_of_polytope_product(X, Pb)
print("box x box John ellipsoid Q =\n", E.Q)
