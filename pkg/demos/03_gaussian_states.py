"""Gaussian states, covariance matrices, and the quantum condition.

The Gamma map matches quantum blobs with Gaussian wavefunctions
psi_{W,Y}; the Wigner distribution of such a state concentrates on the
blob, and its covariance matrix sits exactly on the uncertainty
boundary.  Thicker covariances admit many inscribed blobs (and Pauli
partners); thinner ones fail the quantum condition.
"""

import numpy as np

import symplecta as sp

print("== blob <-> Gaussian round trip ==")
blob = sp.blob_from_symplectic(sp.shear(np.array([[1.0]])))
print("G =\n", blob.G)
state = sp.blob_to_gaussian(blob)
print("W =", state.W.ravel(), " Y =", state.Y.ravel())
back = sp.gaussian_to_blob(state)
print("round trip max error:", np.max(np.abs(back.G - blob.G)))

print()
print("== covariance of the pure state ==")
cov = sp.covariance(state)
print("Sigma =\n", cov.sigma)
print("det Sigma =", np.linalg.det(cov.sigma), " (hbar/2)^2 =", 0.25)
verdict = sp.quantum_condition_check(cov)
print("passes:", verdict.passes,
      " min symplectic eigenvalue:", verdict.min_symplectic_eigenvalue,
      " capacity:", verdict.capacity_of_cov_ellipsoid,
      " unique blob:", verdict.blob_unique)

print()
print("== a thermal-like covariance admits many blobs ==")
hot = sp.CovarianceMatrix(sigma=1.5 * np.eye(2), hbar=1.0)
v = sp.quantum_condition_check(hot)
print("passes:", v.passes, " unique:", v.blob_unique,
      " capacity:", v.capacity_of_cov_ellipsoid, "> pi")

print()
print("== below the boundary the condition fails ==")
cold = sp.CovarianceMatrix(sigma=0.3 * np.eye(2), hbar=1.0)
v = sp.quantum_condition_check(cold)
print("passes:", v.passes,
      " min symplectic eigenvalue:", v.min_symplectic_eigenvalue, "< 0.5")

print()
print("== Pauli partners: same marginals, different states ==")
partners = sp.pauli_partners(1.0, 0.5)
for cov in partners:
    print("Sigma_xp =", cov.sigma[0, 1],
          " RS margin =", sp.robertson_schrodinger_check(cov)[0])

print()
print("== metaplectic transport of the covariance ==")
state2 = sp.GaussianState(W=np.array([[2.0]]), Y=np.array([[0.5]]))
for gen in (sp.fourier_generator(),
            sp.scaling_generator(np.array([[1.4]])),
            sp.quadratic_phase_generator(np.array([[0.75]]))):
    moved = sp.metaplectic_apply(state2, gen)
    print(f"  {gen.kind:16s} -> W = {moved.W.ravel()}, Y = {moved.Y.ravel()}")
