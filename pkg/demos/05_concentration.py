"""Concentration, Donoho-Stark volume bounds, and Hardy regimes.

Measures how much L2 mass a wavefunction and its hbar-Fourier transform
keep inside centered boxes, feeds the measured concentrations into the
Donoho-Stark product bound, compares with the polar-duality ceiling, and
classifies Gaussian decay pairs in the Hardy sense.
"""

import numpy as np

import symplecta as sp

print("== concentration of the standard Gaussian ==")
f = sp.gaussian_function(1.0)
eps_x = sp.concentration(f, 1.0)
print("eps_x on [-1, 1]:", eps_x, " exact sqrt(1 - erf 1):",
      0.3966096406421372)
fhat = sp.hbar_fourier(f)
print("eps_p of the transform:", sp.concentration(fhat, 1.0),
      "(the Gaussian is Fourier invariant)")

print()
print("== Donoho-Stark bound with measured concentrations ==")
rep = sp.concentration_report(f, 1.0, 1.0)
print(f"lhs = {rep.ds.lhs}  >=  rhs = {rep.ds.rhs:.6f}  consistent:",
      rep.ds.consistent)

print()
print("== squeezed Gaussians trade the two concentrations ==")
for w in (0.5, 1.0, 2.0):
    g = sp.gaussian_function(w)
    r = sp.concentration_report(g, 1.0, 1.0)
    print(f"  w = {w}: eps_x = {r.eps_x:.4f}, eps_p = {r.eps_p:.4f}, "
          f"consistent = {r.ds.consistent}")

print()
print("== the polar-duality ceiling is stronger for small eps ==")
pb = sp.polar_concentration_bound(1, 1.0, 0.2, 0.2)
print("lhs =", pb.lhs, " rhs =", pb.rhs, " consistent:", pb.consistent)
print("least admissible eps_x + eps_p at n = 1:", pb.eps_floor)
for n in (1, 2, 4, 8):
    r = sp.polar_concentration_bound(n, 1.0, 0.3, 0.3)
    print(f"  n = {n}: rhs = {r.rhs:.6e}, Stirling envelope = "
          f"{r.stirling_envelope:.6e}")

print()
print("== Hermite functions are Fourier eigenfunctions ==")
for m in (0, 1, 2):
    h = sp.hermite_function(m)
    ratio = sp.hbar_fourier(h).values[2048] / h.values[2048]
    print(f"  m = {m}: F h_m / h_m = {ratio:.6f} (expected (-i)^{m})")

print()
print("== Hardy regimes for Gaussian decay pairs ==")
for a, b in ((1.0, 1.0), (1.0, 0.25), (1.0, 4.0)):
    rep = sp.hardy_check(np.array([[a]]), np.array([[b]]))
    print(f"  A = {a}, B = {b}: regime = {rep.regime}, "
          f"matches pair check: {rep.polar_equivalent}")
