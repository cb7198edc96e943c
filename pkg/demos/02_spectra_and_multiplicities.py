#!/usr/bin/env python3
# Eigenvalue levels of the Laplacian and the resolvent on the 2-torus.
# Multiplicities are lattice point counts, and some levels simply do not
# exist: 7 is not a sum of two squares, so there is no eigenvalue 7.

import toruskit as tk

n, cap = 2, 25

lap = tk.laplacian_spectrum(n, cap)
res = tk.resolvent_spectrum(n, cap)

print(f"Laplacian levels k = |xi|^2 <= {cap} on the {n}-torus:")
print("   k  multiplicity     1/(1+k)")
for (k, mult), (eig, _) in zip(lap.levels, res.levels):
    print(f"  {int(k):2d}  {mult:12d}     {eig:.6f}")

present = {int(k) for k, _ in lap.levels}
absent = sorted(set(range(cap + 1)) - present)
print("absent levels (not sums of two squares):", absent)

# The multiplicity of each level is the count of lattice points at that
# squared radius; summing them over a ball reproduces its cardinality.
radius = 4
total = sum(m for k, m in lap.levels if k <= radius**2)
ball = tk.enumerate_ball(tk.LatticeBall(n, radius))
print(f"sum of multiplicities up to {radius}^2 = {total} = |ball| = {len(ball)}")

# The resolvent <-> shifted-inverse eigenvalue map and its inverse.
for lam in (0.5, 0.2):
    mu = tk.lambda_to_mu(lam)
    print(f"lambda = {lam}  ->  mu = {mu}  ->  back to {tk.mu_to_lambda(mu)}")
