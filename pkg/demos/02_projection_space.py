"""The cross-dimensional inner-product space and least-distance projection.

Vectors of different lengths are compared after replicating each to the lcm
length and averaging.  Under that geometry the best approximation of x in a
space of another dimension is a fixed linear map with rational entries.
"""

import numpy as np

from stpdft import nominal_add, proj_matrix, proj_matrix_exact, project, sta, vdist, vinner, vnorm

np.set_printoptions(precision=4, suppress=True)

print("=" * 64)
print("1. Inner product, norm, distance across lengths")
print("=" * 64)

print("vinner([1,1], [1,1,1]) =", vinner([1, 1], [1, 1, 1]))
print("vnorm(ones(5)) =", vnorm(np.ones(5)), " (all-ones has norm 1 at any length)")
print("vdist([1,3], [0,3,6]) =", vdist([1, 3], [0, 3, 6]))
x = np.array([2.0, -1.0, 0.5])
print("a vector and its 3-fold replication are indistinguishable:",
      vdist(x, np.repeat(x, 3)))
print()

print("=" * 64)
print("2. Projection matrices (each row averages source entries)")
print("=" * 64)

for m, n in ((3, 6), (6, 4)):
    print(f"proj_matrix({m}, {n}) =")
    print(proj_matrix(m, n))
    print("exact rational entries:", proj_matrix_exact(m, n)[0, :3], "...")
    print()

print("Upsampling just replicates when the target is a multiple:")
print("project([1,2,3], 6) =", project([1.0, 2.0, 3.0], 6))
print("Downsampling blends neighbors:")
print("project([1,2,3,4,5,6], 4) =", project(np.arange(1.0, 7.0), 4))
print()

print("=" * 64)
print("3. The projection is the least-distance point")
print("=" * 64)

rng = np.random.default_rng(1)
x = rng.normal(size=5)
best = project(x, 3)
d_best = vdist(x, best)
worst = min(vdist(x, rng.normal(size=3)) for _ in range(2000))
print(f"distance to project(x, 3): {d_best:.6f}")
print(f"best of 2000 random candidates in R^3: {worst:.6f}  (never better)")
print()

print("=" * 64)
print("4. Nominal addition: add anything inside a chosen R^r")
print("=" * 64)

a = np.array([2.0, 4.0])
b = np.array([1.0, 1.0, 1.0])
print("nominal_add([2,4], [1,1,1], 1) =", nominal_add(a, b, 1), " (mean + mean)")
print("nominal_add(x, y, r) == project(sta(x, y), r):",
      np.allclose(nominal_add(a, b, 4), project(sta(a, b), 4)))
