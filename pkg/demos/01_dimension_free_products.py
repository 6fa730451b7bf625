"""Dimension-free matrix products and additions, by example.

Ordinary matrix algebra refuses A @ B unless cols(A) == rows(B).  The
operators in stpdft.algebra lift mismatched operands to the lcm of the
clashing dimensions and go ahead.  This script walks through the three
operators and the bridge-matrix identity that ties them together.
"""

import numpy as np

from stpdft import bridge_matrix, dk_stp, sta, stp, weighted_bridge_matrix, weighted_dk_stp

np.set_printoptions(precision=4, suppress=True)

print("=" * 64)
print("1. Semi-tensor product: identity-block expansion")
print("=" * 64)

A = np.array([[1.0, 2.0]])              # 1 x 2
B = np.array([[1.0], [0.0], [0.0], [1.0]])  # 4 x 1
print(f"A is {A.shape}, B is {B.shape}: inner dims 2 vs 4, lcm 4.")
print("stp(A, B) expands A by I_2 and leaves B alone:")
print(stp(A, B))
print()

# When the shapes already conform, stp is the ordinary product.
C = np.arange(6.0).reshape(2, 3)
D = np.arange(6.0).reshape(3, 2)
assert np.array_equal(stp(C, D), C @ D)
print("Conforming shapes reduce to the plain product:", stp(C, D).tolist())
print()

# Associativity survives the expansions.
rng = np.random.default_rng(0)
M1 = rng.normal(size=(2, 3))
M2 = rng.normal(size=(4, 2))
M3 = rng.normal(size=(3, 5))
left = stp(stp(M1, M2), M3)
right = stp(M1, stp(M2, M3))
print(f"(M1*M2)*M3 and M1*(M2*M3) agree: {np.allclose(left, right)} "
      f"(common shape {left.shape})")
print()

print("=" * 64)
print("2. Dimension-keeping product and the bridge matrix")
print("=" * 64)

A = rng.normal(size=(2, 2))
B = rng.normal(size=(3, 3))
out = dk_stp(A, B)
print(f"dk_stp of a {A.shape} by a {B.shape} keeps the outer shape: {out.shape}")
psi = bridge_matrix(2, 3)
print("bridge_matrix(2, 3) =")
print(psi)
print("dk_stp(A, B) == A @ bridge @ B:", np.allclose(out, A @ psi @ B))
print()

print("=" * 64)
print("3. Weighted variant preserves stochastic structure")
print("=" * 64)

S1 = rng.uniform(0.1, 1, (3, 3)); S1 /= S1.sum(axis=0)
S2 = rng.uniform(0.1, 1, (2, 2)); S2 /= S2.sum(axis=0)
W = weighted_dk_stp(S1, S2)
print("weighted bridge(3, 2):")
print(weighted_bridge_matrix(3, 2))
print("column sums of weighted_dk_stp(stochastic, stochastic):", W.sum(axis=0))
print()

print("=" * 64)
print("4. Semi-tensor addition of vectors with different lengths")
print("=" * 64)

x = np.array([1.0, 3.0])
y = np.array([0.0, 3.0, 6.0])
print(f"x (len 2) replicates each entry 3x, y (len 3) each entry 2x -> length 6")
print("sta(x, y)  =", sta(x, y))
print("sta(x, y, -1) =", sta(x, y, -1))
print("commutative:", np.array_equal(sta(x, y), sta(y, x)))
