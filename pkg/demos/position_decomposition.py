#!/usr/bin/env python3
"""Split the ambient space by how two Lagrangian subspaces sit against each other.

Two subspaces decompose R^{2n} into five orthogonal pieces: where both agree,
where both complements agree, the two half-swapped pieces, and a generic part
described by principal angles strictly between 0 and pi/2. The example is
rigged so every bucket except the swap appears, then a second pair shows the
swapped case.
"""

import math

import numpy as np

from lagrass import Subspace, five_way_decompose, symmetry_from_subspace

theta = 0.5

# S0 is the span of e1, e2 inside R^4; S1 keeps e1 and tilts e2 toward e4
s0 = Subspace(np.eye(4)[:, :2])
tilted = np.array([
    [1.0, 0.0],
    [0.0, math.cos(theta)],
    [0.0, 0.0],
    [0.0, math.sin(theta)],
])
s1 = Subspace(tilted)

dec = five_way_decompose(symmetry_from_subspace(s0), symmetry_from_subspace(s1))
print("tilted pair on R^4")
for name, dim in dec.dims().items():
    print(f"  {name:<10} dimension {dim}")
print("  generic principal angles:", np.round(dec.generic_angles, 6))
print("  (the tilt angle reappears exactly)")

# a pair where one direction of S0 lands inside the complement of S1
s2 = Subspace(np.eye(4)[:, [0, 3]])
dec_swap = five_way_decompose(symmetry_from_subspace(s0), symmetry_from_subspace(s2))
print()
print("half-swapped pair on R^4")
for name, dim in dec_swap.dims().items():
    print(f"  {name:<10} dimension {dim}")
print("  no generic angles:", dec_swap.generic_angles.size == 0)

print()
print("the five bucket dimensions always sum to the ambient dimension:")
print("  tilted pair: ", sum(dec.dims().values()))
print("  swapped pair:", sum(dec_swap.dims().values()))
