#!/usr/bin/env python3
"""Count the minimal geodesics between two Lagrangian subspaces.

Below the critical distance the minimal geodesic is unique. At distance pi
the generator picks up eigenvalue pairs at +-pi/2 and each such plane can be
flipped, giving 2^d distinct minimizers, all with the same length in every
Schatten norm. The demo classifies three pairs: unique, exactly two, and a
continuum (flagged through the sign family it contains).
"""

import math

import numpy as np

from lagrass import (
    ComplexStructure,
    Geodesic,
    alternate_generators,
    classify_multiplicity,
    connect,
    evaluate,
    graph_symmetry,
    max_abs,
    random_lagrangian_pair,
    schatten_norm,
)

SEED = 23

print("case 1: a random nearby pair")
rng = np.random.default_rng(SEED)
structure, first, second = random_lagrangian_pair(3, rng, spread=0.6)
gen = connect(first, second, structure)
rep = classify_multiplicity(gen)
print("  norm:", f"{gen.norm:.6f}", " classification:", rep.classification.value)
print("  distance from the critical norm:", f"{rep.norm_gap:.6f}")
print("  alternates returned:", len(alternate_generators(gen)))

print()
print("case 2: graphs of I and diag(1, -1) on R^4")
structure4 = ComplexStructure.standard(2)
e_first = graph_symmetry(np.eye(2))
e_second = graph_symmetry(np.diag([1.0, -1.0]))
gen2 = connect(e_first, e_second, structure4)
rep2 = classify_multiplicity(gen2)
print("  norm equals pi/2:", f"{abs(gen2.norm - math.pi / 2):.2e}")
print("  classification:", rep2.classification.value,
      " flip planes:", rep2.minus_one_dim_complex)
alts = alternate_generators(gen2)
print("  sign family size:", len(alts))
for i, alt in enumerate(alts):
    reached = evaluate(Geodesic(alt), 1.0)
    resid = max_abs(reached.matrix - e_second.matrix)
    norms = [schatten_norm(2 * alt.z, k) for k in (1, 2, math.inf)]
    print(f"  path {i}: endpoint residual {resid:.2e}, "
          f"lengths k=1/2/inf: {norms[0]:.4f} {norms[1]:.4f} {norms[2]:.4f}")

print()
print("case 3: graphs of I and diag(1, 1, -1, -1) on R^8")
structure8 = ComplexStructure.standard(4)
gen3 = connect(graph_symmetry(np.eye(4)),
               graph_symmetry(np.diag([1.0, 1.0, -1.0, -1.0])), structure8)
rep3 = classify_multiplicity(gen3)
print("  classification:", rep3.classification.value,
      " flip planes:", rep3.minus_one_dim_complex)
print("  two flip planes admit rotations between them, so the sign family")
print("  sits inside a continuum of minimizers; the first few:")
for i, alt in enumerate(alternate_generators(gen3, limit=4)):
    reached = evaluate(Geodesic(alt), 1.0)
    print(f"  path {i}: endpoint residual "
          f"{max_abs(reached.matrix - graph_symmetry(np.diag([1.0, 1.0, -1.0, -1.0])).matrix):.2e}")
