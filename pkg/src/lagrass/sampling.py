"""Seeded random generators for subspaces, operators and perturbed curves.

Everything takes an explicit rng (or seed) so tests and the command line stay
reproducible. Random Lagrangians are produced by rotating the vertical
subspace with exponentials of J-commuting antisymmetric matrices, which act as
complex-linear orthogonal maps and therefore preserve the Lagrangian class.
"""

from __future__ import annotations

import math

import numpy as np

from .complex_structure import ComplexStructure
from .errors import InvariantViolation
from .geodesics import GeodesicGenerator
from .linalg import expm_antisymmetric, schatten_norm
from .subspaces import Symmetry, tangent_project, vertical_symmetry


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_symmetric(dim: int, rng=None, scale: float = 1.0) -> np.ndarray:
    """Symmetric matrix with entries of typical size `scale`."""
    g = _as_rng(rng)
    a = g.standard_normal((dim, dim))
    return scale * (a + a.T) / 2.0


def random_antisymmetric(dim: int, rng=None, scale: float = 1.0) -> np.ndarray:
    g = _as_rng(rng)
    a = g.standard_normal((dim, dim))
    return scale * (a - a.T) / 2.0


def random_complex_antisymmetric(structure: ComplexStructure, rng=None,
                                 norm: float = 1.0) -> np.ndarray:
    """J-commuting antisymmetric matrix scaled to the given operator norm.

    In standard coordinates these are [[p, -q], [q, p]] with p antisymmetric
    and q symmetric; the block form commutes with J by construction.
    """
    g = _as_rng(rng)
    n = structure.n
    p = random_antisymmetric(n, g)
    q = random_symmetric(n, g)
    std = np.block([[p, -q], [q, p]])
    r = structure.to_standard
    a = r @ std @ r.T
    top = schatten_norm(a, math.inf)
    if top == 0.0:
        return a
    return a * (norm / top)


def random_complex_rotation(structure: ComplexStructure, rng=None,
                            spread: float = 1.0) -> np.ndarray:
    """Orthogonal matrix commuting with J (a complex-unitary rotation).

    spread bounds the rotation angle. The magnitude is drawn uniformly;
    pinning it would leave only finitely many rotations when n = 1.
    """
    g = _as_rng(rng)
    a = random_complex_antisymmetric(structure, g, norm=spread * g.random())
    return expm_antisymmetric(a)


def random_lagrangian(structure: ComplexStructure, rng=None,
                      spread: float = 1.0) -> Symmetry:
    """Random Lagrangian as a rotated image of a reference Lagrangian.

    The vertical subspace is Lagrangian for the standard structure; for a
    nonstandard one it is carried over by the standardizing rotation first.
    """
    g = random_complex_rotation(structure, rng, spread)
    r = structure.to_standard
    e = r @ vertical_symmetry(structure.n).matrix @ r.T
    return Symmetry(g @ e @ g.T)


def random_lagrangian_pair(n: int, rng=None,
                           spread: float = 1.0) -> tuple[ComplexStructure, Symmetry, Symmetry]:
    """Standard structure on R^{2n} plus two independent random Lagrangians."""
    g = _as_rng(rng)
    structure = ComplexStructure.standard(n)
    e0 = random_lagrangian(structure, g, spread)
    e1 = random_lagrangian(structure, g, spread)
    return structure, e0, e1


def random_horizontal(structure: ComplexStructure, eps: Symmetry, rng=None,
                      norm: float = 1.0) -> np.ndarray:
    """Random generator direction at eps: antisymmetric, J-commuting,
    eps-anticommuting, scaled to the given operator norm."""
    a = random_complex_antisymmetric(structure, rng)
    e = eps.matrix
    w = (a - e @ a @ e) / 2.0
    w = (w - w.T) / 2.0
    top = schatten_norm(w, math.inf)
    if top == 0.0:
        raise InvariantViolation("random horizontal direction degenerated to zero")
    return w * (norm / top)


def random_tangent(structure: ComplexStructure, eps: Symmetry, rng=None,
                   norm: float = 1.0) -> np.ndarray:
    """Random tangent vector at eps: symmetric, anticommuting with eps and J."""
    v = random_symmetric(structure.dim, rng)
    v = tangent_project(eps, v)
    j = structure.matrix
    v = (v - j @ v @ j.T) / 2.0          # remove the J-commuting part
    v = (v + v.T) / 2.0
    top = schatten_norm(v, math.inf)
    if top == 0.0:
        raise InvariantViolation("random tangent vector degenerated to zero")
    return v * (norm / top)


def perturbed_curve(gen: GeodesicGenerator, w: np.ndarray, amplitude: float,
                    ts) -> np.ndarray:
    """Competitor curve e^{2t(z + rho(t) w)} eps0 with rho(t) = amplitude sin(pi t).

    Shares both endpoints with the geodesic of gen since rho vanishes at
    t = 0, 1. Returns a stack of symmetric matrices over the grid.
    """
    t = np.asarray(ts, dtype=float).reshape(-1)
    rho = amplitude * np.sin(math.pi * t)
    gens = 2.0 * t[:, None, None] * (gen.z[None, :, :]
                                     + rho[:, None, None] * w[None, :, :])
    rot = expm_antisymmetric(gens, validate=False)
    return np.matmul(rot, gen.base.matrix)
