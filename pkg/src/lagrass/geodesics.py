"""Minimal geodesics between Lagrangian subspaces.

A geodesic through eps0 is delta(t) = e^{2tz} eps0 with a generator z that is
antisymmetric, commutes with J, anticommutes with eps0 and has operator norm
at most pi/2. Any two Lagrangians are joined by such a curve; it is unique iff
the endpoints have no common pi/2 principal angle, and it is length-minimizing
for every Schatten k-norm.

`connect` builds the generator blockwise from the five-way decomposition of
the endpoint pair. Two independent routes are kept: the production route takes
the principal log of the reduced product eps1 eps0 on the generic block; the
cross-check route assembles the same block from principal angles through
functional calculus in a two-block model space. The swapped blocks always
carry (pi/2) J, the coincident blocks carry 0.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .complex_structure import ComplexMatrix, ComplexStructure, complexify, realify
from .errors import ComputationError, InvariantViolation
from .linalg import (
    SpectralDecomposition,
    apply_function,
    expm_antisymmetric,
    logm_special_orthogonal,
    max_abs,
    require_antisymmetric,
    schatten_norm,
)
from .subspaces import (
    Symmetry,
    _as_symmetry,
    _pair_frames,
    check_tangent,
    is_lagrangian,
)
from .tolerances import (
    ANGLE_RIGHT_TOL,
    ANGLE_ZERO_TOL,
    ENDPOINT_RTOL,
    GENERATOR_ATOL,
    PI_PLANE_TOL,
)


# ---------------------------------------------------------------------------
# generators and evaluation


@dataclass(frozen=True)
class GeodesicGenerator:
    """A validated geodesic velocity seed z at a base Lagrangian.

    Invariants: z antisymmetric, z J = J z, z eps0 = -eps0 z, ||z|| <= pi/2.
    """

    z: np.ndarray
    base: Symmetry
    structure: ComplexStructure

    def __post_init__(self):
        z = require_antisymmetric(self.z, "generator")
        if z.shape[0] != self.structure.dim or z.shape[0] != self.base.ambient_dim:
            raise InvariantViolation("generator: dimension mismatch")
        scale = max(1.0, max_abs(z))
        j = self.structure.matrix
        if max_abs(z @ j - j @ z) > GENERATOR_ATOL * scale:
            raise InvariantViolation("generator: does not commute with J")
        e = self.base.matrix
        if max_abs(z @ e + e @ z) > GENERATOR_ATOL * scale:
            raise InvariantViolation("generator: does not anticommute with the base")
        if schatten_norm(z, math.inf) > math.pi / 2.0 + GENERATOR_ATOL:
            raise InvariantViolation("generator: operator norm exceeds pi/2")
        object.__setattr__(self, "z", z)

    @property
    def norm(self) -> float:
        return schatten_norm(self.z, math.inf)


@dataclass(frozen=True)
class Geodesic:
    """The curve t -> e^{2tz} eps0 determined by a generator."""

    generator: GeodesicGenerator

    @property
    def base(self) -> Symmetry:
        return self.generator.base


def exponential_map(eps: Symmetry, v, structure: ComplexStructure) -> Geodesic:
    """Geodesic through eps with initial velocity v (a tangent vector there).

    The generator is z = v eps / 2, so that d/dt|_0 e^{2tz} eps = v.
    """
    arr = check_tangent(eps, v, structure)
    z = arr @ eps.matrix / 2.0
    z = (z - z.T) / 2.0
    return Geodesic(GeodesicGenerator(z, eps, structure))


def evaluate(geo: Geodesic, t: float) -> Symmetry:
    """The symmetry at parameter t: e^{2tz} eps0 (= eps0 e^{-2tz})."""
    g = geo.generator
    rot = expm_antisymmetric(2.0 * float(t) * g.z, validate=False)
    return Symmetry(rot @ g.base.matrix)


def sample(geo: Geodesic, ts) -> np.ndarray:
    """Stack of symmetries e^{2tz} eps0 over a grid, shape (len(ts), 2n, 2n)."""
    g = geo.generator
    t = np.asarray(ts, dtype=float).reshape(-1)
    rot = expm_antisymmetric(2.0 * t[:, None, None] * g.z, validate=False)
    return np.matmul(rot, g.base.matrix)


# ---------------------------------------------------------------------------
# connecting two Lagrangians


def _transversal_block(frames, structure: ComplexStructure) -> np.ndarray:
    """(pi/2) J restricted to the two swapped blocks; zero if they are absent."""
    p_cols = np.hstack([frames.plus_minus, frames.minus_plus])
    if p_cols.shape[1] == 0:
        return np.zeros((structure.dim, structure.dim))
    p = p_cols @ p_cols.T
    return (math.pi / 2.0) * (p @ structure.matrix @ p)


def _generic_block_log(frames, eps0: Symmetry, eps1: Symmetry) -> np.ndarray:
    """Production route: half principal log of the reduced product eps1 eps0."""
    w = np.hstack([frames.generic_left, frames.generic_ortho])
    reduced = (w.T @ eps1.matrix @ w) @ (w.T @ eps0.matrix @ w)
    try:
        half_log = logm_special_orthogonal(reduced)
    except ComputationError as exc:
        raise ComputationError(
            "generic block contains a rotation too close to pi; angle bucketing "
            "should have classified it as transversal"
        ) from exc
    return w @ half_log @ w.T


def _generic_block_model(frames) -> np.ndarray:
    """Cross-check route: assemble the generic generator from principal angles.

    In the model space spanned by the left frame and its orthogonal partners,
    the pair becomes p0' = [[I,0],[0,0]], p1' = [[c^2, cs],[cs, s^2]] with
    c = cos(x), s = sin(x) and x the diagonal operator of angles. The generator
    there is [[0, -x], [x, 0]], pulled back along the frame.
    """
    angles = frames.generic_angles
    g = angles.shape[0]
    dec = SpectralDecomposition(angles, np.eye(g))
    x = apply_function(dec, lambda t: t)
    model = np.zeros((2 * g, 2 * g))
    model[:g, g:] = -x
    model[g:, :g] = x
    w = np.hstack([frames.generic_left, frames.generic_ortho])
    return w @ model @ w.T


def connect(eps0, eps1, structure: ComplexStructure, route: str = "log",
            zero_tol: float = ANGLE_ZERO_TOL,
            right_tol: float = ANGLE_RIGHT_TOL) -> GeodesicGenerator:
    """Generator of a minimal geodesic from eps0 to eps1: e^{2z} eps0 = eps1.

    route="log" is the production path (principal log on the generic block);
    route="halmos" rebuilds that block from principal angles through the model
    construction and exists as an independent cross-check. Identical endpoints
    short-circuit to z = 0. The endpoint residual is verified before returning.
    """
    e0 = _as_symmetry(eps0)
    e1 = _as_symmetry(eps1)
    for name, e in (("first", e0), ("second", e1)):
        if not is_lagrangian(e, structure):
            raise InvariantViolation(f"connect: {name} endpoint is not Lagrangian")
    dim = structure.dim
    if max_abs(e0.matrix - e1.matrix) <= 1e-13:
        return GeodesicGenerator(np.zeros((dim, dim)), e0, structure)

    frames = _pair_frames(e0, e1, zero_tol, right_tol)
    if frames.plus_minus.shape[1] != frames.minus_plus.shape[1]:
        raise ComputationError("connect: swapped blocks differ in dimension")

    z = _transversal_block(frames, structure)
    if frames.generic_angles.shape[0]:
        if route == "log":
            z = z + _generic_block_log(frames, e0, e1)
        elif route == "halmos":
            z = z + _generic_block_model(frames)
        else:
            raise InvariantViolation(f"connect: unknown route {route!r}")
    z = (z - z.T) / 2.0
    # exact projections onto the J-commuting and base-anticommuting parts;
    # they commute and strip conditioning noise from near-critical angles
    j = structure.matrix
    z = (z + j @ z @ j.T) / 2.0
    z = (z - e0.matrix @ z @ e0.matrix) / 2.0

    gen = GeodesicGenerator(z, e0, structure)
    endpoint = expm_antisymmetric(2.0 * z, validate=False) @ e0.matrix
    resid = max_abs(endpoint - e1.matrix)
    if resid > ENDPOINT_RTOL * dim:
        raise ComputationError(
            f"connect: endpoint residual {resid:.3e} beyond {ENDPOINT_RTOL * dim:.3e}"
        )
    return gen


def distance(eps0, eps1, structure: ComplexStructure) -> float:
    """Geodesic distance 2 ||z|| = twice the largest principal angle."""
    gen = connect(eps0, eps1, structure)
    return 2.0 * gen.norm


# ---------------------------------------------------------------------------
# Finsler lengths


def length(geo: Geodesic, k=math.inf, t0: float = 0.0, t1: float = 1.0) -> float:
    """Length of the geodesic over [t0, t1] in the Schatten k-norm.

    The speed ||2z||_k is constant along the curve, so the closed form is
    |t1 - t0| * ||2z||_k.
    """
    return abs(float(t1) - float(t0)) * schatten_norm(2.0 * geo.generator.z, k)


def _speed_norms(values: np.ndarray, k) -> np.ndarray:
    """Schatten norms per node from |eigenvalue| arrays of symmetric matrices."""
    if k == math.inf:
        return values.max(axis=1)
    if isinstance(k, float) and k.is_integer():
        k = int(k)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvariantViolation(f"Schatten order must be an integer >= 1 or inf, got {k!r}")
    top = values.max(axis=1)
    safe = np.where(top > 0.0, top, 1.0)
    sums = np.sum((values / safe[:, None]) ** k, axis=1) ** (1.0 / k)
    return np.where(top > 0.0, safe * sums, 0.0)


def sampled_lengths(samples, dt: float, ks) -> dict:
    """Quadrature lengths of a uniformly sampled curve for several k at once.

    Speeds come from the second-order finite-difference derivative of the
    sample stack (one-sided at the ends), integrated by the trapezoid rule.
    Samples are symmetric matrices, so singular values are |eigenvalues|.
    """
    stack = np.stack([
        s.matrix if isinstance(s, Symmetry) else np.asarray(s, dtype=float)
        for s in samples
    ])
    if stack.ndim != 3 or stack.shape[0] < 3:
        raise InvariantViolation("sampled length: need a stack of at least 3 matrices")
    if dt <= 0.0:
        raise InvariantViolation("sampled length: dt must be positive")
    deriv = np.gradient(stack, dt, axis=0, edge_order=2)
    values = np.abs(np.linalg.eigvalsh(deriv))
    out = {}
    for k in ks:
        speeds = _speed_norms(values, k)
        out[k] = float(np.trapezoid(speeds, dx=dt))
    return out


def sampled_length(samples, dt: float, k=math.inf) -> float:
    """Quadrature length of a uniformly sampled curve in one Schatten norm."""
    return sampled_lengths(samples, dt, [k])[k]


# ---------------------------------------------------------------------------
# multiplicity of minimal geodesics and the sign-flip family


class Multiplicity(enum.Enum):
    UNIQUE = "Unique"
    EXACTLY_TWO = "ExactlyTwo"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class MultiplicityReport:
    classification: Multiplicity
    minus_one_dim_complex: int
    norm_gap: float


@dataclass(frozen=True)
class _PiPlanes:
    """Complexified data of the pi-rotation planes of e^{2z}.

    hermitian is Y with complexify(z) = iY; mus/vectors list the eigenvalues
    within tolerance of +-pi/2 together with orthonormal eigenvectors fixed by
    the (conjugate-linear) action of the base symmetry. Each such vector spans
    a J-complex plane on which the sign of z may be flipped without moving the
    endpoint e^{2z} eps0.
    """

    hermitian: np.ndarray
    mus: np.ndarray
    vectors: np.ndarray
    max_abs_mu: float


def _conjugation(eps_std: np.ndarray, n: int):
    """Conjugate-linear action of a J-anticommuting symmetry on C^n."""

    def act(w: np.ndarray) -> np.ndarray:
        xi = np.concatenate([w.real, w.imag])
        out = eps_std @ xi
        return out[:n] + 1j * out[n:]

    return act


def _real_form_basis(cols: np.ndarray, conj) -> np.ndarray:
    """Orthonormal basis of {w : conj(w) = w} inside span(cols).

    conj is an antiunitary involution preserving the span; the fixed set is a
    real form of complex dimension equal to the span's. Candidates w + conj(w)
    and i(w - conj(w)) are fixed; a Gram-Schmidt sweep keeps an orthonormal
    subset of the right size.
    """
    m = cols.shape[1]
    kept: list[np.ndarray] = []
    for i in range(m):
        v = cols[:, i]
        cv = conj(v)
        for cand in (v + cv, 1j * (v - cv)):
            if len(kept) == m:
                break
            w = cand.astype(complex)
            for u in kept:
                w = w - u * np.vdot(u, w)
            norm = float(np.linalg.norm(w))
            if norm > 1e-6:
                kept.append(w / norm)
    if len(kept) != m:
        raise ComputationError("pi-plane real form extraction failed")
    return np.column_stack(kept) if kept else np.zeros((cols.shape[0], 0), dtype=complex)


def _pi_planes(gen: GeodesicGenerator, pi_tol: float = PI_PLANE_TOL) -> _PiPlanes:
    structure = gen.structure
    n = structure.n
    zc = complexify(gen.z, structure)
    y = zc.im - 1j * zc.re                      # complexify(z) = iY, Y hermitian
    if max_abs(np.abs(y - y.conj().T)) > 1e-9 * max(1.0, max_abs(np.abs(y))):
        raise ComputationError("complexified generator is not anti-hermitian")
    y = (y + y.conj().T) / 2.0
    mu, vec = np.linalg.eigh(y)
    r = structure.to_standard
    eps_std = r.T @ gen.base.matrix @ r
    conj = _conjugation(eps_std, n)
    mus: list[float] = []
    vecs: list[np.ndarray] = []
    for sign in (1.0, -1.0):
        mask = np.abs(mu - sign * math.pi / 2.0) <= pi_tol / 2.0
        if np.any(mask):
            basis = _real_form_basis(vec[:, mask], conj)
            for i in range(basis.shape[1]):
                mus.append(sign * math.pi / 2.0)
                vecs.append(basis[:, i])
    vectors = np.column_stack(vecs) if vecs else np.zeros((n, 0), dtype=complex)
    top = float(np.max(np.abs(mu))) if mu.size else 0.0
    return _PiPlanes(y, np.asarray(mus), vectors, top)


def classify_multiplicity(gen: GeodesicGenerator,
                          pi_tol: float = PI_PLANE_TOL) -> MultiplicityReport:
    """Count the -1 eigenspace of the complexified e^{2z} and classify.

    d = 0 -> the minimal geodesic is unique; d = 1 -> exactly two; d >= 2 ->
    infinitely many. norm_gap = pi/2 - ||z|| measures distance to the
    non-unique regime.
    """
    planes = _pi_planes(gen, pi_tol)
    d = planes.mus.shape[0]
    if d == 0:
        cls = Multiplicity.UNIQUE
    elif d == 1:
        cls = Multiplicity.EXACTLY_TWO
    else:
        cls = Multiplicity.INFINITE
    return MultiplicityReport(cls, d, math.pi / 2.0 - planes.max_abs_mu)


def alternate_generator(gen: GeodesicGenerator, signs,
                        pi_tol: float = PI_PLANE_TOL) -> GeodesicGenerator:
    """Flip the sign of z on the selected pi-rotation planes.

    signs has one entry of +-1 per plane (ordered as in the multiplicity
    report); -1 flips. The endpoint e^{2z} eps0 and every Schatten norm of z
    are unchanged. Requires ||z|| = pi/2 within tolerance (otherwise there is
    no plane to flip).
    """
    planes = _pi_planes(gen, pi_tol)
    d = planes.mus.shape[0]
    if d == 0:
        raise InvariantViolation(
            "alternate generator: operator norm below pi/2, no pi-rotation plane"
        )
    sign_arr = np.asarray(signs, dtype=float).reshape(-1)
    if sign_arr.shape[0] != d or not np.all(np.isin(sign_arr, (-1.0, 1.0))):
        raise InvariantViolation(
            f"alternate generator: need {d} signs of +-1, got {signs!r}"
        )
    y = planes.hermitian.copy()
    for i in range(d):
        if sign_arr[i] < 0.0:
            w = planes.vectors[:, i]
            y = y - 2.0 * planes.mus[i] * np.outer(w, w.conj())
    z_new = realify(ComplexMatrix.from_complex(1j * y), gen.structure)
    z_new = (z_new - z_new.T) / 2.0
    return GeodesicGenerator(z_new, gen.base, gen.structure)


def alternate_generators(gen: GeodesicGenerator, limit: int = 64,
                         pi_tol: float = PI_PLANE_TOL) -> list[GeodesicGenerator]:
    """All sign-pattern alternates, at most `limit` of the 2^d patterns.

    With d = 0 the geodesic is unique and the list is just [gen].
    """
    d = _pi_planes(gen, pi_tol).mus.shape[0]
    if d == 0:
        return [gen]
    out = []
    for pattern in itertools.islice(itertools.product((1, -1), repeat=d), limit):
        out.append(alternate_generator(gen, pattern, pi_tol))
    return out
