"""Hyperbolic realization of Wicks forms as polygons with all angles 2*pi/3.

Points live on the hyperboloid ``<x, x> = -1`` of the Minkowski form
``J = diag(1, 1, -1)``; isometries are 3x3 matrices with ``M^T J M = J``.

A polygon is developed from the base point ``(0, 0, 1)`` heading along the
x-axis: each side is a boost by its length in the current frame, followed by
a counterclockwise turn by the exterior angle ``pi/3``.  The product of all
steps is the holonomy; the polygon closes exactly when it is the identity.
Side lengths are indexed by word position.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import logm

from .errors import Infeasible, MalformedWord, NoConvergence, NonPositive, NumericalOverflow
from .words import SignedWord, pairing

J = np.diag([1.0, 1.0, -1.0])
ORIGIN = np.array([0.0, 0.0, 1.0])
EXTERIOR_ANGLE = np.pi / 3
MAX_SIDE = 50.0
MAX_FRAME = 1e7       # beyond this, M^T J M = J cannot be resolved in double precision
REORTHO_EVERY = 8

CLOSURE_TOL = 1e-8
RANK_TOL = 1e-7
FD_STEP = 1e-6


def minkowski(u, v) -> float:
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def boost(t: float) -> np.ndarray:
    """Translation by hyperbolic distance t along the x-axis through the origin."""
    c, s = np.cosh(t), np.sinh(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def reorthogonalize(M: np.ndarray, steps: int = 3) -> np.ndarray:
    """Pull M back onto the isometry group.

    Uses the first-order polar correction ``M (I - E/2)`` with
    ``E = J M^T J M - I``, which only moves M by the size of its defect.
    (Gram-Schmidt on the columns loses digits to cancellation once the frame
    is boosted far from the origin.)
    """
    M = np.array(M, dtype=float)
    eye = np.eye(3)
    for _ in range(steps):
        E = J @ M.T @ J @ M - eye
        err = np.abs(E).max()
        if not err > 1e-15:
            break
        M = M @ (eye - 0.5 * E)
    return M


def isometry_defect(M: np.ndarray) -> float:
    """Max deviation of M^T J M from J."""
    return float(np.abs(M.T @ J @ M - J).max())


def hyperbolic_distance(u, v) -> float:
    return float(np.arccosh(max(1.0, -minkowski(u, v))))


# -- closed forms ---------------------------------------------------------------


def regular_side_length(n: int) -> float:
    """Side of the regular n-gon with all interior angles 2*pi/3.

    Half the side, the inradius and the circumradius form a right triangle
    with angles pi/n at the center and pi/3 at the polygon vertex, so
    ``cosh(s/2) = cos(pi/n) / sin(pi/3)``; it exists iff n >= 7.
    """
    if n <= 6:
        raise Infeasible(f"no hyperbolic regular {n}-gon with angles 2pi/3 (need n >= 7)")
    return 2.0 * float(np.arccosh(np.cos(np.pi / n) / np.sin(np.pi / 3)))


def regular_inradius(n: int) -> float:
    """Distance from the center to a side: ``cosh r = cos(pi/3) / sin(pi/n)``."""
    if n <= 6:
        raise Infeasible(f"no hyperbolic regular {n}-gon with angles 2pi/3 (need n >= 7)")
    return float(np.arccosh(np.cos(np.pi / 3) / np.sin(np.pi / n)))


def triangle_side(angle_c: float, angle_a: float, angle_b: float) -> float:
    """Side opposite ``angle_c`` from the three angles (dual law of cosines)."""
    angles = (angle_a, angle_b, angle_c)
    if any(not 0 < x < np.pi for x in angles):
        raise Infeasible(f"angles must lie in (0, pi), got {angles}")
    if sum(angles) >= np.pi:
        raise Infeasible(f"angle sum {sum(angles)} >= pi is not hyperbolic")
    cosh_c = (np.cos(angle_c) + np.cos(angle_a) * np.cos(angle_b)) / (
        np.sin(angle_a) * np.sin(angle_b))
    return float(np.arccosh(cosh_c))


def triangle_angles(a: float, b: float, c: float) -> tuple[float, float, float]:
    """Angles opposite the sides a, b, c (law of cosines)."""
    ch = np.cosh
    sh = np.sinh

    def opposite(x, y, z):
        cos_x = (ch(y) * ch(z) - ch(x)) / (sh(y) * sh(z))
        return float(np.arccos(np.clip(cos_x, -1.0, 1.0)))

    return opposite(a, b, c), opposite(b, c, a), opposite(c, a, b)


# -- developing map ---------------------------------------------------------------


@dataclass
class Development:
    vertices: np.ndarray      # (n, 3); vertex i starts side i
    frames: np.ndarray        # (n + 1, 3, 3) frame before each side
    holonomy: np.ndarray

    def chord(self, i: int, j: int) -> float:
        """Distance between polygon vertices i and j."""
        n = len(self.vertices)
        return hyperbolic_distance(self.vertices[i % n], self.vertices[j % n])

    def angle(self, i: int, j: int, k: int) -> float:
        """Angle at vertex i of the geodesic triangle (i, j, k)."""
        a = self.chord(j, k)
        b = self.chord(i, k)
        c = self.chord(i, j)
        return triangle_angles(a, b, c)[0]


def develop_lengths(lengths, base: np.ndarray | None = None) -> Development:
    L = np.asarray(lengths, dtype=float)
    if L.ndim != 1 or len(L) == 0:
        raise ValueError("lengths must be a non-empty vector")
    if np.any(L <= 0):
        raise NonPositive("side lengths must be positive")
    if np.any(L > MAX_SIDE):
        raise NumericalOverflow(f"side length above {MAX_SIDE} overflows the hyperboloid model")
    turn = rotation(EXTERIOR_ANGLE)
    F = np.eye(3) if base is None else np.array(base, dtype=float)
    frames = [F]
    for i, length in enumerate(L, 1):
        F = F @ boost(length) @ turn
        if not np.abs(F).max() < MAX_FRAME:
            raise NumericalOverflow(
                f"developed frame left the representable range after {i} sides")
        if i % REORTHO_EVERY == 0:
            F = reorthogonalize(F)
        frames.append(F)
    frames_arr = np.array(frames)
    vertices = frames_arr[:-1] @ ORIGIN
    # holonomy measured in the base frame: base conjugates it
    H = F if base is None else F @ J @ frames[0].T @ J
    return Development(vertices, frames_arr, H)


def develop_polygon(w: SignedWord, lengths, base: np.ndarray | None = None) -> Development:
    if len(lengths) != len(w):
        raise ValueError(f"{len(lengths)} lengths for a word of length {len(w)}")
    return develop_lengths(lengths, base)


def holonomy_log(H: np.ndarray) -> np.ndarray:
    """(rotation angle, x-translation, y-translation) of the Lie algebra element log H."""
    X = np.real(logm(H))
    return np.array([X[1, 0], X[0, 2], X[1, 2]])


def holonomy_deviation(H: np.ndarray) -> float:
    return float(np.abs(H - np.eye(3)).max())


# -- membership in W_U ---------------------------------------------------------


@dataclass
class ClosureResidual:
    pairing: np.ndarray       # one entry per letter, by letter id
    holonomy: np.ndarray      # 3 entries

    def vector(self) -> np.ndarray:
        return np.concatenate([self.pairing, self.holonomy])

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector()))

    def max_abs(self) -> float:
        return float(np.abs(self.vector()).max())

    def __len__(self) -> int:
        return len(self.pairing) + len(self.holonomy)


def _letter_positions(w: SignedWord) -> list[tuple[int, int]]:
    """(position of x, position of x^-1) for every letter, by id."""
    partner = pairing(w.tokens)
    out = {}
    for i, t in enumerate(w.tokens):
        if t & 1 == 0:
            if w.tokens[partner[i]] != t + 1:
                raise MalformedWord(f"letter {w.name(t >> 1)} occurs twice with the same sign")
            out[t >> 1] = (i, partner[i])
    return [out[k] for k in sorted(out)]


def membership_residual(w: SignedWord, lengths) -> ClosureResidual:
    L = np.asarray(lengths, dtype=float)
    pos = _letter_positions(w)
    pair_res = np.array([L[i] - L[j] for i, j in pos])
    H = develop_polygon(w, L).holonomy
    return ClosureResidual(pair_res, holonomy_log(H))


def regular_lengths(w: SignedWord) -> np.ndarray:
    return np.full(len(w), regular_side_length(len(w)))


def residual_jacobian(w: SignedWord, lengths, step: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian of the 6g residual components."""
    L = np.asarray(lengths, dtype=float)
    cols = []
    for i in range(len(L)):
        h = step * max(1.0, abs(L[i]))
        up = L.copy()
        dn = L.copy()
        up[i] += h
        dn[i] -= h
        cols.append((membership_residual(w, up).vector()
                     - membership_residual(w, dn).vector()) / (2 * h))
    return np.column_stack(cols)


def numerical_rank(M: np.ndarray, rel_tol: float = RANK_TOL) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    if len(s) == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


@dataclass
class Projection:
    lengths: np.ndarray
    iterations: int
    residual: float


def project_to_variety(w: SignedWord, lengths0, tol: float = CLOSURE_TOL,
                       max_iter: int = 100) -> Projection:
    """Damped Gauss-Newton onto the set where the residual vanishes.

    The system is underdetermined (6g equations, 12g-6 unknowns); each step is
    the minimum-norm least-squares solution, halved until all lengths stay
    positive and the residual decreases.
    """
    L = np.asarray(lengths0, dtype=float).copy()
    if np.any(L <= 0):
        raise NonPositive("initial lengths must be positive")
    r = membership_residual(w, L).vector()
    for it in range(max_iter + 1):
        norm = float(np.linalg.norm(r))
        if norm < tol:
            return Projection(L, it, norm)
        if it == max_iter:
            break
        Jac = residual_jacobian(w, L)
        step = -np.linalg.lstsq(Jac, r, rcond=None)[0]
        t = 1.0
        while True:
            trial = L + t * step
            if np.all(trial > 0):
                try:
                    r_trial = membership_residual(w, trial).vector()
                except NumericalOverflow:
                    r_trial = None
                if r_trial is not None and np.linalg.norm(r_trial) < norm:
                    break
            t *= 0.5
            if t < 1e-12:
                if np.all(L + step > 0):
                    raise NoConvergence(f"no descent step after {it} iterations (residual {norm:.3e})")
                raise NonPositive("damping cannot keep the side lengths positive")
        L, r = trial, r_trial
    raise NoConvergence(f"residual {float(np.linalg.norm(r)):.3e} after {max_iter} iterations")
