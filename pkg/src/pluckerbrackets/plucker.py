"""Plucker coordinates of 2-planes in R^n.

Coordinates are indexed by ordered pairs (i, j) with 1 <= i < j <= n,
stored in lexicographic order.  Access with swapped indices returns the
negated value, access with i == j returns zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PluckerError",
    "DegeneratePlaneError",
    "NotDecomposableError",
    "PlaneBasis",
    "PluckerVector",
    "pair_list",
    "wedge",
    "plucker_residuals",
    "is_decomposable",
    "max_relation_residual",
    "representation_matrix",
    "numerical_rank",
    "recover_plane",
    "intersection_residuals",
]

DEFAULT_TOL = 1e-9


class PluckerError(ValueError):
    """Invalid input to a Plucker-coordinate operation."""


class DegeneratePlaneError(PluckerError):
    """Spanning vectors are linearly dependent (zero wedge)."""


class NotDecomposableError(PluckerError):
    """Coordinates do not satisfy the Plucker relations."""


def pair_list(n):
    """Ordered pairs (i, j), 1 <= i < j <= n, in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class PlaneBasis:
    """A pair of spanning vectors of a 2-plane in R^n."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        beta = np.asarray(self.beta, dtype=float)
        if alpha.ndim != 1 or beta.ndim != 1:
            raise PluckerError("basis vectors must be one-dimensional")
        if alpha.shape != beta.shape:
            raise PluckerError(
                f"basis vectors have mismatched lengths {alpha.size} and {beta.size}"
            )
        if alpha.size < 3:
            raise PluckerError("dimension must be at least 3")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self):
        return self.alpha.size


class PluckerVector:
    """Antisymmetric coefficient family pi_ij, a candidate point of the
    Plucker embedding of the Grassmannian of 2-planes in R^n."""

    def __init__(self, n, components):
        n = int(n)
        if n < 3:
            raise PluckerError("dimension must be at least 3")
        components = np.asarray(components, dtype=float)
        npairs = n * (n - 1) // 2
        if components.shape != (npairs,):
            raise PluckerError(
                f"expected {npairs} components for n={n}, got {components.shape}"
            )
        if not np.all(np.isfinite(components)):
            raise PluckerError("components must be finite")
        if not np.any(components):
            raise PluckerError("all components are zero; no projective point")
        self.n = n
        self.components = components
        self._pairs = pair_list(n)
        self._index = {pair: k for k, pair in enumerate(self._pairs)}

    @classmethod
    def from_pairs(cls, n, entries):
        """Build from a {(i, j): value} mapping; omitted pairs are zero."""
        if isinstance(entries, dict):
            entries = entries.items()
        components = np.zeros(n * (n - 1) // 2, dtype=float)
        index = {pair: k for k, pair in enumerate(pair_list(n))}
        for (i, j), value in entries:
            if i == j:
                raise PluckerError(f"diagonal pair ({i}, {j}) is not allowed")
            sign = 1.0
            if i > j:
                i, j, sign = j, i, -1.0
            if (i, j) not in index:
                raise PluckerError(f"pair ({i}, {j}) out of range for n={n}")
            components[index[(i, j)]] = sign * value
        return cls(n, components)

    def get(self, i, j):
        """Component pi_ij under the antisymmetric access convention."""
        if i == j:
            return 0.0
        if i < j:
            return float(self.components[self._index[(i, j)]])
        return -float(self.components[self._index[(j, i)]])

    def pairs(self):
        """Iterate over ((i, j), pi_ij) in lexicographic order."""
        return zip(self._pairs, self.components)

    def as_matrix(self):
        """The constant skew-symmetric n x n matrix (pi_ij)."""
        m = np.zeros((self.n, self.n))
        for (i, j), value in self.pairs():
            m[i - 1, j - 1] = value
            m[j - 1, i - 1] = -value
        return m

    @property
    def scale(self):
        """max |pi_ij|, the natural projective normalization."""
        return float(np.max(np.abs(self.components)))

    def scaled(self, factor):
        return PluckerVector(self.n, factor * self.components)

    def __repr__(self):
        nonzero = {p: v for p, v in self.pairs() if v != 0.0}
        return f"PluckerVector(n={self.n}, {nonzero})"


def wedge(basis):
    """Plucker coordinates pi_ij = alpha_i beta_j - alpha_j beta_i of the
    plane spanned by the basis."""
    a, b = basis.alpha, basis.beta
    outer = np.outer(a, b)
    skew = outer - outer.T
    iu = np.triu_indices(basis.n, k=1)
    components = skew[iu]
    scale = np.linalg.norm(a) * np.linalg.norm(b)
    if np.max(np.abs(components), initial=0.0) <= 1e-12 * max(scale, 1e-300):
        raise DegeneratePlaneError("basis vectors are linearly dependent")
    return PluckerVector(basis.n, components)


def plucker_residuals(p):
    """Residuals R_ijkl = p_ij p_kl - p_ik p_jl + p_jk p_il over all
    quadruples i < j < k < l.  Empty for n = 3."""
    out = []
    for i, j, k, l in itertools.combinations(range(1, p.n + 1), 4):
        r = p.get(i, j) * p.get(k, l) - p.get(i, k) * p.get(j, l) + p.get(j, k) * p.get(i, l)
        out.append(((i, j, k, l), r))
    return out


def max_relation_residual(p):
    """max |R_ijkl| / max|p|^2; zero for n = 3."""
    residuals = plucker_residuals(p)
    if not residuals:
        return 0.0
    return max(abs(r) for _, r in residuals) / p.scale**2


def is_decomposable(p, tol=DEFAULT_TOL):
    """Whether p lies on the Plucker quadrics, i.e. comes from an actual
    2-plane.  Vacuously true for n = 3."""
    if tol <= 0:
        raise PluckerError("tolerance must be positive")
    return max_relation_residual(p) <= tol


def representation_matrix(p):
    """Matrix of v -> v ^ p from R^n to the triple-wedge space, in
    lexicographic bases.  Shape C(n,3) x n; rank n - 2 iff p is
    decomposable."""
    n = p.n
    triples = list(itertools.combinations(range(1, n + 1), 3))
    m = np.zeros((len(triples), n))
    for row, (a, b, c) in enumerate(triples):
        # e_a ^ e_b ^ e_c picks up p_bc from e_a, -p_ac from e_b, p_ab from e_c
        m[row, a - 1] = p.get(b, c)
        m[row, b - 1] = -p.get(a, c)
        m[row, c - 1] = p.get(a, b)
    return m


def numerical_rank(matrix):
    """SVD rank with threshold max(shape) * eps * largest singular value."""
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    threshold = max(matrix.shape) * np.finfo(float).eps * s[0]
    return int(np.sum(s > threshold))


def recover_plane(p, tol=DEFAULT_TOL):
    """Invert the Plucker embedding: a basis (alpha, beta) whose wedge
    reproduces p componentwise.

    Pivot on the largest-magnitude component p_ab (ties broken
    lexicographically) and set alpha_j = p_aj / p_ab, beta_j = p_bj; the
    Plucker relation p_ab p_ij = p_ai p_bj - p_aj p_bi makes the wedge
    exact for decomposable input.
    """
    if not is_decomposable(p, tol):
        raise NotDecomposableError(
            f"relation residual {max_relation_residual(p):.3e} exceeds tolerance {tol:.3e}"
        )
    k = int(np.argmax(np.abs(p.components)))
    a, b = pair_list(p.n)[k]
    pivot = p.get(a, b)
    alpha = np.array([p.get(a, j) / pivot for j in range(1, p.n + 1)])
    beta = np.array([p.get(b, j) for j in range(1, p.n + 1)])
    return PlaneBasis(alpha, beta)


def intersection_residuals(p, q):
    """Polarized Plucker pairing of two lines; all residuals vanish iff
    the lines intersect in projective space.  Empty for n = 3."""
    if p.n != q.n:
        raise PluckerError(f"dimension mismatch: {p.n} vs {q.n}")
    out = []
    for i, j, k, l in itertools.combinations(range(1, p.n + 1), 4):
        r = (
            p.get(i, j) * q.get(k, l)
            - p.get(i, k) * q.get(j, l)
            + p.get(i, l) * q.get(j, k)
            + p.get(j, k) * q.get(i, l)
            - p.get(j, l) * q.get(i, k)
            + p.get(k, l) * q.get(i, j)
        )
        out.append(((i, j, k, l), r))
    return out
