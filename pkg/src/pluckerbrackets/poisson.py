"""The bracket family {x_i, x_j} = pi_ij x_1 ... (x_i, x_j omitted) ... x_n,
its verification machinery, and the equivalent Jacobian (Nambu-type)
determinant bracket.
"""

from __future__ import annotations

import abc
import itertools

import numpy as np
import scipy.linalg

from .plucker import (
    DEFAULT_TOL,
    NotDecomposableError,
    PlaneBasis,
    PluckerError,
    PluckerVector,
    intersection_residuals,
    is_decomposable,
    max_relation_residual,
    numerical_rank,
    pair_list,
    recover_plane,
)

__all__ = [
    "BracketSource",
    "PluckerBracket",
    "ConstantBracket",
    "CanonicalBracket",
    "E3Bracket",
    "QuadraticForm",
    "gradient_of",
    "value_of",
    "bracket_of",
    "jacobiator",
    "jacobiator_tensor",
    "rank_at",
    "decompose_tensor",
    "casimir_fijk",
    "kernel_casimirs",
    "coordinate_function",
    "jacobian_bracket",
    "plucker_from_diagonal_quadrics",
    "plucker_to_jacobian",
    "compatibility_residuals",
    "sum_bracket",
]

_FD_STEP = np.cbrt(np.finfo(float).eps)


class QuadraticForm:
    """Symmetric coefficient matrix A representing x -> 1/2 x^T A x."""

    def __init__(self, matrix):
        a = np.asarray(matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("coefficient matrix must be square")
        self.matrix = 0.5 * (a + a.T)
        self.n = a.shape[0]

    @classmethod
    def diagonal(cls, coefficients):
        """1/2 sum_k a_k x_k^2 from the coefficient vector."""
        return cls(np.diag(np.asarray(coefficients, dtype=float)))

    @property
    def diagonal_coefficients(self):
        return np.diag(self.matrix).copy()

    def is_diagonal(self):
        return np.allclose(self.matrix, np.diag(np.diag(self.matrix)), atol=0.0)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * float(x @ self.matrix @ x)

    def gradient(self, x):
        return self.matrix @ np.asarray(x, dtype=float)

    def __call__(self, x):
        return self.value(x)

    def __repr__(self):
        return f"QuadraticForm({self.matrix!r})"


def value_of(f, x):
    if hasattr(f, "value"):
        return f.value(x)
    return float(f(np.asarray(x, dtype=float)))


def gradient_of(f, x):
    """Gradient of a scalar function; exact when f exposes .gradient,
    central finite differences otherwise."""
    x = np.asarray(x, dtype=float)
    if hasattr(f, "gradient"):
        return np.asarray(f.gradient(x), dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        h = _FD_STEP * max(1.0, abs(x[i]))
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        grad[i] = (value_of(f, xp) - value_of(f, xm)) / (2.0 * h)
    return grad


class BracketSource(abc.ABC):
    """Provider of a skew-symmetric structure matrix P(x) at a point."""

    n: int

    @abc.abstractmethod
    def structure_matrix_at(self, x):
        """Skew-symmetric n x n matrix P(x)."""

    def structure_derivative_at(self, x):
        """Tensor D with D[l, i, j] = dP_ij/dx_l; finite differences
        unless a subclass provides the analytic form."""
        x = np.asarray(x, dtype=float)
        d = np.empty((self.n, self.n, self.n))
        for l in range(self.n):
            h = _FD_STEP * max(1.0, abs(x[l]))
            xp, xm = x.copy(), x.copy()
            xp[l] += h
            xm[l] -= h
            d[l] = (self.structure_matrix_at(xp) - self.structure_matrix_at(xm)) / (2.0 * h)
        return d


class PluckerBracket(BracketSource):
    """Poisson structure {x_i, x_j} = pi_ij x_1 ... (hatted i, j) ... x_n.

    Construction validates the Plucker relations (the Jacobi identity is
    equivalent to them); pass unchecked=True to build a non-Poisson
    candidate for negative tests.
    """

    def __init__(self, pi, tol=DEFAULT_TOL, unchecked=False):
        if not isinstance(pi, PluckerVector):
            raise TypeError("pi must be a PluckerVector")
        if not unchecked and not is_decomposable(pi, tol):
            raise NotDecomposableError(
                "pi violates the Plucker relations (residual "
                f"{max_relation_residual(pi):.3e} > {tol:.3e}); the bracket "
                "would not satisfy the Jacobi identity"
            )
        self.pi = pi
        self.n = pi.n

    def structure_matrix_at(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"expected point of length {self.n}")
        n = self.n
        pim = self.pi.as_matrix()
        if np.all(x != 0.0):
            total = float(np.prod(x))
            return pim * (total / np.outer(x, x))
        p = np.zeros((n, n))
        for (i, j), v in self.pi.pairs():
            mask = np.ones(n, dtype=bool)
            mask[[i - 1, j - 1]] = False
            entry = v * float(np.prod(x[mask]))
            p[i - 1, j - 1] = entry
            p[j - 1, i - 1] = -entry
        return p

    def structure_derivative_at(self, x):
        x = np.asarray(x, dtype=float)
        n = self.n
        d = np.empty((n, n, n))
        if np.all(x != 0.0):
            p = self.structure_matrix_at(x)
            d = p[None, :, :] / x[:, None, None]
        else:
            pim = self.pi.as_matrix()
            for l in range(n):
                for i in range(n):
                    for j in range(n):
                        if l == i or l == j or i == j:
                            d[l, i, j] = 0.0
                            continue
                        mask = np.ones(n, dtype=bool)
                        mask[[i, j, l]] = False
                        d[l, i, j] = pim[i, j] * float(np.prod(x[mask]))
            return d
        idx = np.arange(n)
        d[idx, idx, :] = 0.0
        d[idx, :, idx] = 0.0
        return d


class ConstantBracket(BracketSource):
    """Constant skew-symmetric structure matrix."""

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("structure matrix must be square")
        if not np.allclose(m, -m.T):
            raise ValueError("structure matrix must be skew-symmetric")
        self.matrix = m
        self.n = m.shape[0]

    def structure_matrix_at(self, x):
        return self.matrix.copy()

    def structure_derivative_at(self, x):
        return np.zeros((self.n, self.n, self.n))


class CanonicalBracket(ConstantBracket):
    """Canonical symplectic bracket on R^{2d} with coordinates
    (q_1..q_d, p_1..p_d): {q_i, p_j} = delta_ij."""

    def __init__(self, d):
        eye = np.eye(d)
        zero = np.zeros((d, d))
        super().__init__(np.block([[zero, eye], [-eye, zero]]))
        self.d = d


def _skew3(v):
    return np.array(
        [
            [0.0, v[2], -v[1]],
            [-v[2], 0.0, v[0]],
            [v[1], -v[0], 0.0],
        ]
    )


class E3Bracket(BracketSource):
    """Lie-Poisson bracket of the Euclidean algebra e(3) on R^6 with
    coordinates (x_1, x_2, x_3, y_1, y_2, y_3): block matrix
    [[0, X], [X, Y]] with X, Y the skew matrices of x and y."""

    n = 6

    def structure_matrix_at(self, state):
        state = np.asarray(state, dtype=float)
        x, y = state[:3], state[3:]
        sx, sy = _skew3(x), _skew3(y)
        zero = np.zeros((3, 3))
        return np.block([[zero, sx], [sx, sy]])

    def structure_derivative_at(self, state):
        d = np.zeros((6, 6, 6))
        zero = np.zeros((3, 3))
        for l in range(6):
            se = _skew3(np.eye(3)[l % 3])
            if l < 3:
                d[l] = np.block([[zero, se], [se, zero]])
            else:
                d[l] = np.block([[zero, zero], [zero, se]])
        return d


def bracket_of(src, f, g, x):
    """{f, g}(x) = grad f(x)^T P(x) grad g(x)."""
    p = src.structure_matrix_at(x)
    return float(gradient_of(f, x) @ p @ gradient_of(g, x))


def jacobiator_tensor(src, x):
    """Full cyclic-sum tensor J[i, j, k] (0-based) of the Jacobi identity
    defect on coordinate triples."""
    p = src.structure_matrix_at(x)
    d = src.structure_derivative_at(x)
    j = np.einsum("ljk,il->ijk", d, p)
    return j + np.transpose(j, (1, 2, 0)) + np.transpose(j, (2, 0, 1))


def jacobiator(src, i, j, k, x):
    """{x_i,{x_j,x_k}} + {x_j,{x_k,x_i}} + {x_k,{x_i,x_j}} at x.
    Indices are 1-based and must be distinct."""
    for idx in (i, j, k):
        if not 1 <= idx <= src.n:
            raise IndexError(f"index {idx} out of range for n={src.n}")
    if len({i, j, k}) != 3:
        raise ValueError("indices must be distinct")
    p = src.structure_matrix_at(x)
    d = src.structure_derivative_at(x)
    i, j, k = i - 1, j - 1, k - 1
    return float(
        d[:, j, k] @ p[i, :] + d[:, k, i] @ p[j, :] + d[:, i, j] @ p[k, :]
    )


def rank_at(src, x):
    """Numerical rank of the structure matrix at x."""
    return numerical_rank(src.structure_matrix_at(x))


def decompose_tensor(b, tol=DEFAULT_TOL):
    """Factor the bracket as P = Psi * X ^ Y with Psi = x_1 ... x_n,
    X_i = alpha_i / x_i, Y_j = beta_j / x_j.  Returns the plane basis
    (alpha, beta)."""
    return recover_plane(b.pi, tol)


def casimir_fijk(b, i, j, k):
    """The diagonal quadratic Casimir with coefficients pi_jk at i,
    -pi_ik at j, pi_ij at k (the 1/2 x^T A x convention halves the
    textbook value, which is scale-irrelevant)."""
    if not (1 <= i < j < k <= b.n):
        raise IndexError(f"need 1 <= i < j < k <= {b.n}, got ({i}, {j}, {k})")
    coeffs = np.zeros(b.n)
    coeffs[i - 1] = b.pi.get(j, k)
    coeffs[j - 1] = -b.pi.get(i, k)
    coeffs[k - 1] = b.pi.get(i, j)
    return QuadraticForm.diagonal(coeffs)


def kernel_casimirs(b):
    """Diagonal quadratic Casimirs 1/2 sum a_k x_k^2 built from an
    orthonormal basis of the kernel of the constant matrix (pi_ij);
    the kernel has dimension n - 2 for a rank-2 structure."""
    kernel = scipy.linalg.null_space(b.pi.as_matrix())
    return [QuadraticForm.diagonal(kernel[:, m]) for m in range(kernel.shape[1])]


def jacobian_bracket(casimirs, psi, f, g, x):
    """{f, g}(x) = Psi(x) * det(grad f, grad g, grad f_1, ..., grad f_{n-2});
    each f_m is automatically a Casimir.  psi may be a scalar constant or
    a scalar function of x."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if len(casimirs) != n - 2:
        raise ValueError(f"need exactly {n - 2} Casimir functions, got {len(casimirs)}")
    cols = [gradient_of(f, x), gradient_of(g, x)]
    cols += [gradient_of(fm, x) for fm in casimirs]
    det = float(np.linalg.det(np.column_stack(cols)))
    factor = value_of(psi, x) if callable(psi) or hasattr(psi, "value") else float(psi)
    return factor * det


def plucker_from_diagonal_quadrics(forms):
    """Plucker coordinates of the Jacobian bracket generated by n - 2
    diagonal quadratic Casimirs (Psi = 1): pi_ij is the signed minor of
    the coefficient matrix with columns i and j deleted."""
    if not forms:
        raise ValueError("at least one quadratic form is required")
    n = forms[0].n
    if len(forms) != n - 2:
        raise ValueError(f"need exactly {n - 2} forms in dimension {n}")
    rows = []
    for form in forms:
        if form.n != n:
            raise ValueError("forms have mismatched dimensions")
        if not form.is_diagonal():
            raise ValueError("forms must be diagonal quadrics")
        rows.append(form.diagonal_coefficients)
    coeff = np.vstack(rows)
    if numerical_rank(coeff) < n - 2:
        raise PluckerError("coefficient vectors are linearly dependent")
    components = []
    for i, j in pair_list(n):
        keep = [c for c in range(n) if c not in (i - 1, j - 1)]
        minor = float(np.linalg.det(coeff[:, keep])) if keep else 1.0
        components.append((-1.0) ** (i + j + 1) * minor)
    return PluckerVector(n, components)


def plucker_to_jacobian(b, rng=None, tol=1e-9):
    """Express the bracket as lambda * Jacobian bracket of its n - 2
    kernel Casimirs (Psi = 1); returns (casimirs, lambda).

    The multiplier is fixed at one generic point on the largest-|pi|
    coordinate pair and cross-checked on every pair at several points;
    inconsistency signals a bug, not a legal outcome.
    """
    rng = np.random.default_rng(rng)
    forms = kernel_casimirs(b)
    if len(forms) != b.n - 2:
        raise PluckerError(
            f"kernel dimension {len(forms)} != {b.n - 2}; rank is not 2"
        )
    k = int(np.argmax(np.abs(b.pi.components)))
    i0, j0 = pair_list(b.n)[k]
    x0 = rng.uniform(0.5, 2.0, size=b.n)
    num = b.structure_matrix_at(x0)[i0 - 1, j0 - 1]
    den = jacobian_bracket(forms, 1.0, _Coordinate(i0, b.n), _Coordinate(j0, b.n), x0)
    if den == 0.0:
        raise PluckerError("Jacobian bracket degenerate at the sample point")
    lam = num / den
    scale = max(abs(num), abs(den), 1e-300)
    for _ in range(5):
        x = rng.uniform(0.5, 2.0, size=b.n) * rng.choice([-1.0, 1.0], size=b.n)
        p = b.structure_matrix_at(x)
        for i, j in pair_list(b.n):
            jb = jacobian_bracket(forms, 1.0, _Coordinate(i, b.n), _Coordinate(j, b.n), x)
            if abs(p[i - 1, j - 1] - lam * jb) > tol * max(
                1.0, abs(p[i - 1, j - 1]), abs(lam * jb)
            ):
                raise PluckerError(
                    "inconsistent multiplier across entries: "
                    f"P_{i}{j}={p[i - 1, j - 1]:.6e} vs lambda*det={lam * jb:.6e}"
                )
    return forms, float(lam)


class _Coordinate:
    """Coordinate function x_m with exact gradient (1-based index)."""

    def __init__(self, m, n):
        self.m = m
        self.n = n

    def value(self, x):
        return float(x[self.m - 1])

    def gradient(self, x):
        g = np.zeros(self.n)
        g[self.m - 1] = 1.0
        return g


def coordinate_function(m, n):
    """The coordinate function x_m (1-based) as a differentiable scalar."""
    return _Coordinate(m, n)


def compatibility_residuals(a, b):
    """Intersection residuals of the two underlying lines; the brackets
    are compatible (their sum is Poisson) iff all residuals vanish."""
    return intersection_residuals(a.pi, b.pi)


def sum_bracket(a, b):
    """The entrywise-sum candidate bracket pi + pi', built unchecked so
    the Jacobi defect of an incompatible pair is observable."""
    if a.n != b.n:
        raise PluckerError(f"dimension mismatch: {a.n} vs {b.n}")
    return PluckerBracket(
        PluckerVector(a.n, a.pi.components + b.pi.components), unchecked=True
    )
