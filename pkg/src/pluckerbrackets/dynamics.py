"""Hamiltonian vector fields, adaptive integration with invariant
monitoring, Jacobi elliptic functions (ODE path plus an independent
quadrature-inversion oracle), and the classical realizations on R^4 and
on the Euclidean algebra e(3).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.integrate
import scipy.optimize

from .plucker import PluckerVector
from .poisson import (
    BracketSource,
    CanonicalBracket,
    E3Bracket,
    PluckerBracket,
    QuadraticForm,
    gradient_of,
    value_of,
)

__all__ = [
    "HamiltonianSystem",
    "Trajectory",
    "ClebschParameters",
    "IntegrationError",
    "BlowUpError",
    "vector_field",
    "integrate",
    "jacobi_elliptic",
    "elliptic_oracle",
    "quarter_period",
    "bihamiltonian_residual",
    "realization_r4_map",
    "realization_r4_system",
    "R4Hamiltonian",
    "pi1_bracket",
    "pi2_bracket",
    "poisson3_bracket",
    "jacobi_system",
    "clebsch_map",
    "e3_casimirs",
    "clebsch_condition_residual",
    "clebsch_extra_integral",
    "clebsch_system",
    "fairlie_system",
    "invariant_drift",
]


class IntegrationError(RuntimeError):
    """The integrator could not continue."""


class BlowUpError(IntegrationError):
    """Step size underflow or non-finite state; carries the failure time."""

    def __init__(self, time, message=None):
        super().__init__(message or f"solution blows up near t = {time:.6g}")
        self.time = time


@dataclass
class HamiltonianSystem:
    """A bracket source, a Hamiltonian, and invariants to monitor."""

    source: BracketSource
    hamiltonian: object
    invariants: list = field(default_factory=list)

    @property
    def n(self):
        return self.source.n


@dataclass
class Trajectory:
    """States at accepted steps plus per-step monitored invariant values."""

    times: np.ndarray
    states: np.ndarray
    invariant_values: np.ndarray
    accepted: int = 0
    rejected: int = 0
    final_step: float = 0.0
    sample_times: np.ndarray | None = None
    sample_states: np.ndarray | None = None


def vector_field(sys, x):
    """P(x) * grad H(x)."""
    x = np.asarray(x, dtype=float)
    return sys.source.structure_matrix_at(x) @ gradient_of(sys.hamiltonian, x)


# Dormand-Prince 5(4) tableau (FSAL).
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_E = _DP_B5 - np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)

_SAFETY = 0.9
_MIN_SCALE = 0.2
_MAX_SCALE = 5.0
_MAX_STEPS = 5_000_000


def _error_norm(err, y_old, y_new, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _hermite(t, t0, t1, y0, y1, f0, f1):
    h = t1 - t0
    s = (t - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s**2 * (3 - 2 * s)
    h11 = s**2 * (s - 1)
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


def integrate(
    sys,
    x0,
    t_end,
    rtol=1e-9,
    atol=1e-12,
    method="dopri54",
    h0=None,
    t_eval=None,
):
    """Integrate x' = P(x) grad H(x) from t = 0 to t_end.

    method is "dopri54" (adaptive embedded 5(4) pair with PI step
    control, the default) or "rk4" (classical fixed step, size h0).
    Monitored invariants are recorded at every accepted step; extra
    sample times in t_eval are filled in by cubic Hermite interpolation.
    """
    x0 = np.asarray(x0, dtype=float)
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    if rtol <= 0 or atol <= 0:
        raise ValueError("rtol and atol must be positive")

    def rhs(x):
        return sys.source.structure_matrix_at(x) @ gradient_of(sys.hamiltonian, x)

    times = [0.0]
    states = [x0.copy()]
    derivs = [rhs(x0)]
    accepted = rejected = 0
    h = 0.0

    if t_end > 0 and method == "rk4":
        h = h0 if h0 is not None else t_end / 1000.0
        nsteps = max(1, int(round(t_end / h)))
        h = t_end / nsteps
        x = x0.copy()
        t = 0.0
        for _ in range(nsteps):
            k1 = rhs(x)
            k2 = rhs(x + 0.5 * h * k1)
            k3 = rhs(x + 0.5 * h * k2)
            k4 = rhs(x + h * k3)
            x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            t += h
            if not np.all(np.isfinite(x)):
                raise BlowUpError(t)
            times.append(t)
            states.append(x.copy())
            derivs.append(rhs(x))
            accepted += 1
    elif t_end > 0:
        if method != "dopri54":
            raise ValueError(f"unknown method {method!r}")
        x = x0.copy()
        t = 0.0
        f = derivs[0]
        fnorm = np.linalg.norm(f)
        if h0 is not None:
            h = float(h0)
        else:
            h = 0.01 * max(np.linalg.norm(x), 1.0) / max(fnorm, 1e-8)
            h = min(h, t_end)
        err_prev = 1.0
        k = np.empty((7, x.size))
        steps = 0
        while t < t_end:
            if steps > _MAX_STEPS:
                raise IntegrationError("maximum step count exceeded")
            steps += 1
            h = min(h, t_end - t)
            if h < 1e-14 * max(1.0, abs(t)):
                raise BlowUpError(t)
            k[0] = f
            for s in range(1, 7):
                k[s] = rhs(x + h * (_DP_A[s] @ k[:s]))
            x_new = x + h * (_DP_B5 @ k)
            err_vec = h * (_DP_E @ k)
            if not np.all(np.isfinite(x_new)):
                h *= _MIN_SCALE
                rejected += 1
                continue
            err = _error_norm(err_vec, x, x_new, rtol, atol)
            if err <= 1.0:
                t += h
                x = x_new
                f = k[6]  # FSAL
                times.append(t)
                states.append(x.copy())
                derivs.append(f.copy())
                accepted += 1
                e = max(err, 1e-16)
                factor = _SAFETY * e ** (-0.7 / 5.0) * err_prev ** (0.4 / 5.0)
                h *= min(_MAX_SCALE, max(_MIN_SCALE, factor))
                err_prev = e
            else:
                rejected += 1
                h *= max(_MIN_SCALE, _SAFETY * err ** (-0.2))

    times = np.asarray(times)
    states = np.asarray(states)
    monitors = sys.invariants
    inv = np.empty((times.size, len(monitors)))
    for m, fn in enumerate(monitors):
        inv[:, m] = [value_of(fn, s) for s in states]

    traj = Trajectory(
        times=times,
        states=states,
        invariant_values=inv,
        accepted=accepted,
        rejected=rejected,
        final_step=float(h),
    )
    if t_eval is not None:
        t_eval = np.asarray(t_eval, dtype=float)
        samples = np.empty((t_eval.size, x0.size))
        derivs = np.asarray(derivs)
        for m, tq in enumerate(t_eval):
            if tq <= 0.0:
                samples[m] = states[0]
                continue
            idx = int(np.searchsorted(times, tq, side="left"))
            idx = min(max(idx, 1), times.size - 1)
            samples[m] = _hermite(
                tq,
                times[idx - 1],
                times[idx],
                states[idx - 1],
                states[idx],
                derivs[idx - 1],
                derivs[idx],
            )
        traj.sample_times = t_eval
        traj.sample_states = samples
    return traj


def invariant_drift(traj):
    """Per-invariant max |f(x(t)) - f(x(0))|, absolute and normalized by
    max(1, |f(x(0))|)."""
    if traj.times.size == 0:
        raise ValueError("empty trajectory")
    start = traj.invariant_values[0]
    drift = np.max(np.abs(traj.invariant_values - start), axis=0)
    normalized = drift / np.maximum(1.0, np.abs(start))
    return drift, normalized


# ---------------------------------------------------------------------------
# Jacobi elliptic functions


def _elliptic_rhs_system(k):
    """x' = yz, y' = -xz, z' = -k^2 xy as a HamiltonianSystem on the
    3-dimensional monomial bracket pi_13 = 1, pi_23 = -1 with
    H = 1/2 (k^2 x^2 + z^2)."""
    bracket = pi1_bracket()
    h = QuadraticForm.diagonal([k**2, 0.0, 1.0])
    f = QuadraticForm.diagonal([2.0, 2.0, 0.0])  # x^2 + y^2
    g = QuadraticForm.diagonal([2.0 * k**2, 0.0, 2.0])  # k^2 x^2 + z^2
    return HamiltonianSystem(bracket, h, invariants=[f, g])


def jacobi_system(k):
    """The defining ODE system of sn, cn, dn with its two invariants
    F = x^2 + y^2 and G = k^2 x^2 + z^2."""
    return _elliptic_rhs_system(k)


def jacobi_elliptic(t, k, rtol=1e-12, atol=1e-14):
    """(sn, cn, dn)(t, k) by integrating the defining ODE system from
    (0, 1, 1).  Negative t via the parity sn(-t) = -sn(t)."""
    if not 0.0 <= k < 1.0:
        raise ValueError("modulus k must lie in [0, 1)")
    sign = 1.0
    if t < 0:
        t, sign = -t, -1.0
    if t == 0.0:
        return (0.0, 1.0, 1.0)
    sys = _elliptic_rhs_system(k)
    traj = integrate(sys, np.array([0.0, 1.0, 1.0]), t, rtol=rtol, atol=atol)
    x, y, z = traj.states[-1]
    return (sign * float(x), float(y), float(z))


def _elliptic_theta_integrand(k):
    def integrand(theta):
        return 1.0 / np.sqrt(1.0 - k**2 * np.sin(theta) ** 2)

    return integrand


def quarter_period(k):
    """Complete elliptic integral K(k) via the theta-substituted form
    (no endpoint singularity)."""
    if not 0.0 <= k < 1.0:
        raise ValueError("modulus k must lie in [0, 1)")
    val, _ = scipy.integrate.quad(
        _elliptic_theta_integrand(k), 0.0, np.pi / 2, epsabs=1e-12, epsrel=1e-12
    )
    return float(val)


def elliptic_oracle(t, k):
    """(sn, cn, dn)(t, k), independent of the ODE path: numerically
    invert the incomplete elliptic integral of the first kind by
    quadrature plus bracketed root finding, then apply the identities.

    Valid on the primary branch |t| < K(k); extension past the quarter
    period is out of scope.
    """
    if not 0.0 <= k < 1.0:
        raise ValueError("modulus k must lie in [0, 1)")
    sign = 1.0
    if t < 0:
        t, sign = -t, -1.0
    big_k = quarter_period(k)
    if t >= big_k:
        raise ValueError(f"t = {t:.6g} is outside the primary branch [0, K(k) = {big_k:.6g})")
    if t == 0.0:
        return (0.0, 1.0, 1.0)
    integrand = _elliptic_theta_integrand(k)

    def f_of_phi(phi):
        val, _ = scipy.integrate.quad(integrand, 0.0, phi, epsabs=1e-12, epsrel=1e-12)
        return val - t

    phi = scipy.optimize.brentq(f_of_phi, 0.0, np.pi / 2, xtol=1e-12)
    # One Newton polish with the closed-form integrand as the derivative.
    phi -= f_of_phi(phi) * np.sqrt(1.0 - k**2 * np.sin(phi) ** 2)
    sn = np.sin(phi)
    cn = np.sqrt(max(0.0, 1.0 - sn**2))
    dn = np.sqrt(max(0.0, 1.0 - k**2 * sn**2))
    return (sign * float(sn), float(cn), float(dn))


# ---------------------------------------------------------------------------
# Three-dimensional brackets of the bi-Hamiltonian pair


def pi1_bracket():
    """{x, y} = 0, {x, z} = y, {y, z} = -x."""
    return PluckerBracket(PluckerVector.from_pairs(3, {(1, 3): 1.0, (2, 3): -1.0}))


def pi2_bracket(k):
    """{x, y} = z, {x, z} = 0, {y, z} = k^2 x."""
    return PluckerBracket(PluckerVector.from_pairs(3, {(1, 2): 1.0, (2, 3): k**2}))


def poisson3_bracket(k):
    """{x, y} = z, {x, z} = k^2 y / 2, {y, z} = k^2 x / 2."""
    return PluckerBracket(
        PluckerVector.from_pairs(3, {(1, 2): 1.0, (1, 3): 0.5 * k**2, (2, 3): 0.5 * k**2})
    )


def bihamiltonian_residual(sys_a, sys_b, points):
    """max over points of ||P_A grad H_A - P_B grad H_B|| normalized by
    max(1, ||P_A grad H_A||)."""
    if sys_a.n != sys_b.n:
        raise ValueError("dimension mismatch")
    worst = 0.0
    for x in points:
        fa = vector_field(sys_a, x)
        fb = vector_field(sys_b, x)
        worst = max(worst, np.linalg.norm(fa - fb) / max(1.0, np.linalg.norm(fa)))
    return worst


# ---------------------------------------------------------------------------
# Symplectic realizations


def realization_r4_map(q1, q2, p1, p2):
    """(x, y, z) = (p_1, p_2, p_1 q_2 - p_2 q_1)."""
    return np.array([p1, p2, p1 * q2 - p2 * q1], dtype=float)


class R4Hamiltonian:
    """H = 1/2 (1 + k^2) p_1^2 + 1/2 p_2^2 + 1/2 (p_1 q_2 - p_2 q_1)^2
    on R^4 with coordinates (q_1, q_2, p_1, p_2); exact gradient."""

    n = 4

    def __init__(self, k):
        self.k = float(k)

    def value(self, xi):
        q1, q2, p1, p2 = xi
        z = p1 * q2 - p2 * q1
        return 0.5 * (1.0 + self.k**2) * p1**2 + 0.5 * p2**2 + 0.5 * z**2

    def gradient(self, xi):
        q1, q2, p1, p2 = xi
        z = p1 * q2 - p2 * q1
        return np.array(
            [
                -z * p2,
                z * p1,
                (1.0 + self.k**2) * p1 + z * q2,
                p2 - z * q1,
            ]
        )


def realization_r4_system(k):
    """The canonical Hamiltonian system on R^4 whose image under
    realization_r4_map is the elliptic-function system; monitors H and
    the momentum integral (p_1^2 + p_2^2) / 2."""
    h = R4Hamiltonian(k)
    momentum = QuadraticForm.diagonal([0.0, 0.0, 1.0, 1.0])
    return HamiltonianSystem(CanonicalBracket(2), h, invariants=[h, momentum])


def clebsch_map(q, p):
    """(x, y) with x = p and y = (p_3 q_2 - p_2 q_3, p_1 q_3 - p_3 q_1,
    p_2 q_1 - p_1 q_2)."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    y = np.array(
        [
            p[2] * q[1] - p[1] * q[2],
            p[0] * q[2] - p[2] * q[0],
            p[1] * q[0] - p[0] * q[1],
        ]
    )
    return p.copy(), y


@dataclass(frozen=True)
class ClebschParameters:
    """Coefficients (lambda_1..3, kappa_1..3) of the Clebsch Hamiltonian
    h = 1/2 (sum lambda_i x_i^2 + sum kappa_i y_i^2)."""

    lam: tuple
    kappa: tuple

    def __post_init__(self):
        if len(self.lam) != 3 or len(self.kappa) != 3:
            raise ValueError("lambda and kappa must each have three entries")

    def hamiltonian(self):
        return QuadraticForm.diagonal(list(self.lam) + list(self.kappa))


def clebsch_condition_residual(params):
    """(l2 - l3)/k1 + (l3 - l1)/k2 + (l1 - l2)/k3; zero on the
    integrable cases."""
    l1, l2, l3 = params.lam
    k1, k2, k3 = params.kappa
    if k1 == 0 or k2 == 0 or k3 == 0:
        raise ValueError("all kappa_i must be nonzero")
    return (l2 - l3) / k1 + (l3 - l1) / k2 + (l1 - l2) / k3


def clebsch_extra_integral(params, ratio_tol=None):
    """The extra integral f_3 = sum kappa_i x_i^2 + c sum y_i^2 with
    c = kappa_1 (kappa_2 - kappa_3) / (lambda_2 - lambda_3).

    The constant must weight only the y-part: {f_3, h} expands to three
    independent cubic monomial families whose coefficients vanish
    exactly when each lambda_i - lambda_j equals kappa_k (kappa_i -
    kappa_j) / c, i.e. when the three expressions for c coincide.

    Returns (c, f_3, ratio_spread) where ratio_spread is the maximum
    relative disagreement of the three equivalent expressions for c.
    Requires pairwise-distinct lambda; coinciding values make the ratios
    0/0 and the condition is reported as degenerate.
    """
    l1, l2, l3 = params.lam
    k1, k2, k3 = params.kappa
    if l1 == l2 or l2 == l3 or l1 == l3:
        raise ValueError("lambda values must be pairwise distinct")
    ratios = np.array(
        [
            k1 * (k2 - k3) / (l2 - l3),
            k2 * (k3 - k1) / (l3 - l1),
            k3 * (k1 - k2) / (l1 - l2),
        ]
    )
    c = float(ratios[0])
    spread = float(np.max(np.abs(ratios - c)) / max(1.0, abs(c)))
    if ratio_tol is not None and spread > ratio_tol:
        raise ValueError(
            f"c-ratios disagree by {spread:.3e}; the integrability condition fails"
        )
    f3 = QuadraticForm.diagonal([k1, k2, k3, c, c, c])
    return c, f3, spread


def e3_casimirs():
    """f_1 = sum x_i^2 and f_2 = sum x_i y_i on e(3)."""
    f1 = QuadraticForm.diagonal([2.0, 2.0, 2.0, 0.0, 0.0, 0.0])
    a = np.zeros((6, 6))
    for i in range(3):
        a[i, i + 3] = a[i + 3, i] = 1.0
    f2 = QuadraticForm(a)
    return f1, f2


def clebsch_system(params):
    """The Clebsch rigid-body-in-fluid system on e(3): Lie-Poisson
    bracket with Hamiltonian h; monitors the two Casimirs, h, and the
    extra integral when the integrability condition holds."""
    h = params.hamiltonian()
    f1, f2 = e3_casimirs()
    invariants = [f1, f2, h]
    try:
        residual = clebsch_condition_residual(params)
        if abs(residual) <= 1e-10:
            _, f3, _ = clebsch_extra_integral(params)
            invariants.append(f3)
    except ValueError:
        pass
    return HamiltonianSystem(E3Bracket(), h, invariants=invariants)


# ---------------------------------------------------------------------------
# Fairlie-type quartic systems


def fairlie_system(c):
    """x_i' = c_i * product of the other three coordinates, as a
    Hamiltonian system on the monomial bracket pi_13 = -4 c1 c3,
    pi_14 = -4 c1 c4, pi_23 = -4 c2 c3, pi_24 = -4 c2 c4 with
    H = (x1^2/c1 + x2^2/c2 - x3^2/c3 - x4^2/c4) / 16; monitors the
    integrals f_1 = c2 x1^2 - c1 x2^2 and f_2 = c4 x3^2 - c3 x4^2."""
    c = np.asarray(c, dtype=float)
    if c.shape != (4,) or np.any(c == 0.0):
        raise ValueError("c must be four nonzero reals")
    c1, c2, c3, c4 = c
    pi = PluckerVector.from_pairs(
        4,
        {
            (1, 3): -4.0 * c1 * c3,
            (1, 4): -4.0 * c1 * c4,
            (2, 3): -4.0 * c2 * c3,
            (2, 4): -4.0 * c2 * c4,
        },
    )
    bracket = PluckerBracket(pi)
    h = QuadraticForm.diagonal(
        [1.0 / (8.0 * c1), 1.0 / (8.0 * c2), -1.0 / (8.0 * c3), -1.0 / (8.0 * c4)]
    )
    f1 = QuadraticForm.diagonal([2.0 * c2, -2.0 * c1, 0.0, 0.0])
    f2 = QuadraticForm.diagonal([0.0, 0.0, 2.0 * c4, -2.0 * c3])
    return HamiltonianSystem(bracket, h, invariants=[f1, f2, h])
