"""Scenario catalog and verification suites: load bracket/system
descriptions from JSON, run the structural checks (relations, Jacobi
identity, rank, Casimirs, Nambu equivalence, compatibility), integrate
with drift monitoring, and emit machine-readable reports.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import dynamics, plucker, poisson
from .plucker import PluckerError, PluckerVector
from .poisson import PluckerBracket, QuadraticForm, coordinate_function

__all__ = [
    "ScenarioError",
    "ScenarioSpec",
    "Check",
    "VerificationReport",
    "CompatReport",
    "quadratic_form_to_json",
    "quadratic_form_from_json",
    "pi_to_json",
    "pi_from_json",
    "build_system",
    "verify",
    "compat",
    "integrate_scenario",
    "trajectory_to_csv",
    "builtin_catalog",
    "get_builtin",
]

DEFAULT_DRIFT_BOUND = 1e-6


class ScenarioError(ValueError):
    """Malformed scenario input; carries a field diagnostic."""


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def status(self):
        return "pass" if self.residual <= self.tolerance else "fail"

    def to_json(self):
        return {
            "check": self.name,
            "status": self.status,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }


@dataclass
class VerificationReport:
    name: str
    checks: list

    @property
    def verdict(self):
        return "pass" if all(c.status == "pass" for c in self.checks) else "fail"

    def to_json(self):
        return {
            "name": self.name,
            "checks": [c.to_json() for c in self.checks],
            "verdict": self.verdict,
        }


def quadratic_form_to_json(form):
    if form.is_diagonal():
        return {"diagonal": list(form.diagonal_coefficients)}
    return {"matrix": [list(row) for row in form.matrix]}


def quadratic_form_from_json(obj, n=None):
    if not isinstance(obj, dict):
        raise ScenarioError(f"quadratic form must be an object, got {obj!r}")
    if "diagonal" in obj:
        form = QuadraticForm.diagonal(obj["diagonal"])
    elif "matrix" in obj:
        form = QuadraticForm(obj["matrix"])
    else:
        raise ScenarioError('quadratic form needs a "diagonal" or "matrix" key')
    if n is not None and form.n != n:
        raise ScenarioError(f"quadratic form has dimension {form.n}, expected {n}")
    return form


def pi_to_json(pi):
    return [
        {"i": i, "j": j, "value": v} for (i, j), v in pi.pairs() if v != 0.0
    ]


def pi_from_json(entries, n):
    if not isinstance(entries, list):
        raise ScenarioError('"pi" must be an array of {"i","j","value"} objects')
    try:
        pairs = [((e["i"], e["j"]), e["value"]) for e in entries]
    except (TypeError, KeyError) as exc:
        raise ScenarioError(f'malformed "pi" entry: missing key {exc}') from exc
    try:
        return PluckerVector.from_pairs(n, pairs)
    except PluckerError as exc:
        raise ScenarioError(f'invalid "pi": {exc}') from exc


@dataclass
class ScenarioSpec:
    """A named bracket/system description.

    kind is "plucker" (default; the monomial bracket family), "e3"
    (Lie-Poisson on the Euclidean algebra, Clebsch parameters in
    params), or "canonical-r4" (the symplectic realization on R^4,
    modulus k in params).
    """

    name: str
    dimension: int
    kind: str = "plucker"
    pi: PluckerVector | None = None
    unchecked: bool = False
    hamiltonian: QuadraticForm | None = None
    initial: np.ndarray | None = None
    t_end: float = 0.0
    controls: dict = field(default_factory=lambda: {"rtol": 1e-9, "atol": 1e-12, "method": "dopri54"})
    monitor: object = "auto"
    drift_bound: float = DEFAULT_DRIFT_BOUND
    params: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "name": self.name,
            "dimension": self.dimension,
            "kind": self.kind,
            "t_end": self.t_end,
            "controls": dict(self.controls),
            "drift_bound": self.drift_bound,
        }
        if self.pi is not None:
            out["pi"] = pi_to_json(self.pi)
        if self.unchecked:
            out["unchecked"] = True
        if self.hamiltonian is not None:
            out["hamiltonian"] = quadratic_form_to_json(self.hamiltonian)
        if self.initial is not None:
            out["initial"] = list(self.initial)
        if self.monitor == "auto":
            out["monitor"] = "auto"
        else:
            out["monitor"] = [quadratic_form_to_json(f) for f in self.monitor]
        if self.params:
            out["params"] = dict(self.params)
        return out

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise ScenarioError("scenario must be a JSON object")
        for key in ("name", "dimension"):
            if key not in obj:
                raise ScenarioError(f'scenario is missing required field "{key}"')
        n = obj["dimension"]
        if not isinstance(n, int) or n < 3:
            raise ScenarioError(f'"dimension" must be an integer >= 3, got {n!r}')
        kind = obj.get("kind", "plucker")
        if kind not in ("plucker", "e3", "canonical-r4"):
            raise ScenarioError(f'unknown scenario kind {kind!r}')
        spec = cls(
            name=obj["name"],
            dimension=n,
            kind=kind,
            unchecked=bool(obj.get("unchecked", False)),
            t_end=float(obj.get("t_end", 0.0)),
            drift_bound=float(obj.get("drift_bound", DEFAULT_DRIFT_BOUND)),
            params=dict(obj.get("params", {})),
        )
        if "controls" in obj:
            controls = dict(spec.controls)
            controls.update(obj["controls"])
            spec.controls = controls
        if "pi" in obj:
            spec.pi = pi_from_json(obj["pi"], n)
        elif kind == "plucker":
            raise ScenarioError('a "plucker" scenario requires a "pi" field')
        if "hamiltonian" in obj:
            spec.hamiltonian = quadratic_form_from_json(obj["hamiltonian"], n)
        if "initial" in obj:
            initial = np.asarray(obj["initial"], dtype=float)
            if initial.shape != (n,):
                raise ScenarioError(
                    f'"initial" has length {initial.size}, expected {n}'
                )
            spec.initial = initial
        monitor = obj.get("monitor", "auto")
        if monitor != "auto":
            monitor = [quadratic_form_from_json(m, n) for m in monitor]
        spec.monitor = monitor
        if spec.kind == "plucker" and spec.pi is not None and not spec.unchecked:
            if not plucker.is_decomposable(spec.pi):
                raise ScenarioError(
                    'pi fails the Plucker relations; add "unchecked": true to '
                    "build the non-Poisson candidate anyway"
                )
        return spec

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise ScenarioError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path} is not valid JSON: {exc}") from exc
        return cls.from_json(obj)


def _generic_points(rng, n, count):
    """Points with every coordinate in +-[0.5, 2], away from the
    hyperplanes where the monomial brackets degenerate."""
    mags = rng.uniform(0.5, 2.0, size=(count, n))
    signs = rng.choice([-1.0, 1.0], size=(count, n))
    return mags * signs


def build_system(spec):
    """Construct the HamiltonianSystem described by the spec (bracket
    source, Hamiltonian, monitored invariants)."""
    if spec.kind == "plucker":
        bracket = PluckerBracket(spec.pi, unchecked=spec.unchecked)
        h = spec.hamiltonian
        if h is None:
            raise ScenarioError(f'scenario "{spec.name}" has no Hamiltonian')
        if spec.monitor == "auto":
            monitors = poisson.kernel_casimirs(bracket) + [h]
        else:
            monitors = list(spec.monitor)
        return dynamics.HamiltonianSystem(bracket, h, invariants=monitors)
    if spec.kind == "e3":
        params = _clebsch_params(spec)
        sys = dynamics.clebsch_system(params)
        if spec.monitor != "auto":
            sys.invariants = list(spec.monitor)
        return sys
    if spec.kind == "canonical-r4":
        k = float(spec.params.get("k", 0.5))
        sys = dynamics.realization_r4_system(k)
        if spec.monitor != "auto":
            sys.invariants = list(spec.monitor)
        return sys
    raise ScenarioError(f"unknown kind {spec.kind!r}")


def _clebsch_params(spec):
    try:
        lam = tuple(spec.params["lambda"])
        kappa = tuple(spec.params["kappa"])
    except KeyError as exc:
        raise ScenarioError(
            f'e3 scenario "{spec.name}" needs params.lambda and params.kappa'
        ) from exc
    return dynamics.ClebschParameters(lam, kappa)


# ---------------------------------------------------------------------------
# Verification


def _verify_plucker(spec, rng, tol, checks):
    pi = spec.pi
    n = spec.dimension
    bracket = PluckerBracket(pi, unchecked=True)
    checks.append(Check("plucker_relations", plucker.max_relation_residual(pi), tol))
    decomposable = plucker.is_decomposable(pi, tol)

    points = np.vstack([np.ones((1, n)), _generic_points(rng, n, 50)])
    worst = 0.0
    for x in points:
        j = poisson.jacobiator_tensor(bracket, x)
        scale = pi.scale**2 * max(1.0, np.max(np.abs(x))) ** (2 * n - 4)
        worst = max(worst, float(np.max(np.abs(j))) / scale)
    checks.append(Check("jacobi_identity", worst, max(tol, 1e-9)))

    rank_dev = 0.0
    for x in _generic_points(rng, n, 10):
        rank_dev = max(rank_dev, abs(poisson.rank_at(bracket, x) - 2))
    checks.append(Check("rank_two", rank_dev, 0.5))

    if decomposable:
        forms = poisson.kernel_casimirs(bracket)
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            f = poisson.casimir_fijk(bracket, i, j, k)
            if np.any(f.diagonal_coefficients):
                forms.append(f)
        worst = 0.0
        for x in _generic_points(rng, n, 20):
            p = bracket.structure_matrix_at(x)
            scale = pi.scale * max(1.0, np.max(np.abs(x))) ** (n - 1)
            for f in forms:
                fscale = scale * max(1.0, np.max(np.abs(f.diagonal_coefficients)))
                worst = max(worst, float(np.max(np.abs(p @ f.gradient(x)))) / fscale)
        checks.append(Check("casimir_commutation", worst, max(tol, 1e-9)))

        try:
            poisson.plucker_to_jacobian(bracket, rng=rng, tol=max(tol, 1e-9))
            checks.append(Check("nambu_equivalence", 0.0, 1.0))
        except PluckerError:
            checks.append(Check("nambu_equivalence", np.inf, 1.0))


def _verify_e3(spec, rng, tol, checks):
    src = poisson.E3Bracket()
    points = rng.normal(size=(50, 6))
    skew = max(
        float(np.max(np.abs(src.structure_matrix_at(x) + src.structure_matrix_at(x).T)))
        for x in points
    )
    checks.append(Check("skew_symmetry", skew, 1e-13))
    worst = max(
        float(np.max(np.abs(poisson.jacobiator_tensor(src, x)))) / max(1.0, np.max(np.abs(x)) ** 2)
        for x in points
    )
    checks.append(Check("jacobi_identity", worst, max(tol, 1e-9)))
    f1, f2 = dynamics.e3_casimirs()
    worst = max(
        float(np.max(np.abs(src.structure_matrix_at(x) @ f.gradient(x))))
        / max(1.0, np.max(np.abs(x)) ** 2)
        for x in points
        for f in (f1, f2)
    )
    checks.append(Check("casimir_commutation", worst, max(tol, 1e-9)))
    params = _clebsch_params(spec)
    residual = dynamics.clebsch_condition_residual(params)
    checks.append(Check("clebsch_condition", abs(residual), 1e-10))
    if abs(residual) <= 1e-10:
        try:
            _, f3, spread = dynamics.clebsch_extra_integral(params)
        except ValueError:
            return
        checks.append(Check("c_ratio_consistency", spread, max(tol, 1e-9)))
        h = params.hamiltonian()
        worst = max(
            abs(poisson.bracket_of(src, f3, h, x)) / max(1.0, np.max(np.abs(x)) ** 4)
            for x in points
        )
        checks.append(Check("extra_integral_commutes", worst, max(tol, 1e-9)))


def _r4_map_jacobian(xi):
    q1, q2, p1, p2 = xi
    return np.array(
        [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [-p2, p1, q2, -q1],
        ]
    )


def _verify_r4(spec, rng, tol, checks):
    k = float(spec.params.get("k", 0.5))
    can = poisson.CanonicalBracket(2)
    pi1 = dynamics.pi1_bracket()
    worst = 0.0
    for xi in rng.normal(size=(100, 4)):
        jac = _r4_map_jacobian(xi)
        push = jac @ can.structure_matrix_at(xi) @ jac.T
        target = pi1.structure_matrix_at(dynamics.realization_r4_map(*xi))
        worst = max(worst, float(np.max(np.abs(push - target))) / max(1.0, np.max(np.abs(xi)) ** 2))
    checks.append(Check("poisson_map", worst, max(tol, 1e-9)))

    h_hat = QuadraticForm.diagonal([1.0 + k**2, 1.0, 1.0])
    h4 = dynamics.R4Hamiltonian(k)
    worst = 0.0
    for xi in rng.normal(size=(100, 4)):
        jac = _r4_map_jacobian(xi)
        pushed = jac @ (can.structure_matrix_at(xi) @ h4.gradient(xi))
        target = pi1.structure_matrix_at(dynamics.realization_r4_map(*xi)) @ h_hat.gradient(
            dynamics.realization_r4_map(*xi)
        )
        worst = max(worst, float(np.max(np.abs(pushed - target))) / max(1.0, np.max(np.abs(xi)) ** 3))
    checks.append(Check("pushforward_field", worst, max(tol, 1e-11)))

    sys_a = dynamics.HamiltonianSystem(pi1, QuadraticForm.diagonal([k**2, 0.0, 1.0]))
    sys_b = dynamics.HamiltonianSystem(dynamics.pi2_bracket(k), QuadraticForm.diagonal([1.0, 1.0, 0.0]))
    sys_c = dynamics.HamiltonianSystem(
        dynamics.poisson3_bracket(k), QuadraticForm.diagonal([1.0, 1.0, 0.0])
    )
    pts = rng.normal(size=(100, 3))
    checks.append(
        Check("bihamiltonian_pi2", dynamics.bihamiltonian_residual(sys_a, sys_b, pts), 1e-12)
    )
    checks.append(
        Check("bihamiltonian_poisson3", dynamics.bihamiltonian_residual(sys_a, sys_c, pts), 1e-12)
    )


def _verify_double_elliptic(spec, rng, tol, checks):
    """The quadric construction of the double-elliptic bracket: the four
    displayed {x_i, x_5} brackets share one scalar factor with the
    quadric-generated structure, and {x_5, x_6} = 0."""
    g = float(spec.params["g"])
    bracket = PluckerBracket(spec.pi)
    x = np.ones(6) * 1.3
    p = bracket.structure_matrix_at(x)
    displayed = [
        -x[1] * x[2] * x[3] * x[5],
        -x[0] * x[2] * x[3] * x[5],
        -x[0] * x[1] * x[3] * x[5],
        -g**2 * x[0] * x[1] * x[2] * x[5],
    ]
    ratios = np.array([p[i, 4] / displayed[i] for i in range(4)])
    spread = float(np.max(np.abs(ratios - ratios[0])) / abs(ratios[0]))
    checks.append(Check("displayed_bracket_factor", spread, max(tol, 1e-12)))
    checks.append(Check("x5_x6_commute", abs(spec.pi.get(5, 6)), 1e-14))


def _verify_quadrics(spec, rng, tol, checks):
    """The Jacobian bracket generated by the scenario's quadrics
    reproduces pi up to one scalar factor (exactly 1 for the integer
    n=6 catalog entry)."""
    forms = [QuadraticForm.diagonal(row) for row in spec.params["quadrics"]]
    derived = poisson.plucker_from_diagonal_quadrics(forms)
    a = spec.pi.components
    b = derived.components
    lam = float(a @ b) / float(b @ b)
    residual = float(np.max(np.abs(a - lam * b))) / spec.pi.scale
    checks.append(Check("quadric_reproduction", residual, max(tol, 1e-11)))


def verify(spec, seed=0, tol=1e-9):
    """Run the structural checks appropriate to the scenario kind."""
    rng = np.random.default_rng(seed)
    checks = []
    if spec.kind == "plucker":
        _verify_plucker(spec, rng, tol, checks)
        if "quadrics" in spec.params:
            _verify_quadrics(spec, rng, tol, checks)
        if spec.name == "double-elliptic":
            _verify_double_elliptic(spec, rng, tol, checks)
    elif spec.kind == "e3":
        _verify_e3(spec, rng, tol, checks)
    elif spec.kind == "canonical-r4":
        _verify_r4(spec, rng, tol, checks)
    return VerificationReport(spec.name, checks)


@dataclass
class CompatReport:
    """Verdict of the compatibility test for a pair of monomial
    brackets, with both routes recorded."""

    name: str
    intersection_residual: float
    sum_jacobi_residual: float
    tolerance: float
    jacobi_tolerance: float

    @property
    def compatible(self):
        return self.intersection_residual <= self.tolerance

    @property
    def cross_check_agrees(self):
        return self.compatible == (self.sum_jacobi_residual <= self.jacobi_tolerance)

    @property
    def verdict(self):
        return "compatible" if self.compatible else "incompatible"

    def to_json(self):
        return {
            "name": self.name,
            "checks": [
                {
                    "check": "intersection_residuals",
                    "status": "pass" if self.compatible else "fail",
                    "residual": self.intersection_residual,
                    "tolerance": self.tolerance,
                },
                {
                    "check": "sum_bracket_jacobi",
                    "status": "pass"
                    if self.sum_jacobi_residual <= self.jacobi_tolerance
                    else "fail",
                    "residual": self.sum_jacobi_residual,
                    "tolerance": self.jacobi_tolerance,
                },
                {
                    "check": "cross_check_agreement",
                    "status": "pass" if self.cross_check_agrees else "fail",
                    "residual": 0.0 if self.cross_check_agrees else 1.0,
                    "tolerance": 0.5,
                },
            ],
            "verdict": self.verdict,
        }


def compat(spec_a, spec_b, seed=0, tol=1e-9):
    """Compatibility of two monomial brackets: intersection residuals of
    the underlying lines, cross-checked by the Jacobi defect of the sum
    bracket at random generic points."""
    if spec_a.kind != "plucker" or spec_b.kind != "plucker":
        raise ScenarioError("compatibility is defined for plucker scenarios")
    if spec_a.dimension != spec_b.dimension:
        raise ScenarioError(
            f"dimension mismatch: {spec_a.dimension} vs {spec_b.dimension}"
        )
    rng = np.random.default_rng(seed)
    n = spec_a.dimension
    pair_scale = spec_a.pi.scale * spec_b.pi.scale
    a = PluckerBracket(spec_a.pi, unchecked=True)
    b = PluckerBracket(spec_b.pi, unchecked=True)
    residuals = poisson.compatibility_residuals(a, b)
    worst = max((abs(r) for _, r in residuals), default=0.0) / pair_scale

    summed = poisson.sum_bracket(a, b)
    jworst = 0.0
    for x in np.vstack([np.ones((1, n)), _generic_points(rng, n, 20)]):
        j = poisson.jacobiator_tensor(summed, x)
        scale = max(pair_scale, summed.pi.scale**2) * max(1.0, np.max(np.abs(x))) ** (2 * n - 4)
        jworst = max(jworst, float(np.max(np.abs(j))) / scale)

    return CompatReport(
        name=f"{spec_a.name} vs {spec_b.name}",
        intersection_residual=worst,
        sum_jacobi_residual=jworst,
        tolerance=tol,
        jacobi_tolerance=max(tol, 1e-8),
    )


def integrate_scenario(spec, seed=0):
    """Integrate the scenario and return (trajectory, drift summary)."""
    if spec.initial is None:
        raise ScenarioError(f'scenario "{spec.name}" has no initial state')
    sys = build_system(spec)
    controls = spec.controls
    traj = dynamics.integrate(
        sys,
        spec.initial,
        spec.t_end,
        rtol=float(controls.get("rtol", 1e-9)),
        atol=float(controls.get("atol", 1e-12)),
        method=controls.get("method", "dopri54"),
        h0=controls.get("h0"),
    )
    drift, normalized = dynamics.invariant_drift(traj)
    summary = {
        "name": spec.name,
        "t_end": spec.t_end,
        "steps_accepted": traj.accepted,
        "steps_rejected": traj.rejected,
        "drift_bound": spec.drift_bound,
        "invariants": [
            {"index": m, "max_drift": float(drift[m]), "normalized_drift": float(normalized[m])}
            for m in range(drift.size)
        ],
        "within_bound": bool(np.all(drift <= spec.drift_bound)),
    }
    return traj, summary


def trajectory_to_csv(traj, path):
    """t,x1,...,xn,inv1,...,invm per accepted step, full double
    precision, LF line endings."""
    n = traj.states.shape[1]
    m = traj.invariant_values.shape[1]
    header = ",".join(
        ["t"] + [f"x{i}" for i in range(1, n + 1)] + [f"inv{i}" for i in range(1, m + 1)]
    )
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in range(traj.times.size):
            values = [traj.times[row], *traj.states[row], *traj.invariant_values[row]]
            fh.write(",".join(f"{v:.17g}" for v in values) + "\n")


# ---------------------------------------------------------------------------
# Built-in catalog


def _ex3_spec(k=0.5):
    pi = PluckerVector.from_pairs(
        4, {(1, 2): -1.0, (1, 3): 2.0, (2, 3): -2.0, (2, 4): -k**2, (3, 4): 2.0 * k**2}
    )
    return ScenarioSpec(
        name="ex3",
        dimension=4,
        pi=pi,
        hamiltonian=QuadraticForm.diagonal([1.0, 1.0, 1.0, 0.0]),
        initial=np.array([0.4, 0.3, 0.5, 0.2]),
        t_end=50.0,
        params={"k": k},
    )


def _sklyanin_spec(j=(1.0, 2.0, 3.0)):
    j1, j2, j3 = j
    pi = PluckerVector.from_pairs(
        4,
        {
            (1, 2): j2 - j3,
            (1, 3): j3 - j1,
            (1, 4): j1 - j2,
            (2, 3): 1.0,
            (2, 4): -1.0,
            (3, 4): 1.0,
        },
    )
    return ScenarioSpec(
        name="sklyanin",
        dimension=4,
        pi=pi,
        hamiltonian=QuadraticForm.diagonal([1.0, 1.0, 1.0, 1.0]),
        initial=np.array([0.5, 0.4, 0.3, 0.2]),
        t_end=20.0,
        params={
            "j": list(j),
            "quadrics": [[1.0, j1, j2, j3], [0.0, 1.0, 1.0, 1.0]],
        },
    )


def _n5_spec():
    basis = plucker.PlaneBasis([1.0, 0.0, 2.0, -1.0, 1.0], [0.0, 1.0, 1.0, 1.0, -1.0])
    pi = plucker.wedge(basis)
    return ScenarioSpec(
        name="n5",
        dimension=5,
        pi=pi,
        hamiltonian=QuadraticForm.diagonal([1.0, 0.0, 0.0, 0.0, 0.0]),
        initial=np.array([0.6, 0.5, 0.4, 0.3, 0.7]),
        t_end=20.0,
    )


def _n6_spec():
    ones = {(1, 2), (1, 3), (1, 4), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 5), (4, 5)}
    entries = {pair: 1.0 for pair in ones}
    entries[(5, 6)] = -1.0
    pi = PluckerVector.from_pairs(6, entries)
    quadrics = [
        [1.0, -1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, 0.0, 1.0],
        [0.0, -1.0, 0.0, 0.0, -1.0, 1.0],
    ]
    return ScenarioSpec(
        name="n6",
        dimension=6,
        pi=pi,
        hamiltonian=QuadraticForm.diagonal([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        initial=np.array([0.5, 0.4, 0.6, 0.3, 0.7, 0.2]),
        t_end=10.0,
        params={"quadrics": quadrics},
    )


def _fairlie_spec(c=(1.0, -1.0, -1.0, -0.25)):
    sys = dynamics.fairlie_system(c)
    return ScenarioSpec(
        name="fairlie",
        dimension=4,
        pi=sys.source.pi,
        hamiltonian=sys.hamiltonian,
        initial=np.array([0.3, 0.4, 0.5, 0.6]),
        t_end=50.0,
        monitor=list(sys.invariants),
        params={"c": list(c)},
    )


def _double_elliptic_spec(g=1.0, ktilde=0.8, k=0.5):
    quadrics = [
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [-g**2, 0.0, 0.0, 1.0, -1.0, 0.0],
        [-g**2, 0.0, 0.0, 1.0, 0.0, ktilde**-2],
    ]
    forms = [QuadraticForm.diagonal(row) for row in quadrics]
    pi = poisson.plucker_from_diagonal_quadrics(forms)
    # Initial state on the joint quadric levels; the reduced flow is
    # hyperbolic, so small conserved x5 keeps the blow-up time beyond t_end.
    s, x5 = 0.1, 0.015
    x1 = np.sqrt(1.0 + s**2)
    x3 = np.sqrt(x1**2 - k**2)
    x4 = np.sqrt(1.0 + x5**2 + g**2 * x1**2)
    x6 = np.sqrt(1.0 - ktilde**2 * (1.0 + x5**2))
    return ScenarioSpec(
        name="double-elliptic",
        dimension=6,
        pi=pi,
        hamiltonian=QuadraticForm.diagonal([0.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
        initial=np.array([x1, s, x3, x4, x5, x6]),
        t_end=50.0,
        monitor=forms + [QuadraticForm.diagonal([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])],
        params={"g": g, "ktilde": ktilde, "k": k, "quadrics": quadrics},
    )


def _clebsch_spec(lam=(1.0, 2.0, 3.0), kappa=(1.0, 1.0, 1.0)):
    return ScenarioSpec(
        name="clebsch",
        dimension=6,
        kind="e3",
        initial=np.array([0.4, 0.3, 0.5, 0.2, 0.6, 0.1]),
        t_end=50.0,
        params={"lambda": list(lam), "kappa": list(kappa)},
    )


def _jacobi3d_spec(k=0.5):
    return ScenarioSpec(
        name="jacobi3d",
        dimension=3,
        pi=PluckerVector.from_pairs(3, {(1, 3): 1.0, (2, 3): -1.0}),
        hamiltonian=QuadraticForm.diagonal([k**2, 0.0, 1.0]),
        initial=np.array([0.0, 1.0, 1.0]),
        t_end=50.0,
        monitor=[
            QuadraticForm.diagonal([2.0, 2.0, 0.0]),
            QuadraticForm.diagonal([2.0 * k**2, 0.0, 2.0]),
        ],
        params={"k": k},
    )


def _realization_r4_spec(k=0.5):
    return ScenarioSpec(
        name="realization-r4",
        dimension=4,
        kind="canonical-r4",
        initial=np.array([0.2, 0.5, 0.8, 0.3]),
        t_end=20.0,
        params={"k": k},
    )


def builtin_catalog():
    """All built-in scenarios with parameters bound to their documented
    defaults."""
    return [
        _jacobi3d_spec(),
        _ex3_spec(),
        _sklyanin_spec(),
        _n5_spec(),
        _n6_spec(),
        _fairlie_spec(),
        _double_elliptic_spec(),
        _clebsch_spec(),
        _realization_r4_spec(),
    ]


def get_builtin(name):
    for spec in builtin_catalog():
        if spec.name == name:
            return spec
    raise ScenarioError(f"no built-in scenario named {name!r}")
