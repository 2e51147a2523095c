"""End-to-end acceptance suite: one test per headline property, each at
its stated tolerance, with independent oracles where the property needs
a second route (exact polynomial nested brackets, quadrature inversion,
pushforward Jacobians)."""

import itertools
import time

import numpy as np
import pytest

from _oracle import brute_jacobiator, generic_points
from pluckerbrackets.dynamics import (
    ClebschParameters,
    HamiltonianSystem,
    bihamiltonian_residual,
    clebsch_condition_residual,
    clebsch_extra_integral,
    clebsch_map,
    elliptic_oracle,
    integrate,
    invariant_drift,
    e3_casimirs,
    jacobi_elliptic,
    jacobi_system,
    quarter_period,
    pi1_bracket,
    pi2_bracket,
    poisson3_bracket,
    realization_r4_map,
)
from pluckerbrackets.plucker import (
    PlaneBasis,
    PluckerVector,
    intersection_residuals,
    pair_list,
    wedge,
)
from pluckerbrackets.poisson import (
    CanonicalBracket,
    E3Bracket,
    PluckerBracket,
    QuadraticForm,
    bracket_of,
    casimir_fijk,
    decompose_tensor,
    jacobiator_tensor,
    kernel_casimirs,
    plucker_from_diagonal_quadrics,
    plucker_to_jacobian,
    rank_at,
    sum_bracket,
)
from pluckerbrackets import scenarios


def random_wedge(rng, n):
    return wedge(PlaneBasis(rng.normal(size=n), rng.normal(size=n)))


def projective_deviation(a, b):
    """Distance between projective points given by component vectors."""
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return min(np.max(np.abs(a - b)), np.max(np.abs(a + b)))


def test_criterion_01_jacobi_iff_plucker():
    start = time.time()
    rng = np.random.default_rng(101)
    dims = [4, 5, 6, 8]
    # 200 decomposable brackets: jacobiator vanishes at generic points
    for case in range(200):
        n = dims[case % 4]
        pi = random_wedge(rng, n)
        b = PluckerBracket(pi)
        for x in generic_points(rng, n, 50):
            j = jacobiator_tensor(b, x)
            scale = pi.scale**2 * np.max(np.abs(x)) ** (2 * n - 4)
            assert np.max(np.abs(j)) <= 1e-10 * scale
    # 200 violating brackets: the defect equals the injected relation
    # residual, measured by the exact-polynomial nested-bracket oracle
    for case in range(200):
        n = dims[case % 4]
        pi = random_wedge(rng, n)
        quad = sorted(rng.choice(np.arange(1, n + 1), size=4, replace=False))
        i, j, k, l = (int(v) for v in quad)
        comps = pi.components.copy()
        comps[pair_list(n).index((i, j))] += float(
            rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0])
        )
        pert = PluckerVector(n, comps)
        residual = (
            pert.get(i, j) * pert.get(k, l)
            - pert.get(i, k) * pert.get(j, l)
            + pert.get(j, k) * pert.get(i, l)
        )
        oracle = brute_jacobiator(pert, j, k, l, np.ones(n))
        assert oracle == pytest.approx(-residual, rel=1e-9)
    assert time.time() - start < 30.0


def test_criterion_02_rank_two_and_decomposition():
    rng = np.random.default_rng(102)
    for n in (4, 5, 6, 8):
        for _ in range(5):
            pi = random_wedge(rng, n)
            b = PluckerBracket(pi)
            basis = decompose_tensor(b)
            for x in generic_points(rng, n, 100):
                assert rank_at(b, x) == 2
                psi = np.prod(x)
                xx = basis.alpha / x
                yy = basis.beta / x
                reconstructed = psi * (np.outer(xx, yy) - np.outer(yy, xx))
                p = b.structure_matrix_at(x)
                assert np.max(np.abs(p - reconstructed)) <= 1e-10 * max(
                    1.0, np.max(np.abs(p))
                )


def test_criterion_03_casimirs():
    rng = np.random.default_rng(103)
    for n in (4, 5, 6):
        pi = random_wedge(rng, n)
        b = PluckerBracket(pi)
        forms = list(kernel_casimirs(b))
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            forms.append(casimir_fijk(b, i, j, k))
        for x in generic_points(rng, n, 100):
            p = b.structure_matrix_at(x)
            for f in forms:
                coeff = np.max(np.abs(f.diagonal_coefficients))
                if coeff == 0.0:
                    continue
                scale = coeff * pi.scale * max(1.0, np.max(np.abs(x))) ** (n - 1)
                assert np.max(np.abs(p @ f.gradient(x))) <= 1e-10 * scale
    # the known kernel vectors of the k = 0.5 example
    k = 0.5
    ex3 = PluckerVector.from_pairs(
        4, {(1, 2): -1.0, (1, 3): 2.0, (2, 3): -2.0, (2, 4): -k**2, (3, 4): 2.0 * k**2}
    )
    kernel = np.column_stack(
        [f.diagonal_coefficients for f in kernel_casimirs(PluckerBracket(ex3))]
    )
    proj = kernel @ np.linalg.pinv(kernel)
    for v in (np.array([k**2, 0.0, 0.0, 1.0]), np.array([2.0, 2.0, 1.0, 0.0])):
        assert np.linalg.norm(proj @ v - v) <= 1e-10 * np.linalg.norm(v)


def test_criterion_04_nambu_round_trip():
    rng = np.random.default_rng(104)
    for case in range(50):
        n = (4, 5, 6)[case % 3]
        pi = random_wedge(rng, n)
        b = PluckerBracket(pi)
        forms, lam = plucker_to_jacobian(b, rng=rng)
        derived = plucker_from_diagonal_quadrics(forms)
        assert projective_deviation(pi.components, derived.components) <= 1e-9
    # the 6-dimensional integer example: its four quadrics regenerate
    # the bracket exactly
    spec = scenarios.get_builtin("n6")
    forms = [QuadraticForm.diagonal(row) for row in spec.params["quadrics"]]
    derived = plucker_from_diagonal_quadrics(forms)
    assert np.max(np.abs(derived.components - spec.pi.components)) <= 1e-11


def test_criterion_05_compatibility_iff_intersection():
    rng = np.random.default_rng(105)

    def verdicts(p, q):
        scale = p.scale * q.scale
        res = max(abs(r) for _, r in intersection_residuals(p, q)) / scale
        s = sum_bracket(PluckerBracket(p, unchecked=True), PluckerBracket(q, unchecked=True))
        n = p.n
        jac = 0.0
        for x in np.vstack([np.ones((1, n)), generic_points(rng, n, 3)]):
            j = jacobiator_tensor(s, x)
            jac = max(
                jac,
                np.max(np.abs(j))
                / (max(scale, s.pi.scale**2) * max(1.0, np.max(np.abs(x))) ** (2 * n - 4)),
            )
        return res <= 1e-8, jac <= 1e-8

    for case in range(200):  # constructed intersecting pairs
        n = 4 if case % 2 else 5
        shared = rng.normal(size=n)
        p = wedge(PlaneBasis(shared, rng.normal(size=n)))
        q = wedge(PlaneBasis(shared, rng.normal(size=n)))
        by_intersection, by_jacobi = verdicts(p, q)
        assert by_intersection and by_jacobi
    for case in range(200):  # generic pairs
        n = 4 if case % 2 else 5
        p = random_wedge(rng, n)
        q = random_wedge(rng, n)
        by_intersection, by_jacobi = verdicts(p, q)
        assert by_intersection == by_jacobi
    report = scenarios.compat(scenarios.get_builtin("ex3"), scenarios.get_builtin("sklyanin"))
    assert report.verdict == "incompatible"


def test_criterion_06_elliptic_functions():
    for t in np.linspace(0.0, 10.0, 21):
        assert jacobi_elliptic(float(t), 0.0)[0] == pytest.approx(np.sin(t), abs=1e-8)
    for k in (0.3, 0.5, 0.9):
        for t in np.linspace(0.0, 4.0, 9):
            sn, cn, dn = jacobi_elliptic(float(t), k)
            assert abs(sn**2 + cn**2 - 1.0) <= 1e-9
            assert abs(k**2 * sn**2 + dn**2 - 1.0) <= 1e-9
        big_k = quarter_period(k)
        for frac in (0.2, 0.6, 0.95):
            t = frac * big_k
            ode = np.array(jacobi_elliptic(t, k))
            quad = np.array(elliptic_oracle(t, k))
            assert np.max(np.abs(ode - quad)) <= 1e-7
    # forward then time-reversed integration returns to the start
    sys = jacobi_system(0.5)
    x0 = np.array([0.0, 1.0, 1.0])
    fwd = integrate(sys, x0, 10.0, rtol=1e-12, atol=1e-14)
    reversed_h = QuadraticForm(-sys.hamiltonian.matrix)
    back_sys = HamiltonianSystem(sys.source, reversed_h)
    back = integrate(back_sys, fwd.states[-1], 10.0, rtol=1e-12, atol=1e-14)
    assert np.max(np.abs(back.states[-1] - x0)) <= 1e-7


def test_criterion_07_bihamiltonian_identity():
    rng = np.random.default_rng(107)
    k = 0.5
    sys_a = HamiltonianSystem(pi1_bracket(), QuadraticForm.diagonal([k**2, 0.0, 1.0]))
    sys_b = HamiltonianSystem(pi2_bracket(k), QuadraticForm.diagonal([1.0, 1.0, 0.0]))
    sys_c = HamiltonianSystem(poisson3_bracket(k), QuadraticForm.diagonal([1.0, 1.0, 0.0]))
    points = rng.normal(size=(100, 3))
    assert bihamiltonian_residual(sys_a, sys_b, points) <= 1e-12
    assert bihamiltonian_residual(sys_a, sys_c, points) <= 1e-12


def _r4_jacobian(xi):
    q1, q2, p1, p2 = xi
    return np.array(
        [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [-p2, p1, q2, -q1],
        ]
    )


def _clebsch_jacobian(qp):
    q, p = qp[:3], qp[3:]
    jac = np.zeros((6, 6))
    jac[:3, 3:] = np.eye(3)
    # y = q x p: dy/dq = -skew(p), dy/dp = skew(q)
    def skew(v):
        return np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])

    jac[3:, :3] = -skew(p)
    jac[3:, 3:] = skew(q)
    return jac


def test_criterion_08_symplectic_realizations():
    rng = np.random.default_rng(108)
    can2 = CanonicalBracket(2)
    can3 = CanonicalBracket(3)
    pi1 = pi1_bracket()
    e3 = E3Bracket()
    for xi in rng.normal(size=(100, 4)):
        jac = _r4_jacobian(xi)
        push = jac @ can2.structure_matrix_at(xi) @ jac.T
        target = pi1.structure_matrix_at(realization_r4_map(*xi))
        assert np.max(np.abs(push - target)) <= 1e-9 * max(1.0, np.max(np.abs(xi)) ** 2)
    for qp in rng.normal(size=(100, 6)):
        jac = _clebsch_jacobian(qp)
        push = jac @ can3.structure_matrix_at(qp) @ jac.T
        x, y = clebsch_map(qp[:3], qp[3:])
        target = e3.structure_matrix_at(np.concatenate([x, y]))
        assert np.max(np.abs(push - target)) <= 1e-9 * max(1.0, np.max(np.abs(qp)) ** 2)
    # e(3) Casimirs commute with all coordinates
    f1, f2 = e3_casimirs()
    for state in rng.normal(size=(100, 6)):
        p = e3.structure_matrix_at(state)
        scale = max(1.0, np.max(np.abs(state)) ** 2)
        assert np.max(np.abs(p @ f1.gradient(state))) <= 1e-9 * scale
        assert np.max(np.abs(p @ f2.gradient(state))) <= 1e-9 * scale
    # with all parameters 1: pushforward of the canonical field equals
    # the e(3) field of h
    params = ClebschParameters((1.0, 1.0, 1.0), (1.0, 1.0, 1.0))
    h = params.hamiltonian()
    for qp in rng.normal(size=(50, 6)):
        jac = _clebsch_jacobian(qp)
        x, y = clebsch_map(qp[:3], qp[3:])
        state = np.concatenate([x, y])
        grad_up = jac.T @ h.gradient(state)  # gradient of h o Phi
        pushed = jac @ (can3.structure_matrix_at(qp) @ grad_up)
        target = e3.structure_matrix_at(state) @ h.gradient(state)
        assert np.max(np.abs(pushed - target)) <= 1e-11 * max(1.0, np.max(np.abs(qp)) ** 3)


def test_criterion_09_clebsch_integrability():
    rng = np.random.default_rng(109)
    src = E3Bracket()

    def satisfying():
        while True:
            lam = rng.uniform(0.5, 3.0, 3)
            if min(np.abs(np.diff(np.sort(lam)))) < 0.2:
                continue
            k1, k2 = rng.uniform(0.5, 3.0, 2)
            s = (lam[1] - lam[2]) / k1 + (lam[2] - lam[0]) / k2
            if abs(s) < 0.05:
                continue
            k3 = -(lam[0] - lam[1]) / s
            if not 0.05 <= abs(k3) <= 50.0:
                continue
            return ClebschParameters(tuple(lam), (k1, k2, float(k3)))

    for _ in range(20):
        params = satisfying()
        assert abs(clebsch_condition_residual(params)) <= 1e-12
        c, f3, spread = clebsch_extra_integral(params)
        assert spread <= 1e-9
        h = params.hamiltonian()
        for x in rng.uniform(-1.0, 1.0, size=(100, 6)):
            assert abs(bracket_of(src, f3, h, x)) <= 1e-9

    violating = 0
    while violating < 20:
        lam = rng.uniform(0.5, 3.0, 3)
        kap = rng.uniform(0.5, 3.0, 3)
        if min(np.abs(np.diff(np.sort(lam)))) < 0.2:
            continue
        if abs(kap[1] - kap[2]) < 0.1:
            continue
        params = ClebschParameters(tuple(lam), tuple(kap))
        if abs(clebsch_condition_residual(params)) < 0.1:
            continue
        violating += 1
        c = kap[0] * (kap[1] - kap[2]) / (lam[1] - lam[2])
        f3 = QuadraticForm.diagonal([kap[0], kap[1], kap[2], c, c, c])
        h = params.hamiltonian()
        points = rng.uniform(0.5, 1.5, size=(100, 6)) * rng.choice([-1.0, 1.0], size=(100, 6))
        assert max(abs(bracket_of(src, f3, h, x)) for x in points) > 1e-3


def test_criterion_10_conservation_at_desk_scale():
    start = time.time()
    for name in ("jacobi3d", "fairlie", "clebsch", "double-elliptic"):
        spec = scenarios.get_builtin(name)
        assert spec.t_end == 50.0
        traj, summary = scenarios.integrate_scenario(spec)
        drift, _ = invariant_drift(traj)
        assert np.all(drift <= 1e-6), (name, drift)
        assert summary["within_bound"]
    assert time.time() - start < 60.0
