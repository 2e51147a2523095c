"""Test-side oracles, independent of the library's bracket evaluation:
exact multivariate polynomial arithmetic for brute-force nested
brackets, and helpers for random generic points."""

import numpy as np


def poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0.0) + c1 * c2
    return out


def poly_diff(p, var):
    out = {}
    for e, c in p.items():
        if e[var]:
            lowered = list(e)
            lowered[var] -= 1
            key = tuple(lowered)
            out[key] = out.get(key, 0.0) + c * e[var]
    return out


def poly_add_into(acc, p):
    for e, c in p.items():
        acc[e] = acc.get(e, 0.0) + c


def poly_eval(p, x):
    x = np.asarray(x, dtype=float)
    return sum(c * float(np.prod(x ** np.array(e))) for e, c in p.items())


def structure_poly(pi, i, j, n):
    """{x_i, x_j} = pi_ij * product of the other coordinates, as an
    exact polynomial (1-based indices)."""
    e = [1] * n
    e[i - 1] = 0
    e[j - 1] = 0
    return {tuple(e): pi.get(i, j)}


def coordinate_poly(i, n):
    e = [0] * n
    e[i - 1] = 1
    return {tuple(e): 1.0}


def bracket_poly(pi, p, q, n):
    """{p, q} as an exact polynomial via the Leibniz expansion."""
    out = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            term = poly_mul(poly_diff(p, a - 1), poly_diff(q, b - 1))
            term = poly_mul(term, structure_poly(pi, a, b, n))
            poly_add_into(out, term)
    return out


def brute_jacobiator(pi, i, j, k, x):
    """{x_i,{x_j,x_k}} + cyclic, by exact polynomial arithmetic."""
    n = pi.n
    ci, cj, ck = (coordinate_poly(m, n) for m in (i, j, k))
    total = 0.0
    for a, b, c in ((ci, cj, ck), (cj, ck, ci), (ck, ci, cj)):
        total += poly_eval(bracket_poly(pi, a, bracket_poly(pi, b, c, n), n), x)
    return total


def generic_points(rng, n, count):
    """Points with each coordinate uniform in [-2,-0.5] union [0.5,2]."""
    mags = rng.uniform(0.5, 2.0, size=(count, n))
    signs = rng.choice([-1.0, 1.0], size=(count, n))
    return mags * signs
