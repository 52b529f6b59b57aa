"""Randomized exterior-algebra identities, shared by the unit and acceptance tests.

Each ``check_*`` runs ``n`` seeded cases and returns the number of failures.
"""

import random
from itertools import combinations

from resolv251.exterior import BasedFreeModule, ExtElement, LinearMap, contract, wedge, wedge_all


def module(d, name="V"):
    return BasedFreeModule(name, [f"{name.lower()}{i}" for i in range(d)])


def rand_el(rng, M, k, bound=3):
    return ExtElement(M, k, {s: rng.randint(-bound, bound) for s in combinations(range(M.rank), k)})


def check_a(n=200, seed=1):
    """r = 1: b(alpha)(c) = b ^ alpha(c) + (-1)^(1+q) alpha(b ^ c)."""
    rng, bad = random.Random(seed), 0
    for _ in range(n):
        d = rng.choice((3, 4))
        V = module(d)
        p = rng.randint(0, d - 1)
        q = rng.randint(1, p + 1)
        b, a, c = rand_el(rng, V, 1), rand_el(rng, V.dual(), q), rand_el(rng, V, p)
        lhs = contract(contract(b, a), c)
        rhs = contract(a, wedge(b, c)).scale((-1) ** (1 + q))
        if q <= p:
            rhs = rhs + wedge(b, contract(a, c))
        bad += lhs != rhs
    return bad


def check_b(n=200, seed=2):
    """q = d: b_r(alpha)(c_p) = (-1)^((d-r)(d-p)) c_p(alpha)(b_r)."""
    rng, bad = random.Random(seed), 0
    for _ in range(n):
        d = rng.choice((3, 4))
        V = module(d)
        r = rng.randint(0, d)
        p = rng.randint(d - r, d)
        b, a, c = rand_el(rng, V, r), rand_el(rng, V.dual(), d), rand_el(rng, V, p)
        lhs = contract(contract(b, a), c)
        rhs = contract(contract(c, a), b).scale((-1) ** ((d - r) * (d - p)))
        bad += lhs != rhs
    return bad


def check_c(n=200, seed=3):
    """p = d: b_r(alpha)(c) = b_r ^ alpha(c)."""
    rng, bad = random.Random(seed), 0
    for _ in range(n):
        d = rng.choice((3, 4))
        V = module(d)
        q = rng.randint(0, d)
        r = rng.randint(0, q)
        b, a, c = rand_el(rng, V, r), rand_el(rng, V.dual(), q), rand_el(rng, V, d)
        bad += contract(contract(b, a), c) != wedge(b, contract(a, c))
    return bad


def check_d(n=200, seed=4):
    """Naturality: (^s Psi*)[((^r Psi) b)(delta)] = b[(^(s+r) Psi*) delta]."""
    rng, bad = random.Random(seed), 0
    for _ in range(n):
        nv, nw = rng.choice(((3, 3), (3, 4), (4, 3)))
        V, W = module(nv, "V"), module(nw, "W")
        psi = LinearMap(V, W, [[rng.randint(-3, 3) for _ in range(nv)] for _ in range(nw)])
        top = min(nv, nw)
        r = rng.randint(0, top)
        s = rng.randint(0, top - r)
        b, delta = rand_el(rng, V, r), rand_el(rng, W.dual(), s + r)
        lhs = psi.dual()(contract(psi(b), delta))
        rhs = contract(b, psi.dual()(delta))
        bad += lhs != rhs
    return bad


def canonical_identity_matrices(rng, d):
    """Both sides of the canonical-element identity as d x d coefficient
    matrices: entry (i, j) is the coefficient of x_i* (x) x_j."""
    V = module(d)
    ys = [rand_el(rng, V, 1) for _ in range(d)]
    theta = rand_el(rng, V.dual(), d)
    s = contract(wedge_all(*ys), theta).coefficient(())
    lhs = [[s if i == j else 0 for j in range(d)] for i in range(d)]
    rhs = [[0] * d for _ in range(d)]
    for k in range(d):
        rest = ys[:k] + ys[k + 1:]
        f = contract(wedge_all(*rest) if rest else V.one(), theta)
        for i in range(d):
            for j in range(d):
                rhs[i][j] += (-1) ** k * f.coefficient((i,)) * ys[k].coefficient((j,))
    return lhs, rhs


def check_canonical(n=200, seed=5):
    rng, bad = random.Random(seed), 0
    for _ in range(n):
        lhs, rhs = canonical_identity_matrices(rng, rng.choice((2, 3, 4)))
        bad += lhs != rhs
    return bad


def check_alternating(n=200, seed=6):
    """f(a) = a(alpha_2) satisfies f(a)(a) = 0."""
    rng, bad = random.Random(seed), 0
    for _ in range(n):
        V = module(rng.choice((2, 3, 4, 5)))
        a, alpha = rand_el(rng, V, 1), rand_el(rng, V.dual(), 2)
        bad += contract(contract(a, alpha), a).coefficient(()) != 0
    return bad


ALL = {
    "derivation": check_a, "top-form symmetry": check_b, "top-degree target": check_c,
    "naturality": check_d, "canonical element": check_canonical, "alternating map": check_alternating,
}
