"""Evidence for exactness and grade.

* :func:`graded_membership` decides membership of a bihomogeneous element in
  a bihomogeneous ideal one graded piece at a time, by exact linear algebra.
* :func:`random_exactness_report` evaluates a complex at seeded random
  integer points and compares exact ranks with the exact-sequence profile.
  Passing is a necessary condition for acyclicity, not a proof of it.
* :func:`buchberger_small` is a plain Buchberger algorithm over QQ for
  desk-scale rings, used to certify codimension after specialization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .complexes import FreeComplex, Report, check_complex
from .matrix import rank_fraction_free, solve_sparse
from .ring import ANY, QQ, Polynomial, PolyRing, RingMap, bidegree_of, eval_at_point, grevlex_key

RANGE = 10 ** 4
MAX_DEGREE = 30


class NotHomogeneous(ValueError):
    pass


class TooLarge(ValueError):
    """Raised instead of letting a Groebner computation run unbounded."""


# ---------------------------------------------------------------------------
# Graded membership


def monomials_of_bidegree(ring: PolyRing, deg) -> List[tuple]:
    """All exponent vectors of the given bidegree."""
    if min(deg) < 0:
        return []
    for d in ring.bidegrees:
        if d == (0, 0):
            raise ValueError("a variable of bidegree (0,0) makes graded pieces infinite")
    out = []
    n = ring.nvars
    degs = ring.bidegrees

    def rec(k, rem, exp):
        if k == n:
            if rem == (0, 0):
                out.append(tuple(exp))
            return
        d = degs[k]
        e = 0
        while rem[0] - e * d[0] >= 0 and rem[1] - e * d[1] >= 0:
            exp.append(e)
            rec(k + 1, (rem[0] - e * d[0], rem[1] - e * d[1]), exp)
            exp.pop()
            e += 1
            if d == (0, 0):
                break

    rec(0, tuple(deg), [])
    return out


@dataclass
class GradedMembershipProblem:
    target: Polynomial
    generators: Sequence[Polynomial]


def graded_membership(target, generators=None) -> Optional[List[Polynomial]]:
    """Witnesses ``h`` with ``sum h_i f_i == target``, or ``None``.

    Accepts either ``(target, generators)`` or a single
    :class:`GradedMembershipProblem`.  Each ``h_i`` is searched in the graded
    piece of bidegree ``deg(target) - deg(f_i)``, so ``None`` is a
    definitive answer for bihomogeneous input.
    """
    if isinstance(target, GradedMembershipProblem):
        target, generators = target.target, target.generators
    gens = list(generators)
    ring = target.ring
    zero_ring = ring.with_domain(QQ)
    tdeg = bidegree_of(target)
    if tdeg is None:
        raise NotHomogeneous(f"target {target} is not bihomogeneous")
    if tdeg == ANY:
        return [ring.zero() for _ in gens]
    gdegs = []
    for f in gens:
        d = bidegree_of(f)
        if d is None:
            raise NotHomogeneous(f"generator {f} is not bihomogeneous")
        gdegs.append(d)

    columns, owners = [], []
    for i, (f, d) in enumerate(zip(gens, gdegs)):
        if d == ANY:
            continue
        for m in monomials_of_bidegree(ring, (tdeg[0] - d[0], tdeg[1] - d[1])):
            col = {}
            for e, c in f.terms.items():
                col[tuple(a + b for a, b in zip(e, m))] = c
            columns.append(col)
            owners.append((i, m))
    sol = solve_sparse(columns, dict(target.terms))
    if sol is None:
        return None
    hs = [dict() for _ in gens]
    for x, (i, m) in zip(sol, owners):
        if x:
            hs[i][m] = x
    try:
        out = [ring.poly(h) for h in hs]
    except ValueError:
        out = [zero_ring.poly(h) for h in hs]
    check = sum((h.change_ring(zero_ring) * f.change_ring(zero_ring) for h, f in zip(out, gens)), zero_ring.zero())
    if check != target.change_ring(zero_ring):
        raise AssertionError("membership witness failed re-verification")
    return out


def ideal_contains(gens_a, gens_b) -> Report:
    """Every element of ``gens_b`` lies in the ideal generated by ``gens_a``."""
    witnesses = []
    for k, g in enumerate(gens_b):
        w = graded_membership(g, gens_a)
        if w is None:
            return Report("ideal-containment", False, {"checked": k},
                          {"element": k, "polynomial": str(g)})
        witnesses.append([str(h) for h in w])
    return Report("ideal-containment", True, {"checked": len(gens_b), "witnesses": witnesses})


def ideals_equal(gens_a, gens_b) -> Report:
    fwd = ideal_contains(gens_a, gens_b)
    bwd = ideal_contains(gens_b, gens_a)
    failure = None
    if not fwd:
        failure = {"direction": "second in first", **fwd.failure}
    elif not bwd:
        failure = {"direction": "first in second", **bwd.failure}
    return Report(
        "ideal-equality", failure is None,
        {"second_in_first": fwd.details, "first_in_second": bwd.details}, failure,
    )


# ---------------------------------------------------------------------------
# Random-point exactness


def expected_rank_profile(C: FreeComplex) -> List[int]:
    """Ranks of ``d_high, ..., d_{low+1}`` forced by exactness of the
    specialized sequence of vector spaces (the bottom homology is free)."""
    out = []
    prev = 0
    for i in range(C.high, C.low, -1):
        r = C.rank(i) - prev
        out.append(r)
        prev = r
    return out


@dataclass
class ExactnessReport:
    seed: int
    trials: int
    expected: List[int]
    ranks: List[List[int]] = field(default_factory=list)
    points: List[List[int]] = field(default_factory=list)
    verdicts: List[bool] = field(default_factory=list)
    label: str = "necessary-condition evidence, not a proof of acyclicity over R"

    @property
    def passed(self) -> bool:
        return all(self.verdicts)

    def __bool__(self):
        return self.passed

    def to_json(self, include_points=False) -> dict:
        out = {
            "check": "exactness",
            "passed": self.passed,
            "label": self.label,
            "seed": self.seed,
            "trials": self.trials,
            "expected_ranks": self.expected,
            "ranks": self.ranks,
        }
        if include_points:
            out["points"] = self.points
        if not self.passed:
            k = self.verdicts.index(False)
            out["failure"] = {"trial": k, "ranks": self.ranks[k], "point": self.points[k]}
        return out


def trial_seeds(seed: int, trials: int) -> List[int]:
    master = random.Random(seed)
    return [master.getrandbits(64) for _ in range(trials)]


def random_exactness_report(C: FreeComplex, trials: int = 20, seed: int = 42) -> ExactnessReport:
    expected = expected_rank_profile(C)
    rep = ExactnessReport(seed, trials, expected)
    for sub in trial_seeds(seed, trials):
        rng = random.Random(sub)
        point = [rng.randint(-RANGE, RANGE) for _ in range(C.ring.nvars)]
        ranks = []
        for i in range(C.high, C.low, -1):
            d = C.d(i)
            vals = [[eval_at_point(x, point) for x in row] for row in d.rows]
            ranks.append(rank_fraction_free(vals))
        rep.points.append(point)
        rep.ranks.append(ranks)
        rep.verdicts.append(ranks == expected)
    return rep


# ---------------------------------------------------------------------------
# Buchberger over QQ, grevlex


def _lead(p: Dict[tuple, Fraction]):
    return max(p, key=grevlex_key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p):
    lm = _lead(p)
    c = p[lm]
    return {e: v / c for e, v in p.items()}


def _sub_mul(p, q, coef, shift):
    """``p - coef * x^shift * q`` in place on a copy."""
    out = dict(p)
    for e, v in q.items():
        k = tuple(a + b for a, b in zip(e, shift))
        nv = out.get(k, 0) - coef * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _reduce(p, basis, leads):
    """Full reduction of ``p`` modulo ``basis`` (monic polynomials)."""
    p = dict(p)
    rem = {}
    while p:
        lm = _lead(p)
        c = p[lm]
        for g, gl in zip(basis, leads):
            if _divides(gl, lm):
                p = _sub_mul(p, g, c, tuple(a - b for a, b in zip(lm, gl)))
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


def _spoly(f, g, fl, gl):
    L = _lcm(fl, gl)
    a = _sub_mul({}, f, -1, tuple(x - y for x, y in zip(L, fl)))
    return _sub_mul(a, g, 1, tuple(x - y for x, y in zip(L, gl)))


def buchberger_small(gens: Sequence[Polynomial], max_vars: int = 5, max_degree: int = MAX_DEGREE) -> List[Polynomial]:
    """Reduced Groebner basis (grevlex, QQ) of the ideal spanned by ``gens``."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    if ring.nvars > max_vars:
        raise TooLarge(f"{ring.nvars} variables exceeds the cap of {max_vars}")
    qq = ring.with_domain(QQ)
    basis = [_monic({e: Fraction(c) for e, c in g.terms.items()}) for g in gens]
    leads = [_lead(g) for g in basis]
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        pairs.sort(key=lambda ij: (sum(_lcm(leads[ij[0]], leads[ij[1]])), ij))
        i, j = pairs.pop(0)
        fl, gl = leads[i], leads[j]
        L = _lcm(fl, gl)
        if all(min(x, y) == 0 for x, y in zip(fl, gl)):
            continue  # coprime leading monomials
        if any(
            k not in (i, j) and _divides(leads[k], L)
            and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue  # chain criterion
        if sum(L) > max_degree:
            raise TooLarge(f"S-polynomial degree {sum(L)} exceeds {max_degree}")
        s = _reduce(_spoly(basis[i], basis[j], fl, gl), basis, leads)
        if s:
            s = _monic(s)
            basis.append(s)
            leads.append(_lead(s))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
            if sum(leads[-1]) == 0:
                return [qq.one()]
    # minimalize and reduce
    keep = []
    for k, lk in enumerate(leads):
        if any(
            m != k and _divides(lm, lk) and (lm != lk or m < k)
            for m, lm in enumerate(leads)
        ):
            continue
        keep.append(k)
    mb = [basis[k] for k in keep]
    ml = [leads[k] for k in keep]
    red = []
    for k in range(len(mb)):
        others = [mb[m] for m in range(len(mb)) if m != k]
        ol = [ml[m] for m in range(len(mb)) if m != k]
        tail = {e: v for e, v in mb[k].items() if e != ml[k]}
        r = _reduce(tail, others, ol)
        r[ml[k]] = Fraction(1)
        red.append(r)
    out = [qq.poly(r) for r in red]
    out.sort(key=lambda p: grevlex_key(p.leading_term()[0]))
    return out


def is_groebner_basis(G: Sequence[Polynomial]) -> bool:
    """Every S-polynomial reduces to zero."""
    basis = [{e: Fraction(c) for e, c in g.terms.items()} for g in G]
    basis = [_monic(b) for b in basis]
    leads = [_lead(b) for b in basis]
    for i, j in combinations(range(len(basis)), 2):
        if _reduce(_spoly(basis[i], basis[j], leads[i], leads[j]), basis, leads):
            return False
    return True


def codim_from_leads(leads: Sequence[tuple], nvars: int) -> int:
    """``nvars`` minus the largest set of variables free of leading monomials."""
    if any(sum(l) == 0 for l in leads):
        return nvars
    supports = [frozenset(i for i, x in enumerate(l) if x) for l in leads]
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return nvars - size
    return nvars


def codim_via_gb(gens: Sequence[Polynomial], max_vars: int = 5) -> int:
    gens = [g for g in gens if g]
    if not gens:
        return 0
    G = buchberger_small(gens, max_vars=max_vars)
    return codim_from_leads([g.leading_term()[0] for g in G], gens[0].ring.nvars)


# ---------------------------------------------------------------------------
# Specialization


def random_linear_specialization(ring: PolyRing, target_vars: int = 4, seed: int = 42, bound: int = 5) -> RingMap:
    """Send every variable to a seeded random linear form in fresh variables."""
    rng = random.Random(seed)
    T = PolyRing([f"y{k}" for k in range(1, target_vars + 1)], QQ)
    ys = T.gens()
    images = []
    for _ in ring.names:
        coeffs = [rng.randint(-bound, bound) for _ in range(target_vars)]
        images.append(sum((c * y for c, y in zip(coeffs, ys)), T.zero()))
    return RingMap(ring.with_domain(QQ), T, images)


def specialize_and_certify(C: FreeComplex, target_vars: int = 4, seed: int = 42, rmap: RingMap = None,
                           expected_codim: int = 3) -> Report:
    """Specialize, recheck ``d^2 = 0``, and certify ``codim(im d_1)`` by a GB."""
    if rmap is None:
        rmap = random_linear_specialization(C.ring, target_vars, seed)
    S = C.change_ring(rmap.source).substitute(rmap) if C.ring != rmap.source else C.substitute(rmap)
    cx = check_complex(S)
    gens = [x for x in S.d(S.low + 1).rows[0] if x]
    codim = codim_via_gb(gens)
    passed = bool(cx) and codim == expected_codim
    details = {
        "seed": seed,
        "target_vars": rmap.target.nvars,
        "complex": cx.passed,
        "codim": codim,
        "expected_codim": expected_codim,
    }
    failure = None
    if not passed:
        failure = cx.failure if not cx else {"codim": codim}
    return Report("specialize-and-certify", passed, details, failure)
