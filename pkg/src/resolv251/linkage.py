"""Koszul complexes, product sequences, and the link from B back to Q.

The link is computed as follows:

1. Build the comparison map ``c`` from the Koszul complex on the three
   entries of ``p o b_1 o c_1`` to B, over B's ring enlarged by the six
   entries of ``ell``.
2. Take the mapping cone of ``c``, then dualize.  This has ranks
   ``(1, 6, 9, 5, 1)``.
3. Cancel unit entries (split exact summands) until none remain.
4. Find a constant ladder to Q under the variable identification
   :data:`Q_TO_LINK` and verify it is an isomorphism of complexes.

In the bigraded setting every comparison map between these complexes has
bidegree zero, which forces its entries to be constants.  So step 4 is a
sequence of exact linear solves rather than bookkeeping through step 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .certify import graded_membership
from .complexes import (
    ChainMap,
    FreeComplex,
    Report,
    SplitCertificate,
    check_bigrading,
    check_complex,
    dual,
    find_constant_ladder,
    is_chain_map,
    is_complex_isomorphism,
    mapping_cone,
    remove_split_summand,
    verify_split_certificate,
)
from .exterior import BasedFreeModule, ExtElement, LinearMap, contract, pairing, wedge
from .matrix import Matrix
from .ring import ZZ, Polynomial, PolyRing, RingMap, bidegree_of
from . import resolutions as res


# ---------------------------------------------------------------------------
# Koszul complexes


def koszul_complex(seq: Sequence[Polynomial], twists=None, name: str = "Koszul") -> FreeComplex:
    """Koszul complex on ``seq``, realized as ``/\\ V*`` with differential
    contraction by ``x = sum f_j e_j``.

    Degree ``k`` has the basis ``e_S*`` for ``S`` the ``k``-subsets in
    lexicographic order.  ``twists`` gives the bidegree of each ``f_j``;
    if omitted it is read off the elements themselves when they are
    bihomogeneous.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("Koszul complex on an empty sequence")
    ring = seq[0].ring
    n = len(seq)
    V = BasedFreeModule("V", [f"e{j + 1}" for j in range(n)])
    Vd = V.dual()
    x = ExtElement(V, 1, {(j,): f for j, f in enumerate(seq) if f})
    diffs = []
    for k in range(1, n + 1):
        src, tgt = Vd.basis(k), Vd.basis(k - 1)
        cols = []
        for s in src:
            img = contract(x, Vd.basis_element(s))
            cols.append([img.coefficient(t) for t in tgt])
        diffs.append(
            Matrix(ring, [[_poly(cols[c][r], ring) for c in range(len(src))] for r in range(len(tgt))],
                   len(tgt), len(src))
        )
    if twists is None:
        degs = [bidegree_of(f) for f in seq]
        if all(isinstance(d, tuple) for d in degs):
            twists = degs
    tw = None
    if twists is not None:
        tw = [[tuple(sum(twists[j][a] for j in s) for a in (0, 1)) for s in Vd.basis(k)] for k in range(n + 1)]
    labels = [["^".join(f"e{j + 1}*" for j in s) or "1" for s in Vd.basis(k)] for k in range(n + 1)]
    ranks = [len(Vd.basis(k)) for k in range(n + 1)]
    return FreeComplex(ring, ranks, diffs, labels, tw, name=name)


def _poly(x, ring):
    return x if isinstance(x, Polynomial) else ring.const(x)


# ---------------------------------------------------------------------------
# Product sequences


@dataclass
class RegularSequenceCandidate:
    elements: List[Polynomial]
    provenance: str

    def __len__(self):
        return len(self.elements)


def build_product_sequence(a: Sequence[Polynomial], X: Optional[Matrix], Y: Optional[Matrix],
                           c1: int, c2: int, bottom: Optional[Matrix] = None,
                           provenance: str = "product") -> RegularSequenceCandidate:
    """Entries of ``a [[X | Y], [bottom | 0]]``; ``bottom`` defaults to ``I_{c1}``.

    ``X`` is ``(n - c1) x c1`` and ``Y`` is ``(n - c1) x c2``.
    """
    a = list(a)
    n = len(a)
    ring = a[0].ring
    if c1 < 0 or c2 < 0 or c1 > n:
        raise ValueError("bad block sizes")
    if c1 + c2 == 0:
        return RegularSequenceCandidate(a, provenance)
    X = X if X is not None else Matrix.zeros(ring, n - c1, c1)
    Y = Y if Y is not None else Matrix.zeros(ring, n - c1, c2)
    if X.shape != (n - c1, c1) or Y.shape != (n - c1, c2):
        raise ValueError(f"shape mismatch: X {X.shape}, Y {Y.shape}, n={n}, c1={c1}, c2={c2}")
    bottom = bottom if bottom is not None else Matrix.identity(ring, c1)
    if bottom.shape != (c1, c1):
        raise ValueError("bottom block must be c1 x c1")
    M = Matrix.block([[X, Y], [bottom, Matrix.zeros(ring, c1, c2)]])
    prod = Matrix(ring, [a]) @ M
    return RegularSequenceCandidate(list(prod.rows[0]), provenance)


def N_sequence(R: PolyRing) -> RegularSequenceCandidate:
    """``[delta0 .. delta3] [[a1 a2 a3], [1 0 0], [0 1 0], [0 0 beta]]``."""
    g = R.gens_dict()
    X = Matrix(R, [[g["alpha1"], g["alpha2"], g["alpha3"]]])
    bottom = Matrix.diag(R, [1, 1, g["beta"]])
    return build_product_sequence(res.deltas(R), X, None, 3, 0, bottom, "N from the hyperplane section")


# ---------------------------------------------------------------------------
# The comparison map c and the link


def linkage_ring(domain=ZZ) -> PolyRing:
    return PolyRing(res.B_VARIABLES + [(f"l{i}{j}", (1, 0)) for i in (1, 2) for j in (1, 2, 3)], domain)


# Q's variables in terms of the linkage ring (a sign on psi13 matches the
# coordinates of psi in B).
Q_TO_LINK = {
    "a11": "u11", "a12": "u12", "a13": "u13", "a21": "u21", "a22": "u22", "a23": "u23",
    "l11": "l11", "l12": "l12", "l13": "l13", "l21": "l21", "l22": "l22", "l23": "l23",
    "psi12": "pi3", "psi13": "-pi2", "psi23": "pi1", "z1": "w1", "z2": "z2",
}


def q_identification(R: PolyRing) -> RingMap:
    g = R.gens_dict()
    im = {}
    for s, t in Q_TO_LINK.items():
        im[s] = -g[t[1:]] if t.startswith("-") else g[t]
    return RingMap(res.ring_Q(R.domain), R, im)


@dataclass
class ComparisonMap:
    koszul: FreeComplex
    B: FreeComplex
    c: ChainMap
    x: List[Polynomial]


def build_comparison_c(R: PolyRing = None) -> ComparisonMap:
    """The chain map ``c: /\\ F* -> B`` over B's ring extended by ``ell``."""
    R = R or linkage_ring()
    g = R.gens_dict()
    data = res.B_generic_data(R)
    eng = res.BEngine(data)
    fr, m = eng.fr, eng.maps
    L = [[g[f"l{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)]
    ell = LinearMap(fr.Fd, fr.G, L)
    elld = ell.dual()
    phi, phid, psi, zeta, z2 = m.phi, m.phid, m.psi, m.zeta, m.z2
    p = fr.p
    chiF, chiFd, chiG, chiGd = fr.chiF, fr.chiFd, fr.chiG, fr.chiGd
    sig = fr.G.zero(2)
    for i in range(3):
        sig = sig + wedge(phi(fr.e(i)), ell(fr.ed(i)))
    pGF = p(chiG, chiFd)

    # x = p o b1 o c1 as an element of F
    xs = [_poly(eng.b1_on(ell(fr.ed(j)), fr.ed(j)), R) for j in range(3)]
    K = koszul_complex(xs, twists=[(2, 1)] * 3, name="Koszul")
    B = FreeComplex(R, [1, 5, 6, 2], eng.matrices(), res.B_LABELS, res.B_TWISTS, name="B")

    # c0 = p^{-1}, c1 = [ell; id]
    c0 = Matrix(R, [[1]])
    c1_cols = [eng.B1_coords(ell(fr.ed(j)), fr.ed(j)) for j in range(3)]

    # c2 on e_S* for the 2-subsets S of the Koszul basis
    c2_cols = []
    for s in fr.Fd.basis(2):
        f2 = fr.Fd.basis_element(s)
        f2_chiF = contract(f2, chiF)  # in F
        top = fr.F.zero(3) - chiF.scale(pairing(ell(f2), chiGd))
        gpart = contract(ell(contract(contract(psi, chiF), f2)), chiGd) + contract(phi(f2_chiF), chiGd).scale(z2)
        fpart = (
            f2_chiF.scale(-pairing(sig, chiGd))
            - elld(contract(phi(f2_chiF), chiGd))
            - f2_chiF.scale(pairing(zeta, chiGd))
        )
        c2_cols.append([x * pGF for x in eng.B2_coords(top, gpart, fpart)])

    # c3 on the single basis vector of /\3 F*
    f3 = fr.Fd.basis_element((0, 1, 2))
    first = (-p(ell(psi), f3) - z2 * p(sig, f3) - z2 * p(zeta, f3)) * pGF
    phi_elld = phi.compose(elld)
    second = (
        pGF * p(phi_elld(chiGd), f3)
        - p(zeta, f3) * p(sig, chiFd)
        - p(zeta, f3) * p(zeta, chiFd)
    )
    # chi_{G*} (x) chi_F and chi_F are the stored basis vectors of B_3
    c3_cols = [[first, second]]

    def mat(cols, nrows):
        return Matrix(R, [[_poly(cols[c][r], R) for c in range(len(cols))] for r in range(nrows)],
                      nrows, len(cols))

    c = ChainMap(K, B, {0: c0, 1: mat(c1_cols, 5), 2: mat(c2_cols, 6), 3: mat(c3_cols, 2)})
    return ComparisonMap(K, B, c, xs)


@dataclass
class LinkResult:
    linked: FreeComplex
    cone_dual: FreeComplex
    split: SplitCertificate
    Q_identified: FreeComplex
    iso: Optional[ChainMap]
    comparison: ComparisonMap
    reports: Dict[str, Report] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports.values())

    def to_json(self) -> dict:
        return {
            "check": "linkage",
            "passed": self.passed,
            "reports": {k: r.to_json() for k, r in self.reports.items()},
            "cone_dual_ranks": list(self.cone_dual.betti()),
            "linked_ranks": list(self.linked.betti()),
            "cancellations": self.split.steps,
            "isomorphism": None if self.iso is None else {
                str(i): self.iso[i].to_json() for i in self.iso.degrees()
            },
        }


def _normalize_twists(C: FreeComplex) -> FreeComplex:
    """Shift all twists so the degree-0 generator sits in bidegree (0, 0)."""
    if C.twists is None or C.rank(C.low) != 1:
        return C
    a, b = C.twists[0][0]
    tw = [[(x - a, y - b) for x, y in t] for t in C.twists]
    return C.with_twists(tw)


def link_from_B(R: PolyRing = None) -> LinkResult:
    R = R or linkage_ring()
    comp = build_comparison_c(R)
    reports = {"c_chain_map": is_chain_map(comp.c)}
    reports["c_chain_map"].name = "c_chain_map"
    if not reports["c_chain_map"]:
        raise ValueError(f"comparison map is not a chain map: {reports['c_chain_map'].failure}")
    cone = mapping_cone(comp.c, verified=True, name="cone(c)")
    T = _normalize_twists(dual(cone, name="Tot(c*)"))
    reduced, cert = remove_split_summand(T)
    reduced = _normalize_twists(reduced.trimmed())
    reduced.name = "link(B)"
    reports["split_certificate"] = verify_split_certificate(cert)
    reports["linked_complex"] = check_complex(reduced)
    ranks_ok = reduced.betti() == (2, 6, 5, 1)
    reports["ranks"] = Report("ranks", ranks_ok, {"ranks": list(reduced.betti())},
                              None if ranks_ok else {"ranks": list(reduced.betti())})
    Qi = res.build_Q_matrices().substitute(q_identification(R), name="Q(identified)")
    Qi = Qi.with_twists(res.Q_TWISTS)
    iso = None
    if ranks_ok:
        iso = find_constant_ladder(reduced, Qi)
    if iso is None:
        reports["isomorphism"] = Report("isomorphism", False, failure={"reason": "no constant ladder"})
    else:
        reports["isomorphism"] = is_complex_isomorphism(iso)
    return LinkResult(reduced, T, cert, Qi, iso, comp, reports)


def verify_linkage() -> Report:
    r = link_from_B()
    failure = None
    for k, rep in r.reports.items():
        if not rep:
            failure = {"stage": k, **(rep.failure or {})}
            break
    details = r.to_json()
    details.pop("check")
    details.pop("passed")
    return Report("linkage", failure is None, details, failure)


# ---------------------------------------------------------------------------
# The colon ideal of the hyperplane section


def colon_generators_AltArg(R: PolyRing = None) -> List[Polynomial]:
    """``n1, n2, n3`` and the two extra generators of ``(n):(delta)``."""
    R = R or res.ring_HB()
    g = R.gens_dict()
    n = N_sequence(R).elements
    a1, a2, a3, be = g["alpha1"], g["alpha2"], g["alpha3"], g["beta"]
    extra1 = g["lam11"] * a1 * be + g["lam21"] * a2 * be + g["lam31"] * a3
    extra2 = g["lam12"] * a1 * be + g["lam22"] * a2 * be + g["lam32"] * a3
    return n + [extra1, extra2]


def verify_AltArg() -> Report:
    """Colon containment ``gen * delta_j in (n1, n2, n3)`` and the Psi image."""
    from .specializations import verify_psi

    R = res.ring_HB()
    gens = colon_generators_AltArg(R)
    n = gens[:3]
    dl = res.deltas(R)
    N = N_sequence(R)
    n_ok = n == N.elements
    count = 0
    for i, h in enumerate(gens):
        for j, d in enumerate(dl):
            w = graded_membership(h * d, n)
            count += 1
            if w is None:
                return Report("colon-ideal", False, {"products_checked": count},
                              {"generator": i, "delta": j, "product": str(h * d)})
    psi = verify_psi()
    ok = psi.passed and n_ok
    return Report(
        "colon-ideal", ok,
        {"products_checked": count, "psi_image_equals_im_b1": psi.passed, "N": [str(x) for x in n]},
        None if ok else (psi.failure or {"reason": "N entries differ"}),
    )


# ---------------------------------------------------------------------------
# Identities inside the rigidity argument


def rigidity_ring(domain=ZZ) -> PolyRing:
    return PolyRing(res.HB_VARIABLES + [("beta1", (-1, 1)), ("beta2", (-1, 1))], domain)


def verify_rigidity_identities() -> Report:
    R = rigidity_ring()
    g = R.gens_dict()
    Lam = res.lambda_matrix(R)
    b1, b2 = g["beta1"], g["beta2"]
    Lp = Matrix(R, [
        [g["lam11"], g["lam12"]],
        [g["lam21"], g["lam22"]],
        [g["lam31"] - b1 * g["lam11"] - b2 * g["lam21"], g["lam32"] - b1 * g["lam12"] - b2 * g["lam22"]],
    ])
    d = res.signed_maximal_minors(Lam)
    dp = res.signed_maximal_minors(Lp)
    checks = {
        "delta1'": dp[0] - d[0] - b1 * d[2],
        "delta2'": dp[1] - d[1] - b2 * d[2],
        "delta3'": dp[2] - d[2],
    }
    a1, a2, a3, be, d0 = g["alpha1"], g["alpha2"], g["alpha3"], g["beta"], g["delta0"]
    X = Matrix(R, [[a1, a2, a3], [1, 0, 0], [0, 1, 0], [0, 0, be]])
    Xp = Matrix(R, [[a1, a2, a3], [1, 0, 0], [0, 1, 0], [b1, b2, be]])
    lhs = Matrix(R, [[d0] + dp]) @ X
    rhs = Matrix(R, [[d0] + d]) @ Xp
    for k in range(3):
        checks[f"product[{k}]"] = lhs[0, k] - rhs[0, k]
    ok_lam = (Matrix(R, [d]) @ Lam).is_zero() and (Matrix(R, [dp]) @ Lp).is_zero()
    bad = [k for k, v in checks.items() if v]
    ok = not bad and ok_lam
    return Report(
        "rigidity-identities", ok,
        {"identities": list(checks), "delta_Lambda_zero": ok_lam},
        None if ok else {"identity": bad[0] if bad else "delta Lambda", "residual": str(checks[bad[0]]) if bad else ""},
    )
