"""The ring maps mu: Q -> M, Phi: Q -> B and Psi: (hyperplane ring) -> B.

Each map comes with a chain-level certificate.  Ladders are stated against
the printed bases and converted to the stored (sign-folded) bases through
:data:`resolutions.PRINTED_SIGNS`.

Ladder direction matters.  For mu the ladder runs from ``mu(Q)`` to ``M``
(``sigma_{i-1} mu(q_i) = m_i sigma_i``); for Phi it runs from ``B`` to
``Phi(Q)`` (``J_{i-1} b_i = Phi(q_i) J_i``).  :class:`SpecializationCertificate`
records the direction explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .certify import ideals_equal
from .complexes import ChainMap, FreeComplex, Report, is_chain_map, is_complex_isomorphism
from .matrix import Matrix
from .ring import ZZ, ZZ2, DomainError, Polynomial, PolyRing, RingMap, bidegree_of, is_unit
from . import resolutions as res

FORWARD = "source-to-target"  # ladder maps the specialized complex to the other one
BACKWARD = "target-to-source"


@dataclass
class SpecializationCertificate:
    ring_map: RingMap
    ladder: ChainMap
    direction: str
    domain: str

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "domain": self.domain,
            "ladder": {str(k): self.ladder[k].to_json() for k in self.ladder.degrees()},
        }


def _stored_ladder(ring, printed: Dict[int, Matrix], row_signs, col_signs) -> Dict[int, Matrix]:
    out = {}
    for k, m in printed.items():
        out[k] = Matrix.diag(ring, row_signs[k]) @ m @ Matrix.diag(ring, col_signs[k])
    return out


def _surjectivity_witnesses(rmap: RingMap) -> Dict[str, Polynomial]:
    """Source polynomials mapping onto each target variable.

    Greedy: a source variable whose image is ``c*v + (terms in variables
    already inverted)`` with ``c`` a unit yields a preimage for ``v``.
    """
    S, T = rmap.source, rmap.target
    pre: Dict[str, Polynomial] = {}
    progress = True
    while progress and len(pre) < T.nvars:
        progress = False
        for s, img in zip(S.names, rmap.images):
            for v in T.names:
                if v in pre:
                    continue
                k = T.index(v)
                lin = tuple(1 if i == k else 0 for i in range(T.nvars))
                c = img.terms.get(lin)
                if not c or not is_unit(c, T.domain):
                    continue
                rest = img - T.var(v) * c
                used = rest.variables_used()
                if v in used or any(u not in pre for u in used):
                    continue
                back = RingMap(T, S, [pre.get(n, S.zero()) for n in T.names])
                pre[v] = (S.var(s) - back(rest)) / c
                progress = True
                break
    return pre


def verify_surjectivity(rmap: RingMap) -> Report:
    pre = _surjectivity_witnesses(rmap)
    missing = [v for v in rmap.target.names if v not in pre]
    bad = [v for v, p in pre.items() if rmap(p) != rmap.target.var(v)]
    ok = not missing and not bad
    return Report(
        "surjectivity", ok,
        {"witnesses": {v: str(p) for v, p in pre.items()}},
        None if ok else {"missing": missing, "wrong": bad},
    )


def _ladder_report(name, cert: SpecializationCertificate, extra: Optional[dict] = None) -> Report:
    iso = is_complex_isomorphism(cert.ladder)
    details = dict(iso.details)
    details["direction"] = cert.direction
    details["domain"] = cert.domain
    if extra:
        details.update(extra)
    return Report(name, iso.passed, details, iso.failure)


# ---------------------------------------------------------------------------
# mu


MU_IMAGES = {
    "a11": ("-", "x12"), "a12": ("-", "x13"), "a13": ("+", "x14"), "l13": ("+", "x23"),
    "l12": ("+", "x24"), "l11": ("-", "x34"), "a21": ("+", "y12"), "a22": ("+", "y13"),
    "a23": ("-", "y14"), "l23": ("-", "y23"), "l22": ("-", "y24"), "l21": ("+", "y34"),
}


def mu_map(domain: str = ZZ2) -> RingMap:
    if not is_unit(2, domain):
        raise DomainError(f"mu requires 2 to be a unit; {domain} does not invert 2")
    RQ, RM = res.ring_Q(domain), res.ring_M(domain)
    g = RM.gens_dict()
    half = Fraction(1, 2)
    im = {}
    for s, (sign, v) in MU_IMAGES.items():
        im[s] = g[v] if sign == "+" else -g[v]
    im["psi12"] = g["z123"] * half
    im["psi13"] = -g["z124"] * half
    im["psi23"] = -g["z134"] * half
    im["z2"] = g["z234"] * half
    x, y = (lambda p: g[f"x{p}"]), (lambda p: g[f"y{p}"])
    im["z1"] = (
        -g["t"] + x("12") * y("34") - x("13") * y("24") + x("14") * y("23")
        - x("34") * y("12") + x("24") * y("13") - x("23") * y("14")
    ) * half
    return RingMap(RQ, RM, im)


def mu_certificate(domain: str = ZZ2) -> SpecializationCertificate:
    mu = mu_map(domain)
    RM = mu.target
    Q = res.build_Q_matrices(res.ring_Q(domain))
    M = res.build_M(RM)
    muQ = Q.substitute(mu, name="mu(Q)")
    printed = {
        3: Matrix(RM, [[0, -1], [1, 0]]),
        2: Matrix.diag(RM, [2, 2, -2, 2, 2, 2]),
        1: Matrix.diag(RM, [4, 4, -4, 4, -4]),
        0: Matrix(RM, [[16]]),
    }
    ladder = _stored_ladder(RM, printed, res.PRINTED_SIGNS["M"], res.PRINTED_SIGNS["Q"])
    return SpecializationCertificate(mu, ChainMap(muQ, M, ladder), FORWARD, domain)


def verify_mu(domain: str = ZZ2) -> Report:
    cert = mu_certificate(domain)
    surj = verify_surjectivity(cert.ring_map)
    rep = _ladder_report("mu", cert, {"surjective": surj.passed, "sigma0": 16})
    if rep and not surj:
        return Report("mu", False, rep.details, surj.failure)
    return rep


# ---------------------------------------------------------------------------
# Phi


def phi_map(domain: str = ZZ) -> RingMap:
    RQ, RB = res.ring_Q(domain), res.ring_B(domain)
    g = RB.gens_dict()
    im = {n: RB.zero() for n in ("a12", "a13", "l13", "l12", "l21")}
    im.update({
        "a11": -g["z2"], "l11": RB.const(-1), "a21": -g["w1"] - g["pi1"], "a22": g["u12"],
        "a23": g["u13"], "l23": -g["u22"], "l22": g["u23"], "z1": g["w1"],
        "psi12": g["pi3"], "psi13": -g["pi2"], "psi23": -g["u11"], "z2": g["u21"],
    })
    return RingMap(RQ, RB, im)


def J_matrices(ring: PolyRing) -> Dict[int, Matrix]:
    """``J_1, J_2, J_3`` as printed."""
    g = ring.gens_dict()
    J1 = Matrix(ring, [
        [0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 0, 0, -1, 0],
        [0, 0, 0, 0, -1],
        [0, 0, -1, 0, 0],
    ])
    J2 = Matrix(ring, [
        [-1, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [g["u11"], 1, 0, 0, 0, 0],
        [g["u21"], 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, -1, 0],
    ])
    J3 = Matrix(ring, [[0, -1], [-1, 0]])
    return {1: J1, 2: J2, 3: J3}


def phi_certificate(domain: str = ZZ, degree2: str = "printed") -> SpecializationCertificate:
    """Ladder ``B -> Phi(Q)``.

    In degree 2 the vertical map is the printed matrix ``J_2`` itself
    (``degree2="printed"``); ``degree2="inverse"`` uses ``J_2^{-1}``
    instead, which does not commute and is kept for the report.
    """
    phi = phi_map(domain)
    RB = phi.target
    Q = res.build_Q_matrices(res.ring_Q(domain))
    B = res.build_B_matrices(RB)
    phiQ = Q.substitute(phi, name="Phi(Q)")
    J = J_matrices(RB)
    deg2 = J[2] if degree2 == "printed" else J[2].inverse()
    printed = {0: Matrix.identity(RB, 1), 1: J[1], 2: deg2, 3: J[3]}
    ladder = _stored_ladder(RB, printed, res.PRINTED_SIGNS["Q"], res.PRINTED_SIGNS["B"])
    return SpecializationCertificate(phi, ChainMap(B, phiQ, ladder), BACKWARD, domain)


def phi_auxiliary_checks(domain: str = ZZ) -> Report:
    """The vanishing images and the displayed images of A, L, P, AL^T, P^T A^T."""
    phi = phi_map(domain)
    RQ, RB = phi.source, phi.target
    gq, g = RQ.gens_dict(), RB.gens_dict()
    u = lambda ij: g[f"u{ij}"]
    w1, z2, p1, p2, p3 = g["w1"], g["z2"], g["pi1"], g["pi2"], g["pi3"]
    A = Matrix(RQ, [[gq[f"a{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)])
    L = Matrix(RQ, [[gq[f"l{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)])
    P = Matrix(RQ, [[gq["psi23"]], [-gq["psi13"]], [gq["psi12"]]])
    sum_al = sum(
        (A[0, i] * L[1, i] - A[1, i] * L[0, i] for i in range(3)), RQ.zero()
    )
    expected = {
        "vanishing": (
            Matrix(RQ, [[gq[n] for n in ("a12", "a13", "l13", "l12", "l21")]]),
            Matrix.zeros(RB, 1, 5),
        ),
        "A": (A, Matrix(RB, [[-z2, 0, 0], [-w1 - p1, u("12"), u("13")]])),
        "L": (L, Matrix(RB, [[-1, 0, 0], [0, u("23"), -u("22")]])),
        "P": (P, Matrix(RB, [[-u("11")], [p2], [p3]])),
        "sum": (Matrix(RQ, [[sum_al]]), Matrix(RB, [[-w1 - p1]])),
        "ALt": (A @ L.T, Matrix(RB, [[z2, 0], [w1 + p1, u("12") * u("23") - u("13") * u("22")]])),
        "PtAt": (P.T @ A.T, Matrix(RB, [[u("11") * z2, u("11") * (w1 + p1) + u("12") * p2 + u("13") * p3]])),
    }
    for name, (src, want) in expected.items():
        got = src.substitute(phi)
        if got != want:
            diff = got - want
            i, j, x = diff.first_nonzero()
            return Report("phi-auxiliary", False, {}, {"display": name, "row": i, "col": j, "difference": str(x)})
    return Report("phi-auxiliary", True, {"displays": list(expected)})


def verify_phi(domain: str = ZZ) -> Report:
    cert = phi_certificate(domain)
    RB = cert.ring_map.target
    J = J_matrices(RB)
    dets = {k: str(J[k].det()) for k in (2, 3)}
    dets_ok = all(J[k].det() in (RB.one(), -RB.one()) for k in (1, 2, 3))
    aux = phi_auxiliary_checks(domain)
    surj = verify_surjectivity(cert.ring_map)
    inv = is_chain_map(phi_certificate(domain, "inverse").ladder)
    rep = _ladder_report("phi", cert, {
        "det_J": dets, "auxiliary": aux.passed, "surjective": surj.passed,
        "degree2_map": "J2", "J2_inverse_commutes": inv.passed,
    })
    for sub, fail in ((aux, aux.failure), (surj, surj.failure)):
        if rep and not sub:
            return Report("phi", False, rep.details, fail)
    if rep and not dets_ok:
        return Report("phi", False, rep.details, {"det_J": dets})
    return rep


# ---------------------------------------------------------------------------
# Psi


def psi_map(domain: str = ZZ) -> RingMap:
    RH, RB = res.ring_HB(domain), res.ring_B(domain)
    g = RB.gens_dict()
    return RingMap(RH, RB, {
        "lam11": g["u11"], "lam12": g["u12"], "lam21": g["u21"], "lam22": g["u22"],
        "lam31": g["pi2"], "lam32": -g["pi1"], "delta0": -g["pi3"],
        "alpha1": g["u23"], "alpha2": -g["u13"], "beta": g["z2"], "alpha3": g["w1"],
    })


def verify_psi_isomorphism(psi: RingMap) -> Report:
    """Each variable goes to plus or minus a distinct variable of the same bidegree."""
    S, T = psi.source, psi.target
    hit = {}
    for name, img, deg in zip(S.names, psi.images, S.bidegrees):
        terms = list(img.terms.items())
        if len(terms) != 1 or terms[0][1] not in (1, -1) or sum(terms[0][0]) != 1:
            return Report("psi-isomorphism", False, {}, {"variable": name, "image": str(img)})
        v = T.names[terms[0][0].index(1)]
        if v in hit or bidegree_of(img) != deg:
            return Report("psi-isomorphism", False, {}, {"variable": name, "image": str(img)})
        hit[v] = name
    ok = len(hit) == T.nvars == S.nvars
    return Report("psi-isomorphism", ok, {"bijection": hit}, None if ok else {"unmatched": T.nvars - len(hit)})


def verify_psi(domain: str = ZZ) -> Report:
    from .linkage import colon_generators_AltArg

    psi = psi_map(domain)
    iso = verify_psi_isomorphism(psi)
    gens = [psi(x) for x in colon_generators_AltArg(psi.source)]
    B = res.build_B_matrices(psi.target)
    b1 = [x for x in B.d(1).rows[0]]
    eq = ideals_equal(gens, b1)
    ok = iso.passed and eq.passed
    return Report(
        "psi", ok,
        {"isomorphism": iso.passed, "ideal_equality": eq.details},
        None if ok else (iso.failure or eq.failure),
    )
