"""The three (2,6,5,1) resolutions Q, M, B and the hyperplane-section complex.

Q and B are each built twice: by transcribing the printed matrices, and from
the coordinate-free description by running the exterior engine on basis
vectors.  Both land in the same stored bases, so they are compared entry by
entry.

Stored bases are the printed ones with any explicit minus sign removed from
the label (``-e1^e3`` is stored as ``e1^e3``, ``-beta2`` as ``beta2``); the
sign is folded into the matrix entries.  :data:`PRINTED_SIGNS` records which
basis vectors were flipped so that ladders written against printed bases can
be converted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

from .complexes import FreeComplex, tensor_complexes
from .exterior import (
    BasedFreeModule,
    ExtElement,
    LinearMap,
    alternating_matrix,
    contract,
    pairing,
    wedge,
)
from .matrix import Matrix
from .ring import ZZ, Polynomial, PolyRing

# ---------------------------------------------------------------------------
# Rings

Q_VARIABLES = (
    [(f"a{i}{j}", (1, 0)) for i in (1, 2) for j in (1, 2, 3)]
    + [(f"l{i}{j}", (1, 0)) for i in (1, 2) for j in (1, 2, 3)]
    + [("psi12", (0, 1)), ("psi13", (0, 1)), ("psi23", (0, 1)), ("z1", (2, 0)), ("z2", (0, 1))]
)

_PAIRS = ["12", "13", "14", "23", "24", "34"]
_TRIPLES = ["123", "124", "134", "234"]
M_VARIABLES = (
    [(f"x{p}", (1, 0)) for p in _PAIRS]
    + [(f"y{p}", (1, 0)) for p in _PAIRS]
    + [(f"z{t}", (0, 1)) for t in _TRIPLES]
    + [("t", (2, 0))]
)

B_VARIABLES = (
    [(f"u{i}{j}", (1, 0)) for i in (1, 2) for j in (1, 2, 3)]
    + [("pi1", (0, 1)), ("pi2", (0, 1)), ("pi3", (0, 1)), ("w1", (2, 0)), ("z2", (0, 1))]
)

HB_VARIABLES = [
    ("lam11", (1, 0)), ("lam12", (1, 0)), ("lam21", (1, 0)), ("lam22", (1, 0)),
    ("lam31", (0, 1)), ("lam32", (0, 1)),
    ("delta0", (0, 1)), ("alpha1", (1, 0)), ("alpha2", (1, 0)), ("alpha3", (2, 0)),
    ("beta", (0, 1)),
]


def ring_Q(domain=ZZ) -> PolyRing:
    return PolyRing(Q_VARIABLES, domain)


def ring_M(domain=ZZ) -> PolyRing:
    return PolyRing(M_VARIABLES, domain)


def ring_B(domain=ZZ) -> PolyRing:
    return PolyRing(B_VARIABLES, domain)


def ring_HB(domain=ZZ) -> PolyRing:
    return PolyRing(HB_VARIABLES, domain)


# ---------------------------------------------------------------------------
# Bases, twists and printed signs (lists run from degree 0 upward).

Q_LABELS = [
    ["OmegaF"],
    ["OmegaG(x)OmegaF*", "e2^e3", "e1^e3", "e1^e2", "OmegaF*"],
    ["b1", "b2", "OmegaF*", "e1*", "e2*", "e3*"],
    ["b1*", "b2*"],
]
Q_TWISTS = [
    [(0, 0)],
    [(2, 1)] * 4 + [(4, 0)],
    [(3, 2)] * 2 + [(4, 1)] * 4,
    [(5, 2)] * 2,
]
M_LABELS = [
    ["f0"],
    [f"f1_{i}" for i in range(1, 6)],
    [f"f2_{i}" for i in range(1, 7)],
    [f"f3_{i}" for i in range(1, 3)],
]
M_TWISTS = Q_TWISTS
B_LABELS = [
    ["OmegaG(x)OmegaF*"],
    ["b2", "b1", "e1*", "e2*", "e3*"],
    ["OmegaF", "b2*", "b1*", "e1", "e2", "e3"],
    ["OmegaG*(x)OmegaF", "OmegaF"],
]
B_TWISTS = [
    [(0, 0)],
    [(1, 1)] * 2 + [(2, 1)] * 3,
    [(2, 2)] + [(3, 1)] * 2 + [(2, 2)] * 3,
    [(4, 2), (2, 3)],
]

# -1 marks a basis vector whose printed header carries a minus sign.
PRINTED_SIGNS: Dict[str, List[List[int]]] = {
    "Q": [[1], [1, 1, -1, 1, 1], [1] * 6, [1, 1]],
    "M": [[1], [1] * 5, [1] * 6, [1, 1]],
    "B": [[1], [-1, 1, 1, 1, 1], [1, -1, 1, 1, 1, 1], [1, -1]],
}


def _fold(ring, printed: Sequence[Matrix], signs: Sequence[Sequence[int]]) -> List[Matrix]:
    """Stored ``d_i = S_{i-1} d_i S_i`` for diagonal sign matrices ``S``."""
    out = []
    for k, d in enumerate(printed):
        rs, cs = signs[k], signs[k + 1]
        out.append(
            Matrix(
                ring,
                [[x if rs[i] * cs[j] == 1 else -x for j, x in enumerate(row)] for i, row in enumerate(d.rows)],
                d.nrows,
                d.ncols,
            )
        )
    return out


def sign_matrix(ring, name: str, degree: int) -> Matrix:
    return Matrix.diag(ring, PRINTED_SIGNS[name][degree])


def _det2(a, b, c, d):
    return a * d - b * c


# ---------------------------------------------------------------------------
# Q from the printed matrices


def Q_printed_matrices(ring: PolyRing = None) -> List[Matrix]:
    """``[<q1>, <q2>, <q3>]`` exactly as printed, against printed bases."""
    R = ring or ring_Q()
    g = R.gens_dict()
    a = [[g[f"a{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)]
    l = [[g[f"l{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)]
    a11, a12, a13 = a[0]
    a21, a22, a23 = a[1]
    l11, l12, l13 = l[0]
    l21, l22, l23 = l[1]
    p12, p13, p23 = g["psi12"], g["psi13"], g["psi23"]
    z1, z2 = g["z1"], g["z2"]

    P = [p23, -p13, p12]
    PA = [sum((P[j] * a[k][j] for j in range(3)), R.zero()) for k in range(2)]  # P^T A^T
    sum_al = sum((_det2(a[0][i], l[0][i], a[1][i], l[1][i]) for i in range(3)), R.zero())
    det3 = Matrix(R, [P, l[0], l[1]]).det()
    AL = Matrix(R, a) @ Matrix(R, l).T

    gen1 = -det3 - z2 * sum_al - z2 * z1
    gen2 = PA[0] * l21 - PA[1] * l11 - z2 * _det2(a12, a13, a22, a23) + z1 * p23
    gen3 = PA[0] * l22 - PA[1] * l12 + z2 * _det2(a11, a13, a21, a23) - z1 * p13
    gen4 = PA[0] * l23 - PA[1] * l13 - z2 * _det2(a11, a12, a21, a22) + z1 * p12
    gen5 = -AL.det() - z1 * sum_al - z1 * z1
    q1 = Matrix(R, [[gen1, gen2, gen3, gen4, gen5]])

    q2l = [
        [p12 * a23 - p13 * a22 + p23 * a21, -p12 * a13 + p13 * a12 - p23 * a11, z1],
        [-l22 * p12 - l23 * p13 + z2 * a21, p12 * l12 + p13 * l13 - z2 * a11, _det2(l12, l13, l22, l23)],
        [l21 * p12 - l23 * p23 + z2 * a22, -p12 * l11 + p23 * l13 - z2 * a12, -_det2(l11, l13, l21, l23)],
        [l21 * p13 + l22 * p23 + z2 * a23, -p13 * l11 - p23 * l12 - z2 * a13, _det2(l11, l12, l21, l22)],
        [0, 0, -z2],
    ]

    def D(i, j):  # |a_{.i} l_{.j}|
        return _det2(a[0][i - 1], l[0][j - 1], a[1][i - 1], l[1][j - 1])

    q2r = [
        [_det2(a12, a13, a22, a23), -_det2(a11, a13, a21, a23), _det2(a11, a12, a21, a22)],
        [-D(2, 2) - D(3, 3) - z1, D(1, 2), D(1, 3)],
        [D(2, 1), -D(1, 1) - D(3, 3) - z1, D(2, 3)],
        [D(3, 1), D(3, 2), -D(1, 1) - D(2, 2) - z1],
        [-p23, p13, -p12],
    ]
    q2 = Matrix(R, [r1 + r2 for r1, r2 in zip(q2l, q2r)])

    q3 = Matrix(R, [
        [a11 * l11 + a12 * l12 + a13 * l13, a11 * l21 + a12 * l22 + a13 * l23 + z1],
        [a21 * l11 + a22 * l12 + a23 * l13 - z1, a21 * l21 + a22 * l22 + a23 * l23],
        [-a11 * p23 + a12 * p13 - a13 * p12, -a21 * p23 + a22 * p13 - a23 * p12],
        [-l12 * p12 - l13 * p13 + z2 * a11, -l22 * p12 - l23 * p13 + z2 * a21],
        [l11 * p12 - l13 * p23 + z2 * a12, l21 * p12 - l23 * p23 + z2 * a22],
        [l11 * p13 + l12 * p23 + z2 * a13, l21 * p13 + l22 * p23 + z2 * a23],
    ])
    return [q1, q2, q3]


def build_Q_matrices(ring: PolyRing = None) -> FreeComplex:
    R = ring or ring_Q()
    diffs = _fold(R, Q_printed_matrices(R), PRINTED_SIGNS["Q"])
    return FreeComplex(R, [1, 5, 6, 2], diffs, Q_LABELS, Q_TWISTS, name="Q")


# ---------------------------------------------------------------------------
# Coordinate-free machinery shared by Q, B and the linkage maps


class Frame:
    """Modules F (rank 3), G (rank 2), their duals and chosen top elements.

    ``Omega_F = e1^e2^e3`` and ``Omega_{F*} = e3*^e2*^e1*`` are dual bases of
    the top powers, as are ``Omega_G = b1^b2`` and ``Omega_{G*} = b2*^b1*``.
    Canonical elements of the rank-one top powers are the single pure tensors
    built from these, and ``p(Omega_G (x) Omega_{F*}) = 1``.
    """

    def __init__(self):
        self.F = BasedFreeModule("F", ["e1", "e2", "e3"])
        self.Fd = self.F.dual()
        self.G = BasedFreeModule("G", ["b1", "b2"])
        self.Gd = self.G.dual()
        self.OmF = self.F.basis_element((0, 1, 2))
        self.OmFd = self.Fd.basis_element((2, 1, 0))
        self.OmG = self.G.basis_element((0, 1))
        self.OmGd = self.Gd.basis_element((1, 0))
        # chi's are always used in matched pairs; take them to be the Omegas
        self.chiF, self.chiFd, self.chiG, self.chiGd = self.OmF, self.OmFd, self.OmG, self.OmGd

    def p(self, g2: ExtElement, f3: ExtElement):
        """The isomorphism ``/\\^2 G (x) /\\^3 F* -> R`` on a pure tensor."""
        return g2.coefficient_on(self.OmG) * f3.coefficient_on(self.OmFd)

    def e(self, j):
        return self.F.basis_element((j,))

    def ed(self, j):
        return self.Fd.basis_element((j,))

    def b(self, j):
        return self.G.basis_element((j,))

    def bd(self, j):
        return self.Gd.basis_element((j,))


def _scalar(x, ring):
    return x if isinstance(x, Polynomial) else ring.const(x)


@dataclass
class QData:
    """phi: F -> G (matrix A), ell: F* -> G (matrix L), psi, zeta, z2."""

    ring: PolyRing
    A: list
    L: list
    psi: dict  # {(i, j): coefficient of e_i* ^ e_j*} with 0-based i < j
    z1: Polynomial
    z2: Polynomial


def Q_generic_data(R: PolyRing) -> QData:
    g = R.gens_dict()
    return QData(
        R,
        [[g[f"a{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)],
        [[g[f"l{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)],
        {(0, 1): g["psi12"], (0, 2): g["psi13"], (1, 2): g["psi23"]},
        g["z1"],
        g["z2"],
    )


class _Maps:
    """The homomorphisms of the data, realized on the frame."""

    def __init__(self, fr: Frame, ring, A, L, psi, z1, z2):
        self.fr = fr
        self.ring = ring
        self.phi = LinearMap(fr.F, fr.G, A)
        self.phid = self.phi.dual()  # G* -> F*
        if L is not None:
            self.ell = LinearMap(fr.Fd, fr.G, L)
            self.elld = self.ell.dual()  # G* -> F
        self.psi = ExtElement(fr.Fd, 2, psi)
        self.zeta = ExtElement(fr.G, 2, {(0, 1): z1})
        self.z2 = z2

    def sigma_phi_ell(self) -> ExtElement:
        """``sum_i phi(E_i) ^ ell(E_i*)`` in ``/\\^2 G``."""
        fr = self.fr
        out = fr.G.zero(2)
        for i in range(3):
            out = out + wedge(self.phi(fr.e(i)), self.ell(fr.ed(i)))
        return out


def _coords_G(x: ExtElement, order=(0, 1), signs=(1, 1)):
    return [s * x.coefficient((i,)) for i, s in zip(order, signs)]


def _coords_vec(x: ExtElement):
    return [x.coefficient((i,)) for i in range(x.module.rank)]


def _coords_wedge2(x: ExtElement):
    return [x.coefficient(s) for s in ((1, 2), (0, 2), (0, 1))]


def _column_matrix(ring, columns):
    n = len(columns[0])
    return Matrix(
        ring, [[_scalar(col[i], ring) for col in columns] for i in range(n)], n, len(columns)
    )


def Q_coordinate_free_matrices(data: QData) -> List[Matrix]:
    """Evaluate q3, q2, q1 on the stored bases via the exterior engine."""
    R = data.ring
    fr = Frame()
    mp = _Maps(fr, R, data.A, data.L, data.psi, data.z1, data.z2)
    phi, phid, ell, elld = mp.phi, mp.phid, mp.ell, mp.elld
    psi, zeta, z2 = mp.psi, mp.zeta, mp.z2
    p = fr.p
    chiF, chiFd, chiG, chiGd = fr.chiF, fr.chiFd, fr.chiG, fr.chiGd
    sig = mp.sigma_phi_ell()

    def Q2_coords(f3, g1, f1):
        # order: b1, b2, OmegaF*, e1*, e2*, e3*
        return _coords_G(g1) + [f3.coefficient_on(fr.OmFd)] + _coords_vec(f1)

    def Q1_coords(tens, f3, f2):
        # order: OmegaG(x)OmegaF*, e2^e3, e1^e3, e1^e2, OmegaF*
        return [tens] + _coords_wedge2(f2) + [f3.coefficient_on(fr.OmFd)]

    # q3 on b1*, b2*
    q3_cols = []
    for j in range(2):
        gam = fr.bd(j)
        c1 = wedge(phid(gam), psi)
        c2 = phi(elld(gam)) - contract(gam, zeta)
        c3 = contract(elld(gam), psi) + phid(gam).scale(z2)
        q3_cols.append(Q2_coords(c1, c2, c3))

    # q2 on b1, b2, OmegaF*, e1*, e2*, e3*
    q2_cols = []
    psi_chiF = contract(psi, chiF)  # in F
    for j in range(2):
        g1 = fr.b(j)
        tens = -p(wedge(g1, phi(psi_chiF)), chiFd)
        g1_chiGd = contract(g1, chiGd)  # in G*
        f2 = (
            wedge(elld(g1_chiGd), psi_chiF).scale(-p(chiG, chiFd))
            - contract(phid(g1_chiGd), chiF).scale(z2 * p(chiG, chiFd))
        )
        q2_cols.append(Q1_coords(tens, fr.Fd.zero(3), f2))
    f3 = fr.OmFd
    tens = p(zeta, f3)
    f2 = elld(chiGd).scale(-p(chiG, f3))
    q2_cols.append(Q1_coords(tens, f3.scale(-z2), f2))
    for j in range(3):
        f1 = fr.ed(j)
        tens = p(chiG, wedge(f1, phid(chiGd)))
        f1_chiF = contract(f1, chiF)  # in /\2 F
        f2 = (
            f1_chiF.scale(-p(sig, chiFd))
            + contract(phid(contract(ell(f1), chiGd)), chiF).scale(p(chiG, chiFd))
            - f1_chiF.scale(p(zeta, chiFd))
        )
        q2_cols.append(Q1_coords(tens, wedge(f1, psi), f2))

    # q1 on the Q1 basis
    def top(x: ExtElement):
        return x.coefficient_on(fr.OmF)

    q1_row = []
    g2, tf3 = fr.OmG, fr.OmFd
    pg = p(g2, tf3)
    lam2_psi = ell(psi)  # (/\2 ell)(psi) in /\2 G
    q1_row.append(
        -pg * p(lam2_psi, chiFd) - z2 * pg * p(sig, chiFd) - z2 * pg * p(zeta, chiFd)
    )
    w_chiGd = contract(phi(psi_chiF), chiGd)  # in G*
    zeta_chiGd = pairing(zeta, chiGd)
    phid2_chiF = contract(phid(chiGd), chiF)  # in F
    for s in ((1, 2), (0, 2), (0, 1)):
        f2_ = fr.F.basis_element(s)
        val = (
            wedge(f2_, elld(w_chiGd)).scale(p(chiG, chiFd))
            - wedge(f2_, phid2_chiF).scale(p(chiG, chiFd) * z2)
            - wedge(f2_, psi_chiF).scale(p(chiG, chiFd) * zeta_chiGd)
        )
        q1_row.append(top(val))
    f3 = fr.OmFd
    phi_elld = phi.compose(elld)  # G* -> G
    q1_row.append(
        p(chiG, f3) * p(phi_elld(chiGd), chiFd)
        - p(zeta, chiFd) * p(sig, f3)
        - p(zeta, chiFd) * p(zeta, f3)
    )
    # q1_row currently ordered OmegaG(x)OmegaF*, e2^e3, e1^e3, e1^e2, OmegaF*
    q1 = Matrix(R, [[_scalar(x, R) for x in q1_row]])
    q2 = _column_matrix(R, q2_cols)
    q3 = _column_matrix(R, q3_cols)
    return [q1, q2, q3]


def build_Q_coordinate_free(ring: PolyRing = None) -> FreeComplex:
    R = ring or ring_Q()
    diffs = Q_coordinate_free_matrices(Q_generic_data(R))
    return FreeComplex(R, [1, 5, 6, 2], diffs, Q_LABELS, Q_TWISTS, name="Q")


# ---------------------------------------------------------------------------
# M


def build_M(ring: PolyRing = None) -> FreeComplex:
    R = ring or ring_M()
    g = R.gens_dict()
    x = {p: g[f"x{p}"] for p in _PAIRS}
    y = {p: g[f"y{p}"] for p in _PAIRS}
    z = {t: g[f"z{t}"] for t in _TRIPLES}
    t = g["t"]

    def D(ij, kl):
        return x[ij] * y[kl] - x[kl] * y[ij]

    a = x["12"] * x["34"] - x["13"] * x["24"] + x["14"] * x["23"]
    b = (
        x["12"] * y["34"] - x["13"] * y["24"] + x["14"] * y["23"]
        + y["12"] * x["34"] - y["13"] * x["24"] + y["14"] * x["23"]
    )
    c = y["12"] * y["34"] - y["13"] * y["24"] + y["14"] * y["23"]
    u = b * b - 4 * a * c
    u123 = (
        -2 * z["234"] * D("12", "13") + 2 * z["134"] * D("12", "23")
        - 2 * z["124"] * D("13", "23") + z["123"] * (D("13", "24") - D("12", "34") + D("14", "23"))
    )
    u124 = (
        2 * z["234"] * D("12", "14") - 2 * z["134"] * D("12", "24")
        + z["124"] * (D("12", "34") + D("13", "24") + D("14", "23")) - 2 * z["123"] * D("14", "24")
    )
    u134 = (
        2 * z["234"] * D("13", "14") + z["134"] * (-D("12", "34") - D("13", "24") + D("14", "23"))
        + 2 * z["124"] * D("13", "34") - 2 * z["123"] * D("14", "34")
    )
    u234 = (
        z["234"] * (-D("12", "34") + D("13", "24") - D("14", "23")) - 2 * z["134"] * D("23", "24")
        + 2 * z["124"] * D("23", "34") - 2 * z["123"] * D("24", "34")
    )
    m1 = Matrix(R, [[
        -u234 + t * z["234"], -u134 + t * z["134"], -u124 + t * z["124"],
        -u123 - t * z["123"], -u + t * t,
    ]])

    X, Y = x, y
    m2l = [
        [
            -Y["12"] * z["134"] + Y["13"] * z["124"] - Y["14"] * z["123"],
            -X["12"] * z["134"] + X["13"] * z["124"] - X["14"] * z["123"],
            -X["12"] * Y["34"] + X["34"] * Y["12"] + X["13"] * Y["24"] - X["24"] * Y["13"]
            - X["14"] * Y["23"] + X["23"] * Y["14"] + t,
        ],
        [
            Y["12"] * z["234"] - Y["23"] * z["124"] + Y["24"] * z["123"],
            X["12"] * z["234"] - X["23"] * z["124"] + X["24"] * z["123"],
            -2 * (X["23"] * Y["24"] - X["24"] * Y["23"]),
        ],
        [
            -Y["13"] * z["234"] + Y["23"] * z["134"] - Y["34"] * z["123"],
            -X["13"] * z["234"] + X["23"] * z["134"] - X["34"] * z["123"],
            2 * (X["23"] * Y["34"] - X["34"] * Y["23"]),
        ],
        [
            -Y["14"] * z["234"] + Y["24"] * z["134"] - Y["34"] * z["124"],
            -X["14"] * z["234"] + X["24"] * z["134"] - X["34"] * z["124"],
            2 * (X["24"] * Y["34"] - X["34"] * Y["24"]),
        ],
        [0, 0, -z["234"]],
    ]
    m2r = [
        [
            2 * (X["13"] * Y["14"] - X["14"] * Y["13"]),
            -2 * (X["12"] * Y["14"] - X["14"] * Y["12"]),
            -2 * (X["12"] * Y["13"] - X["13"] * Y["12"]),
        ],
        [
            -X["12"] * Y["34"] + X["34"] * Y["12"] - X["13"] * Y["24"] + X["24"] * Y["13"]
            + X["14"] * Y["23"] - X["23"] * Y["14"] + t,
            2 * (X["12"] * Y["24"] - X["24"] * Y["12"]),
            2 * (X["12"] * Y["23"] - X["23"] * Y["12"]),
        ],
        [
            2 * (X["13"] * Y["34"] - X["34"] * Y["13"]),
            -X["12"] * Y["34"] + X["34"] * Y["12"] - X["13"] * Y["24"] + X["24"] * Y["13"]
            - X["14"] * Y["23"] + X["23"] * Y["14"] - t,
            -2 * (X["13"] * Y["23"] - X["23"] * Y["13"]),
        ],
        [
            2 * (X["14"] * Y["34"] - X["34"] * Y["14"]),
            -2 * (X["14"] * Y["24"] - X["24"] * Y["14"]),
            X["12"] * Y["34"] - X["34"] * Y["12"] - X["13"] * Y["24"] + X["24"] * Y["13"]
            - X["14"] * Y["23"] + X["23"] * Y["14"] + t,
        ],
        [-z["134"], z["124"], z["123"]],
    ]
    m2 = Matrix(R, [r1 + r2 for r1, r2 in zip(m2l, m2r)])
    m3 = Matrix(R, [
        [
            X["12"] * Y["34"] - X["13"] * Y["24"] + X["14"] * Y["23"]
            + X["34"] * Y["12"] - X["24"] * Y["13"] + X["23"] * Y["14"] + t,
            2 * (X["12"] * X["34"] - X["13"] * X["24"] + X["14"] * X["23"]),
        ],
        [
            -2 * (Y["12"] * Y["34"] - Y["13"] * Y["24"] + Y["14"] * Y["23"]),
            -X["12"] * Y["34"] + X["13"] * Y["24"] - X["14"] * Y["23"]
            - X["34"] * Y["12"] + X["24"] * Y["13"] - X["23"] * Y["14"] + t,
        ],
        [
            -(-Y["12"] * z["134"] + Y["13"] * z["124"] - Y["14"] * z["123"]),
            -(-X["12"] * z["134"] + X["13"] * z["124"] - X["14"] * z["123"]),
        ],
        [
            -Y["12"] * z["234"] + Y["23"] * z["124"] - Y["24"] * z["123"],
            -X["12"] * z["234"] + X["23"] * z["124"] - X["24"] * z["123"],
        ],
        [
            -Y["13"] * z["234"] + Y["23"] * z["134"] - Y["34"] * z["123"],
            -X["13"] * z["234"] + X["23"] * z["134"] - X["34"] * z["123"],
        ],
        [
            -(-Y["14"] * z["234"] + Y["24"] * z["134"] - Y["34"] * z["124"]),
            -(-X["14"] * z["234"] + X["24"] * z["134"] - X["34"] * z["124"]),
        ],
    ])
    return FreeComplex(R, [1, 5, 6, 2], [m1, m2, m3], M_LABELS, M_TWISTS, name="M")


def M_auxiliary(ring: PolyRing = None) -> Dict[str, Polynomial]:
    """The scalars a, b, c and u of the first differential of M."""
    R = ring or ring_M()
    g = R.gens_dict()
    x = lambda p: g[f"x{p}"]
    y = lambda p: g[f"y{p}"]
    a = x("12") * x("34") - x("13") * x("24") + x("14") * x("23")
    b = (
        x("12") * y("34") - x("13") * y("24") + x("14") * y("23")
        + y("12") * x("34") - y("13") * x("24") + y("14") * x("23")
    )
    c = y("12") * y("34") - y("13") * y("24") + y("14") * y("23")
    return {"a": a, "b": b, "c": c, "u": b * b - 4 * a * c}


# ---------------------------------------------------------------------------
# B


@dataclass
class BData:
    """phi: F -> G (matrix U), psi in /\\2 F*, zeta = w1 b1^b2, z2."""

    ring: PolyRing
    U: list
    psi: dict
    w1: Polynomial
    z2: Polynomial


def B_generic_data(R: PolyRing) -> BData:
    g = R.gens_dict()
    return BData(
        R,
        [[g[f"u{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)],
        {(1, 2): g["pi1"], (0, 2): -g["pi2"], (0, 1): g["pi3"]},
        g["w1"],
        g["z2"],
    )


def _delta_of(U, R):
    """``Delta_i = (-1)^(i+1) det(U with column i deleted)``."""
    out = []
    for i in range(3):
        cols = [j for j in range(3) if j != i]
        d = _det2(U[0][cols[0]], U[0][cols[1]], U[1][cols[0]], U[1][cols[1]])
        out.append(d if i % 2 == 0 else -d)
    return out


def B_printed_matrices(ring: PolyRing = None) -> List[Matrix]:
    R = ring or ring_B()
    g = R.gens_dict()
    u = [[g[f"u{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)]
    pi = [g["pi1"], g["pi2"], g["pi3"]]
    w1, z2 = g["w1"], g["z2"]
    UPi = [sum((u[i][j] * pi[j] for j in range(3)), R.zero()) for i in range(2)]
    Dl = _delta_of(u, R)
    b1 = Matrix(R, [[UPi[0], UPi[1]] + [z2 * Dl[i] - w1 * pi[i] for i in range(3)]])
    p1, p2, p3 = pi
    b2 = Matrix(R, [
        [UPi[1], 0, -w1, -z2 * u[1][0], -z2 * u[1][1], -z2 * u[1][2]],
        [-UPi[0], w1, 0, z2 * u[0][0], z2 * u[0][1], z2 * u[0][2]],
        [0, u[1][0], -u[0][0], 0, -p3, p2],
        [0, u[1][1], -u[0][1], p3, 0, -p1],
        [0, u[1][2], -u[0][2], -p2, p1, 0],
    ])
    b3 = Matrix(R, [
        [w1, z2],
        [UPi[0], 0],
        [UPi[1], 0],
        [Dl[0], p1],
        [Dl[1], p2],
        [Dl[2], p3],
    ])
    return [b1, b2, b3]


def build_B_matrices(ring: PolyRing = None) -> FreeComplex:
    R = ring or ring_B()
    diffs = _fold(R, B_printed_matrices(R), PRINTED_SIGNS["B"])
    return FreeComplex(R, [1, 5, 6, 2], diffs, B_LABELS, B_TWISTS, name="B")


class BEngine:
    """Coordinate-free B differentials on a frame, reusable by linkage."""

    def __init__(self, data: BData, fr: Frame = None):
        self.data = data
        self.fr = fr or Frame()
        self.maps = _Maps(self.fr, data.ring, data.U, None, data.psi, data.w1, data.z2)

    # stored coordinates -------------------------------------------------
    def B1_coords(self, g1: ExtElement, f1: ExtElement):
        # b2, b1, e1*, e2*, e3*
        return [g1.coefficient((1,)), g1.coefficient((0,))] + _coords_vec(f1)

    def B2_coords(self, f3: ExtElement, gam: ExtElement, f1: ExtElement):
        # OmegaF, b2*, b1*, e1, e2, e3
        return [f3.coefficient_on(self.fr.OmF), gam.coefficient((1,)), gam.coefficient((0,))] + _coords_vec(f1)

    def B3_coords(self, tens, f3: ExtElement):
        # OmegaG*(x)OmegaF, OmegaF
        return [tens, f3.coefficient_on(self.fr.OmF)]

    # maps on basis vectors ------------------------------------------------
    def b3_columns(self):
        fr, m = self.fr, self.maps
        R = self.data.ring
        cols = []
        gam2, f3 = fr.OmGd, fr.OmF
        c_f3 = f3.scale(pairing(m.zeta, gam2))
        c_g = -contract(m.phi(contract(m.psi, f3)), gam2)
        c_f = contract(m.phid(gam2), f3)
        cols.append(self.B2_coords(c_f3, c_g, c_f))
        f3p = fr.OmF
        cols.append(self.B2_coords(f3p.scale(-m.z2), fr.Gd.zero(1), contract(m.psi, f3p)))
        return cols

    def b2_columns(self):
        fr, m = self.fr, self.maps
        cols = []
        f3 = fr.OmF
        cols.append(self.B1_coords(m.phi(contract(m.psi, f3)), fr.Fd.zero(1)))
        for j in (1, 0):  # b2*, b1*
            gam = fr.bd(j)
            cols.append(self.B1_coords(contract(gam, m.zeta), -m.phid(gam)))
        for j in range(3):
            f1 = fr.e(j)
            cols.append(self.B1_coords(m.phi(f1).scale(m.z2), contract(f1, m.psi)))
        return cols

    def b1_on(self, g1: ExtElement, f1: ExtElement):
        """Scalar ``p(b1(g1, f1))``."""
        fr, m = self.fr, self.maps
        val = 0
        if g1:
            val = val - fr.p(wedge(g1, m.phi(contract(m.psi, fr.chiF))), fr.chiFd)
        if f1:
            val = (
                val
                + m.z2 * fr.p(fr.chiG, wedge(f1, m.phid(fr.chiGd)))
                + fr.p(m.zeta, wedge(f1, m.psi))
            )
        return val

    def b1_columns(self):
        fr = self.fr
        cols = [[self.b1_on(fr.b(1), fr.Fd.zero(1))], [self.b1_on(fr.b(0), fr.Fd.zero(1))]]
        for j in range(3):
            cols.append([self.b1_on(fr.G.zero(1), fr.ed(j))])
        return cols

    def matrices(self) -> List[Matrix]:
        R = self.data.ring
        return [
            _column_matrix(R, self.b1_columns()),
            _column_matrix(R, self.b2_columns()),
            _column_matrix(R, self.b3_columns()),
        ]


def build_B_coordinate_free(ring: PolyRing = None) -> FreeComplex:
    R = ring or ring_B()
    diffs = BEngine(B_generic_data(R)).matrices()
    return FreeComplex(R, [1, 5, 6, 2], diffs, B_LABELS, B_TWISTS, name="B")


def assemble_brown_alternating(U, psi_coords, ring: PolyRing):
    """The 5x5 alternating matrix ``[[0, U], [-U^T, A]]``.

    ``A`` is the matrix of ``a |-> a(psi)`` on F, with ``psi`` given by its
    coordinates ``{(i, j): c}`` on ``e_i* ^ e_j*``.
    """
    fr = Frame()
    A = alternating_matrix(ExtElement(fr.Fd, 2, psi_coords))
    z = ring.zero()
    T = [[z] * 5 for _ in range(5)]
    for i in range(2):
        for j in range(3):
            T[i][2 + j] = _scalar(U[i][j], ring)
            T[2 + j][i] = -_scalar(U[i][j], ring)
    for i in range(3):
        for j in range(3):
            T[2 + i][2 + j] = _scalar(A[i][j], ring)
    return Matrix(ring, T, 5, 5)


# ---------------------------------------------------------------------------
# Hilbert-Burch complex and the hyperplane section (resolution of (delta0..3))


def signed_maximal_minors(Lam: Matrix) -> List[Polynomial]:
    """``delta_i = (-1)^(i+1) det(Lam with row i deleted)``, so ``delta Lam = 0``."""
    out = []
    for i in range(3):
        rows = [r for r in range(3) if r != i]
        d = Lam.submatrix(rows, [0, 1]).det()
        out.append(d if i % 2 == 0 else -d)
    return out


def lambda_matrix(R: PolyRing) -> Matrix:
    g = R.gens_dict()
    return Matrix(R, [[g[f"lam{i}{j}"] for j in (1, 2)] for i in (1, 2, 3)])


def hilbert_burch(Lam: Matrix, twists=None, name="HilbertBurch") -> FreeComplex:
    R = Lam.ring
    delta = Matrix(R, [signed_maximal_minors(Lam)])
    return FreeComplex(
        R, [1, 3, 2], [delta, Lam],
        [["1"], ["h1", "h2", "h3"], ["s1", "s2"]],
        twists, name=name,
    )


def build_hyperplane_ACI_resolution(ring: PolyRing = None) -> FreeComplex:
    """``HilbertBurch(Lambda) (x) Koszul(delta0)``; degree-1 basis gives
    ``(delta0, delta1, delta2, delta3)``."""
    from .linkage import koszul_complex

    R = ring or ring_HB()
    Lam = lambda_matrix(R)
    hb = hilbert_burch(Lam, [[(0, 0)], [(1, 1), (1, 1), (2, 0)], [(2, 1), (2, 1)]])
    kz = koszul_complex([R["delta0"]], twists=[(0, 1)])
    C = tensor_complexes(hb, kz, name="HB")
    return C


def deltas(R: PolyRing) -> List[Polynomial]:
    """``[delta0, delta1, delta2, delta3]`` in the ring of the hyperplane section."""
    return [R["delta0"]] + signed_maximal_minors(lambda_matrix(R))
