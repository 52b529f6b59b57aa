"""Finite complexes of based free modules and chain maps between them.

Homological degrees run ``low .. low + n``.  ``diffs[k]`` is the differential
out of degree ``low + k + 1``, a matrix with ``rank(low + k)`` rows and
``rank(low + k + 1)`` columns.

A twist is the bidegree of a basis element (so ``R(-5,-2)`` stores
``(5, 2)``); entry ``(r, c)`` of a differential must then have bidegree
``twist(c) - twist(r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .matrix import Matrix, solve_sparse
from .ring import ANY, Polynomial, PolyRing, RingMap, bidegree_of, is_unit

SCHEMA = "resolv-251/1"


class FreeComplex:
    def __init__(
        self,
        ring: PolyRing,
        ranks: Sequence[int],
        diffs: Sequence[Matrix],
        labels: Optional[Sequence[Sequence[str]]] = None,
        twists: Optional[Sequence[Sequence[Tuple[int, int]]]] = None,
        low: int = 0,
        name: str = "",
    ):
        """``ranks`` lists ``rank(low), rank(low+1), ...`` (ascending)."""
        self.ring = ring
        self.ranks = list(ranks)
        self.low = low
        self.name = name
        if len(diffs) != max(len(self.ranks) - 1, 0):
            raise ValueError("need one differential per adjacent pair of degrees")
        for k, d in enumerate(diffs):
            if d.shape != (self.ranks[k], self.ranks[k + 1]):
                raise ValueError(
                    f"d_{low + k + 1} has shape {d.shape}, expected "
                    f"{(self.ranks[k], self.ranks[k + 1])}"
                )
            if d.ring != ring:
                raise ValueError("differential over a different ring")
        self.diffs = list(diffs)
        if labels is None:
            labels = [[f"g{low + k}_{i}" for i in range(r)] for k, r in enumerate(self.ranks)]
        self.labels = [list(l) for l in labels]
        if [len(l) for l in self.labels] != self.ranks:
            raise ValueError("labels do not match ranks")
        self.twists = None if twists is None else [[tuple(t) for t in tw] for tw in twists]
        if self.twists is not None and [len(t) for t in self.twists] != self.ranks:
            raise ValueError("twists do not match ranks")

    # -- access ---------------------------------------------------------
    @property
    def high(self) -> int:
        return self.low + len(self.ranks) - 1

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def rank(self, i: int) -> int:
        if self.low <= i <= self.high:
            return self.ranks[i - self.low]
        return 0

    def d(self, i: int) -> Matrix:
        """Differential out of degree ``i`` (target degree ``i - 1``)."""
        if self.low < i <= self.high:
            return self.diffs[i - self.low - 1]
        return Matrix.zeros(self.ring, self.rank(i - 1), self.rank(i))

    def betti(self) -> Tuple[int, ...]:
        """Ranks from the top degree down, e.g. ``(2, 6, 5, 1)``."""
        return tuple(reversed(self.ranks))

    def __repr__(self):
        return f"FreeComplex({self.name or '?'}: {self.betti()} over {self.ring})"

    def substitute(self, rmap: RingMap, name: Optional[str] = None) -> "FreeComplex":
        return FreeComplex(
            rmap.target,
            self.ranks,
            [d.substitute(rmap) for d in self.diffs],
            self.labels,
            None,
            self.low,
            name or self.name,
        )

    def change_ring(self, ring: PolyRing) -> "FreeComplex":
        return FreeComplex(
            ring, self.ranks, [d.change_ring(ring) for d in self.diffs],
            self.labels, self.twists, self.low, self.name,
        )

    def trimmed(self) -> "FreeComplex":
        """Drop zero modules at either end."""
        lo, hi = 0, len(self.ranks) - 1
        while lo < hi and self.ranks[lo] == 0:
            lo += 1
        while hi > lo and self.ranks[hi] == 0:
            hi -= 1
        if (lo, hi) == (0, len(self.ranks) - 1):
            return self
        return FreeComplex(
            self.ring, self.ranks[lo:hi + 1], self.diffs[lo:hi], self.labels[lo:hi + 1],
            None if self.twists is None else self.twists[lo:hi + 1], self.low + lo, self.name,
        )

    def with_twists(self, twists) -> "FreeComplex":
        return FreeComplex(self.ring, self.ranks, self.diffs, self.labels, twists, self.low, self.name)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        """Golden-file format; lists run from the top degree down."""
        out = {
            "schema": SCHEMA,
            "name": self.name,
            "ring": {
                "variables": list(self.ring.names),
                "bidegrees": [list(b) for b in self.ring.bidegrees],
                "domain": self.ring.domain,
            },
            "ranks": list(self.betti()),
            "labels": [list(l) for l in reversed(self.labels)],
            "twists": None
            if self.twists is None
            else [[list(t) for t in tw] for tw in reversed(self.twists)],
            "diffs": [d.to_json() for d in reversed(self.diffs)],
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FreeComplex":
        from .ring import poly_from_json

        r = data["ring"]
        ring = PolyRing(zip(r["variables"], r["bidegrees"]), r["domain"])
        ranks = list(reversed(data["ranks"]))
        diffs = []
        for k, rows in enumerate(reversed(data["diffs"])):
            m = [[poly_from_json(x, ring) for x in row] for row in rows]
            diffs.append(Matrix(ring, m, ranks[k], ranks[k + 1]))
        twists = data.get("twists")
        return cls(
            ring,
            ranks,
            diffs,
            list(reversed(data["labels"])),
            None if twists is None else list(reversed(twists)),
            0,
            data.get("name", ""),
        )


@dataclass
class Report:
    """Outcome of a verification; ``failure`` localizes the first problem."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    failure: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"check": self.name, "passed": self.passed}
        if self.details:
            out["details"] = self.details
        if self.failure is not None:
            out["failure"] = self.failure
        return out

    def __bool__(self):
        return self.passed


def _first_bad_entry(m: Matrix, label: str):
    hit = m.first_nonzero()
    if hit is None:
        return None
    i, j, x = hit
    return {"matrix": label, "row": i, "col": j, "entry": str(x)}


def check_complex(C: FreeComplex) -> Report:
    """All composites ``d_i o d_{i+1}`` must be the zero matrix."""
    products = []
    failure = None
    for i in range(C.low + 1, C.high):
        prod = C.d(i) @ C.d(i + 1)
        products.append(prod)
        if failure is None:
            failure = _first_bad_entry(prod, f"d{i}*d{i + 1}")
    return Report(
        "complex",
        failure is None,
        {"composites": len(products), "betti": list(C.betti())},
        failure,
    )


def check_bigrading(C: FreeComplex, twists=None) -> Report:
    twists = twists if twists is not None else C.twists
    if twists is None:
        raise ValueError("no twists supplied")
    for i in range(C.low + 1, C.high + 1):
        d = C.d(i)
        src = twists[i - C.low]
        tgt = twists[i - 1 - C.low]
        for r, c, x in d.entries():
            want = (src[c][0] - tgt[r][0], src[c][1] - tgt[r][1])
            got = bidegree_of(x)
            if got is ANY:
                continue
            if got != want:
                return Report(
                    "bigrading",
                    False,
                    failure={
                        "matrix": f"d{i}",
                        "row": r,
                        "col": c,
                        "expected": list(want),
                        "found": None if got is None else list(got),
                        "entry": str(x),
                    },
                )
    return Report("bigrading", True, {"betti": list(C.betti())})


# ---------------------------------------------------------------------------
# Chain maps


class ChainMap:
    """Matrices ``maps[i]`` from ``source_i`` to ``target_i``, keyed by degree."""

    def __init__(self, source: FreeComplex, target: FreeComplex, maps: Dict[int, Matrix]):
        self.source = source
        self.target = target
        ring = target.ring
        self.maps: Dict[int, Matrix] = {}
        lo = min(source.low, target.low)
        hi = max(source.high, target.high)
        for i in range(lo, hi + 1):
            m = maps.get(i)
            if m is None:
                m = Matrix.zeros(ring, target.rank(i), source.rank(i))
            if m.shape != (target.rank(i), source.rank(i)):
                raise ValueError(f"map in degree {i} has shape {m.shape}")
            self.maps[i] = m

    def __getitem__(self, i: int) -> Matrix:
        if i in self.maps:
            return self.maps[i]
        return Matrix.zeros(self.target.ring, self.target.rank(i), self.source.rank(i))

    def degrees(self):
        return sorted(self.maps)

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """``self o inner``."""
        return ChainMap(
            inner.source,
            self.target,
            {i: self[i] @ inner[i] for i in sorted(set(self.maps) | set(inner.maps))},
        )

    @classmethod
    def identity(cls, C: FreeComplex) -> "ChainMap":
        return cls(C, C, {i: Matrix.identity(C.ring, C.rank(i)) for i in range(C.low, C.high + 1)})

    @classmethod
    def zero(cls, source: FreeComplex, target: FreeComplex) -> "ChainMap":
        return cls(source, target, {})


def is_chain_map(f: ChainMap) -> Report:
    """Entrywise check of ``f_{i-1} o d_i == d'_i o f_i`` in every degree."""
    S, T = f.source, f.target
    lo = min(S.low, T.low)
    hi = max(S.high, T.high)
    for i in range(lo + 1, hi + 1):
        lhs = f[i - 1] @ S.d(i)
        rhs = T.d(i) @ f[i]
        diff = lhs - rhs
        bad = _first_bad_entry(diff, f"square{i}")
        if bad is not None:
            return Report("chain_map", False, failure=bad)
    return Report("chain_map", True, {"squares": hi - lo})


def _unit_det(m: Matrix):
    d = m.det()
    return d, d.is_constant() and is_unit(d.constant_coefficient(), m.ring.domain)


def is_complex_isomorphism(f: ChainMap) -> Report:
    rep = is_chain_map(f)
    if not rep:
        return Report("isomorphism", False, rep.details, rep.failure)
    dets = {}
    for i in f.degrees():
        m = f[i]
        if m.nrows != m.ncols:
            return Report("isomorphism", False, failure={"degree": i, "reason": "non-square"})
        if m.nrows == 0:
            continue
        d, ok = _unit_det(m)
        dets[i] = str(d)
        if not ok:
            return Report(
                "isomorphism", False, {"determinants": dets},
                {"degree": i, "reason": "determinant is not a unit", "det": str(d)},
            )
    return Report("isomorphism", True, {"determinants": dets})


# ---------------------------------------------------------------------------
# Constructions


def dual(C: FreeComplex, name: Optional[str] = None) -> FreeComplex:
    """``Hom(C, R)`` reindexed so degree ``k`` holds ``C_{high+low-k}^*``.

    The differential coming from ``d_i`` is ``(-1)^i d_i^T``.
    """
    n_ranks = list(reversed(C.ranks))
    diffs = []
    # new degree k (ascending from C.low) corresponds to old degree high+low-k
    for k in range(C.low + 1, C.high + 1):
        old_src = C.high + C.low - (k - 1)  # old degree matched to new target k-1
        d = C.d(old_src).T
        sign = -1 if old_src % 2 else 1
        diffs.append(d if sign == 1 else -d)
    labels = [[f"{l}*" for l in lab] for lab in reversed(C.labels)]
    twists = None
    if C.twists is not None:
        twists = [[(-a, -b) for a, b in tw] for tw in reversed(C.twists)]
    return FreeComplex(C.ring, n_ranks, diffs, labels, twists, C.low, name or f"dual({C.name})")


def shift(C: FreeComplex, k: int) -> FreeComplex:
    """``C[k]``: degree ``i`` of the result is degree ``i - k`` of ``C``;
    differentials pick up the sign ``(-1)^k``."""
    sign = -1 if k % 2 else 1
    diffs = [d if sign == 1 else -d for d in C.diffs]
    return FreeComplex(C.ring, C.ranks, diffs, C.labels, C.twists, C.low + k, f"{C.name}[{k}]")


def mapping_cone(f: ChainMap, verified: bool = False, name: Optional[str] = None) -> FreeComplex:
    """Cone with ``cone_n = T_n (+) S_{n-1}`` and differential
    ``[[d_T, f_{n-1}], [0, -d_S]]``."""
    if not verified:
        rep = is_chain_map(f)
        if not rep:
            raise ValueError(f"mapping cone of a non-chain map: {rep.failure}")
    S, T = f.source, f.target
    ring = T.ring
    lo = min(T.low, S.low + 1)
    hi = max(T.high, S.high + 1)
    ranks, labels, twists = [], [], []
    have_twists = S.twists is not None and T.twists is not None
    for n in range(lo, hi + 1):
        ranks.append(T.rank(n) + S.rank(n - 1))
        labels.append(
            (T.labels[n - T.low] if T.rank(n) else [])
            + ([f"s:{l}" for l in S.labels[n - 1 - S.low]] if S.rank(n - 1) else [])
        )
        if have_twists:
            twists.append(
                (T.twists[n - T.low] if T.rank(n) else [])
                + (S.twists[n - 1 - S.low] if S.rank(n - 1) else [])
            )
    diffs = []
    for n in range(lo + 1, hi + 1):
        top = Matrix.hstack([T.d(n), f[n - 1]])
        bottom = Matrix.hstack([Matrix.zeros(ring, S.rank(n - 2), T.rank(n)), -S.d(n - 1)])
        diffs.append(Matrix.vstack([top, bottom]))
    return FreeComplex(
        ring, ranks, diffs, labels, twists if have_twists else None, lo, name or f"cone({S.name}->{T.name})"
    )


def tensor_complexes(C: FreeComplex, D: FreeComplex, name: Optional[str] = None) -> FreeComplex:
    """Total complex of ``C (x) D`` with ``d(c(x)e) = dc(x)e + (-1)^p c(x)de``.

    In each total degree the summands ``C_p (x) D_q`` appear with ``p``
    ascending, each in row-major order over (basis of C_p, basis of D_q).
    """
    if C.ring != D.ring:
        raise ValueError("tensor of complexes over different rings")
    ring = C.ring
    lo, hi = C.low + D.low, C.high + D.high
    have_twists = C.twists is not None and D.twists is not None

    def summands(n):
        return [(p, n - p) for p in range(C.low, C.high + 1) if D.low <= n - p <= D.high]

    index = {}
    ranks, labels, twists = [], [], []
    for n in range(lo, hi + 1):
        pos = 0
        lab, tw = [], []
        for p, q in summands(n):
            for a in range(C.rank(p)):
                for b in range(D.rank(q)):
                    index[(n, p, a, b)] = pos
                    pos += 1
                    lab.append(f"{C.labels[p - C.low][a]}(x){D.labels[q - D.low][b]}")
                    if have_twists:
                        s, t = C.twists[p - C.low][a], D.twists[q - D.low][b]
                        tw.append((s[0] + t[0], s[1] + t[1]))
        ranks.append(pos)
        labels.append(lab)
        twists.append(tw)

    diffs = []
    for n in range(lo + 1, hi + 1):
        rows = [[ring.zero()] * ranks[n - lo] for _ in range(ranks[n - 1 - lo])]
        for p, q in summands(n):
            dc, dd = C.d(p), D.d(q)
            sign = -1 if p % 2 else 1
            for a in range(C.rank(p)):
                for b in range(D.rank(q)):
                    col = index[(n, p, a, b)]
                    if p - 1 >= C.low:
                        for a2 in range(C.rank(p - 1)):
                            x = dc[a2, a]
                            if x:
                                rows[index[(n - 1, p - 1, a2, b)]][col] += x
                    if q - 1 >= D.low:
                        for b2 in range(D.rank(q - 1)):
                            x = dd[b2, b]
                            if x:
                                r = index[(n - 1, p, a, b2)]
                                rows[r][col] = rows[r][col] + (x if sign == 1 else -x)
        diffs.append(Matrix(ring, rows, ranks[n - 1 - lo], ranks[n - lo]))
    return FreeComplex(
        ring, ranks, diffs, labels, twists if have_twists else None, lo,
        name or f"{C.name}(x){D.name}",
    )


# ---------------------------------------------------------------------------
# Cancellation of split exact summands


def _find_unit(C: FreeComplex):
    """First unit entry, scanning from the top differential, row-major."""
    dom = C.ring.domain
    for i in range(C.high, C.low, -1):
        d = C.d(i)
        for r, c, x in d.entries():
            if x and x.is_constant() and is_unit(x.constant_coefficient(), dom):
                return i, r, c, x
    return None


def _drop(seq, k):
    return [x for j, x in enumerate(seq) if j != k]


def _cancel_once(C: FreeComplex, i: int, r: int, c: int, u: Polynomial):
    """Cancel the pair (basis c of degree i, basis r of degree i-1).

    Returns the reduced complex together with the projection and inclusion
    matrices in degrees i and i-1.
    """
    ring = C.ring
    d = C.d(i)
    keep_rows = [k for k in range(d.nrows) if k != r]
    keep_cols = [k for k in range(d.ncols) if k != c]
    phi = d.submatrix([r], keep_cols)  # 1 x (cols-1)
    psi = d.submatrix(keep_rows, [c])  # (rows-1) x 1
    eps = d.submatrix(keep_rows, keep_cols)
    psi_u = psi.map(lambda x: x / u)
    new_d = eps - psi_u @ phi

    diffs = list(C.diffs)
    k = i - C.low - 1
    diffs[k] = new_d
    if i + 1 <= C.high:
        up = C.d(i + 1)
        diffs[k + 1] = up.submatrix(keep_cols, range(up.ncols))
    if i - 1 > C.low:
        down = C.d(i - 1)
        diffs[k - 1] = down.submatrix(range(down.nrows), keep_rows)
    ranks = list(C.ranks)
    ranks[i - C.low] -= 1
    ranks[i - 1 - C.low] -= 1
    labels = [list(l) for l in C.labels]
    labels[i - C.low] = _drop(labels[i - C.low], c)
    labels[i - 1 - C.low] = _drop(labels[i - 1 - C.low], r)
    twists = None
    if C.twists is not None:
        twists = [list(t) for t in C.twists]
        twists[i - C.low] = _drop(twists[i - C.low], c)
        twists[i - 1 - C.low] = _drop(twists[i - 1 - C.low], r)
    reduced = FreeComplex(ring, ranks, diffs, labels, twists, C.low, C.name)

    # projection f: C -> reduced, inclusion g: reduced -> C
    n_i, n_im1 = C.rank(i), C.rank(i - 1)
    f_i = Matrix.identity(ring, n_i).submatrix(keep_cols, range(n_i))
    f_im1 = Matrix.hstack([
        Matrix.identity(ring, n_im1).submatrix(keep_rows, range(0, r)),
        -psi_u,
        Matrix.identity(ring, n_im1).submatrix(keep_rows, range(r + 1, n_im1)),
    ]) if n_im1 > 1 else Matrix.zeros(ring, 0, n_im1)
    g_im1 = Matrix.identity(ring, n_im1).submatrix(range(n_im1), keep_rows)
    top = phi.map(lambda x: -x / u)
    g_i = Matrix.vstack([
        Matrix.identity(ring, n_i).submatrix(range(0, c), keep_cols),
        top,
        Matrix.identity(ring, n_i).submatrix(range(c + 1, n_i), keep_cols),
    ]) if n_i > 1 else Matrix.zeros(ring, n_i, 0)
    return reduced, (f_i, f_im1, g_i, g_im1)


@dataclass
class SplitCertificate:
    """Projection ``C -> reduced`` and inclusion ``reduced -> C``."""

    projection: ChainMap
    inclusion: ChainMap
    steps: List[dict]

    def to_json(self) -> dict:
        return {"steps": self.steps}


def remove_split_summand(C: FreeComplex):
    """Cancel unit entries until none remain.

    Returns ``(reduced, certificate)``; the certificate's projection and
    inclusion are chain maps with ``projection o inclusion = id``.
    """
    ring = C.ring

    def ident(X):
        return {j: Matrix.identity(ring, X.rank(j)) for j in range(X.low, X.high + 1)}

    proj = ident(C)   # current -> original mapping tracked as matrices
    incl = ident(C)
    current = C
    steps = []
    while True:
        hit = _find_unit(current)
        if hit is None:
            break
        i, r, c, u = hit
        steps.append({
            "degree": i,
            "row": r,
            "col": c,
            "row_label": current.labels[i - 1 - current.low][r],
            "col_label": current.labels[i - current.low][c],
            "unit": str(u),
        })
        current, (f_i, f_im1, g_i, g_im1) = _cancel_once(current, i, r, c, u)
        proj[i] = f_i @ proj[i]
        proj[i - 1] = f_im1 @ proj[i - 1]
        incl[i] = incl[i] @ g_i
        incl[i - 1] = incl[i - 1] @ g_im1
    cert = SplitCertificate(
        ChainMap(C, current, proj), ChainMap(current, C, incl), steps
    )
    return current, cert


def verify_split_certificate(cert: SplitCertificate) -> Report:
    for f, label in ((cert.projection, "projection"), (cert.inclusion, "inclusion")):
        rep = is_chain_map(f)
        if not rep:
            return Report("split_certificate", False, failure={"map": label, **rep.failure})
    comp = cert.projection.compose(cert.inclusion)
    for i in comp.degrees():
        m = comp[i]
        if m != Matrix.identity(m.ring, m.nrows):
            return Report("split_certificate", False, failure={"degree": i, "reason": "p o i != id"})
    return Report("split_certificate", True, {"cancellations": len(cert.steps)})


def has_unit_entry(C: FreeComplex) -> bool:
    return _find_unit(C) is not None


# ---------------------------------------------------------------------------
# Degree-zero comparison maps


def find_constant_ladder(S: FreeComplex, T: FreeComplex, base: Optional[Matrix] = None) -> Optional[ChainMap]:
    """Solve for constant matrices ``f_i`` with ``f_{i-1} d^S_i = d^T_i f_i``.

    ``f_low`` defaults to the identity (or ``base``), and each higher ``f_i``
    is the solution of the exact linear system on monomial coefficients.
    Returns ``None`` if some degree has no constant solution.
    """
    if S.ring != T.ring or S.ranks != T.ranks or S.low != T.low:
        return None
    ring = S.ring
    maps = {S.low: base if base is not None else Matrix.identity(ring, S.rank(S.low))}
    for i in range(S.low + 1, S.high + 1):
        prev = maps[i - 1]
        rhs = prev @ S.d(i)  # rank(i-1) x rank(i)
        dT = T.d(i)
        n, m = T.rank(i), S.rank(i)
        # unknown f[a][b], a < n (target basis), b < m (source basis)
        # equation: sum_a dT[r][a] * f[a][b] == rhs[r][b]
        f = [[Fraction(0)] * m for _ in range(n)]
        for b in range(m):
            columns = []
            for a in range(n):
                vec = {}
                for r in range(dT.nrows):
                    for e, c in dT[r, a].terms.items():
                        vec[(r, e)] = c
                columns.append(vec)
            target = {}
            for r in range(rhs.nrows):
                for e, c in rhs[r, b].terms.items():
                    target[(r, e)] = c
            sol = solve_sparse(columns, target)
            if sol is None:
                return None
            for a in range(n):
                f[a][b] = sol[a]
        try:
            maps[i] = Matrix(ring, [[ring.const(x) for x in row] for row in f], n, m)
        except Exception:
            return None
    return ChainMap(S, T, maps)
