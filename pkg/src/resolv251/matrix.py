"""Dense matrices of polynomials with explicit shape."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Callable, List, Optional, Sequence, Tuple

from .ring import DomainError, Polynomial, PolyRing, RingMap, is_unit


class Matrix:
    """``nrows x ncols`` matrix over ``ring``.  Treat as immutable."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence], nrows=None, ncols=None):
        self.ring = ring
        self.rows: List[List[Polynomial]] = [
            [x if isinstance(x, Polynomial) else ring.const(x) for x in r] for r in rows
        ]
        self.nrows = len(self.rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged or mis-shaped matrix")
        for r in self.rows:
            for x in r:
                if x.ring != ring:
                    raise ValueError(f"entry from {x.ring}, matrix over {ring}")

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls.diag(ring, [1] * n)

    @classmethod
    def diag(cls, ring, values):
        n = len(values)
        m = [[ring.zero()] * n for _ in range(n)]
        for i, v in enumerate(values):
            m[i][i] = v if isinstance(v, Polynomial) else ring.const(v)
        return cls(ring, m, n, n)

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        ring, nrows = blocks[0].ring, blocks[0].nrows
        rows = [sum((b.rows[i] for b in blocks), []) for i in range(nrows)]
        return cls(ring, rows, nrows, sum(b.ncols for b in blocks))

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        ring, ncols = blocks[0].ring, blocks[0].ncols
        rows = [list(r) for b in blocks for r in b.rows]
        return cls(ring, rows, sum(b.nrows for b in blocks), ncols)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls.vstack([cls.hstack(row) for row in grid])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.ring})"

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                yield i, j, x

    @property
    def T(self) -> "Matrix":
        return Matrix(
            self.ring,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.ncols,
            self.nrows,
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __add__(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            self.ring,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other: "Matrix"):
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero()
        cols = other.T.rows
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out, self.nrows, other.ncols)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: x * c)

    def map(self, f: Callable[[Polynomial], Polynomial], ring: Optional[PolyRing] = None):
        return Matrix(
            ring or self.ring,
            [[f(x) for x in r] for r in self.rows],
            self.nrows,
            self.ncols,
        )

    def substitute(self, rmap: RingMap) -> "Matrix":
        return self.map(rmap, rmap.target)

    def change_ring(self, ring: PolyRing) -> "Matrix":
        return self.map(lambda x: x.change_ring(ring), ring)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def first_nonzero(self):
        for i, j, x in self.entries():
            if x:
                return i, j, x
        return None

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(
            self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(rows), len(cols)
        )

    def det(self) -> Polynomial:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _det(self.ring, self.rows)

    def inverse(self) -> "Matrix":
        """Exact inverse; requires the determinant to be a unit constant."""
        d = self.det()
        if not d.is_constant() or not is_unit(d.constant_coefficient(), self.ring.domain):
            raise DomainError(f"determinant {d} is not a unit")
        n = self.nrows
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j
                ]
                cof = _det(self.ring, minor)
                adj[i][j] = cof if (i + j) % 2 == 0 else -cof
        return Matrix(self.ring, adj, n, n).map(lambda x: x / d)

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows]


def _det(ring: PolyRing, rows) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    # Laplace expansion along the sparsest row.
    k = min(range(n), key=lambda i: sum(1 for x in rows[i] if x))
    total = ring.zero()
    for j, x in enumerate(rows[k]):
        if not x:
            continue
        minor = [[r[c] for c in range(n) if c != j] for i, r in enumerate(rows) if i != k]
        term = x * _det(ring, minor)
        total = total + term if (k + j) % 2 == 0 else total - term
    return total


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def leibniz_det(ring: PolyRing, rows) -> Polynomial:
    """Determinant by the permutation expansion (an independent oracle)."""
    n = len(rows)
    total = ring.zero()
    for p in permutations(range(n)):
        term = ring.const(perm_sign(p))
        for i in range(n):
            term = term * rows[i][p[i]]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Exact rational linear algebra on plain number matrices.


def rank_fraction_free(rows: Sequence[Sequence]) -> int:
    """Rank by Bareiss fraction-free elimination on rationals.

    Rational inputs are cleared to integers row by row first, so every
    intermediate value is an integer.
    """
    m = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = den * x.denominator // _gcd(den, x.denominator)
        m.append([int(x * den) for x in fr])
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            a = m[i][col]
            row_i, row_r = m[i], m[rank]
            m[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def solve_sparse(columns: Sequence[dict], target: dict):
    """Solve ``sum_j x_j * columns[j] == target`` exactly over QQ.

    Vectors are sparse dicts ``key -> rational``.  Returns a list of
    ``Fraction`` (free variables set to zero) or ``None`` if inconsistent.
    """
    pivots = {}  # pivot key -> (reduced vector, combination over columns)
    order = []

    def reduce(vec, comb):
        vec = dict(vec)
        comb = dict(comb)
        for key in order:
            c = vec.get(key)
            if not c:
                continue
            pv, pc = pivots[key]
            for k, v in pv.items():
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in pc.items():
                nv = comb.get(k, 0) - c * v
                if nv:
                    comb[k] = nv
                else:
                    comb.pop(k, None)
        return vec, comb

    for j, col in enumerate(columns):
        vec, comb = reduce({k: Fraction(v) for k, v in col.items() if v}, {j: Fraction(1)})
        if not vec:
            continue
        key = min(vec, key=_sort_key)
        lead = vec[key]
        vec = {k: v / lead for k, v in vec.items()}
        comb = {k: v / lead for k, v in comb.items()}
        # keep pivots fully reduced against the new one
        for other in order:
            pv, pc = pivots[other]
            c = pv.get(key)
            if c:
                for k, v in vec.items():
                    nv = pv.get(k, 0) - c * v
                    if nv:
                        pv[k] = nv
                    else:
                        pv.pop(k, None)
                for k, v in comb.items():
                    nv = pc.get(k, 0) - c * v
                    if nv:
                        pc[k] = nv
                    else:
                        pc.pop(k, None)
        pivots[key] = (vec, comb)
        order.append(key)

    rest, comb = reduce({k: Fraction(v) for k, v in target.items() if v}, {})
    if rest:
        return None
    x = [Fraction(0)] * len(columns)
    for k, v in comb.items():
        x[k] = -v
    return x


def _sort_key(k):
    return repr(k)
