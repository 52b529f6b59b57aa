"""Exterior powers of based free modules and the contraction actions.

Convention: for a 1-form ``phi`` the action on ``x_1 ^ ... ^ x_p`` is the
left interior product

    phi(x_1 ^ ... ^ x_p) = sum_j (-1)^(j+1) phi(x_j) x_1 ^ .. x_j-hat .. ^ x_p,

and a wedge of forms acts by iteration, ``(alpha ^ beta)(a) = alpha(beta(a))``.
The same rule with the roles of ``V`` and ``V*`` exchanged gives the action
of ``/\\V`` on ``/\\V*``.  On equal degrees this gives

    (phi_1 ^ ... ^ phi_k)(x_1 ^ ... ^ x_k) = det(phi_{k+1-i}(x_j)),

so ``e_3* ^ e_2* ^ e_1*`` pairs to 1 with ``e_1 ^ e_2 ^ e_3``, which is the
dual-basis pairing used for the top powers throughout the package.  The
choice is pinned by tests that rebuild Q and B coordinate-free and compare
with the printed matrices.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Subset = Tuple[int, ...]


class ModuleMismatch(ValueError):
    pass


class BasedFreeModule:
    """Free module with a named basis; ``dual()`` flips to the dual basis."""

    def __init__(self, name: str, labels: Sequence[str], dual: bool = False):
        if not labels:
            raise ValueError("rank must be positive")
        self.name = name
        self.base_labels = tuple(labels)
        self.is_dual = dual
        self.rank = len(labels)

    @property
    def labels(self) -> Tuple[str, ...]:
        if self.is_dual:
            return tuple(f"{l}*" for l in self.base_labels)
        return self.base_labels

    def dual(self) -> "BasedFreeModule":
        return BasedFreeModule(self.name, self.base_labels, not self.is_dual)

    def _key(self):
        return (self.name, self.base_labels, self.is_dual)

    def __eq__(self, other):
        return isinstance(other, BasedFreeModule) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{self.name}{'*' if self.is_dual else ''}"

    def is_dual_of(self, other: "BasedFreeModule") -> bool:
        return (self.name, self.base_labels) == (other.name, other.base_labels) and (
            self.is_dual != other.is_dual
        )

    def basis(self, k: int) -> List[Subset]:
        return list(combinations(range(self.rank), k))

    def basis_element(self, subset: Iterable[int], coeff=1) -> "ExtElement":
        s = tuple(subset)
        sign, s = _sort_sign(s)
        if sign == 0:
            return ExtElement(self, len(s), {})
        return ExtElement(self, len(s), {s: sign * coeff})

    def vector(self, coords: Sequence) -> "ExtElement":
        """Degree-one element with the given coordinates."""
        return ExtElement(self, 1, {(i,): c for i, c in enumerate(coords) if c})

    def one(self, coeff=1) -> "ExtElement":
        return ExtElement(self, 0, {(): coeff} if coeff else {})

    def zero(self, k: int) -> "ExtElement":
        return ExtElement(self, k, {})


def _sort_sign(s: Sequence[int]):
    """Sign of the sorting permutation, or 0 on a repeated index."""
    s = list(s)
    if len(set(s)) != len(s):
        return 0, tuple(sorted(s))
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign, tuple(s)


def _clean(coords: Mapping):
    return {k: v for k, v in coords.items() if v}


class ExtElement:
    """Element of ``/\\^k`` of a based free module, keyed by sorted subsets.

    Coordinates may be any exact ring elements supporting ``+``, ``*`` and a
    falsy zero (``int``, ``Fraction``, :class:`~resolv251.ring.Polynomial`).
    """

    __slots__ = ("module", "degree", "coords")

    def __init__(self, module: BasedFreeModule, degree: int, coords: Mapping[Subset, object]):
        if not 0 <= degree <= module.rank:
            raise ValueError(f"degree {degree} outside 0..{module.rank}")
        n = module.rank
        for s in coords:
            if len(s) != degree or any(not 0 <= i < n for i in s) or any(
                s[i] >= s[i + 1] for i in range(len(s) - 1)
            ):
                raise ValueError(f"bad basis subset {s} for degree {degree}")
        self.module = module
        self.degree = degree
        self.coords: Dict[Subset, object] = _clean(coords)

    def __repr__(self):
        if not self.coords:
            return "0"
        lab = self.module.labels
        parts = []
        for s, c in sorted(self.coords.items()):
            name = "^".join(lab[i] for i in s) or "1"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return (
                self.module == other.module
                and (self.degree == other.degree or not self.coords and not other.coords)
                and self.coords == other.coords
            )
        if other == 0:
            return not self.coords
        return NotImplemented

    def __bool__(self):
        return bool(self.coords)

    def _check(self, other: "ExtElement"):
        if self.module != other.module:
            raise ModuleMismatch(f"{self.module} vs {other.module}")
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")

    def __add__(self, other: "ExtElement"):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.coords)
        for s, c in other.coords.items():
            out[s] = out[s] + c if s in out else c
        return ExtElement(self.module, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.module, self.degree, {s: -c for s, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtElement":
        return ExtElement(self.module, self.degree, {s: c * v for s, v in self.coords.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def coefficient(self, subset: Iterable[int], zero=0):
        """Coordinate on the wedge of ``subset`` taken in the order given."""
        sign, s = _sort_sign(tuple(subset))
        if sign == 0:
            raise ValueError("repeated index")
        c = self.coords.get(s)
        if c is None:
            return zero
        return c if sign == 1 else -c

    def coefficient_on(self, basis: "ExtElement", zero=0):
        """Coordinate of ``self`` on a rank-one basis element ``+-e_S``."""
        if basis.module != self.module or len(basis.coords) != 1:
            raise ValueError("basis element must be a single signed monomial")
        (s, sign), = basis.coords.items()
        if sign not in (1, -1):
            raise ValueError("basis element must have coefficient +-1")
        c = self.coords.get(s)
        if c is None:
            return zero
        return c if sign == 1 else -c


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    if a.module != b.module:
        raise ModuleMismatch(f"{a.module} vs {b.module}")
    k = a.degree + b.degree
    if k > a.module.rank:
        return ExtElement(a.module, a.module.rank, {})
    out: Dict[Subset, object] = {}
    for s, c in a.coords.items():
        for t, d in b.coords.items():
            sign, u = _sort_sign(s + t)
            if sign == 0:
                continue
            v = c * d if sign == 1 else -(c * d)
            out[u] = out[u] + v if u in out else v
    return ExtElement(a.module, k, out)


def wedge_all(*elems: ExtElement) -> ExtElement:
    out = elems[0]
    for e in elems[1:]:
        out = wedge(out, e)
    return out


def _interior_basis(forms: Subset, subset: Subset):
    """Action of the dual monomial ``forms`` on the monomial ``subset``.

    Returns ``(sign, remaining subset)`` or ``None`` if it vanishes.
    """
    rem = list(subset)
    sign = 1
    for j in reversed(forms):
        try:
            pos = rem.index(j)
        except ValueError:
            return None
        if pos % 2:
            sign = -sign
        del rem[pos]
    return sign, tuple(rem)


def contract(alpha: ExtElement, c: ExtElement) -> ExtElement:
    """``alpha(c)`` for ``alpha`` in ``/\\^q V*`` (or ``/\\^q V``) acting on
    ``c`` in ``/\\^p V`` (or ``/\\^p V*``).  Returns 0 in degree 0 if q > p.
    """
    if not alpha.module.is_dual_of(c.module):
        raise ModuleMismatch(f"{alpha.module} does not act on {c.module}")
    q, p = alpha.degree, c.degree
    if q > p:
        return ExtElement(c.module, 0, {})
    out: Dict[Subset, object] = {}
    for s, a in alpha.coords.items():
        for t, b in c.coords.items():
            r = _interior_basis(s, t)
            if r is None:
                continue
            sign, u = r
            v = a * b if sign == 1 else -(a * b)
            out[u] = out[u] + v if u in out else v
    return ExtElement(c.module, p - q, out)


def pairing(alpha: ExtElement, c: ExtElement):
    """Scalar ``alpha(c)`` for equal degrees."""
    if alpha.degree != c.degree:
        raise ValueError("pairing needs equal degrees")
    r = contract(alpha, c)
    return r.coords.get((), 0)


class LinearMap:
    """Homomorphism ``source -> target`` between based free modules.

    ``matrix[i][j]`` is the coefficient of target basis vector ``i`` in the
    image of source basis vector ``j``.
    """

    def __init__(self, source: BasedFreeModule, target: BasedFreeModule, matrix):
        matrix = [list(r) for r in matrix]
        if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
            raise ValueError("matrix shape does not match modules")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __call__(self, a: ExtElement) -> ExtElement:
        return apply_map_power(self, a.degree, a)

    def image_of_basis(self, j: int) -> ExtElement:
        return ExtElement(self.target, 1, {(i,): self.matrix[i][j] for i in range(self.target.rank)})

    def dual(self) -> "LinearMap":
        """Transpose map ``target* -> source*`` with respect to dual bases."""
        mt = [[self.matrix[i][j] for i in range(self.target.rank)] for j in range(self.source.rank)]
        return LinearMap(self.target.dual(), self.source.dual(), mt)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """``self o inner``."""
        if inner.target != self.source:
            raise ModuleMismatch("maps are not composable")
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(inner.source.rank):
                acc = 0
                for k in range(self.source.rank):
                    x, y = self.matrix[i][k], inner.matrix[k][j]
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            rows.append(row)
        return LinearMap(inner.source, self.target, rows)


def apply_map_power(psi: LinearMap, k: int, a: ExtElement) -> ExtElement:
    """``(/\\^k psi)(a)``: wedge of images of the factors."""
    if a.module != psi.source:
        raise ModuleMismatch(f"map from {psi.source} applied to {a.module}")
    if a.degree != k:
        raise ValueError("degree of element does not match k")
    images = [psi.image_of_basis(j) for j in range(psi.source.rank)]
    out = ExtElement(psi.target, k, {})
    for s, c in a.coords.items():
        term = psi.target.one()
        for j in s:
            term = wedge(term, images[j])
        out = out + term.scale(c)
    return out


class CanonicalElement:
    """Element of ``/\\^k V* (x) /\\^k V`` stored as a list of pure tensors."""

    def __init__(self, pairs: List[Tuple[ExtElement, ExtElement]]):
        self.pairs = pairs

    def evaluate(self, theta: ExtElement) -> ExtElement:
        """Apply ``1 (x) theta`` for ``theta`` in ``/\\^k V*``:
        ``sum left * theta(right)``, an element of ``/\\^k V*``."""
        out = None
        for left, right in self.pairs:
            term = left.scale(pairing(theta, right))
            out = term if out is None else out + term
        return out

    def __len__(self):
        return len(self.pairs)


def canonical_element(V: BasedFreeModule, k: int) -> CanonicalElement:
    """``sum_S (e_S)^dual (x) e_S`` over dual bases of ``/\\^k V*`` and ``/\\^k V``.

    The dual basis element of ``e_{s_1} ^ ... ^ e_{s_k}`` is
    ``e*_{s_k} ^ ... ^ e*_{s_1}``.
    """
    if not 0 <= k <= V.rank:
        raise ValueError("degree out of range")
    Vd = V.dual()
    pairs = []
    for s in V.basis(k):
        pairs.append((Vd.basis_element(tuple(reversed(s))), V.basis_element(s)))
    return CanonicalElement(pairs)


def alternating_matrix(alpha2: ExtElement):
    """Matrix of ``f(a) = a(alpha2)``: column j holds ``e_j(alpha2)``."""
    V = alpha2.module.dual()
    cols = [contract(V.basis_element((j,)), alpha2) for j in range(V.rank)]
    return [[cols[j].coefficient((i,)) for j in range(V.rank)] for i in range(V.rank)]
