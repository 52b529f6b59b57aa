"""Exact sparse multivariate polynomials over ZZ, ZZ[1/2] and QQ.

A :class:`PolyRing` fixes an ordered list of variables, each carrying a
bidegree, and a coefficient domain.  :class:`Polynomial` values are immutable
maps from dense exponent tuples to nonzero exact coefficients (``int`` or
``fractions.Fraction``).  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

ZZ = "ZZ"
ZZ2 = "ZZ[1/2]"
QQ = "QQ"
DOMAINS = (ZZ, ZZ2, QQ)

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]


class RingMismatch(ValueError):
    pass


class DomainError(ValueError):
    """A coefficient does not belong to, or is not a unit of, the domain."""


# Distinguished bidegree of the zero polynomial: compatible with anything.
ANY = "any"


def _normalize(c) -> Coefficient:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _normalize(Fraction(c.numerator, c.denominator))
    raise TypeError(f"inexact or non-rational coefficient {c!r}")


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def in_domain(c: Coefficient, domain: str) -> bool:
    den = Fraction(c).denominator
    if domain == ZZ:
        return den == 1
    if domain == ZZ2:
        return _is_power_of_two(den)
    return True


def is_unit(c: Coefficient, domain: str) -> bool:
    """True iff ``c`` is invertible in ``domain``."""
    if c == 0 or not in_domain(c, domain):
        return False
    if domain == ZZ:
        return c in (1, -1)
    if domain == ZZ2:
        f = Fraction(c)
        return _is_power_of_two(abs(f.numerator)) and _is_power_of_two(f.denominator)
    return True


def grevlex_key(e: Exponent):
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """Polynomial ring over a coefficient domain with bigraded variables.

    ``variables`` is a sequence of ``(name, (deg1, deg2))`` pairs, or of bare
    names (bidegree ``(1, 0)``).
    """

    def __init__(self, variables: Iterable, domain: str = ZZ):
        names, degs = [], []
        for v in variables:
            if isinstance(v, str):
                names.append(v)
                degs.append((1, 0))
            else:
                name, deg = v
                names.append(name)
                degs.append(tuple(deg))
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if domain not in DOMAINS:
            raise ValueError(f"unknown coefficient domain {domain!r}")
        self.names: Tuple[str, ...] = tuple(names)
        self.bidegrees: Tuple[Tuple[int, int], ...] = tuple(degs)
        self.domain = domain
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self._key = (self.names, self.bidegrees, self.domain)
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; {self.domain})"

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __getitem__(self, name: str) -> "Polynomial":
        return self.var(name)

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def gens_dict(self) -> Dict[str, "Polynomial"]:
        return {n: self.var(n) for n in self.names}

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = _normalize(c)
        self.check_coefficient(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def check_coefficient(self, c: Coefficient) -> None:
        if not in_domain(c, self.domain):
            raise DomainError(f"{c} is not an element of {self.domain}")

    def poly(self, terms: Mapping[Exponent, Coefficient]) -> "Polynomial":
        """Build a polynomial from explicit terms, validating everything."""
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e}")
            c = _normalize(c)
            self.check_coefficient(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        return Polynomial(self, {e: c for e, c in clean.items() if c})

    def with_domain(self, domain: str) -> "PolyRing":
        return PolyRing(zip(self.names, self.bidegrees), domain)

    def variables(self):
        return list(zip(self.names, self.bidegrees))


class Polynomial:
    """Immutable sparse polynomial; compare with ``==`` structurally."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exponent, Coefficient]):
        # Trusted constructor: terms must already be clean.
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = _normalize(v)
            else:
                del res[e]
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        res: Dict[Exponent, Coefficient] = {}
        get = res.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                res[e] = get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: _normalize(c) for e, c in res.items() if c})

    __rmul__ = __mul__

    def scalar_mul(self, c) -> "Polynomial":
        c = _normalize(c)
        self.ring.check_coefficient(c)
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        return Polynomial(self.ring, {e: _normalize(v * c) for e, v in self.terms.items()})

    def __truediv__(self, c):
        """Division by a unit of the coefficient domain only."""
        if isinstance(c, Polynomial):
            if not c.is_constant():
                raise DomainError("division by a non-constant polynomial")
            c = c.constant_coefficient()
        c = _normalize(c)
        if not is_unit(c, self.ring.domain):
            raise DomainError(f"{c} is not a unit of {self.ring.domain}")
        inv = _normalize(Fraction(1) / Fraction(c))
        return Polynomial(self.ring, {e: _normalize(v * inv) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self) -> Coefficient:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def sorted_terms(self):
        """Terms in descending graded-reverse-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(self.ring.names[i] for i in sorted(used))

    def monomial_bidegree(self, e: Exponent) -> Tuple[int, int]:
        d1 = d2 = 0
        for x, (b1, b2) in zip(e, self.ring.bidegrees):
            if x:
                d1 += x * b1
                d2 += x * b2
        return (d1, d2)

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Reinterpret in a ring with the same variables (e.g. a wider domain)."""
        if ring.names != self.ring.names:
            raise RingMismatch("change_ring needs identical variables")
        return ring.poly(self.terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(self.ring.names, e) if x
            )
            sgn = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sgn, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sgn, body in parts[1:]:
            out += f" {sgn} {body}"
        return out

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for e, c in self.sorted_terms():
            f = Fraction(c)
            terms.append({"exp": list(e), "num": str(f.numerator), "den": str(f.denominator)})
        return {"ring": list(self.ring.names), "terms": terms}


def poly_from_json(data: Mapping, ring: PolyRing) -> Polynomial:
    if list(data["ring"]) != list(ring.names):
        raise RingMismatch("serialized variable list does not match ring")
    terms = {}
    for t in data["terms"]:
        terms[tuple(t["exp"])] = Fraction(int(t["num"]), int(t["den"]))
    return ring.poly(terms)


def poly_arith(op: str, lhs: Polynomial, rhs=None) -> Polynomial:
    """Functional front end to the operator overloads."""
    if op == "add":
        return lhs + lhs._coerce(rhs)
    if op == "sub":
        return lhs - lhs._coerce(rhs)
    if op == "mul":
        return lhs * lhs._coerce(rhs)
    if op == "neg":
        return -lhs
    if op == "scalar_mul":
        return lhs.scalar_mul(rhs)
    raise ValueError(f"unknown operation {op!r}")


def bidegree_of(p: Polynomial):
    """Common bidegree of all terms, ``ANY`` for zero, ``None`` if mixed."""
    if not p.terms:
        return ANY
    degs = {p.monomial_bidegree(e) for e in p.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def eval_at_point(p: Polynomial, point: Sequence) -> Fraction:
    if len(point) != p.ring.nvars:
        raise ValueError("point length does not match ring")
    pt = [Fraction(v) for v in point]
    total = Fraction(0)
    for e, c in p.terms.items():
        term = Fraction(c)
        for v, x in zip(pt, e):
            if x:
                term *= v ** x
        total += term
    return total


class RingMap:
    """Substitution homomorphism ``source -> target``.

    ``images`` is either a sequence aligned with ``source.names`` or a mapping
    from source names to target polynomials (or constants).  Unlisted names in
    a mapping raise, so every variable's image is stated explicitly.
    """

    def __init__(self, source: PolyRing, target: PolyRing, images):
        if isinstance(images, Mapping):
            missing = [n for n in source.names if n not in images]
            if missing:
                raise ValueError(f"no image given for {missing}")
            images = [images[n] for n in source.names]
        images = list(images)
        if len(images) != source.nvars:
            raise ValueError("one image per source variable required")
        self.source = source
        self.target = target
        self.images: Tuple[Polynomial, ...] = tuple(
            img if isinstance(img, Polynomial) else target.const(img) for img in images
        )
        for img in self.images:
            if img.ring != target:
                raise RingMismatch("image outside target ring")

    def __call__(self, p: Polynomial) -> Polynomial:
        return substitute(self, p)

    def image_of(self, name: str) -> Polynomial:
        return self.images[self.source.index(name)]

    def compose(self, inner: "RingMap") -> "RingMap":
        """``self o inner``: first ``inner``, then ``self``."""
        if inner.target != self.source:
            raise RingMismatch("maps are not composable")
        return RingMap(inner.source, self.target, [self(img) for img in inner.images])

    @classmethod
    def identity(cls, ring: PolyRing) -> "RingMap":
        return cls(ring, ring, ring.gens())

    @classmethod
    def by_name(cls, source: PolyRing, target: PolyRing) -> "RingMap":
        """Send each variable to the same-named variable of ``target``."""
        return cls(source, target, [target.var(n) for n in source.names])


def substitute(rmap: RingMap, p: Polynomial) -> Polynomial:
    if p.ring != rmap.source:
        # Tolerate a domain-only difference (e.g. ZZ source poly, ZZ[1/2] map).
        if p.ring.names == rmap.source.names:
            p = p.change_ring(rmap.source)
        else:
            raise RingMismatch("polynomial is not in the map's source ring")
    target = rmap.target
    result = target.zero()
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, k: int) -> Polynomial:
        key = (i, k)
        if key not in powers:
            powers[key] = rmap.images[i] if k == 1 else power(i, k - 1) * rmap.images[i]
        return powers[key]

    acc: Dict[Exponent, Coefficient] = {}
    for e, c in p.terms.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
                if not term:
                    break
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + tc
    result = Polynomial(target, {e: _normalize(c) for e, c in acc.items() if c})
    return result
