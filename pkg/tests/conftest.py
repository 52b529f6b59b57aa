"""Shared fixtures.  sympy is used only here, as an independent oracle."""

import random
from fractions import Fraction

import pytest
import sympy

from resolv251.ring import PolyRing, ZZ


def to_sympy(p):
    syms = sympy.symbols(p.ring.names)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        c = Fraction(c)
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            if k:
                term *= s ** k
        expr += term
    return sympy.expand(expr)


def sympy_of(text, ring):
    """Parse a printed expression in the variables of ``ring``."""
    loc = {n: sympy.Symbol(n) for n in ring.names}
    return sympy.expand(sympy.sympify(text, locals=loc))


def random_poly(rng, ring, nterms=4, maxdeg=2, bound=5):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(ring.nvars))
        terms[e] = terms.get(e, 0) + rng.randint(-bound, bound)
    return ring.poly(terms)


@pytest.fixture
def small_ring():
    return PolyRing(["x", "y", "z"], ZZ)


@pytest.fixture
def rng():
    return random.Random(20261014)
