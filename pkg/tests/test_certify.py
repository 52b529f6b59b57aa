import random

import pytest
import sympy

from resolv251 import linkage, resolutions as res
from resolv251.certify import (
    GradedMembershipProblem, NotHomogeneous, TooLarge, buchberger_small, codim_via_gb,
    expected_rank_profile, graded_membership, ideal_contains, ideals_equal, is_groebner_basis,
    random_exactness_report, random_linear_specialization, specialize_and_certify,
)
from resolv251.complexes import FreeComplex
from resolv251.matrix import Matrix
from resolv251.ring import PolyRing, QQ, RingMap

from conftest import random_poly, to_sympy


def test_membership_examples():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    w = graded_membership(GradedMembershipProblem(x ** 2, [x]))
    assert w == [x]
    assert graded_membership(x, [x ** 2, y ** 2]) is None


def test_membership_rejects_inhomogeneous():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    with pytest.raises(NotHomogeneous):
        graded_membership(x + x * y, [x])


def test_membership_random(rng):
    R = PolyRing([("x", (1, 0)), ("y", (1, 0)), ("z", (0, 1))])
    x, y, z = R.gens()
    gens = [x * z + y * z, x ** 2 - y ** 2]
    for _ in range(20):
        h1 = sum((rng.randint(-3, 3) * m for m in (x, y)), R.zero())
        h2 = rng.randint(-3, 3) * z
        t = h1 * gens[0] + h2 * gens[1]
        w = graded_membership(t, gens)
        assert w is not None
        assert w[0] * gens[0] + w[1] * gens[1] == t


def test_ideal_relations():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    assert ideal_contains([x, y], [x * y, x ** 2])
    assert not ideal_contains([x * y], [x])
    assert ideals_equal([x + y, y], [x, y])
    assert not ideals_equal([x], [x, y])


def test_expected_rank_profile():
    assert expected_rank_profile(res.build_Q_matrices()) == [2, 4, 1]


@pytest.mark.parametrize("name", ["Q", "M", "B"])
def test_exactness(name):
    C = {"Q": res.build_Q_matrices, "M": res.build_M, "B": res.build_B_matrices}[name]()
    rep = random_exactness_report(C, 20, 42)
    assert rep.passed
    assert all(r == [2, 4, 1] for r in rep.ranks)
    assert "not a proof" in rep.label
    again = random_exactness_report(C, 20, 42)
    assert again.points == rep.points and again.ranks == rep.ranks


def test_exactness_detects_rank_drop():
    Q = res.build_Q_matrices()
    d2 = Q.d(2)
    rows = [list(r) for r in d2.rows]
    for r in rows:
        r[1] = r[0]  # repeated column
    d3 = Matrix.zeros(Q.ring, 6, 2)
    bad = FreeComplex(Q.ring, Q.ranks, [Q.d(1), Matrix(Q.ring, rows, 5, 6), d3])
    assert not random_exactness_report(bad, 5, 1).passed


def test_exactness_vacuous():
    R = PolyRing(["x"])
    C = FreeComplex(R, [1, 0, 0, 0], [Matrix.zeros(R, 1, 0), Matrix.zeros(R, 0, 0), Matrix.zeros(R, 0, 0)])
    rep = random_exactness_report(C, 3, 0)
    assert rep.passed and rep.expected == [0, 0, 0]


def _sympy_gb(gens):
    syms = sympy.symbols(gens[0].ring.names)
    G = sympy.groebner([to_sympy(g) for g in gens], *syms, order="grevlex", domain="QQ")
    return sorted(str(sympy.expand(p)) for p in G.exprs)


def test_gb_matches_sympy(rng):
    R = PolyRing(["x", "y", "z"])
    for _ in range(15):
        gens = [random_poly(rng, R, 3, 2, 4) for _ in range(3)]
        gens = [g for g in gens if g]
        if not gens:
            continue
        G = buchberger_small(gens)
        assert is_groebner_basis(G)
        assert sorted(str(to_sympy(g)) for g in G) == _sympy_gb(gens)


def test_gb_examples():
    R = PolyRing(["x", "y", "z"])
    x, y, z = R.gens()
    assert codim_via_gb([x, y]) == 2
    G = buchberger_small([x * y - 1, x ** 2])
    assert G == [R.with_domain(QQ).one()]
    assert codim_via_gb([x * y - 1, x ** 2]) == 3


def test_gb_guard():
    R = PolyRing([f"v{i}" for i in range(6)])
    with pytest.raises(TooLarge):
        buchberger_small(list(R.gens()))


def test_codim_shuffle_invariant():
    rng = random.Random(8)
    Q = res.build_Q_matrices()
    rmap = random_linear_specialization(Q.ring, 4, 42)
    gens = [rmap(x) for x in Q.d(1).rows[0]]
    base = codim_via_gb(gens)
    assert base == 3
    for _ in range(3):
        rng.shuffle(gens)
        assert codim_via_gb(gens) == base


@pytest.mark.parametrize("name", ["Q", "M", "B"])
def test_specialize_and_certify(name):
    C = {"Q": res.build_Q_matrices, "M": res.build_M, "B": res.build_B_matrices}[name]()
    rep = specialize_and_certify(C, 4, 42)
    assert rep, rep.failure
    assert rep.details["codim"] == 3 and rep.details["complex"]


def test_specialize_koszul_identity():
    R = PolyRing(["x", "y", "z"], QQ)
    K = linkage.koszul_complex(list(R.gens()))
    assert specialize_and_certify(K, rmap=RingMap.identity(R))


def test_specialization_deterministic():
    R = res.ring_Q()
    a = random_linear_specialization(R, 4, 42)
    b = random_linear_specialization(R, 4, 42)
    assert a.images == b.images
