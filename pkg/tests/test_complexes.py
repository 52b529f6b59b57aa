import json
import random

import pytest

from resolv251 import linkage, resolutions as res
from resolv251.complexes import (
    ChainMap, FreeComplex, check_bigrading, check_complex, dual, find_constant_ladder,
    has_unit_entry, is_chain_map, is_complex_isomorphism, mapping_cone, remove_split_summand,
    shift, tensor_complexes, verify_split_certificate,
)
from resolv251.matrix import Matrix, rank_fraction_free
from resolv251.ring import PolyRing, ZZ, eval_at_point


def ranks_at_point(C, seed):
    rng = random.Random(seed)
    pt = [rng.randint(-50, 50) for _ in range(C.ring.nvars)]
    return {i: rank_fraction_free([[eval_at_point(x, pt) for x in row] for row in C.d(i).rows])
            for i in range(C.low + 1, C.high + 1)}


def assert_same_complex(A, B):
    assert A.ranks == B.ranks and A.low == B.low
    for i in range(A.low + 1, A.high + 1):
        assert A.d(i) == B.d(i)


@pytest.fixture(scope="module")
def B():
    return res.build_B_matrices()


@pytest.fixture(scope="module")
def Q():
    return res.build_Q_matrices()


def test_check_complex_named(Q, B):
    for C in (Q, res.build_M(), B, res.build_hyperplane_ACI_resolution()):
        assert check_complex(C)
        assert check_bigrading(C)


def test_zero_complex():
    R = PolyRing(["x"])
    assert check_complex(FreeComplex(R, [0], []))


def test_mutated_gen2_fails(Q):
    d = dict(enumerate(Q.diffs))
    m = d[0]
    rows = [list(r) for r in m.rows]
    rows[0][1] = -rows[0][1]
    diffs = [Matrix(Q.ring, rows, 1, 5)] + Q.diffs[1:]
    bad = FreeComplex(Q.ring, Q.ranks, diffs, Q.labels, Q.twists)
    rep = check_complex(bad)
    assert not rep
    assert rep.failure["matrix"] == "d1*d2" and rep.failure["entry"] != "0"


def test_mutated_entry_fails_bigrading(Q):
    rows = [list(r) for r in Q.d(1).rows]
    rows[0][0] = rows[0][0] + Q.ring["z2"]
    bad = FreeComplex(Q.ring, Q.ranks, [Matrix(Q.ring, rows, 1, 5)] + Q.diffs[1:], Q.labels, Q.twists)
    assert not check_bigrading(bad)


def test_dual_involution(B):
    DD = dual(dual(B))
    assert_same_complex(DD, B)
    assert DD.twists == B.twists


def test_dual_length_one():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    A = Matrix(R, [[x, y]])
    C = FreeComplex(R, [1, 2], [A])
    D = dual(C)
    assert D.ranks == [2, 1]
    assert D.d(1) == -A.T


def test_dual_of_koszul_is_koszul():
    R = PolyRing(["x", "y", "z"])
    K = linkage.koszul_complex(list(R.gens()))
    D = dual(K)
    assert check_complex(D)
    assert D.ranks == K.ranks
    # self-duality: a constant ladder exists and is invertible
    f = find_constant_ladder(D, K, Matrix(R, [[R.one()]]))
    assert f is not None and is_complex_isomorphism(f)


def test_shift():
    R = PolyRing(["x"])
    C = FreeComplex(R, [1, 1], [Matrix(R, [[R["x"]]])])
    S = shift(C, 1)
    assert S.low == 1 and S.d(2) == -C.d(1)
    assert check_complex(shift(res.build_M(), 3))


def test_cone_of_identity_is_exact(B):
    cone = mapping_cone(ChainMap.identity(B))
    assert check_complex(cone)
    r = ranks_at_point(cone, 11)
    for n in range(cone.low, cone.high + 1):
        assert cone.rank(n) == r.get(n, 0) + r.get(n + 1, 0)


def test_cone_of_zero_map():
    R = PolyRing(["x", "y"])
    K = linkage.koszul_complex(list(R.gens()))
    cone = mapping_cone(ChainMap.zero(K, K))
    assert check_complex(cone)
    assert cone.ranks == [1, 3, 3, 1]


def test_cone_refuses_non_chain_map():
    R = PolyRing(["x"])
    K = linkage.koszul_complex([R["x"]])
    bad = ChainMap(K, K, {0: Matrix.identity(R, 1)})
    with pytest.raises(ValueError):
        mapping_cone(bad)


def test_tensor_unit(B):
    unit = FreeComplex(B.ring, [1], [], [["1"]], [[(0, 0)]])
    assert_same_complex(tensor_complexes(B, unit), B)


def test_koszul_multiplicative():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    T = tensor_complexes(linkage.koszul_complex([x]), linkage.koszul_complex([y]))
    K = linkage.koszul_complex([x, y])
    assert T.ranks == K.ranks and check_complex(T)
    f = find_constant_ladder(T, K)
    assert f is not None and is_complex_isomorphism(f)


def test_tensor_hb_ranks():
    C = res.build_hyperplane_ACI_resolution()
    assert C.betti() == (2, 5, 4, 1)


def test_remove_unit():
    R = PolyRing(["x"])
    C = FreeComplex(R, [1, 1], [Matrix(R, [[R.one()]])])
    red, cert = remove_split_summand(C)
    assert red.ranks == [0, 0]
    assert verify_split_certificate(cert)


def test_remove_identity_summand(B):
    R = B.ring
    # B (+) (R --1--> R) placed in degrees 2 -> 1
    ranks = list(B.ranks)
    ranks[1] += 1
    ranks[2] += 1
    diffs = []
    for i in range(1, B.high + 1):
        d = B.d(i)
        rows, cols = d.nrows + (i - 1 in (1, 2)), d.ncols + (i in (1, 2))
        m = [[R.zero()] * cols for _ in range(rows)]
        for r, c, x in d.entries():
            m[r][c] = x
        if i == 2:
            m[rows - 1][cols - 1] = R.one()
        diffs.append(Matrix(R, m, rows, cols))
    C = FreeComplex(R, ranks, diffs)
    assert check_complex(C)
    red, cert = remove_split_summand(C)
    assert red.ranks == B.ranks
    assert not has_unit_entry(red)
    assert verify_split_certificate(cert)
    f = find_constant_ladder(red, B)
    assert f is not None and is_complex_isomorphism(f)


def test_remove_is_idempotent(B):
    red, cert = remove_split_summand(B)
    assert cert.steps == []
    assert_same_complex(red, B)


def test_chain_map_checks():
    M = res.build_M()
    assert is_chain_map(ChainMap.identity(M))
    assert is_complex_isomorphism(ChainMap.identity(M))
    R = M.ring
    maps = {i: Matrix.identity(R, M.rank(i)).scale(R.const(2)) for i in range(M.low, M.high + 1)}
    rep = is_complex_isomorphism(ChainMap(M, M, maps))
    assert is_chain_map(ChainMap(M, M, maps)) and not rep


def test_json_round_trip(Q):
    data = json.loads(json.dumps(Q.to_json()))
    back = FreeComplex.from_json(data)
    assert_same_complex(back, Q)
    assert back.twists == Q.twists and back.labels == Q.labels


def test_shape_validation():
    R = PolyRing(["x"])
    with pytest.raises(ValueError):
        FreeComplex(R, [1, 2], [Matrix(R, [[R.one()]])])


def test_trimmed():
    R = PolyRing(["x"])
    C = FreeComplex(R, [0, 1, 1, 0], [Matrix.zeros(R, 0, 1), Matrix(R, [[R["x"]]]), Matrix.zeros(R, 1, 0)])
    T = C.trimmed()
    assert T.ranks == [1, 1] and T.low == 1
