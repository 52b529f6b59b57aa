import pytest
import sympy

from resolv251 import resolutions as res
from resolv251.complexes import check_bigrading, check_complex
from resolv251.exterior import BasedFreeModule, ExtElement, contract
from resolv251.matrix import Matrix
from resolv251.ring import ZZ

from conftest import sympy_of, to_sympy


@pytest.fixture(scope="module")
def RQ():
    return res.ring_Q()


@pytest.fixture(scope="module")
def RB():
    return res.ring_B()


@pytest.fixture(scope="module")
def q(RQ):
    return res.Q_printed_matrices(RQ)


@pytest.fixture(scope="module")
def b(RB):
    return res.B_printed_matrices(RB)


def S(text, ring):
    return sympy_of(text, ring)


def test_q_table_entries(RQ, q):
    q1, q2, q3 = q
    assert to_sympy(q2[0, 0]) == S("psi12*a23 - psi13*a22 + psi23*a21", RQ)
    assert to_sympy(q3[2, 0]) == S("-a11*psi23 + a12*psi13 - a13*psi12", RQ)


def test_gen2(RQ, q):
    A = sympy.Matrix(2, 3, lambda i, j: sympy.Symbol(f"a{i + 1}{j + 1}"))
    l = lambda i, j: sympy.Symbol(f"l{i}{j}")
    P = sympy.Matrix([sympy.Symbol("psi23"), -sympy.Symbol("psi13"), sympy.Symbol("psi12")])
    z1, z2 = sympy.symbols("z1 z2")
    expect = (P.T * A.T * sympy.Matrix([l(2, 1), -l(1, 1)]))[0] - z2 * A[:, [1, 2]].det() + z1 * sympy.Symbol("psi23")
    assert to_sympy(q[0][0, 1]) == sympy.expand(expect)


def test_q_shape(RQ):
    Q = res.build_Q_matrices(RQ)
    assert Q.betti() == (2, 6, 5, 1)
    assert RQ.nvars == 17 and RQ.domain == ZZ
    assert check_complex(Q) and check_bigrading(Q)


def test_q_composites_vanish_entrywise(q):
    q1, q2, q3 = q
    assert (q1 @ q2).is_zero() and (q2 @ q3).is_zero()


def test_q_coordinate_free_agreement(RQ):
    A, C = res.build_Q_matrices(RQ), res.build_Q_coordinate_free(RQ)
    n = 0
    for i in (1, 2, 3):
        for r in range(A.d(i).nrows):
            for c in range(A.d(i).ncols):
                assert A.d(i)[r, c] == C.d(i)[r, c], (i, r, c)
                n += 1
    assert n == 5 + 30 + 12


def test_folding_relation(RQ, q):
    stored = res.build_Q_matrices(RQ)
    for i in (1, 2, 3):
        lhs = res.sign_matrix(RQ, "Q", i - 1) @ q[i - 1] @ res.sign_matrix(RQ, "Q", i)
        assert lhs == stored.d(i)


def test_m_entries():
    RM = res.ring_M()
    M = res.build_M(RM)
    u = res.M_auxiliary(RM)["u"]
    assert M.d(1)[0, 4] == -u + RM["t"] ** 2
    assert [M.d(2)[4, j] for j in range(3)] == [RM.zero(), RM.zero(), -RM["z234"]]
    assert to_sympy(M.d(3)[1, 0]) == S("-2*(y12*y34 - y13*y24 + y14*y23)", RM)
    assert M.betti() == (2, 6, 5, 1) and RM.nvars == 17
    assert check_complex(M) and check_bigrading(M)


def _UPi_and_deltas(RB):
    U = sympy.Matrix(2, 3, lambda i, j: sympy.Symbol(f"u{i + 1}{j + 1}"))
    Pi = sympy.Matrix(sympy.symbols("pi1 pi2 pi3"))
    UPi = U * Pi
    D = [(-1) ** i * U[:, [j for j in range(3) if j != i]].det() for i in range(3)]
    return UPi, D


def test_b_displays(RB, b):
    b1, b2, b3 = b
    UPi, D = _UPi_and_deltas(RB)
    w1, z2 = sympy.symbols("w1 z2")
    pis = sympy.symbols("pi1 pi2 pi3")
    expect1 = [UPi[0], UPi[1]] + [z2 * D[i] - w1 * pis[i] for i in range(3)]
    assert [to_sympy(b1[0, j]) for j in range(5)] == [sympy.expand(x) for x in expect1]
    expect3 = [w1, UPi[0], UPi[1]] + D
    assert [to_sympy(b3[i, 0]) for i in range(6)] == [sympy.expand(x) for x in expect3]
    assert to_sympy(b2[0, 3]) == S("-z2*u21", RB)


def test_b_shape_and_agreement(RB):
    A, C = res.build_B_matrices(RB), res.build_B_coordinate_free(RB)
    assert A.betti() == (2, 6, 5, 1) and RB.nvars == 11
    for i in (1, 2, 3):
        assert A.d(i) == C.d(i)
    assert check_complex(A) and check_bigrading(A)


def test_brown_alternating(RB):
    g = RB.gens_dict()
    U = [[g[f"u{i}{j}"] for j in (1, 2, 3)] for i in (1, 2)]
    psi = {(1, 2): g["pi1"], (0, 2): -g["pi2"], (0, 1): g["pi3"]}
    T = res.assemble_brown_alternating(U, psi, RB)
    assert (T + T.T).is_zero()
    assert all(not T[i, i] for i in range(5))
    assert all(not T[i, j] for i in range(2) for j in range(2))
    # lower block, column j, is e_j contracted into psi
    F = BasedFreeModule("F", ["e1", "e2", "e3"])
    psi_el = ExtElement(F.dual(), 2, psi)
    for j in range(3):
        col = contract(F.basis_element((j,)), psi_el)
        assert [T[2 + i, 2 + j] for i in range(3)] == [col.coefficient((i,)) for i in range(3)]


def test_hyperplane_resolution():
    R = res.ring_HB()
    C = res.build_hyperplane_ACI_resolution(R)
    assert C.betti() == (2, 5, 4, 1)
    assert check_complex(C) and check_bigrading(C)
    assert C.twists[-1] == [(2, 2), (2, 2)]
    Lam = res.lambda_matrix(R)
    delta = Matrix(R, [res.signed_maximal_minors(Lam)])
    assert (delta @ Lam).is_zero()
    assert sorted(map(str, C.d(1).rows[0])) == sorted(map(str, res.deltas(R)))


def test_domains_rebase():
    from resolv251.ring import ZZ2
    Q2 = res.build_Q_matrices(res.ring_Q(ZZ2))
    assert Q2.ring.domain == ZZ2 and check_complex(Q2)
