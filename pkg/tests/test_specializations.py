from fractions import Fraction

import pytest

from resolv251 import linkage, resolutions as res, specializations as smaps
from resolv251.certify import graded_membership
from resolv251.complexes import is_chain_map
from resolv251.ring import QQ, ZZ, ZZ2, DomainError, bidegree_of, is_unit

from conftest import sympy_of, to_sympy


def test_mu_images():
    m = smaps.mu_map()
    RQ, RM = m.source, m.target
    assert m(RQ["psi12"]) == RM["z123"] * Fraction(1, 2)
    assert m(RQ["a11"]) == -RM["x12"]


def test_mu_refuses_zz():
    with pytest.raises(DomainError):
        smaps.mu_map(ZZ)


@pytest.mark.parametrize("domain", [ZZ2, QQ])
def test_mu_ladder(domain):
    rep = smaps.verify_mu(domain)
    assert rep, rep.failure
    assert rep.details["surjective"]
    assert rep.details["determinants"][0] == "16"


def test_mu_each_square():
    cert = smaps.mu_certificate()
    f, S, T = cert.ladder, cert.ladder.source, cert.ladder.target
    for i in (1, 2, 3):
        assert f[i - 1] @ S.d(i) == T.d(i) @ f[i]
    # sigma matrices are invertible over ZZ[1/2] but sigma_0 is not over ZZ
    for i in range(4):
        assert is_unit(f[i].det().constant_coefficient(), ZZ2)
    assert not is_unit(f[0].det().constant_coefficient(), ZZ)


def test_mu_surjectivity_witness():
    m = smaps.mu_map()
    w = smaps._surjectivity_witnesses(m)
    assert w["z123"] == 2 * m.source["psi12"]
    assert set(w) == set(m.target.names)


def test_phi_images():
    m = smaps.phi_map()
    RQ, RB = m.source, m.target
    for n in ("a12", "a13", "l13", "l12", "l21"):
        assert not m(RQ[n])
    assert m(RQ["a11"]) == -RB["z2"]
    assert m(RQ["l11"]) == -RB.one()


def test_phi_auxiliary_displays():
    rep = smaps.phi_auxiliary_checks()
    assert rep, rep.failure
    m = smaps.phi_map()
    RB = m.target
    printed = "u11*(w1 + pi1) + u12*pi2 + u13*pi3"
    # P^T A^T second entry, recomputed from scratch
    g = m.source.gens_dict()
    P = [g["psi23"], -g["psi13"], g["psi12"]]
    second = sum((P[j] * g[f"a2{j + 1}"] for j in range(3)), m.source.zero())
    assert to_sympy(m(second)) == sympy_of(printed, RB)


def test_phi_ladder_over_zz():
    rep = smaps.verify_phi()
    assert rep, rep.failure
    assert rep.details["det_J"] == {2: "1", 3: "-1"}
    RB = res.ring_B()
    J = smaps.J_matrices(RB)
    assert J[1].det() in (RB.one(), -RB.one())


def test_phi_degree_two_uses_printed_matrix():
    # the inverse does not make the degree-2 square commute
    assert not is_chain_map(smaps.phi_certificate(degree2="inverse").ladder)
    rep = is_chain_map(smaps.phi_certificate().ladder)
    assert rep


def test_phi_surjective():
    assert smaps.verify_surjectivity(smaps.phi_map())


def test_psi_images_and_grading():
    m = smaps.psi_map()
    assert m(m.source["delta0"]) == -m.target["pi3"]
    assert m(m.source["lam31"]) == m.target["pi2"]
    for n, img in zip(m.source.names, m.images):
        assert bidegree_of(img) == m.source.bidegrees[m.source.index(n)]
    assert smaps.verify_psi_isomorphism(m)


def test_psi_ideal_equality():
    rep = smaps.verify_psi()
    assert rep, rep.failure


def test_psi_n1_membership():
    m = smaps.psi_map()
    gens = linkage.colon_generators_AltArg(m.source)
    b1 = list(res.build_B_matrices(m.target).d(1).rows[0])
    w = graded_membership(m(gens[0]), b1)
    assert w is not None
    total = sum((c * g for c, g in zip(w, b1)), m.target.zero())
    assert total == m(gens[0])


def test_certificate_json():
    cert = smaps.mu_certificate()
    data = cert.to_json()
    assert data["direction"] == smaps.FORWARD and set(data["ladder"]) == {"0", "1", "2", "3"}
    assert smaps.phi_certificate().direction == smaps.BACKWARD
