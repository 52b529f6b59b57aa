"""The ring maps carrying Q onto M and onto B.

mu needs 1/2, so it lives over ZZ[1/2]; asking for it over ZZ is refused.
Phi works over ZZ.  In degree 2 the map that makes the diagram commute is
J2 itself, not its inverse; the script shows both.
"""

from resolv251 import resolutions as res, specializations as smaps
from resolv251.complexes import is_chain_map
from resolv251.ring import ZZ, DomainError

mu = smaps.mu_map()
print("mu(z1) =", mu(mu.source["z1"]))
rep = smaps.verify_mu()
print("mu ladder is an isomorphism:", rep.passed, "dets", rep.details["determinants"])

try:
    smaps.mu_map(ZZ)
except DomainError as exc:
    print("over ZZ:", exc)

rep = smaps.verify_phi()
print("\nPhi ladder is an isomorphism:", rep.passed, "dets", rep.details["determinants"])
print("det J2, det J3:", rep.details["det_J"])

bad = is_chain_map(smaps.phi_certificate(degree2="inverse").ladder)
print("with J2^-1 in degree 2 instead:", bad.passed, bad.failure)

psi = smaps.psi_map()
print("\nPsi(delta0) =", psi(psi.source["delta0"]))
print("Psi(colon generators) and im b1 give the same ideal:", smaps.verify_psi().passed)
