"""Recover Q from B by one link.

Extend B's ring by six new variables l_ij, take the Koszul complex on the
three entries of b1 composed with [l; id], map it into B, cone, dualize and
cancel unit entries.  What is left has the shape of Q and is isomorphic to
it by a constant change of basis.
"""

from resolv251 import linkage

r = linkage.link_from_B()
print("Koszul source ranks:", r.comparison.c.source.betti())
print("cone then dual:", r.cone_dual.betti())
for step in r.split.steps:
    print(f"  cancel unit {step['unit']} in d{step['degree']}: {step['col_label']} -> {step['row_label']}")
print("linked complex:", r.linked.betti())
for name, rep in r.reports.items():
    print(f"  {name}: {rep.passed}")
print("ladder determinants:", r.reports["isomorphism"].details["determinants"])
