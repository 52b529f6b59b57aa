"""The contraction convention, by example.

1-forms act as derivations from the left, and a wedge of forms acts one
factor at a time, right factor first.  With that rule the dual basis of
e1^e2^e3 is e3*^e2*^e1*.
"""

from resolv251.exterior import BasedFreeModule, contract, pairing, wedge, wedge_all

F = BasedFreeModule("F", ["e1", "e2", "e3"])
e = [F.basis_element((i,)) for i in range(3)]
f = [F.dual().basis_element((i,)) for i in range(3)]

print("e1*(e1^e2) =", contract(f[0], wedge(e[0], e[1])))
print("e2*(e1^e2) =", contract(f[1], wedge(e[0], e[1])))
print("<e3*^e2*^e1*, e1^e2^e3> =", pairing(wedge_all(f[2], f[1], f[0]), wedge_all(*e)))
print("<e1*^e2*^e3*, e1^e2^e3> =", pairing(wedge_all(*f), wedge_all(*e)))

# a 2-form gives an alternating map, and f(a)(a) = 0
psi = wedge(f[0], f[1]) + wedge(f[1], f[2]).scale(3)
a = e[0] + e[1].scale(2) + e[2]
print("a(psi) =", contract(a, psi), "  a(psi)(a) =", contract(contract(a, psi), a))
