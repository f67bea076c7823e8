"""The Yoneda algebra of a quantum plane as a Frobenius algebra.

For w = xy − 2yx the Nakayama map is diag(1/2, 2).  The Nakayama map μ of the
Ext algebra is read off the Gram matrices of the pairing and agrees with the
action induced by −ν in every degree.
"""

from mkoszul.ext import ExtAlgebra, frobenius_pairing, gram_matrix, nakayama_E, verify_nakayama_identity
from mkoszul.fixtures import quantum_plane
from mkoszul.symmetry import nakayama


def show(rows):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in rows) + "]"


fx = quantum_plane(2)
E = ExtAlgebra(fx.w, fx.d, fx.presentation)
nu = nakayama(fx.w, fx.d)
print("Nakayama map of the algebra", show(nu.images()))
print("Ext dimensions             ", [E.dim(i) for i in range(fx.d + 1)])

x, y = E.basis(1)
print("<x*, y*> =", frobenius_pairing(x, y), "  <y*, x*> =", frobenius_pairing(y, x))
print("Gram matrix in degree 1    ", show(gram_matrix(E, 1)))

data = nakayama_E(E)
for i, mu in enumerate(data.mu):
    print(f"μ on E^{i}:", show(mu))
print("μ matches (−ν)^! per degree ", verify_nakayama_identity(E, nu, data))
