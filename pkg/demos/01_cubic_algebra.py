"""Walk through the two-generator cubic algebra built from w = x²y² + yx²y + y²x² + xy²x.

Run with ``python demos/01_cubic_algebra.py``.
"""

from mkoszul.fixtures import cubic
from mkoszul.graded import GradedAlgebra, check_m_koszul, gorenstein_dimension, series_inverse
from mkoszul.potential import derivation_quotient, extract_superpotential
from mkoszul.symmetry import is_calabi_yau, nakayama
from mkoszul.tensor import cyclic_shift


def show(rows):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in rows) + "]"


w = cubic().w
print("potential          ", w.format())
print("cyclically fixed   ", cyclic_shift(w) == w)

# one derivative leaves cubic relations
P = derivation_quotient(w, 1)
print("relations          ", P.format())
d = gorenstein_dimension(P.m, w.order)
print(f"(m, ℓ, d)           = ({P.m}, {w.order}, {d})")

# the relations remember their potential
print("recovered potential", extract_superpotential(P, w.order).format())

A = GradedAlgebra(P)
print("Hilbert function   ", A.hilbert_function(8))
print("from the resolution", series_inverse([1, -2, 0, 2, -1], 8))
print("Koszul certificate ", check_m_koszul(A, 8))

print("Nakayama map        ", show(nakayama(w, d).images()))
print("Calabi-Yau          ", is_calabi_yau(w, d))
