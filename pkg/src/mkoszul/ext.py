"""The Yoneda algebra E = ⊕ E^i realised on the duals W_{ρ(i)}^*, and its Frobenius structure.

An element of E^i is stored as its values on the canonical (RREF) basis of
W_{ρ(i)}.  Because each basis row is 1 at its own pivot and 0 at every other
pivot, a functional extends to all of V^{⊗ρ(i)} by putting those values at
the pivot positions and zero elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ConsistencyError, FrobeniusError
from .graded import relation_degree, rho
from .potential import Presentation, as_tensor, derivation_quotient, w_spaces
from .symmetry import _as_linear_map, epsilon_twist
from .tensor import LinearMap, Tensor, TensorSubspace, apply_factorwise


class ExtAlgebra:
    """E^0, …, E^d for the algebra with potential w and global dimension d."""

    def __init__(self, w, d: int, presentation: Presentation | None = None):
        self.w = as_tensor(w)
        self.d = d
        self.ell = self.w.order
        self.m = relation_degree(self.ell, d)
        self.presentation = presentation or derivation_quotient(self.w, self.ell - self.m)
        if self.presentation.m != self.m:
            raise ConsistencyError("presentation degree does not match (ℓ, d)")
        self.field = self.w.field
        self.n = self.w.n
        self.W = w_spaces(self.presentation, self.ell)

    def space(self, i: int) -> TensorSubspace:
        """W_{ρ(i)}, whose dual is E^i."""
        if not 0 <= i <= self.d:
            raise ValueError(f"homological degree {i} outside 0..{self.d}")
        return self.W[rho(i, self.m)]

    def dim(self, i: int) -> int:
        return self.space(i).dim

    def element(self, i: int, coords) -> ExtClass:
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.dim(i):
            raise ValueError(f"E^{i} has dimension {self.dim(i)}, got {len(coords)} coordinates")
        return ExtClass(self, i, coords)

    def basis(self, i: int) -> list[ExtClass]:
        k = self.dim(i)
        return [self.element(i, [1 if r == s else 0 for r in range(k)]) for s in range(k)]

    def unit(self) -> ExtClass:
        return self.element(0, [1])

    def top(self) -> ExtClass:
        """The class in E^d taking the value 1 on the canonical basis vector of W_ℓ."""
        return self.basis(self.d)[0]

    def extend(self, f: ExtClass) -> np.ndarray:
        """f as a functional on all of V^{⊗ρ(i)}."""
        W = self.space(f.i)
        vec = np.array([self.field.zero] * (self.n ** W.order), dtype=object)
        for p, c in zip(W.pivots, f.coords):
            vec[p] = c
        return vec

    def evaluate_product(self, f: ExtClass, g: ExtClass, t) -> object:
        """(f⊗g)(t) for t ∈ V^{⊗(ρ(i)+ρ(j))}."""
        F, G = self.extend(f), self.extend(g)
        arr = np.array(t, dtype=object).reshape(len(F), len(G))
        return F.dot(arr.dot(G))

    def shriek_matrix(self, sigma, i: int) -> list[list]:
        """σ^! on E^i in coordinates: the transpose of σ^{⊗ρ(i)} on W_{ρ(i)}."""
        sigma = _as_linear_map(sigma)
        W = self.space(i)
        cols = [W.coordinates(apply_factorwise([sigma] * W.order, b)) for b in W.basis()]
        # cols[r] = coordinates of σ(b_r); σ^! sends coordinate vector f to (f(σ b_r))_r
        return [list(c) for c in cols]


@dataclass(frozen=True)
class ExtClass:
    algebra: ExtAlgebra = field(repr=False, compare=False)
    i: int
    coords: tuple

    @property
    def internal_degree(self) -> int:
        return -rho(self.i, self.algebra.m)

    def __add__(self, other: ExtClass) -> ExtClass:
        if self.i != other.i:
            raise ValueError("cannot add classes of different degree")
        return ExtClass(self.algebra, self.i, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, c) -> ExtClass:
        c = self.algebra.field(c)
        return ExtClass(self.algebra, self.i, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)


def shriek_product(f: ExtClass, g: ExtClass) -> ExtClass:
    """The unsigned product of A^!: (f⊗g) restricted to W_{ρ(i)+ρ(j)}."""
    E = f.algebra
    if f.i + g.i > E.d:
        raise ValueError(f"product lands in degree {f.i + g.i} > d = {E.d}")
    order = rho(f.i, E.m) + rho(g.i, E.m)
    if order != rho(f.i + g.i, E.m):
        # two odd degrees with m > 2: the product lands outside the ρ-grading
        return None
    values = [E.evaluate_product(f, g, row) for row in E.W[order].rows]
    return E.element(f.i + g.i, values)


def ext_sign(i: int, j: int, m: int) -> int:
    if m == 2:
        return -1 if (i * j) % 2 else 1
    return 1 if i % 2 == 0 or j % 2 == 0 else 0


def ext_product(f: ExtClass, g: ExtClass) -> ExtClass:
    """f*g = (−1)^{ij} f·g when m = 2; f·g when m > 2 and i or j is even; 0 otherwise."""
    E = f.algebra
    if f.i + g.i > E.d:
        raise ValueError(f"product lands in degree {f.i + g.i} > d = {E.d}")
    sign = ext_sign(f.i, g.i, E.m)
    if sign == 0:
        return E.element(f.i + g.i, [0] * E.dim(f.i + g.i))
    return shriek_product(f, g) * sign


def frobenius_pairing(f: ExtClass, g: ExtClass) -> object:
    """⟨f, g⟩ = (−1)^{i(d−i)} (f·g)(w) for f ∈ E^i, g ∈ E^{d−i}."""
    E = f.algebra
    i = f.i
    if f.i + g.i != E.d:
        raise ValueError(f"pairing needs complementary degrees, got {f.i} and {g.i} for d = {E.d}")
    if rho(i, E.m) + rho(E.d - i, E.m) != E.ell:
        raise ConsistencyError(f"ρ({i}) + ρ({E.d - i}) ≠ ℓ")
    value = E.evaluate_product(f, g, E.w.coords)
    return -value if (i * (E.d - i)) % 2 else value


@dataclass(frozen=True)
class FrobeniusData:
    """Gram matrices G_i[r][s] = ⟨e_r, e_s⟩ (E^i × E^{d−i}) and μ on each E^i."""

    d: int
    grams: tuple
    mu: tuple


def gram_matrix(E: ExtAlgebra, i: int) -> list[list]:
    return [[frobenius_pairing(f, g) for g in E.basis(E.d - i)] for f in E.basis(i)]


def nakayama_E(E: ExtAlgebra) -> FrobeniusData:
    """μ from ⟨ξ, η⟩ = ⟨η, μ(ξ)⟩, i.e. μ_i = G_{d−i}^{−1} G_iᵗ on coordinate columns."""
    field = E.field
    grams = [gram_matrix(E, i) for i in range(E.d + 1)]
    inverses = []
    for G in grams:
        try:
            inverses.append(linalg.inverse(G, field))
        except ZeroDivisionError:
            raise FrobeniusError("not Frobenius") from None
    mu = [linalg.matmul(inverses[E.d - i], linalg.transpose(grams[i]), field) for i in range(E.d + 1)]
    return FrobeniusData(E.d, tuple(grams), tuple(mu))


def shriek_action(E: ExtAlgebra, sigma, i: int) -> list[list]:
    return E.shriek_matrix(sigma, i)


def apply_matrix(E: ExtAlgebra, matrix, f: ExtClass) -> ExtClass:
    return E.element(f.i, linalg.matvec(matrix, list(f.coords), E.field))


def verify_nakayama_identity(E: ExtAlgebra, nu: LinearMap, data: FrobeniusData | None = None) -> list[bool]:
    """Per degree: μ|_{E^i} equals (ε^{d+1}ν)^! on E^i."""
    data = data or nakayama_E(E)
    twisted = epsilon_twist(nu, E.d)
    return [data.mu[i] == shriek_action(E, twisted, i) for i in range(E.d + 1)]


def top_value(E: ExtAlgebra, t: Tensor) -> object:
    """The top class evaluated on t ∈ V^{⊗ℓ}."""
    return E.extend(E.top()).dot(np.array(t.coords, dtype=object))
