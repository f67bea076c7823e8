"""Standard test algebras, each as (presentation, potential, d)."""

from __future__ import annotations

from dataclasses import dataclass

from .field import QQ, Field
from .potential import Potential, Presentation, derivation_quotient
from .tensor import LinearMap, Tensor


@dataclass(frozen=True)
class Fixture:
    name: str
    potential: Potential
    presentation: Presentation
    d: int

    @property
    def w(self) -> Tensor:
        return self.potential.tensor

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def field(self) -> Field:
        return self.w.field


def _fixture(name, w: Tensor, d: int, order: int) -> Fixture:
    return Fixture(name, Potential(w), derivation_quotient(w, order), d)


def commutative_plane(field: Field = QQ) -> Fixture:
    """w = xy − yx; k[x, y]."""
    return _fixture("commutative plane", Tensor.from_terms({(0, 1): 1, (1, 0): -1}, 2, 2, field), 2, 0)


def quantum_plane(q, field: Field = QQ) -> Fixture:
    """w = xy − q·yx; k⟨x, y⟩/(xy − q·yx)."""
    return _fixture(f"quantum plane q={q}", Tensor.from_terms({(0, 1): 1, (1, 0): -field(q)}, 2, 2, field), 2, 0)


def cubic(field: Field = QQ) -> Fixture:
    """w = x²y² + yx²y + y²x² + xy²x, a cubic (m = 3) Calabi-Yau algebra of dimension 3."""
    terms = {(0, 0, 1, 1): 1, (1, 0, 0, 1): 1, (1, 1, 0, 0): 1, (0, 1, 1, 0): 1}
    return _fixture("cubic", Tensor.from_terms(terms, 2, 4, field), 3, 1)


def symmetric_three(field: Field = QQ) -> Fixture:
    """w = Σ of all six words in x, y, z; relations xy + yx, xz + zx, yz + zy."""
    terms = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): 1, (2, 1, 0): 1, (1, 0, 2): 1}
    return _fixture("symmetric three", Tensor.from_terms(terms, 3, 3, field), 3, 1)


def sigma_one(field: Field = QQ) -> LinearMap:
    """Swap y and z."""
    return LinearMap.permutation([0, 2, 1], field)


def sigma_two(field: Field = QQ) -> LinearMap:
    """x ↦ y, y ↦ z, z ↦ x."""
    return LinearMap.from_images([[0, 1, 0], [0, 0, 1], [1, 0, 0]], field)


def q_skew_three(q, field: Field = QQ) -> Fixture:
    """w = xyz + yzx + zxy − q(xzy + zyx + yxz)."""
    q = field(q)
    terms = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -q, (2, 1, 0): -q, (1, 0, 2): -q}
    return _fixture(f"q-skew three q={q}", Tensor.from_terms(terms, 3, 3, field), 3, 1)


def polynomial_three(field: Field = QQ) -> Fixture:
    """k[x, y, z] with w = Σ sgn(θ) θ(xyz)."""
    return q_skew_three(1, field)


def all_fixtures(field: Field = QQ) -> list[Fixture]:
    return [
        commutative_plane(field),
        quantum_plane(2, field),
        quantum_plane(3, field),
        quantum_plane(-1, field),
        symmetric_three(field),
        cubic(field),
    ]
