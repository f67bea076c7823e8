"""Cubic potentials on three generators: S₃ projections, the μ-coefficient and the hdet ≠ det test.

The alternating basis vector w₀ is fixed as Σ_θ sgn(θ)·θ(x⊗y⊗z) in the
declared variable order, so μ(w) is the coefficient of x⊗y⊗z in c(w) − s(w).
Whether μ vanishes does not depend on this choice; its value does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CharacteristicError, ConsistencyError
from .potential import Presentation, as_tensor, symmetrize_c
from .symmetry import hdet, is_automorphism, is_calabi_yau
from .tensor import LinearMap, Tensor, TensorSubspace

PERMUTATIONS = tuple(itertools.permutations(range(3)))


def _parity(perm) -> int:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _require_cubic(w: Tensor):
    if w.n != 3 or w.order != 3:
        raise ValueError("expected a cubic tensor on three generators")
    if w.field.divides_characteristic(6):
        raise CharacteristicError("S₃ averaging undefined in characteristic 2 or 3")


def _average(w: Tensor, signed: bool) -> Tensor:
    arr = w.array()
    total = np.zeros_like(arr)
    for perm in PERMUTATIONS:
        term = np.transpose(arr, perm)
        total = total + term if not signed or _parity(perm) == 1 else total - term
    return Tensor.from_array(total, w.field) / 6


def sym3_project(w) -> Tensor:
    """s(w) = (1/6) Σ_θ θ(w)."""
    w = as_tensor(w)
    _require_cubic(w)
    return _average(w, signed=False)


def alt3_project(w) -> Tensor:
    """a(w) = (1/6) Σ_θ sgn(θ) θ(w)."""
    w = as_tensor(w)
    _require_cubic(w)
    return _average(w, signed=True)


def w0(field) -> Tensor:
    """Σ_θ sgn(θ) θ(x⊗y⊗z)."""
    return Tensor.from_terms({perm: _parity(perm) for perm in PERMUTATIONS}, 3, 3, field)


def in_sym3(w) -> bool:
    w = as_tensor(w)
    return sym3_project(w) == w


def in_sym2(R: TensorSubspace) -> bool:
    """Every element of R is invariant under swapping the two factors."""
    if R.order != 2:
        raise ValueError("expected quadratic relations")
    return all(np.array_equal(b.array(), b.array().T) for b in R.basis())


@dataclass(frozen=True)
class CubicDecomposition:
    """c(w) = s(w) + μ(w)·w₀."""

    c_part: Tensor
    s_part: Tensor
    mu: object
    w0: Tensor

    @property
    def holds(self) -> bool:
        return self.c_part == self.s_part + self.w0 * self.mu


def decompose(w) -> CubicDecomposition:
    w = as_tensor(w)
    _require_cubic(w)
    c, s = symmetrize_c(w), sym3_project(w)
    diff = c - s
    if alt3_project(diff) != diff:
        raise ConsistencyError("c(w) − s(w) is not alternating")
    base = w0(w.field)
    return CubicDecomposition(c, s, diff[(0, 1, 2)], base)


def mu_coefficient(w):
    return decompose(w).mu


def swap(i: int, j: int, field) -> LinearMap:
    perm = list(range(3))
    perm[i], perm[j] = j, i
    return LinearMap.permutation(perm, field)


@dataclass(frozen=True)
class ObstructionVerdict:
    """``possible``: some σ has hdet(σ) ≠ det(σ); ``impossible``: hdet = det on all of Aut;
    ``undetermined``: neither conclusion follows from the available tests."""

    verdict: str
    c_in_sym3: bool
    r_in_sym2: bool
    calabi_yau: bool
    witness: LinearMap | None = None
    witness_hdet: object = None
    witness_det: object = None
    reason: str = ""


def hdet_obstruction(P: Presentation, w) -> ObstructionVerdict:
    w = as_tensor(w)
    if P.n != 3 or P.m != 2 or w.order != 3:
        raise ValueError("expected three generators, quadratic relations and a cubic potential")
    c_sym = in_sym3(symmetrize_c(w))
    r_sym = in_sym2(P.relations)
    cy = is_calabi_yau(w, 3)
    if not c_sym:
        return ObstructionVerdict(
            "impossible", c_sym, r_sym, cy, reason="c(w) is not symmetric, so hdet(τ) = det(τ) for all τ"
        )
    if not cy:
        return ObstructionVerdict(
            "undetermined", c_sym, r_sym, cy, reason="c(w) is symmetric but the algebra is not Calabi-Yau"
        )
    if not r_sym:
        raise ConsistencyError("Calabi-Yau input with symmetric c(w) but relations outside Sym²V")
    for i, j in ((1, 2), (0, 1)):
        sigma = swap(i, j, w.field)
        if is_automorphism(sigma, P, w):
            h, det = hdet(sigma, w), sigma.det()
            if h == 1 and det == -1:
                return ObstructionVerdict("possible", c_sym, r_sym, cy, sigma, h, det, "transposition witness")
    return ObstructionVerdict(
        "undetermined", c_sym, r_sym, cy, reason="no transposition witness; a normal form change of basis is needed"
    )
