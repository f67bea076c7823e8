"""Superpotentials, partial-derivative spaces and derivation-quotient algebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import CharacteristicError, SuperpotentialError
from .field import Field
from .tensor import (
    LinearMap,
    Tensor,
    TensorSubspace,
    annihilator,
    check_size,
    cyclic_power,
    cyclic_shift,
    intersect,
    sandwich,
)


class Potential:
    """A nonzero w ∈ V^{⊗ℓ}, scaled so its first nonzero coordinate is 1."""

    __slots__ = ("tensor",)

    def __init__(self, w: Tensor):
        if isinstance(w, Potential):
            w = w.tensor
        if w.is_zero():
            raise ValueError("a potential must be nonzero")
        lead = w.leading_coefficient()
        self.tensor = w if lead == 1 else w / lead

    @property
    def ell(self) -> int:
        return self.tensor.order

    @property
    def n(self) -> int:
        return self.tensor.n

    @property
    def field(self) -> Field:
        return self.tensor.field

    def __eq__(self, other):
        if isinstance(other, Potential):
            return self.tensor == other.tensor
        return NotImplemented

    def __hash__(self):
        return hash(self.tensor)

    def format(self, names=None) -> str:
        return self.tensor.format(names)

    def __repr__(self):
        return f"Potential({self.format()})"


def as_tensor(w) -> Tensor:
    return w.tensor if isinstance(w, Potential) else w


@dataclass(frozen=True)
class Presentation:
    """TV/(R) with R a subspace of V^{⊗m}."""

    relations: TensorSubspace

    @property
    def n(self) -> int:
        return self.relations.n

    @property
    def m(self) -> int:
        return self.relations.order

    @property
    def field(self) -> Field:
        return self.relations.field

    @classmethod
    def from_relations(cls, rels) -> Presentation:
        return cls(TensorSubspace.span(rels))

    def format(self, names=None) -> list[str]:
        return self.relations.format(names)


def partial_space(W: TensorSubspace) -> TensorSubspace:
    """∂W: all first-factor contractions (ψ⊗id)(w), ψ ∈ V*, w ∈ W."""
    if W.order == 0:
        raise ValueError("cannot differentiate a scalar subspace")
    n, p = W.n, W.order
    block = n ** (p - 1)
    slices = []
    for row in W.rows:
        for a in range(n):
            piece = row[a * block:(a + 1) * block]
            if any(piece):
                slices.append(piece)
    return TensorSubspace.span(slices, n, p - 1, W.field)


def partial_power(W: TensorSubspace, i: int) -> TensorSubspace:
    if i < 0 or i > W.order:
        raise ValueError(f"derivative order {i} outside 0..{W.order}")
    for _ in range(i):
        W = partial_space(W)
    return W


def derivation_quotient(w, i: int) -> Presentation:
    """D(w, i) = TV/(∂^i(k·w))."""
    w = as_tensor(w)
    if not 0 <= i <= w.order - 1:
        raise ValueError(f"derivation order {i} outside 0..{w.order - 1}")
    return Presentation(partial_power(TensorSubspace.span([w]), i))


def _extend_w(prev: TensorSubspace, R: TensorSubspace, ann_t: np.ndarray | None) -> TensorSubspace:
    """W_i = (W_{i−1}⊗V) ∩ (V^{⊗(i−m)}⊗R), searched inside W_{i−1}⊗V."""
    n, m, field = R.n, R.order, R.field
    order = prev.order + 1
    check_size(n, order)
    if prev.dim == 0:
        return TensorSubspace.zero(n, order, field)
    cands = []
    for row in prev.rows:
        nz = [(j, x) for j, x in enumerate(row) if x]
        for a in range(n):
            vec = [field.zero] * n**order
            for j, x in nz:
                vec[j * n + a] = x
            cands.append(vec)
    if ann_t is None:
        return TensorSubspace.span(cands, n, order, field)
    arr = np.empty((len(cands), n**order), dtype=object)
    for k, vec in enumerate(cands):
        arr[k, :] = vec
    blocks = arr.reshape(len(cands), n ** (order - m), n**m)
    cons = np.tensordot(blocks, ann_t, axes=([2], [0])).reshape(len(cands), -1)
    system = [list(col) for col in cons.T if any(col)]
    if not system:
        return TensorSubspace.span(cands, n, order, field)
    kernel = linalg.nullspace(system, len(cands), field)
    vecs = []
    for c in kernel:
        v = [field.zero] * n**order
        for coef, vec in zip(c, cands):
            if coef:
                for j, x in enumerate(vec):
                    if x:
                        v[j] = v[j] + coef * x
        vecs.append(v)
    return TensorSubspace.span(vecs, n, order, field)


def w_spaces(P: Presentation, upto: int) -> list[TensorSubspace]:
    """[W_0, …, W_upto] computed degree by degree."""
    n, m, R = P.n, P.m, P.relations
    ann = annihilator(R)
    if ann.dim:
        ann_t = np.empty((n**m, ann.dim), dtype=object)
        for k, row in enumerate(ann.rows):
            ann_t[:, k] = row
    else:
        ann_t = None
    out = []
    for i in range(upto + 1):
        if i < m:
            out.append(TensorSubspace.full(n, i, P.field))
        elif i == m:
            out.append(R)
        else:
            out.append(_extend_w(out[-1], R, ann_t))
    return out


def w_space(P: Presentation, i: int) -> TensorSubspace:
    """W_i: V^{⊗i} for i < m, otherwise ∩_{s+m+t=i} V^{⊗s}⊗R⊗V^{⊗t}."""
    if i < 0:
        raise ValueError("degree must be non-negative")
    return w_spaces(P, i)[i]


def w_space_by_intersection(P: Presentation, i: int) -> TensorSubspace:
    """W_i as a literal intersection of all sandwiches (slow reference route)."""
    if i < P.m:
        return TensorSubspace.full(P.n, i, P.field)
    return intersect(sandwich(P.relations, s, i - P.m - s) for s in range(i - P.m + 1))


def extract_superpotential(P: Presentation, ell: int) -> Potential:
    """The spanning vector of W_ℓ, which must be one-dimensional."""
    if ell < P.m:
        raise ValueError(f"ℓ = {ell} is smaller than the relation degree {P.m}")
    W = w_space(P, ell)
    if W.dim != 1:
        raise SuperpotentialError(f"superpotential space has dimension {W.dim}")
    return Potential(W.basis()[0])


def is_superpotential(w) -> bool:
    w = as_tensor(w)
    return cyclic_shift(w) == w


def solve_twist_equation(w, scale=1):
    """All matrices S with (S⊗id^{⊗ℓ−1})φ(w) = scale·w.

    Writing w = Σ_j a_j⊗x_j, the equation splits into one system per row of S
    sharing the coefficient matrix [a_j]; returns ``(particular, kernel)``
    as flat n²-vectors (row-major S), or ``(None, kernel)`` when inconsistent.
    """
    w = as_tensor(w)
    n, field = w.n, w.field
    if w.order == 0:
        raise ValueError("cannot twist a scalar")
    scale = field(scale)
    arr = w.coords
    rest = n ** (w.order - 1)
    # A[r][j] = coefficient of word (r, j) in w, i.e. a_j at position r
    A = [[arr[r * n + j] for j in range(n)] for r in range(rest)]
    A_rows = [row for row in A if any(row)]
    kernel_row = linalg.nullspace(A_rows, n, field) if A_rows else linalg.identity(n, field)
    particular = []
    for i in range(n):
        b = [scale * arr[i * rest + r] for r in range(rest)]
        x, _ = linalg.solve(A, b, field, n)
        if x is None:
            return None, []
        particular.extend(x)
    kernel = []
    for i in range(n):
        for k in kernel_row:
            v = [field.zero] * (n * n)
            v[i * n:(i + 1) * n] = k
            kernel.append(v)
    return particular, kernel


def _as_map(flat, n, field) -> LinearMap:
    return LinearMap([flat[i * n:(i + 1) * n] for i in range(n)], field)


def search_invertible(particular, kernel, n: int, field: Field, max_trials: int = 20000):
    """First invertible member of particular + span(kernel) on a small integer grid.

    The determinant has degree ≤ n, so if it is not identically zero on the
    family it is nonzero somewhere on {0..n}^k (k = kernel dim) when p > n.
    Grid points are tried in order of increasing coordinate sum.
    """
    values = list(range(n + 1))
    if field.characteristic:
        values = values[: field.characteristic]
    k = len(kernel)
    if len(values) ** k <= max_trials:
        combos = sorted(itertools.product(values, repeat=k), key=lambda c: (sum(c), c))
    else:
        rng = random.Random(0)
        combos = [tuple([0] * k)] + [tuple(rng.choice(values) for _ in range(k)) for _ in range(max_trials)]
    for combo in combos:
        flat = list(particular)
        for t, vec in zip(combo, kernel):
            if t:
                flat = [a + t * b for a, b in zip(flat, vec)]
        S = _as_map(flat, n, field)
        if S.is_invertible():
            return S
    return None


@dataclass(frozen=True)
class TwistingSolution:
    """Outcome of solving (σ⊗id)φ(w) = w for σ."""

    sigma: LinearMap | None
    solution_dim: int | None  # affine dimension; None when inconsistent
    message: str

    @property
    def is_twisted(self) -> bool:
        return self.sigma is not None


def twisting_map(w) -> TwistingSolution:
    w = as_tensor(w)
    particular, kernel = solve_twist_equation(w)
    if particular is None:
        return TwistingSolution(None, None, "not a twisted superpotential")
    sigma = search_invertible(particular, kernel, w.n, w.field)
    if sigma is None:
        return TwistingSolution(None, len(kernel), "not a twisted superpotential")
    return TwistingSolution(sigma, len(kernel), "twisted superpotential")


def _require_char(field: Field, ell: int):
    if field.divides_characteristic(ell):
        raise CharacteristicError("symmetrizer undefined in this characteristic")


def symmetrize_c(w) -> Tensor:
    """c(w) = (1/ℓ) Σ_{i<ℓ} φ^i(w)."""
    w = as_tensor(w)
    _require_char(w.field, w.order)
    acc = w
    for i in range(1, w.order):
        acc = acc + cyclic_power(w, i)
    return acc / w.order


def symmetrize_c_tilde(w) -> Tensor:
    """c̃(w) = (1/ℓ) Σ_{i<ℓ} (−1)^i φ^i(w)."""
    w = as_tensor(w)
    _require_char(w.field, w.order)
    acc = w
    for i in range(1, w.order):
        term = cyclic_power(w, i)
        acc = acc - term if i % 2 else acc + term
    return acc / w.order


def jacobian_algebra(w, i: int, alternating: bool = False) -> Presentation:
    """J(w, i) = D(c(w), i), or J̃(w, i) = D(c̃(w), i) when ``alternating``."""
    sym = symmetrize_c_tilde(w) if alternating else symmetrize_c(w)
    if sym.is_zero():
        raise ValueError("symmetrized potential vanishes")
    return derivation_quotient(sym, i)
