"""Graded components of TV/(R), the dual spaces W_i, and Berger's m-Koszul complex.

Degree-i components are built from degree i−1: A_i is the quotient of
A_{i−1}⊗V by the image of A_{i−m}⊗R.  The basis kept for A_i is the set of
words that are *not* pivots of the reduced row echelon form of the degree-i
ideal, which is the same canonical complement one gets by reducing the whole
ideal inside V^{⊗i} (see :func:`graded_component_direct`).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .errors import GorensteinError
from .potential import Presentation, _extend_w, w_spaces
from .tensor import Tensor, TensorSubspace, annihilator, check_size, index_word, sandwich, subspace_sum, word_index


def rho(i: int, m: int) -> int:
    """jm for i = 2j, jm + 1 for i = 2j + 1."""
    if i < 0:
        raise ValueError("homological degree must be non-negative")
    j, r = divmod(i, 2)
    return j * m + r


def gorenstein_dimension(m: int, ell: int) -> int:
    """The global dimension d forced by relation degree m and Gorenstein parameter ℓ."""
    if m < 2 or ell < m:
        raise ValueError(f"need m ≥ 2 and ℓ ≥ m, got m={m}, ℓ={ell}")
    if m == 2:
        return ell
    q, r = divmod(2 * (ell - 1), m)
    if r or (q + 1) % 2 == 0:
        raise GorensteinError(f"no consistent global dimension for m={m}, ℓ={ell}")
    return q + 1


def relation_degree(ell: int, d: int) -> int:
    """Recover m from (ℓ, d); inverse of :func:`gorenstein_dimension`."""
    if d < 2:
        raise GorensteinError(f"global dimension {d} is too small")
    q, r = divmod(2 * (ell - 1), d - 1)
    if r or q < 2:
        raise GorensteinError(f"no relation degree fits ℓ={ell}, d={d}")
    gorenstein_dimension(q, ell)
    return q


@dataclass(frozen=True)
class GradedComponent:
    degree: int
    words: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.words)


class GradedAlgebra:
    """A = TV/(R) with lazily computed, append-only component data."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.n = presentation.n
        self.m = presentation.m
        self.field = presentation.field
        self._words = [((),)]
        self._index = [{(): 0}]
        # _mult[i][pos * n + x] = normal form of (basis word pos of A_{i−1})·x, as {pos: coeff}
        self._mult = [None]
        self._w = None

    def _extend(self):
        i = len(self._words)
        n, field = self.n, self.field
        prev = self._words[-1]
        N = len(prev) * n
        rows = []
        if i >= self.m:
            rel = self.presentation.relations
            cache = {}
            for pa in range(len(self._words[i - self.m])):
                for r in rel.rows:
                    vec = [field.zero] * N
                    for idx, c in enumerate(r):
                        if not c:
                            continue
                        word = index_word(idx, n, self.m)
                        u, x = word[:-1], word[-1]
                        key = (pa, u)
                        if key not in cache:
                            cache[key] = self._multiply_sparse({pa: field.one}, i - self.m, u)
                        for pos, v in cache[key].items():
                            vec[pos * n + x] = vec[pos * n + x] + c * v
                    if any(vec):
                        rows.append(vec)
        red, pivots = linalg.rref(rows, field, N) if rows else ([], [])
        pivset = set(pivots)
        free = [c for c in range(N) if c not in pivset]
        newpos = {c: k for k, c in enumerate(free)}
        words = tuple(prev[c // n] + (c % n,) for c in free)
        mult = [None] * N
        for c in free:
            mult[c] = {newpos[c]: field.one}
        for row, p in zip(red, pivots):
            mult[p] = {newpos[c]: -row[c] for c in free if row[c]}
        self._words.append(words)
        self._index.append({w: k for k, w in enumerate(words)})
        self._mult.append(mult)

    def _ensure(self, i: int):
        check_size(self.n, i)
        while len(self._words) <= i:
            self._extend()

    def _multiply_sparse(self, vec: dict, degree: int, word) -> dict:
        n, field = self.n, self.field
        for step, x in enumerate(word):
            target = degree + step + 1
            self._ensure(target)
            table = self._mult[target]
            out = {}
            for pos, c in vec.items():
                for q, v in table[pos * n + x].items():
                    out[q] = out.get(q, field.zero) + c * v
            vec = {q: v for q, v in out.items() if v}
        return vec

    # -- public surface -------------------------------------------------
    def component(self, i: int) -> GradedComponent:
        if i < 0:
            raise ValueError("degree must be non-negative")
        self._ensure(i)
        return GradedComponent(i, self._words[i])

    def dim(self, i: int) -> int:
        return self.component(i).dim

    def hilbert_function(self, N: int) -> list[int]:
        return [self.dim(i) for i in range(N + 1)]

    def multiply(self, coords, degree: int, word) -> list:
        """Right-multiply an element of A_degree (coordinate list) by a word."""
        vec = {k: c for k, c in enumerate(coords) if c}
        out = self._multiply_sparse(vec, degree, word)
        size = self.dim(degree + len(word))
        res = [self.field.zero] * size
        for k, c in out.items():
            res[k] = c
        return res

    def basis_word_times(self, pos: int, degree: int, word) -> dict:
        return self._multiply_sparse({pos: self.field.one}, degree, word)

    def normal_form(self, t: Tensor) -> list:
        """Coordinates of the image of t ∈ V^{⊗i} in A_i."""
        i = t.order
        self._ensure(i)
        acc = [self.field.zero] * self.dim(i)
        for word, c in t.terms():
            for k, v in self._multiply_sparse({0: self.field.one}, 0, word).items():
                acc[k] = acc[k] + c * v
        return acc

    def dual_component(self, i: int) -> TensorSubspace:
        """W_i, the predual of A^!_i."""
        if i < 0:
            raise ValueError("degree must be non-negative")
        if self._w is None:
            self._w = w_spaces(self.presentation, max(i, self.m))
        while len(self._w) <= i:
            R = self.presentation.relations
            ann = annihilator(R)
            ann_t = None
            if ann.dim:
                ann_t = np.empty((self.n**self.m, ann.dim), dtype=object)
                for k, row in enumerate(ann.rows):
                    ann_t[:, k] = row
            self._w.append(_extend_w(self._w[-1], R, ann_t))
        return self._w[i]


def graded_component(A: GradedAlgebra, i: int) -> GradedComponent:
    return A.component(i)


def hilbert_function(A: GradedAlgebra, N: int) -> list[int]:
    return A.hilbert_function(N)


def dual_component(A: GradedAlgebra, i: int) -> TensorSubspace:
    return A.dual_component(i)


def graded_component_direct(P: Presentation, i: int) -> GradedComponent:
    """Complement of Σ_{s+m+t=i} V^{⊗s}⊗R⊗V^{⊗t} computed inside V^{⊗i} (reference route)."""
    n, m = P.n, P.m
    size = check_size(n, i)
    if i < m:
        return GradedComponent(i, tuple(index_word(k, n, i) for k in range(size)))
    ideal = subspace_sum(sandwich(P.relations, s, i - m - s) for s in range(i - m + 1))
    pivset = set(ideal.pivots)
    return GradedComponent(i, tuple(index_word(k, n, i) for k in range(size) if k not in pivset))


def series_inverse(coeffs, N: int) -> list[int]:
    """Power-series inverse mod t^{N+1} of an integer series with constant term ±1."""
    out = []
    c0 = coeffs[0]
    if c0 not in (1, -1):
        raise ValueError("constant term must be ±1")
    for k in range(N + 1):
        s = (1 if k == 0 else 0) - sum(coeffs[j] * out[k - j] for j in range(1, min(k, len(coeffs) - 1) + 1))
        out.append(s * c0)
    return out


@dataclass
class KoszulComplexSlice:
    """Internal degree t of ⋯ → P_{ρ(2)} → P_{ρ(1)} → P_0 → k → 0.

    ``dims[k]`` is dim A_{t−ρ(k)}·dim W_{ρ(k)}; ``maps[k]`` is the matrix of the
    differential out of term k (``maps[0]`` is the augmentation onto k_t).
    """

    internal_degree: int
    tensor_degrees: list[int]
    dims: list[int]
    maps: list[list[list]]
    target_dim: int
    field: object = dc_field(repr=False)

    def out_dim(self, k: int) -> int:
        return self.target_dim if k == 0 else self.dims[k - 1]

    def compositions_vanish(self) -> bool:
        for k in range(1, len(self.maps)):
            if self.out_dim(k - 1) and self.dims[k] and self.dims[k - 1]:
                prod = linalg.matmul(self.maps[k - 1], self.maps[k], self.field)
                if not linalg.is_zero_matrix(prod):
                    return False
        return True

    def ranks(self) -> list[int]:
        return [
            linalg.rank(M, self.field, self.dims[k]) if M and self.dims[k] else 0 for k, M in enumerate(self.maps)
        ]

    def first_inexact_position(self):
        """Smallest homological position where ker ≠ im, or ``None``; −1 is the k term."""
        r = self.ranks()
        if self.target_dim != (r[0] if r else 0):
            return -1
        for k, d in enumerate(self.dims):
            incoming = r[k + 1] if k + 1 < len(r) else 0
            if r[k] + incoming != d:
                return k
        return None

    def euler_characteristic(self) -> int:
        """Σ_k (−1)^k dims[k] − dim k_t; zero whenever the slice is exact."""
        return sum((-1) ** k * d for k, d in enumerate(self.dims)) - self.target_dim


def koszul_complex_slice(A: GradedAlgebra, t: int) -> KoszulComplexSlice:
    m, n, field = A.m, A.n, A.field
    degs = []
    k = 0
    while rho(k, m) <= t:
        degs.append(rho(k, m))
        k += 1
    W = [A.dual_component(j) for j in degs]
    comps = [A.component(t - j) for j in degs]
    dims = [c.dim * w.dim for c, w in zip(comps, W)]
    maps = [[[field.one]] if t == 0 else []]
    for k in range(1, len(degs)):
        shift = degs[k] - degs[k - 1]
        src_w, tgt_w = W[k], W[k - 1]
        src_a, tgt_a = comps[k], comps[k - 1]
        M = [[field.zero] * dims[k] for _ in range(dims[k - 1])]
        tail = n ** degs[k - 1]
        for wpos, row in enumerate(src_w.rows):
            for u in range(n**shift):
                piece = row[u * tail:(u + 1) * tail]
                if not any(piece):
                    continue
                coords = tgt_w.coordinates(piece)
                uword = index_word(u, n, shift)
                for apos in range(src_a.dim):
                    prod = A.basis_word_times(apos, t - degs[k], uword)
                    col = apos * src_w.dim + wpos
                    for bpos, v in prod.items():
                        for cpos, cw in enumerate(coords):
                            if cw:
                                r = bpos * tgt_w.dim + cpos
                                M[r][col] = M[r][col] + v * cw
        maps.append(M)
    return KoszulComplexSlice(t, degs, dims, maps, 1 if t == 0 else 0, field)


@dataclass(frozen=True)
class KoszulVerdict:
    """Either exactness certified in internal degrees 0..N, or the first failure."""

    depth: int
    failure: tuple[int, int, str] | None = None  # (internal degree, position, reason)

    @property
    def passed(self) -> bool:
        return self.failure is None

    @property
    def verified_up_to(self) -> int | None:
        return self.depth if self.failure is None else None

    def __str__(self):
        if self.failure is None:
            return f"verified_up_to({self.depth})"
        t, pos, why = self.failure
        return f"fails_at(t={t}, position={pos}: {why})"


def check_m_koszul(A: GradedAlgebra, N: int = 8) -> KoszulVerdict:
    for t in range(N + 1):
        sl = koszul_complex_slice(A, t)
        if not sl.compositions_vanish():
            return KoszulVerdict(N, (t, -2, "consecutive maps do not compose to zero"))
        pos = sl.first_inexact_position()
        if pos is not None:
            return KoszulVerdict(N, (t, pos, "kernel differs from image"))
    return KoszulVerdict(N)


def koszul_euler_product(A: GradedAlgebra, N: int) -> list:
    """Coefficients of (Σ_i (−1)^i dim W_{ρ(i)} t^{ρ(i)})·H_A(t) mod t^{N+1}."""
    poly = [0] * (N + 1)
    k = 0
    while rho(k, A.m) <= N:
        poly[rho(k, A.m)] += (-1) ** k * A.dual_component(rho(k, A.m)).dim
        k += 1
    h = A.hilbert_function(N)
    return [sum(poly[j] * h[s - j] for j in range(s + 1)) for s in range(N + 1)]


@dataclass(frozen=True)
class ResolutionShape:
    values: dict
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def resolution_shape(A: GradedAlgebra, ell: int) -> ResolutionShape:
    """dim W_ℓ = 1, dim W_{ℓ−1} = n, dim W_{ℓ−m} = dim R, and W_i = 0 for ℓ < i ≤ ℓ+m."""
    m, n = A.m, A.n
    top = A.dual_component(ell).dim
    below = A.dual_component(ell - 1).dim
    rel = A.dual_component(ell - m).dim if ell >= m else None
    tail = [A.dual_component(i).dim for i in range(ell + 1, ell + m + 1)]
    values = {"top": top, "next": below, "relations": rel, "beyond": tail}
    checks = {
        "top": top == 1,
        "next": below == n,
        "relations": rel == A.presentation.relations.dim,
        "truncation": all(d == 0 for d in tail),
    }
    return ResolutionShape(values, checks)
