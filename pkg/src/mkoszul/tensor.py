"""Tensors on V^{⊗p}, linear maps on V, and subspaces of tensor powers.

Coordinates are dense.  The simple tensor e_{i1}⊗…⊗e_{ip} (0-based letters)
sits at index Σ_k i_k·n^{p−k}, i.e. big-endian lexicographic order on words.
The same indexing is used for dual tensors, for which the pairing with V^{⊗p}
is the coordinate dot product.

Linear maps store their matrix in column convention: ``matrix[i][j]`` is the
coefficient of e_i in the image of e_j.  :meth:`LinearMap.from_images` and
:meth:`LinearMap.images` convert to and from the row convention in which each
row lists the image of one basis vector.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import linalg
from .field import QQ, Field

MAX_COORDS = 10**7

DEFAULT_NAMES = ("x", "y", "z", "u", "v", "t", "r", "s")


class TensorSizeError(ValueError):
    pass


def check_size(n: int, p: int) -> int:
    size = n**p
    if size > MAX_COORDS:
        raise TensorSizeError(f"V^⊗{p} with dim V = {n} has {size} coordinates (limit {MAX_COORDS})")
    return size


def word_index(word, n: int) -> int:
    idx = 0
    for letter in word:
        idx = idx * n + letter
    return idx


def index_word(idx: int, n: int, p: int) -> tuple[int, ...]:
    word = []
    for _ in range(p):
        idx, r = divmod(idx, n)
        word.append(r)
    return tuple(reversed(word))


def words(n: int, p: int):
    return itertools.product(range(n), repeat=p)


def variable_names(n: int, names=None) -> tuple[str, ...]:
    if names is not None:
        return tuple(names)
    if n <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:n]
    return tuple(f"x{i}" for i in range(n))


def _object_array(values, field: Field) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        arr[i] = field(v)
    arr.flags.writeable = False
    return arr


class Tensor:
    """An element of V^{⊗p} with exact coordinates."""

    __slots__ = ("field", "n", "order", "coords")

    def __init__(self, field: Field, n: int, order: int, coords):
        if n < 1 or order < 0:
            raise ValueError("need dim V ≥ 1 and order ≥ 0")
        size = check_size(n, order)
        if isinstance(coords, np.ndarray) and coords.dtype == object and not coords.flags.writeable:
            arr = coords.reshape(-1)
        else:
            arr = _object_array(list(np.asarray(coords, dtype=object).reshape(-1)), field)
        if len(arr) != size:
            raise ValueError(f"expected {size} coordinates, got {len(arr)}")
        self.field = field
        self.n = n
        self.order = order
        self.coords = arr

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, n: int, order: int, field: Field = QQ) -> Tensor:
        return cls(field, n, order, [field.zero] * check_size(n, order))

    @classmethod
    def monomial(cls, word, n: int, field: Field = QQ, coeff=1) -> Tensor:
        vals = [field.zero] * check_size(n, len(word))
        vals[word_index(word, n)] = field(coeff)
        return cls(field, n, len(word), vals)

    @classmethod
    def from_terms(cls, terms, n: int, order: int | None = None, field: Field = QQ) -> Tensor:
        """Build from ``{word: coeff}`` or an iterable of ``(coeff, word)`` pairs."""
        items = terms.items() if isinstance(terms, dict) else ((w, c) for c, w in terms)
        items = [(tuple(w), c) for w, c in items]
        if order is None:
            if not items:
                raise ValueError("order is required for an empty term list")
            order = len(items[0][0])
        vals = [field.zero] * check_size(n, order)
        for w, c in items:
            if len(w) != order:
                raise ValueError(f"word {w} does not have length {order}")
            if any(not 0 <= a < n for a in w):
                raise ValueError(f"word {w} uses a letter outside 0..{n - 1}")
            i = word_index(w, n)
            vals[i] = vals[i] + field(c)
        return cls(field, n, order, vals)

    @classmethod
    def from_array(cls, arr: np.ndarray, field: Field) -> Tensor:
        n = arr.shape[0] if arr.ndim else 1
        return cls(field, n, arr.ndim, arr.reshape(-1))

    # -- views ----------------------------------------------------------
    def array(self) -> np.ndarray:
        return self.coords.reshape((self.n,) * self.order)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        return [(index_word(i, self.n, self.order), c) for i, c in enumerate(self.coords) if c]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def leading_coefficient(self):
        for c in self.coords:
            if c:
                return c
        return self.field.zero

    def __getitem__(self, word):
        return self.coords[word_index(word, self.n)]

    # -- arithmetic -----------------------------------------------------
    def _check_compatible(self, other: Tensor):
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if (self.n, self.order) != (other.n, other.order):
            raise ValueError(
                f"shape mismatch: (n={self.n}, p={self.order}) vs (n={other.n}, p={other.order})"
            )

    def __add__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(self.field, self.n, self.order, self.coords + other.coords)

    def __sub__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(self.field, self.n, self.order, self.coords - other.coords)

    def __neg__(self) -> Tensor:
        return Tensor(self.field, self.n, self.order, -self.coords)

    def __mul__(self, c) -> Tensor:
        if isinstance(c, Tensor):
            return NotImplemented
        c = self.field(c)
        return Tensor(self.field, self.n, self.order, self.coords * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Tensor:
        return self * (self.field.one / self.field(c))

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            (self.n, self.order) == (other.n, other.order)
            and self.field == other.field
            and all(a == b for a, b in zip(self.coords, other.coords))
        )

    def __hash__(self):
        return hash((self.n, self.order, tuple(self.coords)))

    def is_proportional_to(self, other: Tensor):
        """Return λ with ``self == λ·other`` or ``None`` (``other`` must be nonzero)."""
        self._check_compatible(other)
        lam = None
        for a, b in zip(self.coords, other.coords):
            if b:
                lam = a / b
                break
        if lam is None:
            raise ValueError("reference tensor is zero")
        if self == other * lam:
            return lam
        return None

    def format(self, names=None) -> str:
        return format_tensor(self, names)

    def __repr__(self):
        return f"Tensor({self.format()})"


def format_tensor(t: Tensor, names=None) -> str:
    """Render as a signed sum of monomials, e.g. ``x*y - 2*y*x``."""
    names = variable_names(t.n, names)
    parts = []
    for word, c in t.terms():
        mono = "*".join(names[a] for a in word)
        neg = _is_negative(c, t.field)
        mag = -c if neg else c
        coeff = t.field.render(mag)
        if not mono:
            body = coeff
        elif coeff == "1":
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _is_negative(c, field: Field) -> bool:
    if field.characteristic == 0:
        return c < 0
    return False


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    if a.n != b.n:
        raise ValueError("tensor factors live over different V")
    check_size(a.n, a.order + b.order)
    return Tensor(a.field, a.n, a.order + b.order, np.multiply.outer(a.coords, b.coords).reshape(-1))


class LinearMap:
    """An n×n matrix over the scalar field, acting on V (column convention)."""

    __slots__ = ("field", "n", "matrix")

    def __init__(self, matrix, field: Field = QQ):
        rows = [list(r) for r in matrix]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("a linear map on V needs a square, non-empty matrix")
        self.field = field
        self.n = n
        self.matrix = tuple(tuple(field(x) for x in r) for r in rows)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> LinearMap:
        return cls(linalg.identity(n, field), field)

    @classmethod
    def scalar(cls, c, n: int, field: Field = QQ) -> LinearMap:
        c = field(c)
        return cls([[c if i == j else field.zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def diagonal(cls, entries, field: Field = QQ) -> LinearMap:
        n = len(entries)
        return cls([[field(entries[i]) if i == j else field.zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_images(cls, rows, field: Field = QQ) -> LinearMap:
        """Row i lists the coordinates of the image of e_i."""
        return cls(linalg.transpose([list(r) for r in rows]), field)

    @classmethod
    def permutation(cls, perm, field: Field = QQ) -> LinearMap:
        """The map e_i ↦ e_{perm[i]}."""
        n = len(perm)
        return cls([[field.one if i == perm[j] else field.zero for j in range(n)] for i in range(n)], field)

    def images(self) -> list[list]:
        return linalg.transpose([list(r) for r in self.matrix])

    def to_numpy(self) -> np.ndarray:
        arr = np.empty((self.n, self.n), dtype=object)
        for i, r in enumerate(self.matrix):
            for j, x in enumerate(r):
                arr[i, j] = x
        return arr

    def rows(self) -> list[list]:
        return [list(r) for r in self.matrix]

    def __call__(self, v):
        if isinstance(v, Tensor):
            return apply_factorwise([self], v)
        return linalg.matvec(self.rows(), v, self.field)

    def compose(self, other: LinearMap) -> LinearMap:
        """``self ∘ other``."""
        return LinearMap(linalg.matmul(self.rows(), other.rows(), self.field), self.field)

    __matmul__ = compose

    def __mul__(self, c) -> LinearMap:
        c = self.field(c)
        return LinearMap([[x * c for x in r] for r in self.matrix], self.field)

    __rmul__ = __mul__

    def __neg__(self) -> LinearMap:
        return self * (-1)

    def __add__(self, other: LinearMap) -> LinearMap:
        return LinearMap([[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)], self.field)

    def __sub__(self, other: LinearMap) -> LinearMap:
        return self + (-other)

    def power(self, k: int) -> LinearMap:
        if k < 0:
            return self.inverse().power(-k)
        result = LinearMap.identity(self.n, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self):
        return linalg.det(self.rows(), self.field)

    def is_invertible(self) -> bool:
        return bool(self.det())

    def inverse(self) -> LinearMap:
        return LinearMap(linalg.inverse(self.rows(), self.field), self.field)

    def transpose(self) -> LinearMap:
        return LinearMap(linalg.transpose(self.rows()), self.field)

    def is_scalar(self):
        """Return c if the map is c·id, else ``None``."""
        c = self.matrix[0][0]
        if self == LinearMap.scalar(c, self.n, self.field):
            return c
        return None

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.n == other.n and all(a == b for r, s in zip(self.matrix, other.matrix) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(self.field.render(x) for x in r) + "]" for r in self.matrix)
        return f"LinearMap([{body}])"


def cyclic_shift(t: Tensor) -> Tensor:
    """φ(v1⊗…⊗vp) = vp⊗v1⊗…⊗v_{p−1}."""
    if t.order == 0:
        raise ValueError("cannot cyclically shift a scalar")
    arr = np.moveaxis(t.array(), -1, 0)
    return Tensor(t.field, t.n, t.order, np.ascontiguousarray(arr).reshape(-1))


def cyclic_power(t: Tensor, k: int) -> Tensor:
    k %= t.order
    if k == 0:
        return t
    p = t.order
    out = np.transpose(t.array(), axes=[(p - k + j) % p for j in range(p)])
    return Tensor(t.field, t.n, t.order, np.ascontiguousarray(out).reshape(-1))


def apply_factorwise(maps, t: Tensor) -> Tensor:
    """(m1⊗…⊗mp)(t); ``maps`` may be shorter only when t has order 1 and one map is given."""
    maps = list(maps)
    if len(maps) != t.order:
        raise ValueError(f"need {t.order} maps, got {len(maps)}")
    if t.order == 0:
        return t
    arr = t.array()
    for k, m in enumerate(maps):
        if m.n != t.n:
            raise ValueError("map and tensor live over different V")
        if m == LinearMap.identity(m.n, m.field):
            continue
        arr = np.tensordot(m.to_numpy(), arr, axes=([1], [k]))
        arr = np.moveaxis(arr, 0, k)
    return Tensor(t.field, t.n, t.order, np.ascontiguousarray(arr).reshape(-1))


def pair(xi: Tensor, t: Tensor):
    """(ξ1⊗…⊗ξp)(v1⊗…⊗vp) = ξ1(v1)…ξp(vp), i.e. the coordinate dot product."""
    if (xi.n, xi.order) != (t.n, t.order):
        raise ValueError(f"cannot pair order {xi.order} with order {t.order}")
    s = t.field.zero
    for a, b in zip(xi.coords, t.coords):
        if a and b:
            s = s + a * b
    return s


class TensorSubspace:
    """A subspace of V^{⊗p} held as a reduced row echelon basis."""

    __slots__ = ("field", "n", "order", "rows", "pivots")

    def __init__(self, field: Field, n: int, order: int, rows, pivots):
        # trusted constructor: rows must already be in RREF
        self.field = field
        self.n = n
        self.order = order
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, n: int | None = None, order: int | None = None, field: Field | None = None):
        vectors = list(vectors)
        if vectors and isinstance(vectors[0], Tensor):
            n, order, field = vectors[0].n, vectors[0].order, vectors[0].field
            for v in vectors:
                if (v.n, v.order) != (n, order):
                    raise ValueError("spanning tensors have different shapes")
            raw = [list(v.coords) for v in vectors]
        else:
            if n is None or order is None:
                raise ValueError("n and order are required when spanning raw vectors")
            field = field or QQ
            raw = [list(v) for v in vectors]
        size = check_size(n, order)
        raw = [r for r in raw if any(r)]
        red, piv = linalg.rref(raw, field, size)
        return cls(field, n, order, red, piv)

    @classmethod
    def full(cls, n: int, order: int, field: Field = QQ):
        size = check_size(n, order)
        return cls(field, n, order, linalg.identity(size, field), range(size))

    @classmethod
    def zero(cls, n: int, order: int, field: Field = QQ):
        check_size(n, order)
        return cls(field, n, order, [], [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return self.n**self.order

    def basis(self) -> list[Tensor]:
        return [Tensor(self.field, self.n, self.order, r) for r in self.rows]

    def residual(self, v) -> list:
        """v minus its projection along the complement basis (zero iff v ∈ self)."""
        vals = list(v.coords) if isinstance(v, Tensor) else list(v)
        for row, p in zip(self.rows, self.pivots):
            c = vals[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        vals[j] = vals[j] - c * x
        return vals

    def contains(self, v) -> bool:
        return not any(self.residual(v))

    __contains__ = contains

    def coordinates(self, v) -> list:
        """Coordinates of v against the canonical basis (values at the pivots)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        vals = v.coords if isinstance(v, Tensor) else v
        return [self.field(vals[p]) for p in self.pivots]

    def combination(self, coeffs) -> Tensor:
        size = self.ambient_dim
        out = [self.field.zero] * size
        for c, row in zip(coeffs, self.rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] = out[j] + c * x
        return Tensor(self.field, self.n, self.order, out)

    def issubspace(self, other: TensorSubspace) -> bool:
        return all(other.contains(r) for r in self.rows)

    __le__ = issubspace

    def __eq__(self, other):
        if not isinstance(other, TensorSubspace):
            return NotImplemented
        return (
            (self.n, self.order) == (other.n, other.order)
            and self.pivots == other.pivots
            and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))
        )

    def __hash__(self):
        return hash((self.n, self.order, self.pivots))

    def format(self, names=None) -> list[str]:
        return [format_tensor(b, names) for b in self.basis()]

    def __repr__(self):
        return f"TensorSubspace(dim={self.dim}, order={self.order}, basis={self.format()})"


def sandwich(R: TensorSubspace, s: int, t: int) -> TensorSubspace:
    """V^{⊗s}⊗R⊗V^{⊗t}, already in canonical form."""
    if s < 0 or t < 0:
        raise ValueError("sandwich widths must be non-negative")
    n, m = R.n, R.order
    order = s + m + t
    size = check_size(n, order)
    zero = R.field.zero
    tail = n**t
    block = n ** (m + t)
    rows, pivots = [], []
    for u in range(n**s):
        for row, p in zip(R.rows, R.pivots):
            nz = [(j, x) for j, x in enumerate(row) if x]
            for v in range(tail):
                vec = [zero] * size
                for j, x in nz:
                    vec[u * block + j * tail + v] = x
                rows.append(vec)
                pivots.append(u * block + p * tail + v)
    return TensorSubspace(R.field, n, order, rows, pivots)


def _intersect_pair(U: TensorSubspace, W: TensorSubspace) -> TensorSubspace:
    if U.dim == 0 or W.dim == 0:
        return TensorSubspace.zero(U.n, U.order, U.field)
    # w ∈ U  ⇔  w − Σ w[p_i] u_i = 0; solve for combinations of W's basis
    residuals = [U.residual(r) for r in W.rows]
    support = sorted({j for r in residuals for j, x in enumerate(r) if x})
    if not support:
        return W
    system = [[r[j] for r in residuals] for j in support]
    kernel = linalg.nullspace(system, W.dim, U.field)
    vecs = [W.combination(c) for c in kernel]
    if not vecs:
        return TensorSubspace.zero(U.n, U.order, U.field)
    return TensorSubspace.span(vecs)


def intersect(subspaces) -> TensorSubspace:
    subspaces = list(subspaces)
    if not subspaces:
        raise ValueError("cannot intersect an empty list of subspaces")
    first = subspaces[0]
    for S in subspaces[1:]:
        if (S.n, S.order) != (first.n, first.order):
            raise ValueError("subspaces live in different tensor powers")
    result = first
    for S in sorted(subspaces[1:], key=lambda S: S.dim):
        result = _intersect_pair(S, result)
        if result.dim == 0:
            break
    return result


def subspace_sum(subspaces) -> TensorSubspace:
    subspaces = list(subspaces)
    if not subspaces:
        raise ValueError("cannot sum an empty list of subspaces")
    first = subspaces[0]
    rows = [r for S in subspaces for r in S.rows]
    return TensorSubspace.span(rows, first.n, first.order, first.field)


def annihilator(W: TensorSubspace) -> TensorSubspace:
    """W^⊥ in the dual tensor power, under the coordinate pairing."""
    size = W.ambient_dim
    pivset = set(W.pivots)
    field = W.field
    rows, pivots = [], []
    # free columns give an RREF basis directly once pivot entries are folded in
    vecs = []
    for f in range(size):
        if f in pivset:
            continue
        v = [field.zero] * size
        v[f] = field.one
        for row, p in zip(W.rows, W.pivots):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    red, piv = linalg.rref(vecs, field, size)
    rows, pivots = red, piv
    return TensorSubspace(field, W.n, W.order, rows, pivots)


def image(maps, W: TensorSubspace) -> TensorSubspace:
    """(m1⊗…⊗mp)(W) as a canonical subspace."""
    vecs = [apply_factorwise(maps, b) for b in W.basis()]
    if not vecs:
        return TensorSubspace.zero(W.n, W.order, W.field)
    return TensorSubspace.span(vecs)
