"""Automorphisms, homological determinants and Nakayama automorphisms of potentials."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import ConsistencyError, NakayamaError, NotAutomorphismError
from .potential import Presentation, as_tensor, solve_twist_equation, _as_map
from .tensor import LinearMap, Tensor, apply_factorwise, cyclic_shift, image


@dataclass(frozen=True)
class AutomorphismCheck:
    """Both automorphism criteria, evaluated independently."""

    preserves_relations: bool
    preserves_potential: bool

    def __bool__(self):
        return self.preserves_relations and self.preserves_potential


@dataclass(frozen=True)
class Automorphism:
    """A map σ already checked against a presentation and its potential."""

    map: LinearMap
    presentation: Presentation
    potential: Tensor

    @property
    def n(self) -> int:
        return self.map.n


def _sign(d: int) -> int:
    return 1 if (d + 1) % 2 == 0 else -1


def is_automorphism(sigma: LinearMap, P: Presentation, w) -> AutomorphismCheck:
    """Compare σ^{⊗m}(R) = R with σ^{⊗ℓ}(k·w) = k·w.

    The two agree for an AS-regular pair (P, w); a disagreement means the pair
    does not belong together and is raised as :class:`ConsistencyError`.
    """
    w = as_tensor(w)
    if not sigma.is_invertible():
        raise NotAutomorphismError("map is not invertible")
    rel_ok = image([sigma] * P.m, P.relations) == P.relations
    pot_ok = apply_factorwise([sigma] * w.order, w).is_proportional_to(w) is not None
    if rel_ok != pot_ok:
        raise ConsistencyError(
            f"relation criterion says {rel_ok} but potential criterion says {pot_ok}"
        )
    return AutomorphismCheck(rel_ok, pot_ok)


def verify_automorphism(sigma: LinearMap, P: Presentation, w) -> Automorphism:
    if not is_automorphism(sigma, P, w):
        raise NotAutomorphismError("not an automorphism of this potential")
    return Automorphism(sigma, P, as_tensor(w))


def _as_linear_map(sigma) -> LinearMap:
    return sigma.map if isinstance(sigma, Automorphism) else sigma


def hdet(sigma, w):
    """The scalar λ with σ^{⊗ℓ}(w) = λ·w."""
    sigma, w = _as_linear_map(sigma), as_tensor(w)
    lam = apply_factorwise([sigma] * w.order, w).is_proportional_to(w)
    if lam is None or not lam:
        raise NotAutomorphismError("not an automorphism of this potential")
    return lam


def nakayama_via_phi(w, d: int) -> LinearMap:
    """The unique ν with (ν⊗id^{⊗ℓ−1})φ(w) = (−1)^{d+1} w."""
    w = as_tensor(w)
    particular, kernel = solve_twist_equation(w, _sign(d))
    if particular is None or kernel:
        raise NakayamaError("Nakayama system degenerate")
    nu = _as_map(particular, w.n, w.field)
    if not nu.is_invertible():
        raise NakayamaError("Nakayama system degenerate")
    return nu


@dataclass(frozen=True)
class NakayamaMatrices:
    """w = xᵗMx, (xᵗM)ᵗ = QMx and the resulting ν.

    ``M[i][j]`` is the order-(ℓ−2) tensor with w = Σ x_i⊗M_ij⊗x_j; ``Q`` is
    a plain matrix (rows indexed like the column vector Mx).
    """

    M: list
    Q: list
    nu: LinearMap


def _m_entries(w: Tensor) -> list:
    n, p = w.n, w.order
    arr = w.array().reshape((n, n ** (p - 2), n))
    return [[Tensor(w.field, n, p - 2, list(arr[i, :, j])) for j in range(n)] for i in range(n)]


def nakayama_via_Q(w, d: int) -> NakayamaMatrices:
    """ν = (−1)^{d+1} Q^{−t} in the row convention, i.e. (−1)^{d+1} Q^{−1} as a column matrix."""
    w = as_tensor(w)
    n, field, p = w.n, w.field, w.order
    if p < 2:
        raise NakayamaError("Nakayama system degenerate")
    M = _m_entries(w)
    arr = w.array().reshape((n, n ** (p - 1)))
    # a_j = Σ_i x_i⊗M_ij is the last-slot slice w[..., j]; b_k = Σ_j M_kj⊗x_j = w[k, ...]
    flat = w.array().reshape((n ** (p - 1), n))
    a = [list(flat[:, j]) for j in range(n)]
    b = [list(arr[k, :]) for k in range(n)]
    B = linalg.transpose(b)
    if linalg.rank(b, field, n ** (p - 1)) != n:
        raise NakayamaError("Nakayama system degenerate")
    Q = []
    for j in range(n):
        x, _ = linalg.solve(B, a[j], field, n)
        if x is None:
            raise NakayamaError("Nakayama system degenerate")
        Q.append(x)
    try:
        Qinv = linalg.inverse(Q, field)
    except ZeroDivisionError:
        raise NakayamaError("Nakayama system degenerate") from None
    nu = LinearMap(Qinv, field) * _sign(d)
    return NakayamaMatrices(M, Q, nu)


def nakayama(w, d: int) -> LinearMap:
    """ν by the φ-equation, cross-checked against the Q-matrix route."""
    nu = nakayama_via_phi(w, d)
    other = nakayama_via_Q(w, d).nu
    if nu != other:
        raise ConsistencyError("the two Nakayama computations disagree")
    return nu


def is_calabi_yau(w, d: int) -> bool:
    """φ(w) = (−1)^{d+1} w."""
    w = as_tensor(w)
    return cyclic_shift(w) == w * _sign(d)


def check_hdet_nakayama(w, d: int) -> bool:
    return hdet(nakayama_via_phi(w, d), w) == 1


def check_centrality(nu: LinearMap, sigmas) -> bool:
    return all(nu @ s == s @ nu for s in map(_as_linear_map, sigmas))


def epsilon_twist(nu: LinearMap, d: int) -> LinearMap:
    """ε^{d+1}ν, with ε acting as −1 on V."""
    return nu * _sign(d)
