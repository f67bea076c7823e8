import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import T, random_invertible, sample_automorphisms
from mkoszul.errors import ConsistencyError, NakayamaError, NotAutomorphismError
from mkoszul.fixtures import all_fixtures, commutative_plane, cubic, quantum_plane, sigma_one, sigma_two, symmetric_three
from mkoszul.potential import derivation_quotient
from mkoszul.symmetry import (
    check_centrality,
    check_hdet_nakayama,
    hdet,
    is_automorphism,
    is_calabi_yau,
    nakayama,
    nakayama_via_phi,
    nakayama_via_Q,
    verify_automorphism,
)
from mkoszul.tensor import LinearMap, apply_factorwise, cyclic_shift

def test_swap_yz_preserves_symmetric_cubic():
    fx = symmetric_three()
    assert is_automorphism(sigma_one(), fx.presentation, fx.w)
    assert hdet(sigma_one(), fx.w) == 1
    assert sigma_one().det() == -1
    assert hdet(sigma_two(), fx.w) == 1


def test_scaling_on_commutative_plane():
    fx = commutative_plane()
    sigma = LinearMap.diagonal([1, 2])
    assert is_automorphism(sigma, fx.presentation, fx.w)
    assert hdet(sigma, fx.w) == 2


@given(st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool))
def test_diagonal_hdet_on_commutator(a, b):
    assert hdet(LinearMap.diagonal([a, b]), T({(0, 1): 1, (1, 0): -1})) == a * b


def test_shear_on_cubic_decided_both_ways():
    fx = cubic()
    ev = is_automorphism(LinearMap([[1, 1], [0, 1]]), fx.presentation, fx.w)
    assert not ev.preserves_relations and not ev.preserves_potential


def test_mismatched_pair_raises_consistency_error():
    # relations of the commutative plane against the potential of a quantum plane
    P = commutative_plane().presentation
    w = quantum_plane(2).w
    with pytest.raises(ConsistencyError):
        is_automorphism(LinearMap.permutation([1, 0]), P, w)


def test_hdet_rejects_non_automorphism():
    with pytest.raises(NotAutomorphismError, match="not an automorphism of this potential"):
        hdet(LinearMap([[1, 1], [0, 1]]), cubic().w)
    with pytest.raises(NotAutomorphismError):
        verify_automorphism(LinearMap([[1, 1], [0, 1]]), cubic().presentation, cubic().w)


def test_nakayama_of_commutative_plane():
    w = commutative_plane().w
    assert nakayama_via_phi(w, 2) == LinearMap.identity(2)
    assert apply_factorwise([LinearMap.identity(2)] * 2, cyclic_shift(w)) == -w
    data = nakayama_via_Q(w, 2)
    assert [[e.coords[0] for e in row] for row in data.M] == [[0, 1], [-1, 0]]
    assert data.Q == [[-1, 0], [0, -1]]
    assert data.nu == LinearMap.identity(2)


@pytest.mark.parametrize("q", [2, 3, -1, 5])
def test_nakayama_of_quantum_plane(q):
    w = quantum_plane(q).w
    nu = LinearMap.diagonal([1 / Fraction(q), q])
    assert nakayama_via_phi(w, 2) == nu
    data = nakayama_via_Q(w, 2)
    assert data.Q == [[-q, 0], [0, -1 / Fraction(q)]]
    assert data.nu == nu
    assert is_calabi_yau(w, 2) == (q == 1)
    assert check_hdet_nakayama(w, 2)


def test_nakayama_of_cubic_is_identity():
    w = cubic().w
    assert nakayama(w, 3) == LinearMap.identity(2)
    assert is_calabi_yau(w, 3)
    assert nakayama_via_Q(w, 3).Q == [[1, 0], [0, 1]]


def test_degenerate_nakayama_system():
    with pytest.raises(NakayamaError, match="degenerate"):
        nakayama_via_phi(T({(0, 1): 1}), 2)
    with pytest.raises(NakayamaError, match="degenerate"):
        nakayama_via_Q(T({(0, 0): 1}), 2)


@pytest.mark.parametrize("fx", all_fixtures(), ids=lambda f: f.name)
def test_nakayama_routes_agree_and_hdet_is_one(fx):
    nu = nakayama_via_phi(fx.w, fx.d)
    assert nu == nakayama_via_Q(fx.w, fx.d).nu
    assert hdet(nu, fx.w) == 1
    sign = 1 if (fx.d + 1) % 2 == 0 else -1
    ident = [LinearMap.identity(fx.n)] * (fx.w.order - 1)
    assert apply_factorwise([nu * sign] + ident, cyclic_shift(fx.w)) == fx.w


@pytest.mark.parametrize("name", ["commutative plane", "quantum plane q=2", "quantum plane q=-1", "symmetric three", "cubic"])
def test_hdet_is_multiplicative_and_nu_is_central(name):
    fx = {f.name: f for f in all_fixtures()}[name]
    r = random.Random(name)
    sigmas = sample_automorphisms(name, r, 12)
    nu = nakayama(fx.w, fx.d)
    for s in sigmas:
        assert is_automorphism(s, fx.presentation, fx.w)
    for s, t in zip(sigmas, sigmas[1:]):
        assert hdet(s @ t, fx.w) == hdet(s, fx.w) * hdet(t, fx.w)
    assert hdet(LinearMap.identity(fx.n), fx.w) == 1
    assert check_centrality(nu, sigmas)


def test_quantum_plane_automorphisms_are_diagonal():
    fx = quantum_plane(2)
    r = random.Random(7)
    for _ in range(40):
        s = random_invertible(r, 2)
        diagonal = not s.rows()[0][1] and not s.rows()[1][0]
        assert bool(is_automorphism(s, fx.presentation, fx.w)) == diagonal


def test_derivation_quotient_relations_are_preserved_by_automorphisms():
    fx = symmetric_three()
    P = derivation_quotient(fx.w, 1)
    assert P.relations == fx.presentation.relations
