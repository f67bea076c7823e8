"""End-to-end acceptance checks, one test per criterion.

The conftest hook prints a PASS/FAIL line per test at the end of the run.
"""

import random

import pytest

from helpers import random_diagonal, random_tensor, sample_automorphisms, xyz
from mkoszul import linalg
from mkoszul.dim3 import in_sym3
from mkoszul.errors import CharacteristicError, GorensteinError, SuperpotentialError
from mkoszul.ext import ExtAlgebra, apply_matrix, frobenius_pairing, gram_matrix, nakayama_E, shriek_action, verify_nakayama_identity
from mkoszul.field import GF, QQ
from mkoszul.fixtures import all_fixtures, commutative_plane, cubic, quantum_plane, sigma_one, sigma_two, symmetric_three
from mkoszul.graded import GradedAlgebra, check_m_koszul, gorenstein_dimension, series_inverse
from mkoszul.potential import (
    Potential,
    Presentation,
    derivation_quotient,
    extract_superpotential,
    partial_power,
    symmetrize_c,
    symmetrize_c_tilde,
)
from mkoszul.symmetry import hdet, is_automorphism, is_calabi_yau, nakayama, nakayama_via_phi, nakayama_via_Q
from mkoszul.tensor import LinearMap, Tensor, TensorSubspace, apply_factorwise, cyclic_shift
from mkoszul.twist import (
    closed_form_cy,
    cy_twist_criterion,
    poly3_cy_twist_classifier,
    twist_commutes_with_partial,
    twist_report,
    twist_subspace,
    twist_tensor,
)

SAMPLED_FIXTURES = ["commutative plane", "quantum plane q=2", "quantum plane q=3", "quantum plane q=-1", "symmetric three", "cubic"]


def fixture_named(name):
    return {f.name: f for f in all_fixtures()}[name]


def test_commutative_plane_nakayama():
    w = commutative_plane().w
    data = nakayama_via_Q(w, 2)
    assert [[e.coords[0] for e in row] for row in data.M] == [[0, 1], [-1, 0]]
    assert data.Q == [[-1, 0], [0, -1]]
    assert data.nu == LinearMap.identity(2)
    assert nakayama_via_phi(w, 2) == LinearMap.identity(2)
    assert is_calabi_yau(w, 2)
    assert apply_factorwise([data.nu, LinearMap.identity(2)], cyclic_shift(w)) == -w


def test_cubic_fixture():
    fx = cubic()
    w = fx.w
    D = partial_power(TensorSubspace.span([w]), 1)
    assert D == TensorSubspace.span([Tensor.from_terms({(0, 1, 1): 1, (1, 1, 0): 1}, 2), Tensor.from_terms({(0, 0, 1): 1, (1, 0, 0): 1}, 2)])
    P = derivation_quotient(w, 1)
    assert (P.m, w.order, gorenstein_dimension(P.m, w.order)) == (3, 4, 3)
    assert cyclic_shift(w) == w
    assert is_calabi_yau(w, 3)
    assert extract_superpotential(P, 4) == Potential(w)
    A = GradedAlgebra(P)
    assert check_m_koszul(A, 8).passed
    h = A.hilbert_function(8)
    assert h[:5] == [1, 2, 4, 6, 9]
    assert h == series_inverse([1, -2, 0, 2, -1], 8)


def test_symmetric_three_twists():
    fx = symmetric_three()
    w, P = fx.w, fx.presentation
    s1, s2 = sigma_one(), sigma_two()
    assert is_automorphism(s1, P, w) and is_automorphism(s2, P, w)
    assert hdet(s1, w) == 1 and hdet(s2, w) == 1
    assert s1.det() == -1
    w1, w2 = twist_tensor(w, s1), twist_tensor(w, s2)
    assert w1 == xyz("xz^2 + y^2x + zxy + xy^2 + yxz + z^2x")
    assert w2 == xyz("z^3 + x^3 + y^3 + zxy + xyz + yzx")
    R = P.relations
    assert twist_subspace(R, s1) == TensorSubspace.span([xyz("z^2 + y^2"), xyz("yx + xz"), xyz("xy + zx")])
    assert twist_subspace(R, s2) == TensorSubspace.span([xyz("yz + x^2"), xyz("zx + y^2"), xyz("xy + z^2")])
    nu = nakayama(w, 3)
    assert cy_twist_criterion(s2, w, nu) is True
    assert cy_twist_criterion(s1, w, nu) is False
    assert in_sym3(symmetrize_c(w1))
    assert not in_sym3(symmetrize_c(w2))
    assert hdet(s1, w1) == 1


def test_identities_over_sampled_automorphisms():
    r = random.Random(20240601)
    total = 0
    for name in SAMPLED_FIXTURES:
        fx = fixture_named(name)
        w, d = fx.w, fx.d
        nu = nakayama_via_phi(w, d)
        assert nu == nakayama_via_Q(w, d).nu
        assert hdet(nu, w) == 1
        W = TensorSubspace.span([w])
        sigmas = sample_automorphisms(name, r, 40)
        total += len(sigmas)
        for s, t in zip(sigmas, sigmas[1:] + sigmas[:1]):
            assert is_automorphism(s, fx.presentation, w)
            assert hdet(s @ t, w) == hdet(s, w) * hdet(t, w)
            assert nu @ s == s @ nu
            for i in range(w.order + 1):
                assert twist_commutes_with_partial(W, s, i)
            rep = twist_report(w, d, nu, s)
            assert rep.twisted_superpotential
            assert nakayama_via_phi(rep.w_twisted_raw, d) == nakayama_via_Q(rep.w_twisted_raw, d).nu
    assert total >= 200


def test_ext_frobenius():
    r = random.Random(7)
    for fx in all_fixtures():
        E = ExtAlgebra(fx.w, fx.d, fx.presentation)
        data = nakayama_E(E)
        for i in range(fx.d + 1):
            G = gram_matrix(E, i)
            assert linalg.det(G, E.field) != 0
        assert apply_matrix(E, data.mu[0], E.unit()) == E.unit()
        assert apply_matrix(E, data.mu[fx.d], E.top()) == E.top()
        assert all(verify_nakayama_identity(E, nakayama(fx.w, fx.d), data))
        for s in sample_automorphisms(fx.name, r, 3):
            h = hdet(s, fx.w)
            for i in range(fx.d + 1):
                Si, Sc = shriek_action(E, s, i), shriek_action(E, s, fx.d - i)
                for f in E.basis(i):
                    for g in E.basis(fx.d - i):
                        assert frobenius_pairing(apply_matrix(E, Si, f), apply_matrix(E, Sc, g)) == h * frobenius_pairing(f, g)


def test_polynomial_twist_classifier():
    r = random.Random(50)
    F7 = GF(7)
    cube_roots = {QQ: [1], F7: [1, 2, 4]}
    count = 0
    for field in (QQ, F7):
        for k in range(25):
            if k % 2 == 0:
                alpha = field.random_element(r, 5, nonzero=True)
                xi = field(r.choice(cube_roots[field]))
                sigma = LinearMap.diagonal([alpha, alpha * xi, alpha * xi * xi], field)
            else:
                sigma = random_diagonal(r, 3, field)
            diag = [sigma.rows()[i][i] for i in range(3)]
            verdict = poly3_cy_twist_classifier(sigma)
            assert verdict.calabi_yau == closed_form_cy(diag, field)
            if verdict.calabi_yau:
                assert verdict.xi == diag[1] / diag[0]
                assert verdict.matches_skew_presentation
            count += 1
    assert count == 50


def _fixed_points_of_shift(n, p, field):
    size = n**p
    cols = []
    for j in range(size):
        e = Tensor(field, n, p, [field.one if k == j else field.zero for k in range(size)])
        cols.append(list(cyclic_shift(e).coords))
    rows = [[cols[j][i] - (field.one if i == j else field.zero) for j in range(size)] for i in range(size)]
    basis = linalg.nullspace(rows, size, field)
    return TensorSubspace.span([Tensor(field, n, p, v) for v in basis], n, p, field)


def test_symmetrizers():
    r = random.Random(6)
    for n, p in ((2, 3), (2, 4), (3, 3)):
        fix = _fixed_points_of_shift(n, p, QQ)
        image = TensorSubspace.span([symmetrize_c(random_tensor(r, n, p)) for _ in range(n**p)], n, p, QQ)
        for _ in range(10):
            w = random_tensor(r, n, p)
            c = symmetrize_c(w)
            assert symmetrize_c(c) == c
            assert fix.contains(c)
        for v in fix.basis():
            assert symmetrize_c(v) == v
        assert image == fix
    # odd d: Calabi-Yau ⇔ φ(w) = w ⇔ c(w) = w
    odd = [cubic().w, symmetric_three().w, twist_tensor(symmetric_three().w, sigma_one())]
    for w in odd:
        cy = is_calabi_yau(w, 3)
        assert cy == (cyclic_shift(w) == w) == (symmetrize_c(w) == w)
    assert not is_calabi_yau(odd[-1], 3)
    # d = 2: Calabi-Yau ⇔ φ(w) = −w ⇔ c̃(w) = w
    for w in (commutative_plane().w, quantum_plane(2).w, quantum_plane(-1).w):
        cy = is_calabi_yau(w, 2)
        assert cy == (cyclic_shift(w) == -w) == (symmetrize_c_tilde(w) == w)
    assert is_calabi_yau(commutative_plane().w, 2)


def test_negative_paths():
    P = Presentation.from_relations([Tensor.from_terms({(0, 1): 1}, 2)])
    with pytest.raises(SuperpotentialError, match="dimension 0"):
        extract_superpotential(P, 3)
    with pytest.raises(GorensteinError, match="no consistent global dimension"):
        gorenstein_dimension(3, 5)
    w = Tensor.from_terms({(0, 1, 1): 1, (1, 1, 0): 1, (1, 0, 1): 1}, 2, 3, GF(3))
    with pytest.raises(CharacteristicError, match="characteristic"):
        symmetrize_c(w)
