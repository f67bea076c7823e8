"""Shared builders and samplers for the test-suite."""

import itertools
import random
import re

from mkoszul.field import QQ
from mkoszul.tensor import LinearMap, Tensor


def T(terms, n=2, order=None, field=QQ):
    return Tensor.from_terms(terms, n, order, field)


def random_tensor(rng, n, order, field=QQ, density=0.6, bound=3):
    coords = []
    for _ in range(n**order):
        coords.append(field.random_element(rng, bound) if rng.random() < density else field.zero)
    return Tensor(field, n, order, coords)


def random_invertible(rng, n, field=QQ, bound=3):
    while True:
        sigma = LinearMap([[field.random_element(rng, bound) for _ in range(n)] for _ in range(n)], field)
        if sigma.is_invertible():
            return sigma


def random_diagonal(rng, n, field=QQ, bound=5):
    return LinearMap.diagonal([field.random_element(rng, bound, nonzero=True) for _ in range(n)], field)


def random_monomial(rng, n, field=QQ, bound=5):
    """A random permutation matrix times a random invertible diagonal."""
    perm = list(range(n))
    rng.shuffle(perm)
    return LinearMap.permutation(perm, field) @ random_diagonal(rng, n, field, bound)


def sample_automorphisms(fixture_name, rng, k, field=QQ):
    """k maps that preserve the named fixture's potential up to scalar."""
    out = []
    for _ in range(k):
        if fixture_name == "commutative plane":
            out.append(random_invertible(rng, 2, field))
        elif fixture_name == "quantum plane q=-1":
            d = random_diagonal(rng, 2, field)
            out.append(d if rng.random() < 0.5 else LinearMap.permutation([1, 0], field) @ d)
        elif fixture_name.startswith("quantum plane"):
            out.append(random_diagonal(rng, 2, field))
        elif fixture_name == "symmetric three":
            out.append(random_monomial(rng, 3, field))
        elif fixture_name == "cubic":
            out.append(random_monomial(rng, 2, field))
        else:
            raise KeyError(fixture_name)
    return out


def xyz(text, field=QQ):
    """Tensor from shorthand like ``"xz^2 + y^2x - 2yzx"`` on the letters x, y, z."""
    terms = {}
    for sign, coeff, word in re.findall(r"([+-]?)\s*(\d*)\s*((?:[xyz](?:\^\d+)?)+)", text):
        letters = []
        for ch, exp in re.findall(r"([xyz])(?:\^(\d+))?", word):
            letters += ["xyz".index(ch)] * int(exp or 1)
        c = int(coeff or 1) * (-1 if sign == "-" else 1)
        terms[tuple(letters)] = terms.get(tuple(letters), 0) + c
    return Tensor.from_terms(terms, 3, None, field)


def all_words(n, p):
    return list(itertools.product(range(n), repeat=p))


def rng(seed=0):
    return random.Random(seed)
