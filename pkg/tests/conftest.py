import itertools
from fractions import Fraction

import numpy as np
import pytest

from latticedec import QQ, ZZ, Box, Zmod, make_form, multi_indices
from latticedec.chains import Chain, cell

EXACT_RINGS = [ZZ, QQ, Zmod(7)]


def random_values(rng, ring, shape):
    ints = rng.integers(-9, 10, size=shape)
    if ring == QQ:
        dens = rng.integers(1, 4, size=shape)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*shape):
            out[idx] = Fraction(int(ints[idx]), int(dens[idx]))
        return out
    return ints.astype(object)


def random_form(rng, ring, extents, degree):
    box = Box(tuple(extents))
    comps = {I: random_values(rng, ring, box.extents) for I in multi_indices(box.dimension, degree)}
    return make_form(ring, box, degree, comps)


def random_extents(rng, d, lo=2, hi=6, max_points=1500):
    while True:
        ext = tuple(int(x) for x in rng.integers(lo, hi + 1, size=d))
        if int(np.prod(ext)) <= max_points:
            return ext


def random_scalar(rng, ring):
    return random_values(rng, ring, (1,))[0]


def random_chain(rng, ring, d, q, n_cells=4, extents=None):
    extents = extents or (5,) * d
    dirs = multi_indices(d, q)
    terms = []
    for _ in range(n_cells):
        base = tuple(int(rng.integers(1, n + 1)) for n in extents)
        I = dirs[int(rng.integers(len(dirs)))]
        terms.append((cell(base, I), random_scalar(rng, ring)))
    return Chain.from_terms(ring, d, q, terms)


# Brute-force evaluators written straight from the pointwise definitions.
# They share nothing with the numpy code paths under test.


def brute_partial(values, i, point):
    """(∂_i f)(a) = f(a + e_i) - f(a) with f a dict keyed by 1-based points."""
    shifted = tuple(a + (1 if k == i - 1 else 0) for k, a in enumerate(point))
    return values[shifted] - values[point]


def form_as_dicts(form):
    out = {}
    for I, arr in form.components.items():
        out[I] = {tuple(i + 1 for i in idx): arr[idx] for idx in np.ndindex(*arr.shape)}
    return out


def perm_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def brute_D(form):
    """D w = sum_I sum_j ∂_j f_I dx_j ∧ dx_I, sorting each wedge by permutation sign.

    Returns {L: {point: value}} on the uniformly shrunken box.
    """
    d, q = form.dimension, form.degree
    comps = form_as_dicts(form)
    inner = [range(1, n) for n in form.box.extents]
    out = {L: {p: 0 for p in itertools.product(*inner)} for L in multi_indices(d, q + 1)}
    for I, f in comps.items():
        for j in range(1, d + 1):
            if j in I:
                continue
            word = (j,) + I
            L = tuple(sorted(word))
            s = perm_sign(word)
            for p in out[L]:
                out[L][p] += s * brute_partial(f, j, p)
    return out


def dicts_equal(ring, a, b):
    if a.keys() != b.keys():
        return False
    for k in a:
        if a[k].keys() != b[k].keys():
            return False
        for p in a[k]:
            if not ring.eq(ring.coerce(a[k][p]), ring.coerce(b[k][p])):
                return False
    return True


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid_f():
    """The 2x2 grid f(1,1)=1, f(1,2)=2, f(2,1)=4, f(2,2)=8 as an integer 0-form."""
    return make_form(ZZ, (2, 2), 0, {(): [[1, 2], [4, 8]]})
