import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linrel.gaussian import GaussianRational, gq
from linrel.linalg import (
    DimensionMismatch,
    NotContainedError,
    NotPositiveDefiniteError,
    Subspace,
    canonicalize,
    gram_orth_complement_within,
    inner,
    intersect,
    is_hermitian_positive_definite,
    orth_complement,
    orth_complement_within,
    quotient_dim,
    solve,
    sum_subspaces,
    unit,
    vector,
)

import oracles
from conftest import subspace_pairs, subspaces, vectors


def e(n, k):
    return unit(n, k)


# --- inner product ---------------------------------------------------------

def test_inner_examples():
    assert inner(vector(1j, 1), vector(1, 1j)) == gq(0)
    assert inner(vector(1, 0), vector(1, 0)) == gq(1)
    assert inner(vector(1, 2j), vector(1, 2j)) == gq(5)


def test_inner_length_mismatch():
    with pytest.raises(DimensionMismatch):
        inner(vector(1), vector(1, 2))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(vectors(n), vectors(n))))
def test_conjugate_symmetry(uv):
    u, v = uv
    assert inner(u, v) == inner(v, u).conj()
    assert oracles.from_sym(oracles.inner_sym(u, v)) == inner(u, v)


# --- canonical form --------------------------------------------------------

def test_canonicalize_examples():
    s = canonicalize([vector(1, 1), vector(2, 2)], 2)
    assert s.dim == 1 and s.basis == (vector(1, 1),)
    assert canonicalize([], 3).dim == 0
    assert canonicalize([vector(1, 0, 1), vector(0, 1, 1), vector(1, 1, 2)], 3).dim == 2


def test_canonicalize_length_check():
    with pytest.raises(DimensionMismatch):
        canonicalize([vector(1, 0)], 3)


def test_canonical_basis_shape():
    s = canonicalize([vector(2j, 4, 0), vector(0, 3, 3j)], 3)
    pivots = []
    for b in s.basis:
        p = next(k for k, c in enumerate(b) if not c.is_zero())
        assert b[p] == gq(1)
        pivots.append(p)
    assert pivots == sorted(pivots)
    for i, b in enumerate(s.basis):
        for j, p in enumerate(pivots):
            if i != j:
                assert b[p].is_zero()


@given(subspaces())
def test_rank_matches_oracle(sv):
    s, vecs = sv
    assert s.dim == oracles.rank(vecs, s.ambient_dim)
    assert oracles.same_span(s.basis, vecs, s.ambient_dim)


@given(subspaces(), st.randoms(use_true_random=False))
def test_canonicalize_order_independent(sv, rnd):
    s, vecs = sv
    shuffled = list(vecs)
    rnd.shuffle(shuffled)
    t = canonicalize(shuffled, s.ambient_dim)
    assert t == s and t.rows == s.rows
    assert canonicalize(s.basis, s.ambient_dim).rows == s.rows


# --- lattice operations ----------------------------------------------------

def test_sum_and_intersection_examples():
    u = canonicalize([e(3, 0), e(3, 1)], 3)
    v = canonicalize([e(3, 1), e(3, 2)], 3)
    assert intersect(u, v) == canonicalize([e(3, 1)], 3)
    assert sum_subspaces(canonicalize([e(2, 0)], 2), canonicalize([e(2, 1)], 2)).is_full()


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        Subspace.full(2) + Subspace.full(3)
    with pytest.raises(DimensionMismatch):
        Subspace.full(2) & Subspace.full(3)


@given(subspace_pairs())
def test_grassmann_identity(uv):
    u, v = uv
    assert u.dim + v.dim == (u + v).dim + (u & v).dim


@given(subspace_pairs())
def test_intersection_against_oracle(uv):
    u, v = uv
    n = u.ambient_dim
    w = u & v
    for b in w.basis:
        assert oracles.contains(u.basis, b, n) and oracles.contains(v.basis, b, n)
    # dimension from ranks alone
    assert w.dim == u.dim + v.dim - oracles.rank(list(u.basis) + list(v.basis), n)
    assert oracles.same_span((u + v).basis, list(u.basis) + list(v.basis), n)


@given(subspaces())
def test_intersection_idempotent(sv):
    u, _ = sv
    assert u & u == u
    assert u + u == u


# --- complements -----------------------------------------------------------

def test_orth_examples():
    assert orth_complement(canonicalize([vector(1, 1j)], 2)) == canonicalize([vector(1j, 1)], 2)
    c2 = Subspace.full(2)
    assert orth_complement_within(c2, canonicalize([e(2, 0)], 2)) == canonicalize([e(2, 1)], 2)
    assert gram_orth_complement_within(c2, canonicalize([e(2, 0)], 2),
                                       [[gq(2), gq(0)], [gq(0), gq(5)]]) == canonicalize([e(2, 1)], 2)


@given(subspaces())
def test_double_complement_and_dims(sv):
    u, _ = sv
    n = u.ambient_dim
    w = u.orth()
    assert w.orth() == u
    assert u.dim + w.dim == n
    for a in u.basis:
        for b in w.basis:
            assert inner(a, b).is_zero()


@given(subspace_pairs())
def test_orth_within(uv):
    u, v = uv
    v = u & v
    w = orth_complement_within(u, v)
    assert (w & v).is_zero() and w + v == u
    for a in w.basis:
        for b in v.basis:
            assert inner(a, b).is_zero()


def test_orth_within_requires_containment():
    with pytest.raises(NotContainedError):
        orth_complement_within(canonicalize([e(2, 0)], 2), canonicalize([e(2, 1)], 2))


@given(subspace_pairs())
def test_gram_identity_matches_plain(uv):
    u, v = uv
    v = u & v
    b = u.basis
    gram = [[inner(x, y) for y in b] for x in b]
    assert gram_orth_complement_within(u, v, gram) == orth_complement_within(u, v)


@given(subspace_pairs(), st.lists(st.integers(1, 4), min_size=6, max_size=6))
def test_gram_weighted_complement(uv, weights):
    u, v = uv
    v = u & v
    b = u.basis
    k = len(b)
    # diagonal positive weights in u's coordinates give another valid form
    gram = [[gq(weights[i % 6]) if i == j else gq(0) for j in range(k)] for i in range(k)]
    w = gram_orth_complement_within(u, v, gram)
    assert w.dim == u.dim - v.dim and (w & v).is_zero() and w + v == u

    def form(x, y):
        cx, cy = u.coords(x), u.coords(y)
        return sum((gram[i][i] * cx[i] * cy[i].conj() for i in range(k)), GaussianRational(0))

    for a in w.basis:
        for c in v.basis:
            assert form(a, c).is_zero()


def test_gram_rejects_indefinite():
    u = Subspace.full(2)
    v = Subspace.zero(2)
    with pytest.raises(NotPositiveDefiniteError):
        gram_orth_complement_within(u, v, [[gq(1), gq(2)], [gq(2), gq(1)]])
    with pytest.raises(NotPositiveDefiniteError):
        gram_orth_complement_within(u, v, [[gq(1), gq(0, 1)], [gq(0, 1), gq(3)]])
    assert is_hermitian_positive_definite([[gq(2), gq(0, 1)], [gq(0, -1), gq(1)]])
    assert not is_hermitian_positive_definite([[gq(1), gq(0, 1)], [gq(0, -1), gq(1)]])


# --- quotient and solve ----------------------------------------------------

def test_quotient_dim():
    assert quotient_dim(Subspace.full(3), canonicalize([e(3, 0)], 3)) == 2
    u = canonicalize([vector(1, 2, 3)], 3)
    assert quotient_dim(u, u) == 0
    assert quotient_dim(Subspace.full(2), Subspace.zero(2)) == 2
    with pytest.raises(NotContainedError):
        quotient_dim(canonicalize([e(3, 0)], 3), canonicalize([e(3, 1)], 3))


def test_solve_examples():
    x, null = solve([vector(1, 1)], vector(2, 2))
    assert x == (gq(2),) and null.is_zero()
    x, _ = solve([vector(1, 1)], vector(1, 2))
    assert x is None
    x, null = solve([vector(0)], vector(0))
    assert x == (gq(0),) and null.is_full()


@given(st.integers(1, 4).flatmap(
    lambda m: st.tuples(st.lists(vectors(m), min_size=1, max_size=4), vectors(m))))
def test_solve_against_oracle(cols_b):
    cols, b = cols_b
    m = len(b)
    x, null = solve(cols, b)
    consistent = oracles.rank(list(cols) + [b], m) == oracles.rank(cols, m)
    assert (x is not None) == consistent
    if x is not None:
        lhs = [sum((x[j] * cols[j][r] for j in range(len(cols))), GaussianRational(0)) for r in range(m)]
        assert lhs == list(b)
    assert null.dim == len(cols) - oracles.rank(cols, m)
    for v in null.basis:
        assert all(sum((v[j] * cols[j][r] for j in range(len(cols))), GaussianRational(0)).is_zero()
                   for r in range(m))


def test_coords_round_trip():
    rng = random.Random(3)
    u = canonicalize([vector(1, 2j, 0, 1), vector(0, 1, 1, 1j)], 4)
    for _ in range(5):
        a, b = gq(rng.randint(-3, 3), rng.randint(-3, 3)), gq(rng.randint(-3, 3), 1)
        v = tuple(a * x + b * y for x, y in zip(*u.basis))
        c = u.coords(v)
        assert tuple(c[0] * x + c[1] * y for x, y in zip(*u.basis)) == v
    with pytest.raises(NotContainedError):
        u.coords(vector(1, 0, 0, 0))
