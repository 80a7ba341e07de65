from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hitprob.gf2 import (ColumnIndex, EchelonBasis, intersect_columns, kernel_of, pack_dense,
                         pack_supports, rank_of, support_of, unpack_dense)


def span(rows, n):
    # every vector of the span, as a set of tuples (brute force)
    rows = [tuple(int(b) for b in r) for r in rows]
    out = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            if c:
                v = [a ^ b for a, b in zip(v, r)]
        out.add(tuple(v))
    return out


def brute_rank(rows, n):
    return len(span(rows, n)).bit_length() - 1


@st.composite
def matrices(draw, max_rows=10, max_cols=12):
    n = draw(st.integers(1, max_cols))
    r = draw(st.integers(0, max_rows))
    bits = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=r, max_size=r))
    return np.array(bits, dtype=np.uint8).reshape(r, n), n


def test_pack_roundtrip_wide():
    rng = np.random.default_rng(3)
    for n in (1, 63, 64, 65, 130):
        A = rng.integers(0, 2, size=(5, n), dtype=np.uint8)
        assert (unpack_dense(pack_dense(A, n), n) == A).all()
    P = pack_supports([[0, 70, 70, 3], []], 100)
    assert support_of(P[0], 100) == [0, 3]
    with pytest.raises(ValueError):
        pack_supports([[100]], 100)


def test_insert_and_reduce_example():
    b = EchelonBasis(4)
    assert b.insert([1, 1, 0, 0])
    assert b.insert([0, 1, 1, 0])
    assert not b.insert([1, 0, 1, 0])
    assert b.rank == 2 and b.pivots == [0, 1]
    assert b.contains([1, 0, 1, 0])
    assert list(b.reduce([0, 0, 1, 1])) == [0, 0, 1, 1]
    assert list(b.reduce([1, 0, 0, 1])) == [0, 0, 1, 1]
    assert b.non_pivots() == [2, 3]
    with pytest.raises(ValueError):
        b.insert([1, 0])


@given(matrices())
def test_rank_matches_span_enumeration(m):
    A, n = m
    b = EchelonBasis.from_rows(A, n)
    assert b.rank == brute_rank(A, n)
    assert rank_of(A, n) == b.rank
    assert span(b.dense_rows(), n) == span(A, n)


@given(matrices(), st.randoms(use_true_random=False))
def test_echelon_canonical_under_shuffles(m, rnd):
    A, n = m
    b1 = EchelonBasis.from_rows(A, n)
    rows = list(A)
    rnd.shuffle(rows)
    # random row operations do not change the span either
    for _ in range(len(rows)):
        if len(rows) > 1:
            i, j = rnd.sample(range(len(rows)), 2)
            rows[i] = rows[i] ^ rows[j]
    b2 = EchelonBasis(n)
    for r in rows:
        b2.insert(r)
    assert b1 == b2
    assert b1.canonical() == b2.canonical()


@given(matrices(), st.lists(st.integers(0, 1), min_size=12, max_size=12),
       st.lists(st.integers(0, 1), min_size=12, max_size=12))
def test_reduce_is_linear_and_canonical(m, u, v):
    A, n = m
    b = EchelonBasis.from_rows(A, n)
    u, v = np.array(u[:n], np.uint8), np.array(v[:n], np.uint8)
    assert (b.reduce(u ^ v) == b.reduce(u) ^ b.reduce(v)).all()
    r = b.reduce(u)
    assert not r[b.pivots].any()
    assert b.contains(u ^ r)


@given(matrices(), st.data())
def test_intersect_columns_brute_force(m, data):
    A, n = m
    b = EchelonBasis.from_rows(A, n)
    keep = data.draw(st.sets(st.integers(0, n - 1)))
    got = intersect_columns(b, keep)
    outside = [c for c in range(n) if c not in keep]
    inside = [v for v in span(A, n) if not any(v[c] for c in outside)]
    assert got.rank == len(inside).bit_length() - 1
    assert span(got.dense_rows(), n) == set(inside)


@given(matrices())
def test_intersect_suffix_path_agrees(m):
    A, n = m
    b = EchelonBasis.from_rows(A, n)
    for first in range(n):
        fast = intersect_columns(b, range(first, n))
        inside = [v for v in span(A, n) if not any(v[:first])]
        assert span(fast.dense_rows(), n) == set(inside)


@given(matrices())
def test_kernel_of(m):
    A, n = m
    K = kernel_of(A, n)
    assert K.rank == n - brute_rank(A, n)
    for v in K.dense_rows():
        assert not (A.astype(int) @ v.astype(int) % 2).any()


def test_kernel_examples():
    assert kernel_of(np.zeros((0, 3), np.uint8), 3).rank == 3
    K = kernel_of([[1, 1, 0], [0, 1, 1]])
    assert [list(r) for r in K.dense_rows()] == [[1, 1, 1]]
    with pytest.raises(ValueError):
        kernel_of([[1, 0]], 3)


def test_batch_insert_equals_single_inserts():
    rng = np.random.default_rng(11)
    A = rng.integers(0, 2, size=(300, 150), dtype=np.uint8) & rng.integers(0, 2, size=(300, 150), dtype=np.uint8)
    b1 = EchelonBasis(150)
    for r in A:
        b1.insert(r)
    b2 = EchelonBasis(150)
    for s in range(0, 300, 37):
        b2.insert_packed_rows(pack_dense(A[s:s + 37], 150))
    assert b1 == b2 and b1.rank == rank_of(A, 150)
    assert b1.copy() == b1


def test_column_index():
    ci = ColumnIndex([(1, 0), (0, 1)])
    assert len(ci) == 2
    assert ci.index(ci[0]) == 0
    assert (1, 0) in ci
