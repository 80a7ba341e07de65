from itertools import product

import pytest
from hypothesis import given, strategies as st

from hitprob.algebra import monomials_of_degree
from hitprob.weights import (WeightVector, admissible_cmp, alpha, is_spike, minimal_spike, mu,
                             order_key, parse_weight, realized_weights, singer_filter, spikes,
                             t_kd, weight_block, weight_block_equal, weight_vector, zeta)

mono5 = st.lists(st.integers(0, 40), min_size=5, max_size=5)


@given(mono5)
def test_weight_degree_equals_degree(x):
    assert weight_vector(x).degree == sum(x)


def test_weight_vector_example():
    assert weight_vector((7, 3, 3, 1, 1)) == (5, 3, 1)
    assert str(WeightVector((3, 1, 1, 0))) == "(3,1,1)"
    assert parse_weight("(3,2,2,1)") == (3, 2, 2, 1)


@given(mono5, mono5, mono5)
def test_admissible_order_is_total(x, y, z):
    # compare within one degree by padding the last exponent
    d = max(sum(x), sum(y), sum(z))
    x, y, z = (v[:-1] + [v[-1] + d - sum(v)] for v in (x, y, z))
    assert admissible_cmp(x, y) == -admissible_cmp(y, x)
    assert (admissible_cmp(x, y) == 0) == (x == y)
    if admissible_cmp(x, y) <= 0 and admissible_cmp(y, z) <= 0:
        assert admissible_cmp(x, z) <= 0


def test_order_weight_first():
    # x1^3 x2^2 has weight (1,2) < (3,1) of x1 x2 x3^3
    assert admissible_cmp((3, 2, 0), (1, 1, 3)) == -1
    with pytest.raises(ValueError):
        admissible_cmp((1, 0), (1, 1))


def mu_brute(n):
    vals = [(1 << u) - 1 for u in range(1, 8) if (1 << u) - 1 <= n]
    best = {0: 0}
    for s in range(1, n + 1):
        best[s] = min(best[s - v] + 1 for v in vals if v <= s)
    return best[n]


def test_mu_matches_dynamic_programme():
    for n in range(1, 120):
        assert mu(n) == mu_brute(n)


def test_arithmetic_examples():
    assert alpha(23) == 4 and zeta(24) == 3
    assert mu(23) == 3 and mu(9) == 3 and mu(2) == 2 and mu(5) == 3
    # t(k, d) = max(0, k - alpha(d + k) - zeta(d + k))
    assert t_kd(5, 2) == 2 and t_kd(5, 9) == 1 and t_kd(3, 0) == 1
    with pytest.raises(ValueError):
        mu(0)


def test_spikes_are_spikes():
    for n in range(1, 24):
        for s in spikes(n, 4):
            assert is_spike(s) and sum(s) == n
    assert set(spikes(3, 2)) == {(3, 0), (0, 3)}


def test_minimal_spike_brute_force():
    for k in range(1, 6):
        for n in range(1, 32):
            all_spikes = list(spikes(n, k))
            if mu(n) > k:
                assert not all_spikes
                with pytest.raises(ValueError):
                    minimal_spike(n, k)
                continue
            best = min(weight_vector(s) for s in all_spikes)
            z = minimal_spike(n, k)
            assert is_spike(z) and sum(z) == n
            assert weight_vector(z) == best


def test_singer_filter_examples():
    # minimal spike of degree 9 in 5 variables is x1^7 x2 x3 with weight (3,1,1)
    assert minimal_spike(9, 5) == (7, 1, 1, 0, 0)
    assert singer_filter((3, 2, 2, 2, 0)) == 1
    assert singer_filter((3, 3, 3, 0, 0)) == 0
    assert singer_filter((7, 1, 1, 0, 0)) == 0


def test_weight_blocks_partition_degree():
    for k, n in ((3, 7), (4, 9), (5, 9)):
        mons = set(monomials_of_degree(k, n))
        seen = set()
        for w in realized_weights(k, n):
            eq = set(weight_block_equal(k, w))
            assert eq and not eq & seen
            assert all(weight_vector(m) == w for m in eq)
            seen |= eq
        assert seen == {tuple(m) for m in mons}


def test_weight_block_lower_part():
    eq, lower = weight_block(4, (3, 1, 1))
    assert all(weight_vector(m) < (3, 1, 1) for m in lower)
    assert [order_key(m) for m in lower] == sorted(order_key(m) for m in lower)
    assert weight_block_equal(3, (4,)) == []


def test_realized_weights_brute_force():
    for k in range(1, 5):
        for n in range(1, 14):
            brute = {weight_vector(m) for m in monomials_of_degree(k, n)}
            assert set(realized_weights(k, n)) == brute
