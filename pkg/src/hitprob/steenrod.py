"""Steenrod squares on F2[x1..xk] and the generators of the hit subspace.

Sq^t(x^a) = C(a, t) x^(a+t), extended to monomials by the Cartan formula.
Since C(a, t) is odd exactly when t is a bit-submask of a, Sq^i of a
monomial is a convolution of the per-variable submask supports; distinct
choices give distinct monomials, so a single monomial never cancels.

The hit subspace in degree n is spanned by Sq^(2^u)(m) over all monomials
m of degree n - 2^u: the squares Sq^(2^u) generate the Steenrod algebra, so
A+ P = sum over u of Sq^(2^u)(P).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Sequence

from .algebra import Monomial, Polynomial, monomials_of_degree


def _submasks_upto(a: int, limit: int) -> list[int]:
    out = []
    s = a
    while True:
        if s <= limit:
            out.append(s)
        if s == 0:
            break
        s = (s - 1) & a
    return out


def sq_terms(i: int, x: Sequence[int]) -> list[tuple[int, ...]]:
    """Exponent tuples of Sq^i(x) for a monomial x (no cancellation occurs)."""
    if i < 0:
        raise ValueError("square index must be non-negative")
    k = len(x)
    if i == 0:
        return [tuple(x)]
    if i > sum(x):
        return []
    # suffix sums bound how much the remaining variables can absorb
    room = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        room[j] = room[j + 1] + x[j]
    supports = [_submasks_upto(a, i) for a in x]
    out: list[tuple[int, ...]] = []
    acc = [0] * k

    def rec(j: int, rem: int) -> None:
        if j == k:
            if rem == 0:
                out.append(tuple(acc))
            return
        if rem > room[j]:
            return
        a = x[j]
        for t in supports[j]:
            if t <= rem:
                acc[j] = a + t
                rec(j + 1, rem - t)

    rec(0, i)
    return out


def sq_monomial(i: int, x: Sequence[int]) -> Polynomial:
    k = len(x)
    return Polynomial._trusted(k, sum(x) + i, frozenset(Monomial(t) for t in sq_terms(i, x)))


def sq(i: int, f: Polynomial) -> Polynomial:
    """Sq^i(f); raises degree by i."""
    acc: set[Monomial] = set()
    for x in f.terms:
        acc ^= {Monomial(t) for t in sq_terms(i, x)}
    return Polynomial._trusted(f.k, f.degree + i, frozenset(acc))


def total_square(f: Polynomial) -> list[Polynomial]:
    """[Sq^0 f, Sq^1 f, ..., Sq^deg f f]; higher squares vanish."""
    return [sq(i, f) for i in range(f.degree + 1)]


def generator_squares(n: int, all_squares: bool = False) -> list[int]:
    """Square indices used to span the hit space in degree n."""
    if all_squares:
        return list(range(1, n + 1))
    out = []
    u = 1
    while u <= n:
        out.append(u)
        u <<= 1
    return out


def _terms_for_sources(args) -> list[tuple[tuple[int, ...], ...]]:
    i, sources = args
    out = []
    for m in sources:
        t = sq_terms(i, m)
        if t:
            out.append(tuple(t))
    return out


def _work_items(k: int, n: int, all_squares: bool, chunk: int):
    for i in generator_squares(n, all_squares):
        src = [tuple(m) for m in monomials_of_degree(k, n - i)]
        for s in range(0, len(src), chunk):
            yield (i, src[s:s + chunk])


def hit_generator_terms(k: int, n: int, all_squares: bool = False,
                        jobs: int = 1) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Nonzero generators as tuples of exponent tuples, in a fixed global order.

    With jobs > 1 the source monomials are partitioned across worker
    processes; results are consumed in partition order so the stream is
    identical to the sequential one.
    """
    if n < 1:
        return
    items = _work_items(k, n, all_squares, chunk=2048)
    if jobs <= 1:
        for item in items:
            yield from _terms_for_sources(item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for block in pool.map(_terms_for_sources, items):
            yield from block


def hit_generators(k: int, n: int, all_squares: bool = False,
                   jobs: int = 1) -> Iterator[Polynomial]:
    """Sq^(2^u)(m) for 2^u <= n and m of degree n - 2^u; zero images are skipped."""
    for terms in hit_generator_terms(k, n, all_squares=all_squares, jobs=jobs):
        yield Polynomial._trusted(k, n, frozenset(Monomial(t) for t in terms))
