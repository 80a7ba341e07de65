"""Weight vectors, the admissible order, spikes and the mu/alpha/zeta/t arithmetic."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence


class WeightVector(tuple):
    """(w1, w2, ...) with trailing zeros trimmed.

    Plain tuple comparison on trimmed vectors agrees with left-lex comparison
    after zero padding, because entries are non-negative.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()) -> "WeightVector":
        es = [int(e) for e in entries]
        if any(e < 0 for e in es):
            raise ValueError(f"negative weight entry in {es}")
        while es and es[-1] == 0:
            es.pop()
        return tuple.__new__(cls, es)

    @property
    def degree(self) -> int:
        return sum(w << i for i, w in enumerate(self))

    def entry(self, i: int) -> int:
        """1-indexed entry, zero past the end."""
        return self[i - 1] if i <= len(self) else 0

    def __str__(self) -> str:
        return "(" + ",".join(str(w) for w in (self or (0,))) + ")"

    def __repr__(self) -> str:
        return f"WeightVector{self}"


def parse_weight(text: str) -> WeightVector:
    s = text.strip().strip("()[]")
    if not s:
        return WeightVector()
    return WeightVector(int(p) for p in s.split(","))


def weight_vector(x: Sequence[int]) -> WeightVector:
    """w_i = number of exponents with bit (i-1) set."""
    top = max(x, default=0).bit_length()
    return WeightVector(sum((a >> t) & 1 for a in x) for t in range(top))


def order_key(x: Sequence[int]) -> tuple:
    """Sort key realizing the admissible order: weight vector first, then exponents."""
    return (weight_vector(x), tuple(x))


def admissible_cmp(x: Sequence[int], y: Sequence[int]) -> int:
    """-1, 0 or 1 as x <, =, > y in the admissible order."""
    if len(x) != len(y):
        raise ValueError("variable count mismatch")
    if sum(x) != sum(y):
        raise ValueError(f"degree mismatch: {sum(x)} vs {sum(y)}")
    kx, ky = order_key(x), order_key(y)
    return (kx > ky) - (kx < ky)


# -- arithmetic --------------------------------------------------------------


def alpha(n: int) -> int:
    """Number of ones in the binary expansion of n."""
    if n < 0:
        raise ValueError("alpha is defined for n >= 0")
    return bin(n).count("1")


def zeta(n: int) -> int:
    """Largest u with 2^u dividing n."""
    if n <= 0:
        raise ValueError("zeta is defined for n >= 1")
    return (n & -n).bit_length() - 1


@lru_cache(maxsize=None)
def _mu(n: int) -> int:
    if n == 0:
        return 0
    best = n  # n copies of 2^1 - 1
    u = 2
    while (1 << u) - 1 <= n:
        best = min(best, 1 + _mu(n - ((1 << u) - 1)))
        u += 1
    return best


def mu(n: int) -> int:
    """Least r with n a sum of r numbers of the form 2^u - 1, u > 0."""
    if n <= 0:
        raise ValueError("mu is defined for n >= 1")
    return _mu(n)


def t_kd(k: int, d: int) -> int:
    """max(0, k - alpha(d+k) - zeta(d+k))."""
    if k < 1 or d < 0:
        raise ValueError("t(k, d) needs k >= 1 and d >= 0")
    return max(0, k - alpha(d + k) - zeta(d + k))


# -- spikes ------------------------------------------------------------------


def is_spike(x: Sequence[int]) -> bool:
    return all((a & (a + 1)) == 0 for a in x)


def spikes(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All spikes of degree n in k variables (exponent tuples)."""
    parts = [(1 << t) - 1 for t in range(n.bit_length() + 1) if (1 << t) - 1 <= n]

    def rec(j: int, rem: int) -> Iterator[tuple[int, ...]]:
        if j == k - 1:
            if rem in parts:
                yield (rem,)
            return
        for p in parts:
            if p > rem:
                break
            for rest in rec(j + 1, rem - p):
                yield (p,) + rest

    yield from rec(0, n)


def _spike_exponents(n: int, r: int) -> list[int] | None:
    # t_1 > t_2 > ... > t_{r-1} >= t_r > 0 with sum of (2^t - 1) equal to n
    def rec(rem: int, left: int, bound: int) -> list[int] | None:
        if left == 0:
            return [] if rem == 0 else None
        for t in range(bound, 0, -1):
            v = (1 << t) - 1
            if v > rem:
                continue
            if left == 1:
                if v == rem:
                    return [t]
                continue
            nxt_bound = t if left == 2 else t - 1
            rest = rec(rem - v, left - 1, nxt_bound)
            if rest is not None:
                return [t] + rest
        return None

    return rec(n, r, max(1, (n + 1).bit_length()))


def minimal_spike(n: int, k: int):
    """The unique spike of degree n whose weight vector is smallest."""
    from .algebra import Monomial

    if n == 0:
        return Monomial.one(k)
    r = mu(n)
    if r > k:
        raise ValueError(f"mu({n}) = {r} > k = {k}: there is no spike of degree {n}")
    ts = _spike_exponents(n, r)
    if ts is None:  # pragma: no cover - mu guarantees a representation
        raise RuntimeError(f"no spike representation for n={n}, r={r}")
    return Monomial([(1 << t) - 1 for t in ts] + [0] * (k - r))


def singer_filter(x: Sequence[int]) -> int:
    """1 when w(x) is below the weight of the minimal spike, so x is hit."""
    n, k = sum(x), len(x)
    if n == 0:
        return 0
    if mu(n) > k:
        raise ValueError(f"mu({n}) > {k}: every monomial of degree {n} is hit")
    return int(weight_vector(x) < weight_vector(minimal_spike(n, k)))


# -- weight blocks -----------------------------------------------------------


def weight_block_equal(k: int, omega: Sequence[int]) -> list[tuple[int, ...]]:
    """Monomials y in k variables with w(y) = omega, ascending admissible order."""
    w = WeightVector(omega)
    if any(wi > k for wi in w):
        return []
    level_sets = [list(combinations(range(k), wi)) for wi in w]
    out = []
    for choice in product(*level_sets):
        e = [0] * k
        for t, J in enumerate(choice):
            for j in J:
                e[j] |= 1 << t
        out.append(tuple(e))
    out.sort()
    return out


def weight_block(k: int, omega: Sequence[int]):
    """(monomials with w(y) = omega, monomials of the same degree with w(y) < omega)."""
    from .algebra import Monomial, monomials_of_degree

    w = WeightVector(omega)
    eq = [Monomial(e) for e in weight_block_equal(k, w)]
    lower = [m for m in monomials_of_degree(k, w.degree) if weight_vector(m) < w]
    lower.sort(key=order_key)
    return eq, lower


def realized_weights(k: int, n: int) -> list[WeightVector]:
    """Weight vectors of degree n that occur for monomials in k variables, ascending."""
    out = []

    def rec(rem: int, level: int, acc: list[int]) -> None:
        if rem == 0:
            out.append(WeightVector(acc))
            return
        if (rem >> level) == 0:
            return
        step = 1 << level
        # entries at this level must match the parity of rem at this bit
        for w in range(0, k + 1):
            if w * step > rem:
                break
            if ((rem - w * step) >> level) & 1:
                continue
            rec(rem - w * step, level + 1, acc + [w])

    rec(n, 0, [])
    return sorted(set(out))
