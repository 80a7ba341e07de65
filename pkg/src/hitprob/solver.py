"""Hit subspaces, admissible bases, class coordinates and weight quotients.

Columns of degree n are sorted descending in the admissible order, so the
pivot of each reduced hit row is its largest monomial. A monomial x is
inadmissible exactly when x + (smaller monomials) is hit, i.e. when x is the
leading column of some hit vector, i.e. when x is a pivot. The admissible
monomials are therefore the non-pivot columns, and the normal form of any
polynomial (its remainder against the reduced hit rows) is supported on them.

Columns of weight below a given w form a suffix of the column order. Reducing
a vector supported there only ever adds rows whose pivot lies in that suffix,
so the normal form of a lower-weight polynomial stays lower-weight. Hence the
weight-w part of the normal form is a well defined class in QP(w), and the
admissible monomials of weight w give a basis of QP(w).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import cache as _cache
from .algebra import Monomial, Polynomial, RingMap, apply_map, monomials_of_degree
from .gf2 import ColumnIndex, EchelonBasis, intersect_columns, pack_dense, pack_supports, unpack_dense
from .steenrod import hit_generator_terms
from .weights import WeightVector, minimal_spike, mu, weight_block_equal, weight_vector

_COLUMN_MEMO: dict[tuple[int, int], ColumnIndex] = {}
_HIT_MEMO: dict[tuple, EchelonBasis] = {}


def clear_memo() -> None:
    _COLUMN_MEMO.clear()
    _HIT_MEMO.clear()


def column_index(k: int, n: int) -> ColumnIndex:
    key = (k, n)
    ci = _COLUMN_MEMO.get(key)
    if ci is None:
        ci = ColumnIndex(monomials_of_degree(k, n))
        _COLUMN_MEMO[key] = ci
    return ci


def _mode(all_squares: bool, singer_reduced: bool) -> str:
    return ("all" if all_squares else "pow2") + ("-singer" if singer_reduced else "")


def build_hit_space(k: int, n: int, all_squares: bool = False, singer_reduced: bool = False,
                    jobs: int = 1, order: Sequence[int] | None = None) -> EchelonBasis:
    """Eliminate the hit generators of degree n from scratch (no memo, no cache).

    With singer_reduced the columns of weight below the minimal spike are
    dropped from every generator first; those monomials are all hit, so the
    result is the hit space modulo them, which has the same non-pivot columns.
    The unit rows of the dropped columns are added back at the end so the
    returned span is the whole hit space either way.
    ``order`` permutes the generator stream (for intrinsicness tests).
    """
    ci = column_index(k, n)
    ncols = len(ci)
    basis = EchelonBasis(ncols, ci)
    if n < 1:
        return basis
    pos = ci.position
    cutoff = ncols
    if singer_reduced and mu(n) <= k:
        floor = weight_vector(minimal_spike(n, k))
        cutoff = next((c for c, m in enumerate(ci.columns) if weight_vector(m) < floor), ncols)
    stream = ([pos[t] for t in g] for g in hit_generator_terms(k, n, all_squares, jobs))
    if cutoff < ncols:
        stream = ([c for c in s if c < cutoff] for s in stream)
    if order is not None:
        rows = list(stream)
        stream = (rows[i] for i in order if i < len(rows))
    buf: list[list[int]] = []
    for s in stream:
        if s:
            buf.append(s)
        if len(buf) >= 4096:
            basis.insert_packed_rows(pack_supports(buf, ncols))
            buf = []
    if buf:
        basis.insert_packed_rows(pack_supports(buf, ncols))
    if cutoff < ncols:
        basis.insert_packed_rows(pack_supports([[c] for c in range(cutoff, ncols)], ncols))
    return basis


def hit_space(k: int, n: int, all_squares: bool = False, singer_reduced: bool = False,
              jobs: int = 1, use_cache: bool = True) -> EchelonBasis:
    """Reduced echelon basis of the hit subspace of degree n (memoized, disk cached)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("degree must be >= 0")
    key = (k, n, all_squares, singer_reduced)
    b = _HIT_MEMO.get(key)
    if b is not None:
        return b
    ci = column_index(k, n)
    mode = _mode(all_squares, singer_reduced)
    if use_cache:
        b = _cache.load_basis(k, n, mode, ci)
    if b is None:
        b = build_hit_space(k, n, all_squares, singer_reduced, jobs)
        if use_cache:
            _cache.store_basis(k, n, mode, b)
    _HIT_MEMO[key] = b
    return b


class QuotientBasis:
    """Admissible basis of (QP_k)_n, or of QP_k(w) when ``weight`` is set.

    ``modulus`` is the echelon basis that polynomials are reduced against;
    ``admissible`` lists the basis monomials in ascending admissible order.
    """

    def __init__(self, k: int, n: int, columns: ColumnIndex, modulus: EchelonBasis,
                 admissible: Sequence[Sequence[int]], weight: WeightVector | None = None,
                 method: str = "full"):
        self.k = k
        self.n = n
        self.columns = columns
        self.modulus = modulus
        self.weight = weight
        self.method = method
        adm = sorted((tuple(m) for m in admissible), key=lambda m: columns.index(m), reverse=True)
        self.admissible: list[Monomial] = [Monomial(m) for m in adm]
        self._cols = np.array([columns.index(m) for m in adm], dtype=np.int64)
        self._slot = {m: i for i, m in enumerate(adm)}

    @property
    def hit(self) -> EchelonBasis:
        return self.modulus

    @property
    def dim(self) -> int:
        return len(self.admissible)

    def __len__(self) -> int:
        return len(self.admissible)

    def index_of(self, m: Sequence[int]) -> int:
        return self._slot[tuple(m)]

    def monomial_set(self) -> set[Monomial]:
        return set(self.admissible)

    def vector(self, f: Polynomial | Iterable[Sequence[int]]) -> np.ndarray:
        """Dense 0/1 column vector of a polynomial (after weight truncation)."""
        terms = f.terms if isinstance(f, Polynomial) else [tuple(t) for t in f]
        v = np.zeros(len(self.columns), dtype=np.uint8)
        pos = self.columns.position
        for t in terms:
            t = tuple(t)
            if len(t) != self.k:
                raise ValueError(f"monomial {t} has {len(t)} variables, expected {self.k}")
            if sum(t) != self.n:
                raise ValueError(f"degree mismatch: {sum(t)} vs {self.n}")
            if self.weight is not None:
                w = weight_vector(t)
                if w < self.weight:
                    continue
                if w > self.weight:
                    raise ValueError(f"{Monomial(t)} has weight {w} above {self.weight}")
            v[pos[t]] ^= 1
        return v

    def coordinates(self, f: Polynomial | Iterable[Sequence[int]]) -> np.ndarray:
        """Coordinates of the class of f on ``admissible``; zero iff f is hit (mod lower weight)."""
        if isinstance(f, Polynomial):
            if f.k != self.k:
                raise ValueError(f"polynomial has {f.k} variables, expected {self.k}")
            if not f.is_zero() and f.degree != self.n:
                raise ValueError(f"degree mismatch: {f.degree} vs {self.n}")
        if self.n == 0 or not len(self.columns):
            v = self.vector(f)
            return v[self._cols] if self._cols.size else np.zeros(0, dtype=np.uint8)
        rem = self.modulus.reduce(self.vector(f))
        return rem[self._cols].astype(np.uint8)

    def coordinates_many(self, fs: Sequence) -> np.ndarray:
        """Coordinates of several polynomials at once, one row each."""
        fs = list(fs)
        out = np.zeros((len(fs), self.dim), dtype=np.uint8)
        if not fs or not self.dim:
            return out
        if self.n == 0:
            for i, f in enumerate(fs):
                out[i] = self.vector(f)[self._cols]
            return out
        V = pack_dense(np.stack([self.vector(f) for f in fs]), len(self.columns))
        R = unpack_dense(self.modulus.reduce_packed_rows(V), len(self.columns))
        return R[:, self._cols].astype(np.uint8)

    def is_zero_class(self, f) -> bool:
        return not self.coordinates(f).any()

    def polynomial(self, coords: Sequence[int]) -> Polynomial:
        """Representative sum of admissible monomials with the given coordinates."""
        terms = [m for m, c in zip(self.admissible, coords) if c]
        return Polynomial(self.k, self.n, terms)

    def __repr__(self) -> str:
        w = f", weight={self.weight}" if self.weight is not None else ""
        return f"QuotientBasis(k={self.k}, n={self.n}{w}, dim={self.dim})"


def admissible_basis(k: int, n: int, use_wood: bool = True, all_squares: bool = False,
                     singer_reduced: bool = False, jobs: int = 1,
                     use_cache: bool = True) -> QuotientBasis:
    """Admissible monomials of degree n in k variables (non-pivot hit columns)."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    ci = column_index(k, n)
    if n == 0:
        return QuotientBasis(k, 0, ci, EchelonBasis(len(ci), ci), [Monomial.one(k)])
    if use_wood and mu(n) > k:
        # every monomial is hit; the unit rows span the whole slice
        full = EchelonBasis.from_packed(pack_supports([[c] for c in range(len(ci))], len(ci)), len(ci), ci)
        return QuotientBasis(k, n, ci, full, [], method="wood")
    hit = hit_space(k, n, all_squares, singer_reduced, jobs, use_cache)
    adm = [ci[c] for c in hit.non_pivots()]
    return QuotientBasis(k, n, ci, hit, adm, method="singer" if singer_reduced else "full")


def weight_quotient(k: int, omega: Sequence[int], method: str = "full", jobs: int = 1,
                    use_cache: bool = True) -> QuotientBasis:
    """QP_k(w) with basis the admissible monomials of weight w.

    method="full" reads the basis off the full-degree hit space.
    method="block" recomputes it independently: the hit space is extended by
    all lower-weight monomials and intersected with the weight-w columns.
    """
    w = WeightVector(omega)
    n = w.degree
    ci = column_index(k, n)
    eq = weight_block_equal(k, w)
    if n == 0:
        return QuotientBasis(k, 0, ci, EchelonBasis(len(ci), ci), eq, weight=w)
    if method == "full":
        q = admissible_basis(k, n, jobs=jobs, use_cache=use_cache)
        adm = [m for m in q.admissible if weight_vector(m) == w]
        return QuotientBasis(k, n, ci, q.modulus, adm, weight=w, method="full")
    if method != "block":
        raise ValueError(f"unknown method {method!r}")
    if mu(n) > k:
        hit = EchelonBasis.from_packed(pack_supports([[c] for c in range(len(ci))], len(ci)), len(ci), ci)
    else:
        hit = hit_space(k, n, jobs=jobs, use_cache=use_cache)
    ext = hit.copy()
    lower = [c for c, m in enumerate(ci.columns) if weight_vector(m) < w]
    if lower:
        ext.insert_packed_rows(pack_supports([[c] for c in lower], len(ci)))
    keep = [ci.index(m) for m in eq]
    mod = intersect_columns(ext, keep)
    adm = [ci[c] for c in keep if not mod.is_pivot(c)]
    return QuotientBasis(k, n, ci, mod, adm, weight=w, method="block")


def coordinates(f: Polynomial, q: QuotientBasis) -> np.ndarray:
    return q.coordinates(f)


def is_hit(f: Polynomial) -> bool:
    if f.is_zero():
        return True
    return admissible_basis(f.k, f.degree).is_zero_class(f)


def split_zero_plus(q: QuotientBasis) -> tuple[list[Monomial], list[Monomial]]:
    """(monomials with some zero exponent, monomials with all exponents positive)."""
    zero = [m for m in q.admissible if 0 in m]
    plus = [m for m in q.admissible if 0 not in m]
    return zero, plus


# -- maps between k-1 and k variables ---------------------------------------


def embedding_map(i: int, k: int) -> RingMap:
    """f_i: P_{k-1} -> P_k, x_j -> x_j for j < i and x_j -> x_{j+1} for j >= i."""
    if not 1 <= i <= k:
        raise ValueError(f"need 1 <= i <= {k}, got {i}")
    return RingMap.substitution(k - 1, k, [j if j < i else j + 1 for j in range(1, k)])


def restriction_map(i: int, j: int, k: int) -> RingMap:
    """p_(i;j): P_k -> P_{k-1}, x_u -> x_u (u < i), x_i -> x_{j-1}, x_u -> x_{u-1} (u > i)."""
    if not 1 <= i < j <= k:
        raise ValueError(f"need 1 <= i < j <= {k}, got i={i}, j={j}")
    return RingMap.substitution(k, k - 1, [u if u < i else (j - 1 if u == i else u - 1)
                                           for u in range(1, k + 1)])


def f_embed(i: int, f: Polynomial) -> Polynomial:
    return apply_map(embedding_map(i, f.k + 1), f)


def p_restrict(i: int, j: int, f: Polynomial) -> Polynomial:
    return apply_map(restriction_map(i, j, f.k), f)


def embed_monomial(i: int, x: Sequence[int]) -> Monomial:
    """f_i on a monomial: insert a zero exponent at position i."""
    x = tuple(x)
    return Monomial(x[: i - 1] + (0,) + x[i - 1:])


def zero_part_from_embeddings(k: int, n: int, **kw) -> set[Monomial]:
    """Union of f_i(B_{k-1}(n)) for 1 <= i <= k."""
    if k < 2:
        raise ValueError("need k >= 2")
    lower = admissible_basis(k - 1, n, **kw).admissible
    return {embed_monomial(i, x) for i in range(1, k + 1) for x in lower}


def brute_force_admissible(k: int, n: int, all_squares: bool = True) -> list[Monomial]:
    """Slow oracle: x is admissible iff x is not in hit + span(monomials below x).

    Each monomial gets its own elimination over a column order that puts x
    first and leaves everything else in generation order, so no use is made
    of the descending-column pivot argument.
    """
    from .gf2 import rank_of
    from .steenrod import generator_squares, sq_terms
    from .weights import order_key

    mons = [tuple(m) for m in monomials_of_degree(k, n)]
    if n == 0:
        return [Monomial(m) for m in mons]
    gens = []
    for i in generator_squares(n, all_squares):
        for m in monomials_of_degree(k, n - i):
            t = sq_terms(i, m)
            if t:
                gens.append(t)
    pos = {m: c for c, m in enumerate(mons)}
    ncols = len(mons)
    out = []
    for x in mons:
        rows = []
        for g in gens:
            r = [0] * ncols
            for t in g:
                r[pos[t]] = 1
            rows.append(r)
        for y in mons:
            if order_key(y) < order_key(x):
                r = [0] * ncols
                r[pos[y]] = 1
                rows.append(r)
        unit = [0] * ncols
        unit[pos[x]] = 1
        base = rank_of(rows, ncols)
        if rank_of(rows + [unit], ncols) > base:
            out.append(Monomial(x))
    out.sort(key=order_key)
    return out
