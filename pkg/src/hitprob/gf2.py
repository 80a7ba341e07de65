"""Bit-packed linear algebra over F2 against an indexed monomial column basis.

Column c of a row lives in word c >> 6, bit c & 63. Columns are ordered so
that column 0 is the largest monomial; the leading (pivot) column of a row is
therefore its largest monomial, and a reduced echelon basis of the hit space
has exactly the admissible monomials as its non-pivot columns.

Rows are kept in reduced echelon form: every pivot column is zero in every
other row. Under that invariant reducing a vector only needs the pivot bits
that are set in it, since adding a pivot row never touches another pivot
column. The heavy loops are compiled with numba.
"""

from __future__ import annotations

import sys
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .weights import order_key

if sys.byteorder != "little":  # pragma: no cover
    raise ImportError("bit packing assumes a little-endian host")

WORD = 64


def nwords(ncols: int) -> int:
    return max(1, (ncols + WORD - 1) // WORD)


class ColumnIndex:
    """Monomials sorted strictly descending in the admissible order."""

    def __init__(self, monomials: Iterable[Sequence[int]], presorted: bool = False):
        cols = [tuple(m) for m in monomials]
        if not presorted:
            cols.sort(key=order_key, reverse=True)
        self.columns: list[tuple[int, ...]] = cols
        self.position: dict[tuple[int, ...], int] = {m: i for i, m in enumerate(cols)}
        if len(self.position) != len(cols):
            raise ValueError("duplicate monomials in column index")

    def __len__(self) -> int:
        return len(self.columns)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.columns[i]

    def __contains__(self, m) -> bool:
        return tuple(m) in self.position

    def index(self, m: Sequence[int]) -> int:
        return self.position[tuple(m)]

    def __eq__(self, other) -> bool:
        return isinstance(other, ColumnIndex) and self.columns == other.columns

    def __hash__(self) -> int:
        return hash(tuple(self.columns))


# -- packing -----------------------------------------------------------------


def pack_dense(rows, ncols: int) -> np.ndarray:
    """2-D 0/1 array (r, ncols) -> packed uint64 array (r, nwords)."""
    a = np.asarray(rows, dtype=np.uint8)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.shape[1] != ncols:
        raise ValueError(f"expected {ncols} columns, got {a.shape[1]}")
    nw = nwords(ncols)
    padded = np.zeros((a.shape[0], nw * WORD), dtype=np.uint8)
    padded[:, :ncols] = a & 1
    bytes_ = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(bytes_).view(np.uint64).reshape(a.shape[0], nw)


def unpack_dense(packed: np.ndarray, ncols: int) -> np.ndarray:
    p = np.ascontiguousarray(packed, dtype=np.uint64)
    if p.ndim == 1:
        p = p.reshape(1, -1)
    bits = np.unpackbits(p.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :ncols].copy()


@njit(cache=True)
def _fill(M, row_of, col_of):
    one = np.uint64(1)
    for t in range(row_of.shape[0]):
        c = col_of[t]
        M[row_of[t], c >> 6] ^= one << np.uint64(c & 63)


def pack_supports(supports: Sequence[Sequence[int]], ncols: int) -> np.ndarray:
    """Rows given as column-index lists -> packed rows (repeated indices cancel)."""
    n = len(supports)
    M = np.zeros((n, nwords(ncols)), dtype=np.uint64)
    lens = [len(s) for s in supports]
    total = sum(lens)
    if total:
        row_of = np.repeat(np.arange(n, dtype=np.int64), lens)
        col_of = np.fromiter((c for s in supports for c in s), dtype=np.int64, count=total)
        if col_of.min() < 0 or col_of.max() >= ncols:
            raise ValueError("column index out of range")
        _fill(M, row_of, col_of)
    return M


def support_of(packed_row: np.ndarray, ncols: int) -> list[int]:
    return [int(c) for c in np.flatnonzero(unpack_dense(packed_row, ncols)[0])]


# -- kernels -----------------------------------------------------------------


@njit(cache=True)
def _lowbit(x):
    # index of the lowest set bit of a nonzero uint64
    i = 0
    while (x >> np.uint64(i)) & np.uint64(1) == 0:
        i += 1
    return i


@njit(cache=True)
def _rref(M, ncols):
    """In-place reduced echelon form of M; returns the pivot columns."""
    nrows, nw = M.shape
    r = 0
    piv = np.empty(min(nrows, ncols), np.int64)
    npiv = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        b = one << np.uint64(c & 63)
        p = -1
        for i in range(r, nrows):
            if M[i, w] & b:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for x in range(w, nw):
                t = M[r, x]
                M[r, x] = M[p, x]
                M[p, x] = t
        for i in range(nrows):
            if i != r and (M[i, w] & b):
                for x in range(w, nw):
                    M[i, x] ^= M[r, x]
        piv[npiv] = c
        npiv += 1
        r += 1
    return piv[:npiv]


@njit(cache=True)
def _reduce(R, row_of_col, pmask, V):
    """Reduce each row of V in place against the reduced rows R."""
    nw = V.shape[1]
    for i in range(V.shape[0]):
        for w in range(nw):
            m = V[i, w] & pmask[w]
            while m:
                c = w * 64 + _lowbit(m)
                r = row_of_col[c]
                for x in range(w, nw):
                    V[i, x] ^= R[r, x]
                m = V[i, w] & pmask[w]


@njit(cache=True)
def _nonzero_rows(V):
    out = np.zeros(V.shape[0], np.bool_)
    for i in range(V.shape[0]):
        for x in range(V.shape[1]):
            if V[i, x]:
                out[i] = True
                break
    return out


# -- echelon basis -----------------------------------------------------------


class EchelonBasis:
    """Reduced row echelon basis of a subspace of F2^ncols.

    Public methods take dense 0/1 vectors of length ncols; the *_packed
    variants take uint64 words. Rows are stored in insertion slots;
    ``row_of_col`` maps a pivot column to its slot.
    """

    def __init__(self, ncols: int, columns: ColumnIndex | None = None):
        if columns is not None and len(columns) != ncols:
            raise ValueError("column index size mismatch")
        self.ncols = ncols
        self.columns = columns
        self.nw = nwords(ncols)
        self._rows = np.zeros((0, self.nw), dtype=np.uint64)
        self._n = 0
        self._row_of_col = np.full(max(ncols, 1), -1, dtype=np.int64)
        self._pmask = np.zeros(self.nw, dtype=np.uint64)

    # construction

    @classmethod
    def from_packed(cls, rows: np.ndarray, ncols: int, columns: ColumnIndex | None = None) -> "EchelonBasis":
        b = cls(ncols, columns)
        b.insert_packed_rows(rows)
        return b

    @classmethod
    def from_rows(cls, rows, ncols: int, columns: ColumnIndex | None = None) -> "EchelonBasis":
        rows = list(rows)
        if not rows:
            return cls(ncols, columns)
        return cls.from_packed(pack_dense(rows, ncols), ncols, columns)

    @classmethod
    def from_supports(cls, supports, ncols: int, columns: ColumnIndex | None = None,
                      chunk: int = 4096) -> "EchelonBasis":
        b = cls(ncols, columns)
        buf = []
        for s in supports:
            buf.append(s)
            if len(buf) >= chunk:
                b.insert_packed_rows(pack_supports(buf, ncols))
                buf = []
        if buf:
            b.insert_packed_rows(pack_supports(buf, ncols))
        return b

    @classmethod
    def _from_reduced(cls, rows: np.ndarray, pivots: np.ndarray, ncols: int,
                      columns: ColumnIndex | None = None) -> "EchelonBasis":
        # rows must already be in reduced echelon form with these pivots
        b = cls(ncols, columns)
        b._rows = np.ascontiguousarray(rows, dtype=np.uint64).copy()
        b._n = len(pivots)
        for slot, c in enumerate(pivots):
            b._row_of_col[int(c)] = slot
            b._pmask[int(c) >> 6] |= np.uint64(1) << np.uint64(int(c) & 63)
        return b

    def copy(self) -> "EchelonBasis":
        order = self.pivots
        return EchelonBasis._from_reduced(self.packed_rows(), np.array(order, dtype=np.int64),
                                          self.ncols, self.columns)

    # queries

    @property
    def rank(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    @property
    def pivots(self) -> list[int]:
        return [int(c) for c in np.flatnonzero(self._row_of_col[: self.ncols] >= 0)]

    def is_pivot(self, c: int) -> bool:
        return bool(self._row_of_col[c] >= 0)

    def non_pivots(self) -> list[int]:
        return [int(c) for c in np.flatnonzero(self._row_of_col[: self.ncols] < 0)]

    def packed_rows(self) -> np.ndarray:
        """Rows sorted by pivot column."""
        slots = self._row_of_col[: self.ncols]
        order = slots[slots >= 0]
        return self._rows[order].copy()

    def dense_rows(self) -> np.ndarray:
        return unpack_dense(self.packed_rows(), self.ncols) if self._n else np.zeros((0, self.ncols), np.uint8)

    def canonical(self) -> tuple:
        """Hashable canonical form; equal iff the spans are equal."""
        return (self.ncols, tuple(self.pivots), self.packed_rows().tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, EchelonBasis) and self.canonical() == other.canonical()

    # reduction

    def _check_packed(self, V: np.ndarray) -> np.ndarray:
        V = np.ascontiguousarray(V, dtype=np.uint64)
        if V.ndim == 1:
            V = V.reshape(1, -1)
        if V.shape[1] != self.nw:
            raise ValueError(f"expected {self.nw} words per row, got {V.shape[1]}")
        if self.ncols % WORD and V.size:
            spill = np.uint64(~((1 << (self.ncols % WORD)) - 1) & 0xFFFFFFFFFFFFFFFF)
            if np.any(V[:, -1] & spill):
                raise ValueError("bits set beyond the last column")
        return V

    def reduce_packed_rows(self, V: np.ndarray) -> np.ndarray:
        V = self._check_packed(V).copy()
        if self._n:
            _reduce(self._rows, self._row_of_col, self._pmask, V)
        return V

    def reduce_packed(self, v: np.ndarray) -> np.ndarray:
        return self.reduce_packed_rows(v)[0]

    def reduce(self, v) -> np.ndarray:
        """Canonical remainder of a dense 0/1 vector modulo the span."""
        v = np.asarray(v, dtype=np.uint8)
        if v.shape != (self.ncols,):
            raise ValueError(f"vector length {v.shape} does not match {self.ncols} columns")
        return unpack_dense(self.reduce_packed(pack_dense(v, self.ncols)[0]), self.ncols)[0]

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_packed(self, v: np.ndarray) -> bool:
        return not self.reduce_packed(v).any()

    # insertion

    def insert(self, v) -> bool:
        """Add a dense 0/1 vector; True iff the rank grew."""
        v = np.asarray(v, dtype=np.uint8)
        if v.shape != (self.ncols,):
            raise ValueError(f"vector length {v.shape} does not match {self.ncols} columns")
        return self.insert_packed_rows(pack_dense(v, self.ncols)) == 1

    def insert_packed(self, v: np.ndarray) -> bool:
        return self.insert_packed_rows(v) == 1

    def insert_packed_rows(self, V: np.ndarray) -> int:
        """Insert a batch of packed rows; returns the rank increase.

        The batch is reduced against the current rows, the remainders are put
        in reduced echelon form among themselves, and the old rows are then
        cleared at the new pivot columns.
        """
        V = self.reduce_packed_rows(V)
        V = V[_nonzero_rows(V)]
        if not len(V):
            return 0
        V = np.ascontiguousarray(V)
        piv = _rref(V, self.ncols)
        new = V[: len(piv)]
        if self._n:
            new_rc = np.full(max(self.ncols, 1), -1, dtype=np.int64)
            new_mask = np.zeros(self.nw, dtype=np.uint64)
            for slot, c in enumerate(piv):
                new_rc[c] = slot
                new_mask[c >> 6] |= np.uint64(1) << np.uint64(c & 63)
            old = self._rows[: self._n]
            _reduce(new, new_rc, new_mask, old)
        need = self._n + len(piv)
        if need > len(self._rows):
            cap = max(need, 2 * len(self._rows), 64)
            grown = np.zeros((min(cap, max(self.ncols, need)), self.nw), dtype=np.uint64)
            grown[: self._n] = self._rows[: self._n]
            self._rows = grown
        self._rows[self._n: need] = new
        for t, c in enumerate(piv):
            self._row_of_col[c] = self._n + t
            self._pmask[c >> 6] |= np.uint64(1) << np.uint64(c & 63)
        self._n = need
        return len(piv)


# -- derived operations ------------------------------------------------------


def _permute_columns(packed: np.ndarray, perm: np.ndarray, ncols: int, block: int = 2048) -> np.ndarray:
    # new column j takes old column perm[j]
    out = np.zeros_like(packed)
    for s in range(0, len(packed), block):
        dense = unpack_dense(packed[s:s + block], ncols)
        out[s:s + block] = pack_dense(dense[:, perm], ncols)
    return out


def intersect_columns(basis: EchelonBasis, keep: Iterable[int]) -> EchelonBasis:
    """Basis of the vectors in the span whose support lies inside ``keep``.

    The discarded columns are moved in front and the rows re-eliminated; rows
    whose pivot then falls among the kept columns span the intersection.
    When the kept columns are a suffix the current rows already have that
    shape and no re-elimination is needed.
    """
    n = basis.ncols
    keep_set = sorted(set(int(c) for c in keep))
    if any(c < 0 or c >= n for c in keep_set):
        raise ValueError("kept column out of range")
    out = EchelonBasis(n, basis.columns)
    if not keep_set or not basis.rank:
        return out
    rows = basis.packed_rows()
    pivots = np.array(basis.pivots, dtype=np.int64)
    first = keep_set[0]
    if keep_set == list(range(first, n)):
        sel = pivots >= first
        return EchelonBasis._from_reduced(rows[sel], pivots[sel], n, basis.columns)
    kept = np.zeros(n, dtype=bool)
    kept[keep_set] = True
    perm = np.concatenate([np.flatnonzero(~kept), np.flatnonzero(kept)])
    moved = np.ascontiguousarray(_permute_columns(rows, perm, n))
    piv = _rref(moved, n)
    nd = n - len(keep_set)
    harvest = moved[: len(piv)][piv >= nd]
    if not len(harvest):
        return out
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    back = _permute_columns(harvest, inv, n)
    out.insert_packed_rows(back)
    return out


def kernel_of(map_rows, ncols: int | None = None) -> EchelonBasis:
    """Null space {v : A v = 0} of a 0/1 matrix given by its rows.

    Square systems are the usual case; a stack of several square blocks
    (for a common kernel) is accepted as long as every row has ncols entries.
    """
    A = np.asarray(map_rows, dtype=np.uint8)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, ncols or 0)
    if A.ndim != 2:
        raise ValueError("map rows must form a 2-D array")
    if ncols is None:
        ncols = A.shape[1]
    if A.shape[1] != ncols:
        raise ValueError(f"rows have {A.shape[1]} entries, expected {ncols}")
    if ncols == 0:
        return EchelonBasis(0)
    if A.shape[0] == 0:
        return EchelonBasis.from_rows(np.eye(ncols, dtype=np.uint8), ncols)
    P = np.ascontiguousarray(pack_dense(A & 1, ncols))
    piv = _rref(P, ncols)
    R = unpack_dense(P[: len(piv)], ncols)
    is_piv = np.zeros(ncols, dtype=bool)
    is_piv[piv] = True
    free = np.flatnonzero(~is_piv)
    vecs = np.zeros((len(free), ncols), dtype=np.uint8)
    for t, f in enumerate(free):
        vecs[t, f] = 1
        # pivot variable of row r equals the free-column entry of that row
        vecs[t, piv] = R[:, f]
    return EchelonBasis.from_rows(vecs, ncols) if len(free) else EchelonBasis(ncols)


def rank_of(rows, ncols: int) -> int:
    rows = list(rows)
    if not rows:
        return 0
    P = np.ascontiguousarray(pack_dense(rows, ncols))
    return len(_rref(P, ncols))
