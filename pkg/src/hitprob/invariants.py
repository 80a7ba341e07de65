"""Symmetric and general linear group actions on QP_k and their fixed points.

Sigma_k is generated by the transpositions g_i = (x_i x_(i+1)), i < k, and
GL_k by those together with g_k: x1 -> x1 + x2. A class is invariant iff
g_i(f) + f is zero in the quotient for every generator, so the invariants
are the common kernel of the matrices M_i + I.

On a weight quotient the image of a monomial is first truncated to its
weight-w part (permutations keep the weight; g_k can only lower it), and
only then reduced modulo hits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .algebra import Monomial, Polynomial, RingMap, apply_map, map_monomial
from .gf2 import EchelonBasis, kernel_of, rank_of
from .solver import QuotientBasis
from .weights import weight_vector


@dataclass(frozen=True)
class GroupGenerator:
    index: int
    k: int
    ring_map: RingMap

    @property
    def is_transposition(self) -> bool:
        return self.index < self.k


def generator(i: int, k: int) -> GroupGenerator:
    if not 1 <= i <= k:
        raise ValueError(f"generator index {i} out of range 1..{k}")
    if i < k:
        targets = list(range(1, k + 1))
        targets[i - 1], targets[i] = targets[i], targets[i - 1]
        return GroupGenerator(i, k, RingMap.substitution(k, k, targets))
    if k == 1:
        # GL_1 is trivial
        return GroupGenerator(1, 1, RingMap.substitution(1, 1, [1]))
    images = [(0, 1)] + [(j,) for j in range(1, k)]
    return GroupGenerator(i, k, RingMap(k, k, images))


def group_generators(k: int, group: str) -> list[GroupGenerator]:
    g = group.lower()
    if g in ("sigma", "sym", "s"):
        return [generator(i, k) for i in range(1, k)]
    if g in ("gl", "general"):
        return [generator(i, k) for i in range(1, k + 1)]
    raise ValueError(f"unknown group {group!r}; use sigma or gl")


def induced_matrix(g: GroupGenerator, q: QuotientBasis) -> np.ndarray:
    """Square matrix whose column for admissible x is the class of g(x)."""
    if g.k != q.k:
        raise ValueError(f"generator acts on {g.k} variables, quotient has {q.k}")
    if not q.dim:
        return np.zeros((0, 0), np.uint8)
    images = [Polynomial._trusted(q.k, q.n, frozenset(map_monomial(g.ring_map, x))) for x in q.admissible]
    return np.ascontiguousarray(q.coordinates_many(images).T)


def invariants(q: QuotientBasis, group: str, within: EchelonBasis | np.ndarray | None = None) -> EchelonBasis:
    """Fixed vectors of the group in coordinates on q.admissible.

    ``within`` restricts to an invariant subspace given by an echelon basis or
    by rows of a matrix whose kernel it is (e.g. the Kameko map).
    """
    dim = q.dim
    blocks = []
    for g in group_generators(q.k, group):
        blocks.append(induced_matrix(g, q) ^ np.eye(dim, dtype=np.uint8))
    if within is not None:
        if isinstance(within, EchelonBasis):
            # v lies in the span iff it is orthogonal to the annihilator
            ann = kernel_of(within.dense_rows(), dim) if within.rank else None
            if ann is None:
                blocks.append(np.eye(dim, dtype=np.uint8))
            elif ann.rank:
                blocks.append(ann.dense_rows())
        else:
            blocks.append(np.asarray(within, dtype=np.uint8).reshape(-1, dim))
    A = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, dim), np.uint8)
    return kernel_of(A, dim)


def is_invariant_class(f: Polynomial, q: QuotientBasis, group: str) -> bool:
    """True iff g(f) + f vanishes in q for every generator of the group."""
    if not f.is_zero() and (f.degree != q.n or f.k != q.k):
        raise ValueError("polynomial does not live in this quotient")
    base = q.coordinates(f)
    for g in group_generators(q.k, group):
        if (q.coordinates(apply_map(g.ring_map, f)) ^ base).any():
            return False
    return True


def sigma_orbit(z: Sequence[int]) -> list[Monomial]:
    """Distinct monomials obtained by permuting the exponents of z."""
    return sorted({Monomial(p) for p in permutations(tuple(z))})


def orbit_sum(z: Sequence[int], q: QuotientBasis) -> Polynomial:
    """Sum of the admissible monomials of q lying in the Sigma_k-orbit of z."""
    z = Monomial(z)
    adm = q.monomial_set()
    if z not in adm:
        raise ValueError(f"{z} is not an admissible monomial of this quotient")
    return Polynomial(q.k, q.n, [y for y in sigma_orbit(z) if y in adm])


def submodule_sum(z: Sequence[int], q: QuotientBasis) -> Polynomial:
    """Sum of the admissible monomials whose classes lie in the Sigma_k-span of [z].

    This can be larger than ``orbit_sum``: reducing a permutation of z may
    produce admissible monomials with a different exponent multiset.
    """
    span = orbit_span([z], q)
    eye = np.eye(q.dim, dtype=np.uint8)
    return Polynomial(q.k, q.n, [m for i, m in enumerate(q.admissible) if span.contains(eye[i])])


def orbit_span(zs: Sequence[Sequence[int]], q: QuotientBasis) -> EchelonBasis:
    """Span of the classes of all permutations of the given monomials."""
    mons = sorted({y for z in zs for y in sigma_orbit(z)})
    if q.weight is not None:
        mons = [y for y in mons if weight_vector(y) == q.weight]
    C = q.coordinates_many([Polynomial(q.k, q.n, [y]) for y in mons])
    nz = C[C.any(axis=1)]
    return EchelonBasis.from_rows(nz, q.dim) if len(nz) else EchelonBasis(q.dim)


def span_dim(vectors, dim: int) -> int:
    return rank_of(vectors, dim)
