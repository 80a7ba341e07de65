"""Kameko's squaring map on quotients and its section.

phi(x1 x2 ... xk y^2) = y, and phi(x) = 0 when some exponent of x is even.
phi commutes with squares up to halving (phi Sq^(2i) = Sq^i phi and
phi Sq^(2i+1) = 0), so it induces a map (QP_k)_(2d+k) -> (QP_k)_d. Here it is
a matrix on admissible coordinates; psi(y) = x1...xk y^2 gives a section.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Monomial, Polynomial
from .gf2 import EchelonBasis, kernel_of, rank_of
from .solver import QuotientBasis, admissible_basis
from .weights import mu, t_kd


def phi(x: Sequence[int]) -> Monomial | None:
    """(a - 1) / 2 exponentwise when every exponent is odd, else None (zero)."""
    if all(a & 1 for a in x):
        return Monomial([(a - 1) >> 1 for a in x])
    return None


def psi(x: Sequence[int]) -> Monomial:
    return Monomial([2 * a + 1 for a in x])


def phi_poly(f: Polynomial) -> Polynomial:
    if (f.degree - f.k) % 2 and not f.is_zero():
        return Polynomial.zero(f.k, 0)
    d = (f.degree - f.k) // 2 if f.degree >= f.k else 0
    terms = [y for y in (phi(x) for x in f.terms) if y is not None]
    return Polynomial(f.k, d, terms)


def psi_poly(f: Polynomial) -> Polynomial:
    return Polynomial(f.k, 2 * f.degree + f.k, [psi(x) for x in f.terms])


class KamekoMap:
    """The down map (QP_k)_(2d+k) -> (QP_k)_d on admissible coordinates.

    ``matrix`` has one column per upper admissible monomial; ``section`` has
    one column per lower admissible monomial (the class of psi of it).
    """

    def __init__(self, k: int, d: int, upper: QuotientBasis, lower: QuotientBasis,
                 matrix: np.ndarray, section: np.ndarray):
        self.k = k
        self.d = d
        self.upper = upper
        self.lower = lower
        self.matrix = matrix
        self.section = section

    @property
    def rank(self) -> int:
        return rank_of(self.matrix, self.upper.dim) if self.matrix.size else 0

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.lower.dim

    @property
    def is_bijective(self) -> bool:
        return self.is_surjective and self.upper.dim == self.lower.dim

    def kernel(self) -> EchelonBasis:
        if not self.lower.dim:
            return kernel_of(np.zeros((0, self.upper.dim), np.uint8), self.upper.dim)
        return kernel_of(self.matrix, self.upper.dim)

    @property
    def kernel_dim(self) -> int:
        return self.upper.dim - self.rank

    def composite(self) -> np.ndarray:
        """down . section over F2; the identity when psi splits the map."""
        return (self.matrix.astype(np.int64) @ self.section.astype(np.int64) % 2).astype(np.uint8)

    def apply(self, coords: np.ndarray) -> np.ndarray:
        return (self.matrix.astype(np.int64) @ np.asarray(coords, np.int64) % 2).astype(np.uint8)


def kameko_down(k: int, d: int, jobs: int = 1) -> KamekoMap:
    if d < 0:
        raise ValueError("d must be >= 0")
    n = 2 * d + k
    upper = admissible_basis(k, n, jobs=jobs)
    lower = admissible_basis(k, d, jobs=jobs)
    if mu(n) > k or not upper.dim:
        # nothing to map: the upper slice is zero
        return KamekoMap(k, d, upper, lower, np.zeros((lower.dim, upper.dim), np.uint8),
                         np.zeros((upper.dim, lower.dim), np.uint8))
    images = []
    for x in upper.admissible:
        y = phi(x)
        images.append(Polynomial(k, d, [y] if y is not None else []))
    matrix = lower.coordinates_many(images).T.copy() if lower.dim else np.zeros((0, upper.dim), np.uint8)
    sec = upper.coordinates_many([Polynomial(k, n, [psi(y)]) for y in lower.admissible])
    section = sec.T.copy() if lower.dim else np.zeros((upper.dim, 0), np.uint8)
    return KamekoMap(k, d, upper, lower, np.ascontiguousarray(matrix), np.ascontiguousarray(section))


def kameko_down_for_degree(k: int, n: int, jobs: int = 1) -> KamekoMap:
    """Same map addressed by the upper degree n = 2d + k."""
    if n < k or (n - k) % 2:
        raise ValueError(f"degree {n} is not of the form 2d + {k}")
    return kameko_down(k, (n - k) // 2, jobs)


@dataclass(frozen=True)
class StabilityReport:
    k: int
    d: int
    mu_upper: int
    iso_forced: bool
    t: int

    def to_json(self) -> dict:
        return {"k": self.k, "d": self.d, "mu": self.mu_upper,
                "iso_forced": self.iso_forced, "t": self.t}


def stability_report(k: int, d: int) -> StabilityReport:
    """mu(2d+k), whether mu(2d+k) = k forces an isomorphism, and t(k, d)."""
    m = mu(2 * d + k)
    return StabilityReport(k, d, m, m == k, t_kd(k, d))
