"""Exact arithmetic in F2[x1, ..., xk].

Monomials are exponent tuples, polynomials are sets of monomials of one
degree (addition is symmetric difference).  Ring maps are linear
substitutions of the variables; everything here is immutable.
"""

from __future__ import annotations

import re
from itertools import product
from typing import Iterable, Iterator, Sequence

from .weights import order_key

MAX_EXPONENT = 0xFFFF


def binom_mod2(a: int, b: int) -> int:
    """C(a, b) mod 2, by Lucas: 1 iff the bits of b are a subset of those of a."""
    if a < 0 or b < 0:
        raise ValueError("binom_mod2 takes non-negative integers")
    return int(b <= a and (a & b) == b)


class Monomial(tuple):
    """Exponent vector (a1, ..., ak); the monomial x1^a1 ... xk^ak."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]) -> "Monomial":
        self = tuple.__new__(cls, (int(a) for a in exponents))
        if not self:
            raise ValueError("a monomial needs at least one variable")
        for a in self:
            if a < 0:
                raise ValueError(f"negative exponent in {tuple(self)}")
            if a > MAX_EXPONENT:
                raise OverflowError(f"exponent {a} does not fit in 16 bits")
        return self

    @classmethod
    def one(cls, k: int) -> "Monomial":
        return cls((0,) * k)

    @classmethod
    def variable(cls, i: int, k: int) -> "Monomial":
        """x_i (1-indexed) in k variables."""
        if not 1 <= i <= k:
            raise IndexError(f"variable x{i} out of range for k={k}")
        return cls(1 if j == i - 1 else 0 for j in range(k))

    @property
    def k(self) -> int:
        return len(self)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def times(self, other: "Monomial") -> "Monomial":
        if len(other) != len(self):
            raise ValueError("variable count mismatch")
        return Monomial(a + b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Monomial({monomial_text(self)!r})"

    def __str__(self) -> str:
        return monomial_text(self)


class Polynomial:
    """Homogeneous polynomial over F2: a set of monomials of one degree."""

    __slots__ = ("k", "degree", "terms")

    def __init__(self, k: int, degree: int, terms: Iterable[Sequence[int]] = ()):
        if k < 1:
            raise ValueError("k must be at least 1")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        acc: set[Monomial] = set()
        for t in terms:
            m = t if isinstance(t, Monomial) else Monomial(t)
            if len(m) != k:
                raise ValueError(f"term {tuple(m)} has {len(m)} variables, expected {k}")
            if m.degree != degree:
                raise ValueError(f"term {monomial_text(m)} has degree {m.degree}, expected {degree}")
            acc ^= {m}
        self.k = k
        self.degree = degree
        self.terms = frozenset(acc)

    @classmethod
    def zero(cls, k: int, degree: int = 0) -> "Polynomial":
        return cls(k, degree)

    @classmethod
    def from_monomial(cls, m: Sequence[int]) -> "Polynomial":
        m = m if isinstance(m, Monomial) else Monomial(m)
        return cls(len(m), m.degree, (m,))

    @classmethod
    def _trusted(cls, k: int, degree: int, terms: frozenset) -> "Polynomial":
        p = object.__new__(cls)
        p.k, p.degree, p.terms = k, degree, terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[Monomial]:
        """Terms in ascending admissible order."""
        return sorted(self.terms, key=order_key)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, m) -> bool:
        return m in self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.k != other.k:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, self.degree if self.terms else 0, self.terms))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_mul(self, other)

    def __repr__(self) -> str:
        return f"Polynomial(k={self.k}, degree={self.degree}, {poly_text(self)!r})"

    def __str__(self) -> str:
        return poly_text(self)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.k != g.k:
        raise ValueError(f"variable count mismatch: {f.k} vs {g.k}")
    if not f.terms:
        return g
    if not g.terms:
        return f
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    return Polynomial._trusted(f.k, f.degree, f.terms ^ g.terms)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.k != g.k:
        raise ValueError(f"variable count mismatch: {f.k} vs {g.k}")
    acc: set[Monomial] = set()
    for a in f.terms:
        for b in g.terms:
            acc ^= {Monomial(x + y for x, y in zip(a, b))}
    return Polynomial._trusted(f.k, f.degree + g.degree, frozenset(acc))


def poly_sum(k: int, degree: int, polys: Iterable[Polynomial]) -> Polynomial:
    acc: set[Monomial] = set()
    for p in polys:
        if p.k != k:
            raise ValueError("variable count mismatch")
        if p.terms and p.degree != degree:
            raise ValueError("degree mismatch")
        acc ^= p.terms
    return Polynomial._trusted(k, degree, frozenset(acc))


def monomials_of_degree(k: int, n: int) -> Iterator[Monomial]:
    """All monomials of degree n in k variables, first exponent largest first."""
    if k == 1:
        yield Monomial((n,))
        return
    for a in range(n, -1, -1):
        for rest in monomials_of_degree(k - 1, n - a):
            yield Monomial((a,) + tuple(rest))


# -- ring maps ---------------------------------------------------------------


class RingMap:
    """Algebra map F2[x1..x_kin] -> F2[x1..x_kout] sending x_j to a sum of variables.

    ``images[j]`` is the tuple of 0-indexed target variables whose sum is the
    image of x_{j+1}.
    """

    __slots__ = ("k_in", "k_out", "images")

    def __init__(self, k_in: int, k_out: int, images: Sequence[Iterable[int] | Polynomial]):
        if len(images) != k_in:
            raise ValueError(f"need {k_in} images, got {len(images)}")
        imgs = []
        for img in images:
            if isinstance(img, Polynomial):
                if img.k != k_out or img.degree != 1:
                    raise ValueError("images must be degree-1 polynomials in k_out variables")
                vs = tuple(sorted(m.index(1) for m in img.terms))
            else:
                vs = tuple(sorted(set(img)))
            if not vs or vs[0] < 0 or vs[-1] >= k_out:
                raise ValueError(f"bad image {vs} for k_out={k_out}")
            imgs.append(vs)
        self.k_in = k_in
        self.k_out = k_out
        self.images = tuple(imgs)

    @classmethod
    def substitution(cls, k_in: int, k_out: int, targets: Sequence[int]) -> "RingMap":
        """x_j -> x_{targets[j-1]} with 1-indexed targets."""
        return cls(k_in, k_out, [(t - 1,) for t in targets])

    def image_polynomials(self) -> list[Polynomial]:
        return [
            Polynomial(self.k_out, 1, [Monomial.variable(v + 1, self.k_out) for v in vs])
            for vs in self.images
        ]

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_map(self, f)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingMap) and (self.k_in, self.k_out, self.images) == (
            other.k_in, other.k_out, other.images)

    def __hash__(self) -> int:
        return hash((self.k_in, self.k_out, self.images))

    def __repr__(self) -> str:
        body = ", ".join("+".join(f"x{v + 1}" for v in vs) for vs in self.images)
        return f"RingMap({self.k_in}->{self.k_out}: {body})"


def _power_of_sum(vars_: tuple[int, ...], a: int) -> list[dict[int, int]]:
    # (x_v1 + ... + x_vr)^a over F2: each bit of a goes to exactly one variable
    if a == 0:
        return [{}]
    if len(vars_) == 1:
        return [{vars_[0]: a}]
    bits = [1 << t for t in range(a.bit_length()) if a >> t & 1]
    out = []
    for choice in product(vars_, repeat=len(bits)):
        d: dict[int, int] = {}
        for v, b in zip(choice, bits):
            d[v] = d.get(v, 0) + b
        out.append(d)
    return out


def map_monomial(m: RingMap, x: Sequence[int]) -> set[Monomial]:
    """Terms of m(x) after cancellation mod 2."""
    if len(x) != m.k_in:
        raise ValueError(f"monomial has {len(x)} variables, map expects {m.k_in}")
    partial: dict[tuple[int, ...], int] = {(0,) * m.k_out: 1}
    for vs, a in zip(m.images, x):
        if a == 0:
            continue
        expansions = _power_of_sum(vs, a)
        nxt: dict[tuple[int, ...], int] = {}
        for base in partial:
            for d in expansions:
                e = list(base)
                for v, b in d.items():
                    e[v] += b
                t = tuple(e)
                nxt[t] = nxt.get(t, 0) ^ 1
        partial = {t: 1 for t, c in nxt.items() if c}
    return {Monomial(t) for t in partial}


def apply_map(m: RingMap, f: Polynomial) -> Polynomial:
    if f.k != m.k_in:
        raise ValueError(f"polynomial has k={f.k}, map expects k={m.k_in}")
    acc: set[Monomial] = set()
    for x in f.terms:
        acc ^= map_monomial(m, x)
    return Polynomial._trusted(m.k_out, f.degree, frozenset(acc))


def compose(outer: RingMap, inner: RingMap) -> RingMap:
    """outer after inner, valid when the result is still a sum of distinct variables."""
    if inner.k_out != outer.k_in:
        raise ValueError("maps do not compose")
    imgs = []
    for vs in inner.images:
        acc: set[int] = set()
        for v in vs:
            acc ^= set(outer.images[v])
        imgs.append(tuple(sorted(acc)))
    return RingMap(inner.k_in, outer.k_out, imgs)


# -- text and JSON forms -----------------------------------------------------


def monomial_text(x: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(x, start=1):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return " ".join(parts) if parts else "1"


def poly_text(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    return " + ".join(monomial_text(t) for t in f.sorted_terms())


_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")
_LATEX_NOISE = re.compile(r"[\s_{}$]")


def parse_monomial(text: str, k: int) -> Monomial:
    """Parse "x1^7 x2 x3" (LaTeX-style "x_1^{7}x_2x_3" is accepted too)."""
    s = _LATEX_NOISE.sub("", text)
    if s == "1":
        return Monomial.one(k)
    exps = [0] * k
    pos = 0
    for mt in _FACTOR.finditer(s):
        if mt.start() != pos:
            raise ValueError(f"cannot parse monomial {text!r}")
        i = int(mt.group(1))
        if not 1 <= i <= k:
            raise ValueError(f"variable x{i} out of range for k={k}")
        exps[i - 1] += int(mt.group(2) or 1)
        pos = mt.end()
    if pos != len(s) or pos == 0:
        raise ValueError(f"cannot parse monomial {text!r}")
    return Monomial(exps)


def parse_polynomial(text: str, k: int, degree: int | None = None) -> Polynomial:
    s = text.strip()
    if s in ("", "0"):
        return Polynomial.zero(k, degree or 0)
    terms = [parse_monomial(t, k) for t in s.split("+")]
    n = terms[0].degree if degree is None else degree
    return Polynomial(k, n, terms)


def monomial_to_json(x: Sequence[int]) -> dict:
    return {"exponents": list(x)}


def monomial_from_json(obj: dict) -> Monomial:
    return Monomial(obj["exponents"])


def poly_to_json(f: Polynomial) -> dict:
    return {"k": f.k, "degree": f.degree, "terms": [monomial_to_json(t) for t in f.sorted_terms()]}


def poly_from_json(obj: dict) -> Polynomial:
    return Polynomial(obj["k"], obj["degree"], [monomial_from_json(t) for t in obj["terms"]])
