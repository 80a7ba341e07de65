"""Golden monomial lists and polynomials shipped with the package.

Each file fixtures/<id>.txt holds "# key: value" header lines followed by one
monomial per line in text form, optionally prefixed by "label: ". A list of
monomials is read either as a set or as the polynomial equal to their sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import Monomial, Polynomial, monomial_text, parse_monomial


class FixtureError(Exception):
    """Missing or malformed fixture file."""


@dataclass
class FixtureSet:
    identifier: str
    k: int
    degree: int
    monomials: list[Monomial]
    labels: list[str | None] = field(default_factory=list)
    description: str = ""

    @property
    def size(self) -> int:
        return len(self.monomials)

    def as_set(self) -> set[Monomial]:
        return set(self.monomials)

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.k, self.degree, self.monomials)

    def named(self) -> dict[str, Monomial]:
        return {lab: m for lab, m in zip(self.labels, self.monomials) if lab}

    def to_text(self) -> str:
        lines = [f"# k: {self.k}", f"# degree: {self.degree}", f"# size: {self.size}"]
        if self.description:
            lines.append(f"# description: {self.description}")
        for lab, m in zip(self.labels, self.monomials):
            lines.append(f"{lab}: {monomial_text(m)}" if lab else monomial_text(m))
        return "\n".join(lines) + "\n"


def parse_fixture(text: str, identifier: str = "?") -> FixtureSet:
    header: dict[str, str] = {}
    body: list[tuple[str | None, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            header[key.strip()] = val.strip()
            continue
        label = None
        if ":" in line:
            label, _, line = line.partition(":")
            label = label.strip()
        body.append((label, line.strip()))
    try:
        k = int(header["k"])
        n = int(header["degree"])
    except (KeyError, ValueError) as e:
        raise FixtureError(f"{identifier}: header needs integer k and degree") from e
    try:
        mons = [parse_monomial(t, k) for _, t in body]
    except (ValueError, OverflowError) as e:
        raise FixtureError(f"{identifier}: {e}") from e
    for m in mons:
        if m.degree != n:
            raise FixtureError(f"{identifier}: {m} has degree {m.degree}, expected {n}")
    if "size" in header and int(header["size"]) != len(mons):
        raise FixtureError(f"{identifier}: declared size {header['size']}, found {len(mons)}")
    return FixtureSet(identifier, k, n, mons, [lab for lab, _ in body], header.get("description", ""))


def fixture_dir() -> Path:
    return Path(str(resources.files(__package__) / "fixtures"))


def available() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.txt"))


def load(identifier: str, directory: Path | None = None) -> FixtureSet:
    d = directory or fixture_dir()
    path = Path(d) / f"{identifier}.txt"
    if not path.exists():
        raise FixtureError(f"fixture {identifier!r} not found in {d}")
    return parse_fixture(path.read_text(), identifier)
