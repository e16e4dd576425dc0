"""Irreducible root systems over exact rational arithmetic.

Roots are integer coordinate vectors over the simple basis in Bourbaki
numbering.  Inner products come from the Gram matrix of the simple roots,
normalized so that long roots have squared length 2; everything downstream
is a Fraction, never a float.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    DimensionMismatchError,
    InvalidLieTypeError,
    RootArgumentError,
)

Q = Fraction

# family -> (min rank, max rank or None)
_RANK_RULES: dict[str, tuple[int, int | None]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_TYPE_RE = re.compile(r"^([A-Ga-g])\s*(\d+)$")


@dataclass(frozen=True)
class LieType:
    """A simple Lie type, e.g. LieType('A', 3)."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        fam = str(self.family).upper()
        object.__setattr__(self, "family", fam)
        if fam not in _RANK_RULES:
            raise InvalidLieTypeError(f"unknown family {self.family!r}")
        lo, hi = _RANK_RULES[fam]
        if not isinstance(self.rank, int) or self.rank < lo or (hi is not None and self.rank > hi):
            raise InvalidLieTypeError(f"rank {self.rank} out of bounds for family {fam}")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """Parse a combined label such as 'A3' or 'g2' (case-insensitive)."""
        m = _TYPE_RE.match(text.strip())
        if not m:
            raise InvalidLieTypeError(f"cannot parse Lie type from {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    """A root as its integer coefficient tuple over the simple basis."""

    coords: tuple[int, ...]

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coords))

    def scaled(self, k: int) -> "Root":
        return Root(tuple(k * a for a in self.coords))

    @property
    def height(self) -> int:
        return sum(self.coords)

    def is_positive(self) -> bool:
        return any(self.coords) and all(a >= 0 for a in self.coords)

    def support(self) -> frozenset[int]:
        """1-based indices of the nonzero coefficients."""
        return frozenset(i + 1 for i, a in enumerate(self.coords) if a)


def _sort_key(r: Root) -> tuple[int, tuple[int, ...]]:
    return (r.height, r.coords)


def _gram_matrix(t: LieType) -> tuple[tuple[Q, ...], ...]:
    """Gram matrix of the simple roots, long roots normalized to length^2 = 2."""
    n = t.rank
    diag = [Q(2)] * n
    off: dict[tuple[int, int], Q] = {}

    def edge(i: int, j: int, val: Q) -> None:
        off[(i, j)] = val
        off[(j, i)] = val

    fam = t.family
    if fam == "A":
        for i in range(n - 1):
            edge(i, i + 1, Q(-1))
    elif fam == "B":
        diag[n - 1] = Q(1)
        for i in range(n - 1):
            edge(i, i + 1, Q(-1))
    elif fam == "C":
        for i in range(n - 1):
            diag[i] = Q(1)
        for i in range(n - 2):
            edge(i, i + 1, Q(-1, 2))
        edge(n - 2, n - 1, Q(-1))
    elif fam == "D":
        for i in range(n - 2):
            edge(i, i + 1, Q(-1))
        edge(n - 3, n - 1, Q(-1))
    elif fam == "E":
        # Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 hangs off node 4.
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            edge(a, b, Q(-1))
        edge(1, 3, Q(-1))
    elif fam == "F":
        diag = [Q(2), Q(2), Q(1), Q(1)]
        edge(0, 1, Q(-1))
        edge(1, 2, Q(-1))
        edge(2, 3, Q(-1, 2))
    elif fam == "G":
        diag = [Q(2, 3), Q(2)]
        edge(0, 1, Q(-1))

    rows = []
    for i in range(n):
        rows.append(tuple(diag[i] if i == j else off.get((i, j), Q(0)) for j in range(n)))
    return tuple(rows)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """An irreducible root system; immutable after construction."""

    lie_type: LieType
    simple_roots: tuple[Root, ...]
    all_roots: tuple[Root, ...]
    gram: tuple[tuple[Q, ...], ...]

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.all_roots)

    @cached_property
    def index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.all_roots)}

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.all_roots if r.is_positive())

    def contains(self, r: Root) -> bool:
        return r in self.root_set

    def dynkin_edges(self) -> tuple[tuple[int, int], ...]:
        """1-based index pairs (i, j), i < j, of adjacent simple roots."""
        n = self.rank
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                if self.gram[i][j] != 0:
                    out.append((i + 1, j + 1))
        return tuple(out)


def inner_product(rs: RootSystem, a: Root, b: Root) -> Q:
    """Exact bilinear form on integer coefficient vectors."""
    n = rs.rank
    if len(a.coords) != n or len(b.coords) != n:
        raise DimensionMismatchError(
            f"expected vectors of length {n}, got {len(a.coords)} and {len(b.coords)}"
        )
    total = Q(0)
    for i, ai in enumerate(a.coords):
        if not ai:
            continue
        row = rs.gram[i]
        for j, bj in enumerate(b.coords):
            if bj:
                total += ai * bj * row[j]
    return total


def cartan_pairing(rs: RootSystem, b: Root, a: Root) -> int:
    """2(b,a)/(a,a); an integer whenever a is a root."""
    val = 2 * inner_product(rs, b, a) / inner_product(rs, a, a)
    if val.denominator != 1:
        raise RootArgumentError(f"pairing of {b} against {a} is not integral")
    return int(val)


@functools.lru_cache(maxsize=None)
def build_root_system(t: LieType) -> RootSystem:
    """Generate all roots from the Gram matrix by root-string closure.

    Positive roots are grown height by height: for each known root b and
    simple root a, the string count p (how far b - k*a stays a root) plus
    the pairing <b, a> decides whether b + a is a root.  Levels below the
    current height are always complete, so membership scans are sound.
    """
    gram = _gram_matrix(t)
    n = t.rank
    simple = tuple(Root(tuple(1 if j == i else 0 for j in range(n))) for i in range(n))
    shell = RootSystem(t, simple, simple, gram)  # enough for inner_product

    known: set[Root] = set(simple)
    level = list(simple)
    while level:
        grown: list[Root] = []
        for beta in level:
            for i, alpha in enumerate(simple):
                p = 0
                down = beta - alpha
                while down in known:
                    p += 1
                    down = down - alpha
                q = p - cartan_pairing(shell, beta, alpha)
                if q >= 1:
                    gamma = beta + alpha
                    if gamma not in known:
                        known.add(gamma)
                        grown.append(gamma)
        level = grown

    positives = sorted(known, key=_sort_key)
    everything = sorted([(-r) for r in positives] + positives, key=_sort_key)
    return RootSystem(t, simple, tuple(everything), gram)


def root_string(rs: RootSystem, a: Root, b: Root) -> tuple[int, int]:
    """(p, q) for the a-string through b: b - p*a, ..., b + q*a."""
    if a not in rs.root_set or b not in rs.root_set:
        raise RootArgumentError("root_string arguments must be roots")
    if b == a or b == -a:
        raise RootArgumentError("the string through b = +/-a is degenerate")
    p = 0
    cur = b - a
    while cur in rs.root_set:
        p += 1
        cur = cur - a
    q = 0
    cur = b + a
    while cur in rs.root_set:
        q += 1
        cur = cur + a
    if p - q != cartan_pairing(rs, b, a):
        raise RootArgumentError(f"broken string through {b} in direction {a}")
    return (p, q)


def simple_reflection(rs: RootSystem, i: int, b: Root) -> Root:
    """Image of root b under the reflection in the i-th simple root (1-based)."""
    if not 1 <= i <= rs.rank:
        raise RootArgumentError(f"simple root index {i} out of range 1..{rs.rank}")
    if b not in rs.root_set:
        raise RootArgumentError(f"{b} is not a root")
    alpha = rs.simple_roots[i - 1]
    image = b - alpha.scaled(cartan_pairing(rs, b, alpha))
    if image not in rs.root_set:
        raise RootArgumentError(f"reflection left the root system at {b}")
    return image
