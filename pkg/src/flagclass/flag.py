"""Painted Dynkin diagrams and the restricted-root combinatorics they induce.

A flag is a root system together with a subset Theta of white simple nodes;
the complementary black nodes index the coordinates that survive restriction
to the center of the isotropy subalgebra.  Restricted functionals (t-roots)
are handled as the coefficient tuples over the black nodes.
"""
from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    InvalidInputError,
    NotAFlagManifoldError,
    NotConnectedError,
    ProjectsToZeroError,
    RootArgumentError,
)
from .rootsys import Root, RootSystem


@dataclass(frozen=True)
class TRoot:
    """A restricted functional as its coefficient tuple over the black nodes."""

    coords: tuple[int, ...]

    def __neg__(self) -> "TRoot":
        return TRoot(tuple(-a for a in self.coords))

    def __add__(self, other: "TRoot") -> "TRoot":
        return TRoot(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def is_positive(self) -> bool:
        return any(self.coords) and all(a >= 0 for a in self.coords)


@dataclass(frozen=True)
class FlagSpec:
    """A flag manifold datum: root system plus white-node subset Theta."""

    rs: RootSystem
    theta: frozenset[int]
    r_theta: frozenset[Root]
    r_m: frozenset[Root]
    sigma_m: tuple[int, ...]

    def label(self) -> str:
        idx = ",".join(str(i) for i in sorted(self.theta))
        return f"{self.rs.lie_type} theta={idx}"

    def paint_label(self) -> str:
        return f"{self.rs.lie_type} : paint {','.join(str(i) for i in self.sigma_m)}"


def make_flag(rs: RootSystem, theta) -> FlagSpec:
    """Build the flag for white nodes `theta` (1-based simple root indices)."""
    theta_set = frozenset(int(i) for i in theta)
    if not theta_set <= frozenset(range(1, rs.rank + 1)):
        raise InvalidInputError(f"theta {sorted(theta_set)} not within 1..{rs.rank}")
    if len(theta_set) == rs.rank:
        raise NotAFlagManifoldError("theta covers every node; no flag manifold remains")
    r_theta = frozenset(r for r in rs.all_roots if r.support() <= theta_set)
    r_m = frozenset(rs.all_roots) - r_theta
    sigma_m = tuple(i for i in range(1, rs.rank + 1) if i not in theta_set)
    return FlagSpec(rs, theta_set, r_theta, r_m, sigma_m)


def t_projection(f: FlagSpec, a: Root) -> TRoot:
    """Restriction of a root to the black-node coordinates.

    Roots inside the painted subsystem restrict to zero and are refused:
    they do not define t-roots.
    """
    if a not in f.rs.root_set:
        raise RootArgumentError(f"{a} is not a root")
    if a in f.r_theta:
        raise ProjectsToZeroError(f"{a} lies in the painted subsystem")
    return TRoot(tuple(a.coords[i - 1] for i in f.sigma_m))


@dataclass(frozen=True, eq=False)
class TRootSystem:
    """The t-roots of a flag with their fibers in R_M."""

    flag: FlagSpec
    t_roots: frozenset[TRoot]
    positive: tuple[TRoot, ...]
    fibers: dict[TRoot, frozenset[Root]]
    summand_dims: dict[TRoot, int]

    @cached_property
    def pos_index(self) -> dict[TRoot, int]:
        return {t: i for i, t in enumerate(self.positive)}

    def classify(self, t: TRoot) -> tuple[int, int]:
        """(index into positive order, sign) for a t-root of either sign."""
        idx = self.pos_index.get(t)
        if idx is not None:
            return idx, 1
        idx = self.pos_index.get(-t)
        if idx is not None:
            return idx, -1
        raise RootArgumentError(f"{t} is not a t-root of this flag")

    def fiber(self, t: TRoot) -> frozenset[Root]:
        got = self.fibers.get(t)
        if got is None:
            raise RootArgumentError(f"{t} is not a t-root of this flag")
        return got


@functools.lru_cache(maxsize=None)
def build_t_roots(f: FlagSpec) -> TRootSystem:
    """Group R_M by restriction; fibers partition R_M and are negation-symmetric."""
    fibers: dict[TRoot, set[Root]] = defaultdict(set)
    for a in f.r_m:
        fibers[t_projection(f, a)].add(a)
    frozen = {t: frozenset(roots) for t, roots in fibers.items()}
    t_roots = frozenset(frozen)
    positive = tuple(sorted((t for t in t_roots if t.is_positive()), key=lambda t: t.coords))
    dims = {t: len(roots) for t, roots in frozen.items()}
    ts = TRootSystem(f, t_roots, positive, frozen, dims)
    assert sum(dims.values()) == len(f.r_m)
    assert len(positive) * 2 == len(t_roots)
    return ts


def complement_components(f: FlagSpec) -> tuple[tuple[int, ...], ...]:
    """Connected components of the black nodes in the Dynkin diagram.

    Components are sorted by their smallest node and returned as 1-based
    node tuples; callers refer to them by 1-based position in this listing.
    """
    edges = set(f.rs.dynkin_edges())
    adj: dict[int, set[int]] = {i: set() for i in f.sigma_m}
    for i, j in edges:
        if i in adj and j in adj:
            adj[i].add(j)
            adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for start in f.sigma_m:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            node = stack.pop()
            comp.append(node)
            for other in sorted(adj[node]):
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps))


def bridge_root(f: FlagSpec, d1: int, d2: int) -> Root:
    """A root joining two black components through painted nodes only.

    Walks the unique tree path between the closest pair of nodes of the two
    components; every interior node must be painted.  The running sum of
    simple roots along the path stays a root at each step, and the final sum
    restricts to the sum of the two endpoint t-roots.
    """
    comps = complement_components(f)
    if len(comps) < 2:
        raise NotConnectedError("the black part of the diagram has a single component")
    if d1 == d2 or not (1 <= d1 <= len(comps)) or not (1 <= d2 <= len(comps)):
        raise InvalidInputError(f"need two distinct component indices in 1..{len(comps)}")

    adj: dict[int, list[int]] = {i: [] for i in range(1, f.rs.rank + 1)}
    for i, j in f.rs.dynkin_edges():
        adj[i].append(j)
        adj[j].append(i)

    targets = set(comps[d2 - 1])
    best: list[int] | None = None
    for start in comps[d1 - 1]:
        # BFS allowing only painted interior nodes
        prev: dict[int, int | None] = {start: None}
        queue = [start]
        while queue:
            node = queue.pop(0)
            for other in sorted(adj[node]):
                if other in prev:
                    continue
                if other in targets:
                    prev[other] = node
                    path = [other]
                    while path[-1] is not None:
                        path.append(prev[path[-1]])
                    path = path[:-1][::-1]
                    if best is None or len(path) < len(best) or (len(path) == len(best) and path < best):
                        best = path
                    queue = []
                    break
                if other in f.theta:
                    prev[other] = node
                    queue.append(other)
    if best is None:
        raise NotConnectedError(
            f"no painted path joins components {d1} and {d2}"
        )
    total = f.rs.simple_roots[best[0] - 1]
    for node in best[1:]:
        total = total + f.rs.simple_roots[node - 1]
        assert total in f.rs.root_set, "path sum left the root system"
    assert total in f.r_m
    ends = t_projection(f, f.rs.simple_roots[best[0] - 1]) + t_projection(f, f.rs.simple_roots[best[-1] - 1])
    assert t_projection(f, total) == ends, "bridge restriction differs from endpoint sum"
    return total
