"""Weyl group elements and their action on invariant structures.

An element is stored as the permutation it induces on the canonical root
list, which makes composition a table lookup and equality a tuple
comparison.  The group is generated by the simple reflections under a
breadth-first sweep, so element order is deterministic: by word length,
then lexicographically by permutation.

For a painted diagram, the elements fixing the painted subsystem setwise
also permute the fibers of the t-projection, hence act on sign vectors
and metrics by relabeling the positive classes.  Both facts are checked
at the point of use rather than assumed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CapExceededError,
    DimensionMismatchError,
    InvalidInputError,
    InvariantViolationError,
    NotInSubgroupError,
)
from .flag import FlagSpec, build_t_roots, t_projection
from .rootsys import LieType, Root, RootSystem, inner_product, simple_reflection
from .structures import IACS, InvariantMetric

WEYL_CAP = 10**6

_EXCEPTIONAL_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600}


def weyl_order(t: LieType) -> int:
    """Order of the Weyl group, from the classical closed forms."""
    n = t.rank
    if t.family == "A":
        return math.factorial(n + 1)
    if t.family in ("B", "C"):
        return 2**n * math.factorial(n)
    if t.family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if t.family == "F":
        return 1152
    if t.family == "G":
        return 12
    return _EXCEPTIONAL_ORDERS[f"E{n}"]


@dataclass(frozen=True)
class WeylElement:
    """A group element as a permutation of the canonical root list.

    perm[i] is the position of the image of the i-th root, so applying
    an element never leaves the root system by construction.  Linearity
    and inner-product invariance are inherited from the generating
    reflections; preserves_inner_products re-derives the latter from
    scratch when a test wants the claim checked rather than trusted.
    """

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise InvalidInputError("perm is not a permutation of the root indices")

    def apply(self, rs: RootSystem, b: Root) -> Root:
        idx = rs.index.get(b)
        if idx is None:
            raise InvalidInputError(f"{b} is not a root of this system")
        if len(self.perm) != len(rs.all_roots):
            raise DimensionMismatchError(
                f"element acts on {len(self.perm)} roots, system has {len(rs.all_roots)}"
            )
        return rs.all_roots[self.perm[idx]]

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other."""
        if len(self.perm) != len(other.perm):
            raise DimensionMismatchError("cannot compose elements of different systems")
        return WeylElement(tuple(self.perm[j] for j in other.perm))

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def preserves_inner_products(self, rs: RootSystem) -> bool:
        roots = rs.all_roots
        images = [roots[p] for p in self.perm]
        for i, a in enumerate(roots):
            for j in range(i, len(roots)):
                if inner_product(rs, a, roots[j]) != inner_product(rs, images[i], images[j]):
                    return False
        return True


@dataclass(frozen=True, eq=False)
class WeylGroup:
    rs: RootSystem
    elements: tuple[WeylElement, ...]
    generators: tuple[WeylElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]


def generate_weyl(rs: RootSystem, cap: int = WEYL_CAP) -> WeylGroup:
    """Generate the full group from the simple reflections.

    The projected order is known in closed form per type, so the cap is
    enforced before any element is built, and the final count is checked
    against the same formula afterwards.
    """
    projected = weyl_order(rs.lie_type)
    if projected > cap:
        raise CapExceededError(
            f"Weyl group of {rs.lie_type} has order {projected}, over the cap of {cap}"
        )
    generators = tuple(
        WeylElement(tuple(rs.index[simple_reflection(rs, i, b)] for b in rs.all_roots))
        for i in range(1, rs.rank + 1)
    )
    identity = WeylElement(tuple(range(len(rs.all_roots))))
    seen = {identity.perm}
    elements = [identity]
    frontier = [identity]
    while frontier:
        discovered = set()
        for w in frontier:
            for s in generators:
                img = w.compose(s).perm
                if img not in seen:
                    seen.add(img)
                    discovered.add(img)
        frontier = [WeylElement(p) for p in sorted(discovered)]
        elements.extend(frontier)
    if len(elements) != projected:
        raise InvariantViolationError(
            f"generated {len(elements)} elements of {rs.lie_type}, closed form says {projected}"
        )
    return WeylGroup(rs, tuple(elements), generators)


def _stabilizes(w: WeylElement, indices: frozenset[int]) -> bool:
    return all(w.perm[i] in indices for i in indices)


def a_theta(w: WeylGroup, f: FlagSpec) -> tuple[WeylElement, ...]:
    """Elements fixing the painted subsystem setwise, in group order.

    Fixing R_Theta setwise and mapping R_M into itself are equivalent for
    a bijection of R, and every element is checked both ways rather than
    relying on the complement argument.
    """
    if w.rs is not f.rs:
        raise InvalidInputError("group and flag were built from different root systems")
    theta_idx = frozenset(f.rs.index[r] for r in f.r_theta)
    m_idx = frozenset(f.rs.index[r] for r in f.r_m)
    kept = []
    for elem in w.elements:
        fixes_theta = _stabilizes(elem, theta_idx)
        fixes_m = _stabilizes(elem, m_idx)
        if fixes_theta != fixes_m:
            raise InvariantViolationError(
                f"element fixes R_Theta={fixes_theta} but maps R_M into R_M={fixes_m}"
            )
        if fixes_theta:
            kept.append(elem)
    return tuple(kept)


def act_on_structure(
    omega: WeylElement, f: FlagSpec, j: IACS, g: InvariantMetric
) -> tuple[IACS, InvariantMetric]:
    """Pull back a sign vector and metric along an element of A_Theta.

    The new value at the class of beta is the old value at the class of
    omega(beta).  That is well defined only if omega permutes the fibers,
    which is re-derived here for every class instead of assumed: all roots
    of one fiber must land in a single class.
    """
    ts = build_t_roots(f)
    theta_idx = frozenset(f.rs.index[r] for r in f.r_theta)
    if len(omega.perm) != len(f.rs.all_roots):
        raise DimensionMismatchError("element and flag live on different root systems")
    if not _stabilizes(omega, theta_idx):
        raise NotInSubgroupError("element does not fix the painted subsystem")
    if len(j.signs) != len(ts.positive) or len(g.lambdas) != len(ts.positive):
        raise DimensionMismatchError(
            f"flag has {len(ts.positive)} positive classes, "
            f"got {len(j.signs)} signs and {len(g.lambdas)} metric entries"
        )
    new_signs = []
    new_lams = []
    for t in ts.positive:
        targets = {
            ts.classify(t_projection(f, omega.apply(f.rs, b))) for b in ts.fiber(t)
        }
        if len(targets) != 1:
            raise InvariantViolationError(
                f"fiber of {t} lands in {len(targets)} classes under the action"
            )
        ((idx, sgn),) = targets
        new_signs.append(sgn * j.signs[idx])
        new_lams.append(g.lambdas[idx])
    return IACS(tuple(new_signs)), InvariantMetric(tuple(new_lams))


def orbits(
    w_sub: tuple[WeylElement, ...], f: FlagSpec, structures
) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of (sign vector, metric) pairs under a subgroup.

    Returns index tuples into the input sequence, each sorted ascending,
    ordered by representative; the representative of an orbit is its
    minimal index.  The input must be closed under the action.
    """
    pairs = list(structures)
    index_of = {}
    for i, (j, g) in enumerate(pairs):
        key = (j.signs, g.lambdas)
        if key in index_of:
            raise InvalidInputError(f"structures {index_of[key]} and {i} are duplicates")
        index_of[key] = i
    out = []
    visited = set()
    for i, (j, g) in enumerate(pairs):
        if i in visited:
            continue
        orbit = set()
        for elem in w_sub:
            jj, gg = act_on_structure(elem, f, j, g)
            hit = index_of.get((jj.signs, gg.lambdas))
            if hit is None:
                raise InvalidInputError(
                    f"image of structure {i} is missing: input is not closed under the action"
                )
            orbit.add(hit)
        visited |= orbit
        out.append(tuple(sorted(orbit)))
    return tuple(out)
