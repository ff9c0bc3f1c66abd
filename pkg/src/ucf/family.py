"""Bitmask set families: universes, union-closure, chain length, splits.

Sets over element labels 1..63 are stored as integer bitmasks (element e
occupies bit e-1), so subset tests, unions, and differences are single
bitwise operations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable

MAX_ELEMENT = 63
MAX_LAYER_UNIVERSE = 24  # cap for constructors that materialize binomial layers

Mask = int


class NotUnionClosedError(ValueError):
    """A family required to be union-closed is not; carries the violating pair."""

    def __init__(self, a: Mask, b: Mask):
        self.pair = (a, b)
        super().__init__(
            f"family is not union-closed: {set_label(a)} ∪ {set_label(b)} "
            f"= {set_label(a | b)} is missing"
        )


def mask_from_elements(elements: Iterable[int]) -> Mask:
    """Build a bitmask from 1-based element labels."""
    mask = 0
    for e in elements:
        if not 1 <= e <= MAX_ELEMENT:
            raise ValueError(f"element {e} outside the supported range 1..{MAX_ELEMENT}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: Mask) -> tuple[int, ...]:
    """1-based element labels present in a bitmask, ascending."""
    return tuple(e for e in range(1, mask.bit_length() + 1) if mask >> (e - 1) & 1)


def set_label(mask: Mask) -> str:
    """Render a bitmask in .ucf set syntax ("-" for the empty set)."""
    if mask == 0:
        return "-"
    return " ".join(str(e) for e in elements_of(mask))


def _checked_mask(mask: Mask) -> Mask:
    if not 0 <= mask < (1 << MAX_ELEMENT):
        raise ValueError(f"mask {mask} outside the supported 63-element universe")
    return mask


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of bitmask sets, ascending by mask value.

    Top-level families must contain at least one nonempty set. Families
    produced by splits and decompositions may be empty or consist of the
    empty set alone; those carry ``derived=True``, which relaxes the
    construction invariants but does not affect equality or hashing.
    """

    members: tuple[Mask, ...]
    universe: Mask
    derived: bool = field(default=False, compare=False)

    @classmethod
    def from_masks(cls, masks: Iterable[Mask], *, derived: bool = False) -> "SetFamily":
        members = tuple(sorted({_checked_mask(m) for m in masks}))
        if not derived:
            if not members:
                raise ValueError("a family must contain at least one set")
            if members[-1] == 0:
                raise ValueError("a family must contain at least one nonempty set")
        uni = 0
        for m in members:
            uni |= m
        return cls(members, uni, derived)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], *, derived: bool = False) -> "SetFamily":
        return cls.from_masks((mask_from_elements(s) for s in sets), derived=derived)

    @property
    def n(self) -> int:
        """Universe size: popcount of the universe mask."""
        return self.universe.bit_count()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self.members


@dataclass(frozen=True)
class Chain:
    """A strictly decreasing (by proper inclusion) sequence of sets."""

    sets: tuple[Mask, ...]

    def __post_init__(self):
        if not self.sets:
            raise ValueError("a chain must contain at least one set")
        for big, small in zip(self.sets, self.sets[1:]):
            if small == big or small & big != small:
                raise ValueError(
                    f"chain is not strictly decreasing: {set_label(big)} then {set_label(small)}"
                )

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def universe(family: SetFamily) -> Mask:
    """Union of all members (cached on the family at construction)."""
    return family.universe


@functools.lru_cache(maxsize=1024)
def union_violation(family: SetFamily) -> tuple[Mask, Mask] | None:
    """First pair of members (ascending order) whose union is missing, or None."""
    members = family.members
    present = set(members)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a | b not in present:
                return (a, b)
    return None


def is_union_closed(family: SetFamily) -> bool:
    return union_violation(family) is None


def require_union_closed(family: SetFamily) -> None:
    pair = union_violation(family)
    if pair is not None:
        raise NotUnionClosedError(*pair)


def union_closure(generators: SetFamily) -> SetFamily:
    """Smallest union-closed superfamily of the generators.

    Fixpoint iteration: union every new mask against the accumulated set
    until nothing new appears. Worst case O(result^2) unions, fine at the
    supported universe sizes.
    """
    closed = set(generators.members)
    frontier = list(closed)
    while frontier:
        fresh: set[Mask] = set()
        for a in frontier:
            for b in closed:
                u = a | b
                if u not in closed:
                    fresh.add(u)
        closed |= fresh
        frontier = list(fresh)
    return SetFamily.from_masks(closed, derived=generators.derived)


@functools.lru_cache(maxsize=1024)
def _down_depths(family: SetFamily) -> tuple[tuple[Mask, int], ...]:
    """(member, longest chain size starting at member going down) pairs.

    Members are processed in ascending popcount order so every proper
    subset is finished before its supersets; the strict-containment DAG
    is therefore traversed acyclically.
    """
    order = sorted(family.members, key=lambda m: (m.bit_count(), m))
    depth: dict[Mask, int] = {}
    for idx, m in enumerate(order):
        best = 0
        for s in order[:idx]:
            if s != m and s & m == s and depth[s] > best:
                best = depth[s]
        depth[m] = best + 1
    return tuple(depth.items())


def length(family: SetFamily) -> int:
    """One less than the maximum chain size among the members."""
    if not family.members:
        raise ValueError("length is undefined for an empty family")
    return max(d for _, d in _down_depths(family)) - 1


def split_on_element(
    family: SetFamily, x: int
) -> tuple[SetFamily, SetFamily, SetFamily]:
    """Split a family on element x.

    Returns (members containing x, those members with x removed, members
    avoiding x). The last two are derived families: the middle one may be
    {empty set}, the last may have no members at all.
    """
    if not 1 <= x <= MAX_ELEMENT:
        raise ValueError(f"element {x} outside the supported range 1..{MAX_ELEMENT}")
    bit = 1 << (x - 1)
    if not family.universe & bit:
        raise ValueError(f"element {x} is not in the family universe")
    with_x = [m for m in family.members if m & bit]
    containing = SetFamily.from_masks(with_x)
    stripped = SetFamily.from_masks((m & ~bit for m in with_x), derived=True)
    avoiding = SetFamily.from_masks(
        (m for m in family.members if not m & bit), derived=True
    )
    return containing, stripped, avoiding


@functools.lru_cache(maxsize=32)
def top_layers(n: int, ell: int) -> SetFamily:
    """All subsets of [n] of size >= n-ell: the unique tight family per (n, ell)."""
    if not 1 <= n <= MAX_LAYER_UNIVERSE:
        raise ValueError(f"n must be in 1..{MAX_LAYER_UNIVERSE}, got {n}")
    if not 0 <= ell <= n:
        raise ValueError(f"ell must be in 0..n, got {ell}")
    cutoff = n - ell
    members = tuple(m for m in range(1 << n) if m.bit_count() >= cutoff)
    # members are ascending and distinct by construction; bypass re-canonicalization
    return SetFamily(members, (1 << n) - 1)


def element_frequencies(family: SetFamily) -> dict[int, int]:
    """For each universe element, the number of members containing it."""
    freqs: dict[int, int] = {}
    for e in elements_of(family.universe):
        bit = 1 << (e - 1)
        freqs[e] = sum(1 for m in family.members if m & bit)
    return freqs
