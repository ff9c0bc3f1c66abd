"""Maximum chains and the per-level block decomposition they induce.

Given a maximum chain C_1 > ... > C_{l+1} in a union-closed family, level i
collects the members that contain C_i \\ C_{i+1} and avoid every earlier
difference; stripping the difference from each yields the level's reduced
family. The verification record replays the structural facts this
decomposition satisfies: the levels partition the family minus the chain's
bottom, level sizes add up to |family| - 1, each reduced family with a
nonempty lower chain set is union-closed, and universes shrink level by level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .family import (
    Chain,
    Mask,
    SetFamily,
    _down_depths,
    is_union_closed,
    length,
    require_union_closed,
    set_label,
)


@dataclass(frozen=True)
class Block:
    diff_mask: Mask
    c_family: SetFamily  # members containing diff_mask, avoiding earlier diffs
    d_family: SetFamily  # the same members with diff_mask stripped

    def __post_init__(self):
        if self.diff_mask == 0:
            raise ValueError("block difference mask must be nonempty")
        if len(self.c_family) != len(self.d_family):
            raise ValueError("stripping the difference mask must preserve the count")


@dataclass(frozen=True)
class Decomposition:
    chain: Chain
    blocks: tuple[Block, ...]
    residual: Mask  # bottom of the chain; not necessarily empty

    def __post_init__(self):
        if len(self.blocks) != len(self.chain) - 1:
            raise ValueError("expected one block per chain step")
        combined = 0
        for block in self.blocks:
            if combined & block.diff_mask:
                raise ValueError("difference masks must be pairwise disjoint")
            combined |= block.diff_mask


@dataclass(frozen=True)
class VerificationRecord:
    partition_ok: bool
    size_ok: bool
    closure_ok: bool
    shrink_ok: bool
    closure_skipped: tuple[int, ...] = ()  # 1-based blocks with empty lower chain set

    @property
    def all_ok(self) -> bool:
        return self.partition_ok and self.size_ok and self.closure_ok and self.shrink_ok


def max_chain(family: SetFamily) -> Chain:
    """A maximum chain, deterministically.

    Starts at the universe and repeatedly steps to the numerically smallest
    member that still heads a longest remaining descent.
    """
    require_union_closed(family)
    depth = dict(_down_depths(family))
    current = family.universe
    sets = [current]
    remaining = depth[current]
    while remaining > 1:
        current = min(
            m
            for m in family.members
            if m != current and m & current == m and depth[m] == remaining - 1
        )
        sets.append(current)
        remaining -= 1
    return Chain(tuple(sets))


def build_decomposition(family: SetFamily, chain: Chain) -> Decomposition:
    """Per-level blocks for a maximum chain of a union-closed family."""
    require_union_closed(family)
    for s in chain.sets:
        if s not in family:
            raise ValueError(f"chain set {set_label(s)} is not a family member")
    if len(chain) != length(family) + 1:
        raise ValueError(
            f"chain of size {len(chain)} is not maximum (expected {length(family) + 1})"
        )
    if chain.sets[0] != family.universe:
        raise ValueError("a maximum chain must start at the universe")
    blocks = []
    earlier = 0
    for upper, lower in zip(chain.sets, chain.sets[1:]):
        diff = upper & ~lower
        c_members = [x for x in family.members if x & diff == diff and not x & earlier]
        blocks.append(
            Block(
                diff_mask=diff,
                c_family=SetFamily.from_masks(c_members),
                d_family=SetFamily.from_masks((x & ~diff for x in c_members), derived=True),
            )
        )
        earlier |= diff
    return Decomposition(chain=chain, blocks=tuple(blocks), residual=chain.sets[-1])


def verify_decomposition(family: SetFamily, decomposition: Decomposition) -> VerificationRecord:
    """Replay the decomposition facts; falsifications are reported, never raised."""
    n = family.n
    ell = len(decomposition.blocks)

    covered: set[Mask] = set()
    disjoint = True
    for block in decomposition.blocks:
        c_members = set(block.c_family.members)
        if covered & c_members:
            disjoint = False
        covered |= c_members
    partition_ok = disjoint and covered == set(family.members) - {decomposition.residual}

    size_ok = 1 + sum(len(block.d_family) for block in decomposition.blocks) == len(family)

    closure_ok = True
    skipped = []
    for i, block in enumerate(decomposition.blocks, start=1):
        if decomposition.chain.sets[i] == 0:
            skipped.append(i)  # closure is only claimed for nonempty C_{i+1}
            continue
        if not is_union_closed(block.d_family):
            closure_ok = False

    shrink_ok = True
    for i, block in enumerate(decomposition.blocks, start=1):
        if block.d_family.universe.bit_count() > n - i:
            shrink_ok = False
        if block.d_family.members and length(block.d_family) > ell:
            shrink_ok = False

    return VerificationRecord(
        partition_ok=partition_ok,
        size_ok=size_ok,
        closure_ok=closure_ok,
        shrink_ok=shrink_ok,
        closure_skipped=tuple(skipped),
    )
