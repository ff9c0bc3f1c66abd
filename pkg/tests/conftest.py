"""Shared helpers: independent oracles and seeded family generators."""

from __future__ import annotations

import random

from ucf.family import SetFamily


def fam(*sets) -> SetFamily:
    return SetFamily.from_sets(sets)


def brute_force_longest_chain(members) -> int:
    """Maximum chain size by unmemoized exponential descent (test oracle)."""
    members = list(members)

    def down(s: int) -> int:
        best = 1
        for t in members:
            if t != s and t & s == t:
                size = 1 + down(t)
                if size > best:
                    best = size
        return best

    return max(down(s) for s in members)


def random_small_family(rng: random.Random, max_members: int = 12) -> SetFamily:
    """A random (not necessarily union-closed) family with <= max_members sets."""
    n = rng.randint(1, 6)
    space = 1 << n
    want = rng.randint(1, min(max_members, space))
    masks = set(rng.sample(range(space), want))
    if max(masks) == 0:
        masks.add(rng.randint(1, space - 1))
    return SetFamily.from_masks(masks)
