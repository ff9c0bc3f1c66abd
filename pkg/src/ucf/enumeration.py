"""Generate union-closed families with universe exactly [n] and audit them.

Exhaustive generation iterates every subset of the 2^n - 1 proper-or-empty
subsets of [n] with [n] itself forced in (it must be a member), keeping the
union-closed ones. Sampling draws random generator collections and closes
them. Each sample index gets its own RNG keyed through a splitmix64 mix of
(seed, index), so a fixed seed replays exactly and results do not depend on
how the index space is partitioned across workers.
"""

from __future__ import annotations

import concurrent.futures
import random
from dataclasses import asdict, dataclass, fields
from typing import Callable

from .bounds import binomial, p_hat, reimer_check, theorem1_bound, theta
from .decomposition import build_decomposition, max_chain, verify_decomposition
from .family import SetFamily, element_frequencies, length, top_layers, union_closure

MAX_EXHAUSTIVE_N = 4
MAX_SAMPLED_N = 24

_M64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    z = x & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def _sample_key(seed: int, index: int) -> int:
    return _splitmix64((seed + (index + 1) * _GAMMA) & _M64)


@dataclass(frozen=True)
class AuditReport:
    n: int
    mode: str  # "exhaustive" | "sampled"
    seed: int | None  # None in exhaustive mode
    families_checked: int
    theorem1_violations: int
    theorem1_equalities: int
    equality_mismatches: int
    corollary21_violations: int
    decomposition_failures: int
    theorem2_violations: int
    reimer_violations: int

    @property
    def all_clear(self) -> bool:
        return (
            self.theorem1_violations == 0
            and self.equality_mismatches == 0
            and self.corollary21_violations == 0
            and self.decomposition_failures == 0
            and self.theorem2_violations == 0
            and self.reimer_violations == 0
        )

    def to_dict(self) -> dict:
        return asdict(self)


CSV_HEADER = ",".join(f.name for f in fields(AuditReport))


def csv_row(report: AuditReport) -> str:
    values = [getattr(report, f.name) for f in fields(AuditReport)]
    return ",".join("-" if v is None else str(v) for v in values)


@dataclass
class _Tally:
    families_checked: int = 0
    theorem1_violations: int = 0
    theorem1_equalities: int = 0
    equality_mismatches: int = 0
    corollary21_violations: int = 0
    decomposition_failures: int = 0
    theorem2_violations: int = 0
    reimer_violations: int = 0

    def merge(self, other: "_Tally") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))


def _iter_exhaustive(n: int, lo: int, hi: int):
    full = (1 << n) - 1
    pool = range(full)  # masks 0..2^n-2: every proper-or-empty subset of [n]
    for index in range(lo, hi):
        chosen = [m for b, m in enumerate(pool) if index >> b & 1]
        present = set(chosen)
        present.add(full)
        closed = True
        for i, a in enumerate(chosen):
            for b in chosen[i + 1 :]:
                if a | b not in present:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            # chosen is ascending and below full, so the tuple is canonical
            yield SetFamily(tuple(chosen) + (full,), full)


def _sample_family(n: int, rng: random.Random) -> SetFamily:
    full = (1 << n) - 1
    density = rng.uniform(0.05, 0.5)
    generators = [m for m in range(1, full + 1) if rng.random() < density]
    if full not in generators:
        generators.append(full)
    return union_closure(SetFamily.from_masks(generators))


def _iter_sampled(n: int, seed: int, lo: int, hi: int):
    for index in range(lo, hi):
        yield _sample_family(n, random.Random(_sample_key(seed, index)))


def enumerate_exhaustive(n: int, visitor: Callable[[SetFamily], None]) -> int:
    """Visit every union-closed family with universe exactly [n], once, in
    ascending candidate-index order. Returns the number visited."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ValueError(
            f"exhaustive enumeration supports n in 1..{MAX_EXHAUSTIVE_N}; "
            f"use sample_random for larger universes"
        )
    count = 0
    for family in _iter_exhaustive(n, 0, 1 << ((1 << n) - 1)):
        visitor(family)
        count += 1
    return count


def sample_random(n: int, count: int, seed: int, visitor: Callable[[SetFamily], None]) -> int:
    """Visit `count` random union-closed families with universe exactly [n]."""
    if not 1 <= n <= MAX_SAMPLED_N:
        raise ValueError(f"sampling supports n in 1..{MAX_SAMPLED_N}, got {n}")
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    for family in _iter_sampled(n, seed, 0, count):
        visitor(family)
    return count


def _audit_family(family: SetFamily, n: int, tally: _Tally) -> None:
    tally.families_checked += 1
    size = len(family)
    ell = length(family)

    bound = theorem1_bound(n, ell)
    if size > bound:
        tally.theorem1_violations += 1
    elif size == bound:
        tally.theorem1_equalities += 1
        if family.members != top_layers(n, ell).members:
            tally.equality_mismatches += 1

    frequency_cap = sum(binomial(n - 1, i) for i in range(ell + 1))
    if min(element_frequencies(family).values()) > frequency_cap:
        tally.corollary21_violations += 1

    record = verify_decomposition(family, build_decomposition(family, max_chain(family)))
    if not record.all_ok:
        tally.decomposition_failures += 1

    if ell >= 1:
        limit = p_hat(n, ell)
        if any(size > theta(ell, n, p) for p in range(limit + 1)):
            tally.theorem2_violations += 1

    if not reimer_check(family):
        tally.reimer_violations += 1


def _exhaustive_chunk(args: tuple[int, int, int]) -> _Tally:
    n, lo, hi = args
    tally = _Tally()
    for family in _iter_exhaustive(n, lo, hi):
        _audit_family(family, n, tally)
    return tally


def _sampled_chunk(args: tuple[int, int, int, int]) -> _Tally:
    n, seed, lo, hi = args
    tally = _Tally()
    for family in _iter_sampled(n, seed, lo, hi):
        _audit_family(family, n, tally)
    return tally


def _split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    ranges = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def _run_chunks(worker, chunks: list, workers: int) -> list[_Tally]:
    if workers <= 1 or len(chunks) <= 1:
        return [worker(chunk) for chunk in chunks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, chunks))


def audit(
    n: int,
    *,
    mode: str,
    samples: int = 0,
    seed: int = 0,
    workers: int = 1,
) -> AuditReport:
    """Check every theorem over the exhaustive or sampled family population.

    The tallies merge associatively, so the report is identical for any
    worker count.
    """
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    if mode == "exhaustive":
        if not 1 <= n <= MAX_EXHAUSTIVE_N:
            raise ValueError(
                f"exhaustive audit supports n in 1..{MAX_EXHAUSTIVE_N}; "
                f"use sampled mode for larger universes"
            )
        total = 1 << ((1 << n) - 1)
        chunks = [(n, lo, hi) for lo, hi in _split_range(total, workers)]
        tallies = _run_chunks(_exhaustive_chunk, chunks, workers)
        report_seed = None
    elif mode == "sampled":
        if not 1 <= n <= MAX_SAMPLED_N:
            raise ValueError(f"sampled audit supports n in 1..{MAX_SAMPLED_N}, got {n}")
        if samples < 1:
            raise ValueError(f"sampled audit needs a positive sample count, got {samples}")
        chunks = [(n, seed, lo, hi) for lo, hi in _split_range(samples, workers)]
        tallies = _run_chunks(_sampled_chunk, chunks, workers)
        report_seed = seed
    else:
        raise ValueError(f"unknown audit mode {mode!r}")

    merged = _Tally()
    for tally in tallies:
        merged.merge(tally)
    return AuditReport(n=n, mode=mode, seed=report_seed, **asdict(merged))
