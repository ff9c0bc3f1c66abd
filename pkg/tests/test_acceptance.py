"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they pass.
Every tolerance is exact; timing budgets are asserted where stated.
"""

from __future__ import annotations

import json
import math
import random
import time

from conftest import brute_force_longest_chain, random_small_family
from ucf.bounds import chain_identity_check, p_hat, theorem1_bound, theta, theta_min_scan
from ucf.cli import main
from ucf.decomposition import build_decomposition, max_chain, verify_decomposition
from ucf.enumeration import enumerate_exhaustive
from ucf.family import length, top_layers
from ucf.ucfio import format_ucf, parse_ucf

VIOLATION_KEYS = (
    "theorem1_violations",
    "corollary21_violations",
    "decomposition_failures",
    "theorem2_violations",
    "reimer_violations",
    "equality_mismatches",
)


def report(criterion: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance {criterion}] {name}: {status}{suffix}")


def run_enumerate(tmp_path, *argv) -> tuple[int, dict]:
    out = tmp_path / "report.json"
    code = main(["enumerate", *argv, "--format", "json", "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_criterion_1_exhaustive_theorem_audit(tmp_path):
    start = time.perf_counter()
    ok = True
    for n in (1, 2, 3, 4):
        code, payload = run_enumerate(tmp_path, "--n", str(n), "--exhaustive")
        ok = ok and code == 0
        ok = ok and all(payload[key] == 0 for key in VIOLATION_KEYS)
        ok = ok and payload["theorem1_equalities"] == n + 1
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60.0
    report(1, "exhaustive theorem audit n=1..4", ok, f"{elapsed:.1f}s")
    assert ok


def test_criterion_2_base_case_fidelity():
    families = []
    enumerate_exhaustive(1, families.append)
    sizes = [len(f) for f in families]
    bounds = [theorem1_bound(f.n, length(f)) for f in families]
    ok = (
        [f.members for f in families] == [(1,), (0, 1)]
        and sizes == [1, 2]
        and bounds == [1, 2]
    )
    report(2, "base-case families, sizes, and bounds", ok)
    assert ok


def test_criterion_3_sampled_audit(tmp_path):
    start = time.perf_counter()
    ok = True
    for n in (5, 6):
        code, payload = run_enumerate(
            tmp_path, "--n", str(n), "--samples", "10000", "--seed", "1"
        )
        ok = ok and code == 0
        ok = ok and payload["families_checked"] == 10000
        ok = ok and all(payload[key] == 0 for key in VIOLATION_KEYS)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 120.0
    report(3, "sampled audit n=5,6 x 10000", ok, f"{elapsed:.1f}s")
    assert ok


def test_criterion_4_theorem2_grid():
    start = time.perf_counter()
    ok = True
    for n in range(1, 31):
        for k in range(1, n + 1):
            prefix = theorem1_bound(n, k)
            value = theta(k, n, p_hat(n, k))
            ok = ok and prefix <= value
            if k == 1:
                ok = ok and prefix == n + 1 and value == n + 1
            if k == n:
                ok = ok and prefix == 2**n and value == 2**n
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 5.0
    report(4, "theorem 2 grid 1<=k<=n<=30", ok, f"{elapsed:.2f}s")
    assert ok


def test_criterion_5_p_hat_optimality():
    ok = True
    for n in range(1, 31):
        for k in range(1, n + 1):
            ph = p_hat(n, k)
            _, minimum = theta_min_scan(n, k, ph + 10)
            ok = ok and minimum == theta(k, n, ph)
            for p in range(ph + 10):
                decreasing = theta(k, n, p + 1) <= theta(k, n, p)
                integral = (k << k) ** p <= (1 << (n - k)) * ((1 << k) - 1) ** p
                ok = ok and decreasing == integral
    report(5, "p-hat is value-optimal with the exact monotonicity test", ok)
    assert ok


def test_criterion_6_binomial_identity():
    start = time.perf_counter()
    ok = all(
        chain_identity_check(n, k, m)
        for n in range(21)
        for k in range(n + 1)
        for m in range(n + 1)
    )
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 2.0
    report(6, "splitting identity over all 0<=k<=n<=20, 0<=m<=n", ok, f"{elapsed:.2f}s")
    assert ok


def test_criterion_7_decomposition_replay():
    ok = True
    for n in range(1, 9):
        for ell in range(n + 1):
            family = top_layers(n, ell)
            decomposition = build_decomposition(family, max_chain(family))
            record = verify_decomposition(family, decomposition)
            ok = ok and record.all_ok
            block_total = 1 + sum(len(b.d_family) for b in decomposition.blocks)
            ok = ok and block_total == sum(math.comb(n, i) for i in range(ell + 1))
    report(7, "decomposition replay on top layers n<=8", ok)
    assert ok


def test_criterion_8_length_oracle_equivalence():
    rng = random.Random(2024)
    ok = True
    for _ in range(500):
        family = random_small_family(rng, max_members=12)
        ok = ok and length(family) == brute_force_longest_chain(family.members) - 1
    report(8, "length DAG vs brute-force chain search, 500 families", ok)
    assert ok


def test_criterion_9_round_trip():
    rng = random.Random(777)
    ok = True
    for _ in range(200):
        family = random_small_family(rng)
        text = format_ucf(family)
        ok = ok and text == format_ucf(family)  # byte-deterministic
        ok = ok and parse_ucf(text).members == family.members
    report(9, "ucf round-trip for 200 seeded families", ok)
    assert ok
