"""Exact size bounds for union-closed families.

Everything here is evaluated in arbitrary-precision integers or dyadic
rationals; no comparison ever touches floating point. The headline
quantities:

* prefix binomial sum  sum_{i=0..ell} C(n, i)  (the union-closed bound)
* sum of the largest ell+1 binomial coefficients (applies to any family)
* the exact-exponent check  |A|^|A| <= 4^(sum of member sizes)
* theta(k, n, p) = sum_{i=0..p-1} k^i + (2^k - 1)^p * 2^(n - k*p),
  a dyadic rational, together with its float-free minimizer p_hat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .family import SetFamily, length, require_union_closed

MAX_FORMULA_N = 1000  # cap for pure-formula evaluation; no family is materialized


@dataclass(frozen=True, eq=False)
class DyadicRational:
    """numerator / 2**exponent, canonical: exponent >= 0, numerator odd or zero."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        num, exp = self.numerator, self.exponent
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        while exp > 0 and not num & 1:
            num >>= 1
            exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @staticmethod
    def _pair(value: "DyadicRational | int") -> tuple[int, int]:
        if isinstance(value, DyadicRational):
            return value.numerator, value.exponent
        if isinstance(value, int):
            return value, 0
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: "DyadicRational | int") -> "DyadicRational":
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        num, exp = pair
        e = max(self.exponent, exp)
        return DyadicRational(
            (self.numerator << (e - self.exponent)) + (num << (e - exp)), e
        )

    __radd__ = __add__

    def _cmp(self, other: "DyadicRational | int") -> int:
        num, exp = self._pair(other)
        left = self.numerator << exp
        right = num << self.exponent
        return (left > right) - (left < right)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (DyadicRational, int)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"


def _check_formula_n(n: int) -> None:
    if n > MAX_FORMULA_N:
        raise ValueError(f"n must be at most {MAX_FORMULA_N}, got {n}")


def binomial(n: int, i: int) -> int:
    """C(n, i), exact; 0 outside 0 <= i <= n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    _check_formula_n(n)
    if i < 0 or i > n:
        return 0
    return math.comb(n, i)


def theorem1_bound(n: int, ell: int) -> int:
    """Prefix sum of binomial coefficients, sum_{i=0..ell} C(n, i)."""
    if not 0 <= ell <= n:
        raise ValueError(f"need 0 <= ell <= n, got ell={ell}, n={n}")
    _check_formula_n(n)
    return sum(math.comb(n, i) for i in range(ell + 1))


def erdos_bound(n: int, ell: int) -> int:
    """Sum of the largest ell+1 binomial coefficients of n.

    Walks outward from floor(n/2), preferring the lower index on ties;
    unimodality makes the chosen block contiguous and the sum tie-independent.
    """
    if not 0 <= ell <= n:
        raise ValueError(f"need 0 <= ell <= n, got ell={ell}, n={n}")
    _check_formula_n(n)
    lo = hi = n // 2
    total = math.comb(n, lo)
    for _ in range(ell):
        below = math.comb(n, lo - 1) if lo > 0 else -1
        above = math.comb(n, hi + 1) if hi < n else -1
        if below >= above:
            lo -= 1
            total += below
        else:
            hi += 1
            total += above
    return total


def reimer_check(family: SetFamily) -> bool:
    """|A|^|A| <= 4^(sum of member sizes), evaluated in exact integers."""
    if not family.members:
        raise ValueError("check requires a nonempty family")
    m = len(family)
    total_size = sum(mask.bit_count() for mask in family.members)
    return m**m <= 4**total_size


def geometric_sum(x: int, z: int) -> int:
    """sum_{i=0..z-1} x^i; the safe reading of (x^z - 1)/(x - 1)."""
    if x < 0 or z < 0:
        raise ValueError(f"need x, z >= 0, got x={x}, z={z}")
    if x == 1:
        return z
    return (x**z - 1) // (x - 1)


def theta(k: int, n: int, p: int) -> DyadicRational:
    """geometric_sum(k, p) + (2^k - 1)^p * 2^(n - k*p), exact."""
    if k < 0 or n < 0 or p < 0:
        raise ValueError(f"need k, n, p >= 0, got k={k}, n={n}, p={p}")
    _check_formula_n(n)
    tail = ((1 << k) - 1) ** p
    # tail * 2^(n - k*p) == tail / 2^(k*p - n)
    return DyadicRational(geometric_sum(k, p)) + DyadicRational(tail, k * p - n)


def p_hat(n: int, k: int) -> int:
    """The minimizing power for theta(k, n, .), computed float-free.

    Equals 1 + the largest p >= 0 with (k*2^k)^p <= 2^(n-k) * (2^k - 1)^p,
    which matches floor((n-k) / log2(k / (1 - 2^-k))) + 1 because the base
    exceeds 1 for every k >= 1.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    _check_formula_n(n)
    base_left = k << k
    base_right = (1 << k) - 1
    left = 1
    right = 1 << (n - k)
    p = 0
    while left * base_left <= right * base_right:
        left *= base_left
        right *= base_right
        p += 1
    return p + 1


def theorem2_bound(n: int, k: int) -> DyadicRational:
    """theta evaluated at its minimizer; upper-bounds theorem1_bound(n, k)."""
    return theta(k, n, p_hat(n, k))


def theta_min_scan(n: int, k: int, p_max: int) -> tuple[int, DyadicRational]:
    """Exhaustive exact scan of theta(k, n, p) over p in [0, p_max].

    Ties report the smaller p, which can sit one below p_hat; the minimum
    value always equals theta(k, n, p_hat(n, k)).
    """
    if p_max < p_hat(n, k) + 2:
        raise ValueError(f"p_max must be at least p_hat + 2, got {p_max}")
    best_p = 0
    best = theta(k, n, 0)
    for p in range(1, p_max + 1):
        value = theta(k, n, p)
        if value < best:
            best_p, best = p, value
    return best_p, best


def chain_identity_check(n: int, k: int, m: int) -> bool:
    """sum_{i=0..k} C(n,i) == sum_{i=0..m} C(m,i) * sum_{j=0..k-i} C(n-m,j)."""
    if not 0 <= k <= n or not 0 <= m <= n:
        raise ValueError(f"need 0 <= k <= n and 0 <= m <= n, got n={n}, k={k}, m={m}")
    _check_formula_n(n)
    left = sum(binomial(n, i) for i in range(k + 1))
    right = sum(
        binomial(m, i) * sum(binomial(n - m, j) for j in range(k - i + 1))
        for i in range(m + 1)
    )
    return left == right


@dataclass(frozen=True)
class BoundReport:
    family_size: int
    n: int
    ell: int
    theorem1: int
    erdos: int
    theta_at_phat: DyadicRational
    p_hat: int
    theorem1_tight: bool
    reimer_holds: bool


def bound_report(family: SetFamily) -> BoundReport:
    """Evaluate every bound for a union-closed family, exactly.

    Raises NotUnionClosedError (naming the violating pair) otherwise.
    """
    require_union_closed(family)
    n = family.n
    ell = length(family)
    size = len(family)
    t1 = theorem1_bound(n, ell)
    if ell >= 1:
        ph = p_hat(n, ell)
        th = theta(ell, n, ph)
    else:
        # length 0 means the family is {universe}; theta(0, n, p) = 1 for
        # every p >= 1, so report the smallest minimizing power.
        ph = 1
        th = theta(0, n, 1)
    return BoundReport(
        family_size=size,
        n=n,
        ell=ell,
        theorem1=t1,
        erdos=erdos_bound(n, ell),
        theta_at_phat=th,
        p_hat=ph,
        theorem1_tight=size == t1,
        reimer_holds=reimer_check(family),
    )
