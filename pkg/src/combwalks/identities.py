"""Closed-form sides of the walk-sum identities and their checks.

Each ``*_check`` returns an :class:`IdentityReport` comparing a value computed
by the walk-sum engine against an independent closed form.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Optional

from .numerics import (
    NotProportionalError,
    SparsePolynomial,
    format_rational,
    proportionality_constant,
)
from .sums import kappa_sum, sum_bruteforce, sum_polynomial, sum_positive_dp
from .walks import PotentialAssignment, StepSet, WalkClass, enumerate_walks, h1

EQUAL = "equal"
PROPORTIONAL = "proportional"
MISMATCH = "mismatch"

F2 = StepSet.up_to(4)


@dataclass
class IdentityReport:
    id: str
    params: dict
    lhs: object
    rhs: object
    verdict: str
    constant: Optional[Fraction] = None
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict != MISMATCH

    def to_json(self) -> dict:
        d = {
            "id": self.id,
            "params": dict(self.params),
            "lhs": _canon(self.lhs),
            "rhs": _canon(self.rhs),
            "verdict": self.verdict,
        }
        if self.constant is not None:
            d["constant"] = format_rational(self.constant)
        d.update(self.extra)
        d["ms"] = round(self.elapsed_ms, 3)
        return d


def _canon(x):
    if isinstance(x, SparsePolynomial):
        return x.to_json()
    return format_rational(x)


def prop1_rhs(n: int, b=None, B=None) -> SparsePolynomial:
    """Closed-form product side for the step set ``{-4, -2, 2, 4}``.

    ``b`` and ``B`` default to the variables ``V(2)`` and ``V(4)``; rational
    values may be passed instead, giving a constant polynomial.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    b = SparsePolynomial.variable(2) if b is None else SparsePolynomial.constant(b)
    B = SparsePolynomial.variable(4) if B is None else SparsePolynomial.constant(B)
    m, odd = divmod(n, 2)
    out = SparsePolynomial.constant(1)
    if not odd:
        for j in range(1, m + 1):
            out = out * (b * b / 4 + B * (2 * j - 1) ** 2)
        return out / 4 ** (m - 1)
    for j in range(1, m + 1):
        out = out * (b * b / 4 + B * (2 * j) ** 2)
    return -(b * out) / 4**m


def prop1_hypothesis_constant(n: int) -> Fraction:
    """Candidate closed form for the ratio ``(-1)^n / ((n-1)!)^2`` between walk sum and product."""
    return Fraction((-1) ** n, factorial(n - 1) ** 2)


def prop1_check(n: int, allow_single_step: bool = True) -> IdentityReport:
    t0 = time.perf_counter()
    lhs = sum_polynomial(n, F2, allow_single_step)
    rhs = prop1_rhs(n)
    try:
        c = proportionality_constant(lhs, rhs)
        verdict = EQUAL if c == 1 else PROPORTIONAL
    except (NotProportionalError, ZeroDivisionError):
        c, verdict = None, MISMATCH
    hyp = prop1_hypothesis_constant(n)
    return IdentityReport(
        "prop1",
        {"n": n},
        lhs,
        rhs,
        verdict,
        constant=c if verdict == PROPORTIONAL else None,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        extra={
            "hypothesis_constant": format_rational(hyp),
            "hypothesis_holds": c is not None and c == hyp,
        },
    )


def _gapped_sum(lo: int, hi: int, k: int, weight) -> int:
    """Sum over ``lo <= i_1 < ... < i_k <= hi`` with gaps >= 2 of ``prod weight(i)``."""

    @lru_cache(maxsize=None)
    def go(first: int, left: int) -> int:
        if left == 0:
            return 1
        total = 0
        for i in range(first, hi + 1):
            total += weight(i) * go(i + 2, left - 1)
        return total

    return go(lo, k)


def _elementary(values, k: int) -> int:
    e = [1] + [0] * k
    for v in values:
        for r in range(k, 0, -1):
            e[r] += e[r - 1] * v
    return e[k]


def prop2_sides(k: int, m: int, variant: str = "a") -> tuple:
    """Both sides of the gapped-index identities, as exact integers."""
    if variant == "a":
        if not 1 <= k <= m:
            raise ValueError(f"variant a needs 1 <= k <= m, got k={k}, m={m}")
        lhs = _gapped_sum(-m + 1, m - 1, k, lambda i: m * m - i * i)
        rhs = _elementary([(2 * j - 1) ** 2 for j in range(1, m + 1)], k)
    elif variant == "b":
        if not 1 <= k <= m - 1:
            raise ValueError(f"variant b needs 1 <= k <= m-1, got k={k}, m={m}")
        top = (2 * m - 1) ** 2
        lhs = _gapped_sum(-m + 2, m - 1, k, lambda i: top - (2 * i - 1) ** 2)
        rhs = _elementary([(4 * j) ** 2 for j in range(1, m)], k)
    else:
        raise ValueError("variant must be 'a' or 'b'")
    return lhs, rhs


def prop2_check(k: int, m: int, variant: str = "a") -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = prop2_sides(k, m, variant)
    return IdentityReport(
        f"prop2{variant}",
        {"k": k, "m": m},
        lhs,
        rhs,
        EQUAL if lhs == rhs else MISMATCH,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def catalan_zero_check(m: int) -> IdentityReport:
    """``B_1(2m+1)`` on ``{-2, +4}`` must vanish."""
    if m < 1:
        raise ValueError("m must be >= 1")
    t0 = time.perf_counter()
    res = kappa_sum(2 * m + 1, 1, 2, 1)
    return IdentityReport(
        "catalan",
        {"m": m, "n": 2 * m + 1},
        res.value,
        Fraction(0),
        EQUAL if res.value == 0 else MISMATCH,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        extra={"walk_count": res.walk_count},
    )


def random_rational_assignment(rng, steps, max_num: int = 9, max_den: int = 9) -> PotentialAssignment:
    """Nonzero small rationals for each step, drawn from ``rng`` (a ``random.Random``)."""
    vals = {}
    for s in steps:
        num = 0
        while num == 0:
            num = rng.randint(-max_num, max_num)
        vals[s] = Fraction(num, rng.randint(1, max_den))
    return PotentialAssignment(vals)


def dp_oracle_sweep(n_max: int = 8, samples: int = 20, seed: int = 0, kappa_n_max: int = 9) -> list:
    """Compare every DP against exhaustive enumeration on small classes.

    Positive walks: all ``n <= n_max`` and nonempty ``F+ ⊆ {2, 4, 6}`` with
    ``samples`` seeded rational assignments.  Kappa-classes: ``n <= kappa_n_max``,
    ``R, S in {1, 2}``, ``kappa <= 3``.
    """
    rng = random.Random(seed)
    reports = []
    subsets = [c for r in (1, 2, 3) for c in combinations((2, 4, 6), r)]
    assignments = [random_rational_assignment(rng, (2, 4, 6)) for _ in range(samples)]
    for steps in subsets:
        F = StepSet(steps)
        for n in range(1, n_max + 1):
            t0 = time.perf_counter()
            cls = WalkClass(n, F, sign_filter="positive_only")
            bad = 0
            for V in assignments:
                dp = sum_positive_dp(n, F, V)
                bf = sum_bruteforce(cls, V)
                if format_rational(dp.value) != format_rational(bf.value) or dp.walk_count != bf.walk_count:
                    bad += 1
            reports.append(IdentityReport(
                "dp-oracle-positive",
                {"steps": ",".join(map(str, steps)), "n": n},
                Fraction(samples - bad),
                Fraction(samples),
                EQUAL if bad == 0 else MISMATCH,
                elapsed_ms=(time.perf_counter() - t0) * 1e3,
            ))
    for R in (1, 2):
        for S in (1, 2):
            for kappa in range(4):
                for n in range(1, kappa_n_max + 1):
                    t0 = time.perf_counter()
                    dp = kappa_sum(n, R, S, kappa)
                    walks = enumerate_walks(WalkClass(n, StepSet.two_point(R, S), kappa=kappa))
                    bf = sum((h1(w, n) for w in walks), Fraction(0))
                    ok = dp.value == bf and dp.walk_count == len(walks)
                    reports.append(IdentityReport(
                        "dp-oracle-kappa",
                        {"R": R, "S": S, "kappa": kappa, "n": n},
                        dp.value,
                        bf,
                        EQUAL if ok else MISMATCH,
                        elapsed_ms=(time.perf_counter() - t0) * 1e3,
                        extra={"walk_count": len(walks)},
                    ))
    return reports
