"""Parameter scans: polynomial structure, random weights, growth, truncated series.

Exact columns are computed in Fractions and written as ``"num/den"``; every
float column is derived from them (or from float DPs) and labelled as an
approximation by its ``*_approx`` name.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .export import ScanRow
from .sums import (
    abs_sum_positive,
    beta_truncated,
    kappa_abs_sum,
    kappa_sum,
    sum_polynomial,
    sum_positive_dp,
)
from .walks import DESCENDING, PotentialAssignment, StepSet, WalkClass, enumerate_walks, h1

NEAR_ZERO = 1e-300
ANNULUS = (0.5, 2.0)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("COMBWALKS_JOBS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence, jobs: Optional[int] = None) -> list:
    """Map in a process pool; results come back in input order."""
    jobs = default_jobs() if jobs is None else jobs
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _frac_to_float(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.copysign(math.inf, x)


def _log_abs(x: Fraction) -> float:
    x = abs(x)
    if x == 0:
        return -math.inf
    return math.log(x.numerator) - math.log(x.denominator)


# -- polynomial structure ----------------------------------------------------


def q1_normalizer(n: int) -> int:
    """Scale ``4^(n-1) ((n-1)!)^2`` applied to coefficients for display."""
    return 4 ** (n - 1) * math.factorial(n - 1) ** 2


def _q1_row(args) -> ScanRow:
    m, n, full, allow_single_step = args
    F = StepSet.up_to(m)
    p = sum_polynomial(n, F, allow_single_step)
    scaled = p * q1_normalizer(n)
    lead = scaled.terms.get(((2, n),), Fraction(0))
    values = {
        "terms": len(p),
        "weighted_degrees": ";".join(str(d) for d in sorted(p.weighted_degrees())),
        "normalized_V2_power": lead,
        "normalized": str(scaled),
    }
    if full:
        values["polynomial"] = str(p)
    return ScanRow({"m": m, "n": n}, values)


def q1_scan(
    m: int,
    n_range: Iterable[int],
    full: bool = False,
    allow_single_step: bool = True,
    jobs: Optional[int] = None,
) -> list:
    """Positive-walk polynomials over ``F_m`` for each ``n``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    tasks = [(m, n, full, allow_single_step) for n in sorted(set(n_range))]
    return parallel_map(_q1_row, tasks, jobs)


# -- ratio under random complex weights -------------------------------------


def sample_annulus(count: int, dim: int, seed: int, radii=ANNULUS) -> np.ndarray:
    """``count x dim`` complex points, each coordinate area-uniform on the annulus."""
    rng = np.random.default_rng(seed)
    r0, r1 = radii
    r = np.sqrt(rng.uniform(r0 * r0, r1 * r1, size=(count, dim)))
    theta = rng.uniform(0.0, 2.0 * math.pi, size=(count, dim))
    return r * np.exp(1j * theta)


def ratio_positive(n: int, F: StepSet, V, allow_single_step: bool = True):
    """``sum|h| / |sum h|`` over positive walks; None under near-cancellation.

    Exact (a Fraction) when ``V`` is rational.
    """
    V = V if isinstance(V, PotentialAssignment) else PotentialAssignment(V)
    signed = sum_positive_dp(n, F, V, allow_single_step).value
    absolute = abs_sum_positive(n, F, V, allow_single_step).value
    if V.exact:
        if signed == 0:
            return None, absolute, signed
        return absolute / abs(signed), absolute, signed
    if abs(signed) < NEAR_ZERO:
        return None, absolute, signed
    return float(absolute) / abs(signed), absolute, signed


def q2_rows(z: Sequence[complex], m: int, n_range: Iterable[int], sample_id: int = 0,
            allow_single_step: bool = True) -> list:
    """Ratio rows for one point ``z = (V(2), V(4), ...)`` over ``n_range``."""
    F = StepSet.up_to(m)
    V = PotentialAssignment({2 * (k + 1): complex(c) for k, c in enumerate(z)})
    coords = {}
    for k, c in enumerate(z):
        coords[f"V{2 * (k + 1)}_re"] = float(complex(c).real)
        coords[f"V{2 * (k + 1)}_im"] = float(complex(c).imag)
    rows, running = [], 0.0
    for n in sorted(set(n_range)):
        ratio, absolute, signed = ratio_positive(n, F, V, allow_single_step)
        flag = ""
        if ratio is None:
            flag = "near-cancellation"
        else:
            running = max(running, ratio)
        values = dict(coords)
        values.update(
            abs_sum_approx=float(absolute),
            signed_abs_approx=abs(signed),
            ratio_approx=ratio,
            running_max_approx=running,
        )
        rows.append(ScanRow({"sample": sample_id, "n": n}, values, {"exact": False, "flag": flag}))
    return rows


def _q2_task(args) -> list:
    sid, z, m, ns, allow_single_step = args
    return q2_rows(z, m, ns, sid, allow_single_step)


def q2_scan(
    m: int,
    n_range: Iterable[int],
    samples: int,
    seed: int,
    allow_single_step: bool = True,
    jobs: Optional[int] = None,
) -> list:
    """Sampled ``C(z)`` estimates: ratio of absolute to signed positive-walk sums.

    ``z`` holds ``V(2), V(4), ..., V(2*floor(m/2))``; the running max over ``n``
    is the empirical constant for that sample.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if m < 2:
        raise ValueError("m must be >= 2")
    ns = sorted(set(n_range))
    zs = sample_annulus(samples, m // 2, seed)
    tasks = [(sid, tuple(zs[sid]), m, ns, allow_single_step) for sid in range(samples)]
    out = []
    for chunk in parallel_map(_q2_task, tasks, jobs):
        out.extend(chunk)
    return out


# -- three-negative-step growth ---------------------------------------------


def _q3_row(args) -> ScanRow:
    m, oracle_upto = args
    n = 2 * m + 1
    res = kappa_sum(n, 1, 2, 3)
    abs_res = kappa_abs_sum(n, 1, 2, 3)
    fact = math.factorial(m)
    scaled_b = fact * abs(res.value)
    scaled_abs = fact * abs_res.value
    values = {
        "B3": res.value,
        "abs_sum": abs_res.value,
        "walk_count": res.walk_count,
        "mfact_abs_B3_approx": _frac_to_float(scaled_b),
        "mfact_abs_sum_approx": _frac_to_float(scaled_abs),
        "growth_abs_sum_approx": math.exp(_log_abs(scaled_abs) / m),
        "growth_abs_B3_approx": math.exp(_log_abs(scaled_b) / m) if scaled_b else 0.0,
    }
    oracle = ""
    if m <= oracle_upto:
        c = WalkClass(n, StepSet.two_point(1, 2), kappa=3)
        walks = enumerate_walks(c)
        bf = sum((h1(w, n) for w in walks), Fraction(0))
        bf_abs = sum((abs(h1(w, n)) for w in walks), Fraction(0))
        ok = bf == res.value and bf_abs == abs_res.value and len(walks) == res.walk_count
        oracle = "match" if ok else "MISMATCH"
    return ScanRow({"m": m, "n": n}, values, {"exact": True, "oracle": oracle})


def q3_scan(m_range: Iterable[int], oracle_upto: int = 6, jobs: Optional[int] = None) -> list:
    """``B_3(2m+1)`` on ``{-2, +4}``, its absolute counterpart, and ``m!``-scaled growth."""
    ms = sorted(set(m_range))
    if any(m < 1 for m in ms):
        raise ValueError("every m must be >= 1")
    return parallel_map(_q3_row, [(m, oracle_upto) for m in ms], jobs)


# -- truncated signed-step series ------------------------------------------


def _ratio(num, den):
    if den == 0:
        return None
    if isinstance(num, Fraction) and isinstance(den, Fraction):
        return _frac_to_float(num / den)
    if abs(den) < NEAR_ZERO:
        return None
    r = complex(num) / complex(den)
    return r.real if r.imag == 0 else abs(r)


def _prop3_row(args) -> ScanRow:
    m, n, V, L, W, allow_single_step = args
    F = StepSet.up_to(m)
    pos = sum_positive_dp(n, F, V, allow_single_step).value
    neg = sum_positive_dp(n, F.reflected(), V.reflected(), allow_single_step).value
    bp = beta_truncated(n, F, V, L, W, allow_single_step=allow_single_step)
    bm = beta_truncated(n, F, V, L, W, direction=DESCENDING, allow_single_step=allow_single_step)
    rp, rm = _ratio(bp.value, pos), _ratio(bm.value, neg)
    scale = n / math.log(n)

    def diag(r):
        return None if r is None else abs(r - 1.0) * scale

    flag = "degenerate" if rp is None or rm is None else ""
    values = {
        "positive_sum": pos,
        "negative_sum": neg,
        "beta_plus": bp.value,
        "beta_minus": bm.value,
        "ratio_plus_approx": rp,
        "ratio_minus_approx": rm,
        "diag_plus_approx": diag(rp),
        "diag_minus_approx": diag(rm),
    }
    flags = {
        "exact": V.exact and not (bp.truncated or bm.truncated),
        "truncated_plus": bp.truncated,
        "truncated_minus": bm.truncated,
        "flag": flag,
    }
    return ScanRow({"m": m, "n": n}, values, flags)


def prop3_scan(
    m: int,
    n_range: Iterable[int],
    V,
    L: int,
    W: int,
    allow_single_step: bool = True,
    jobs: Optional[int] = None,
) -> list:
    """Truncated two-sided sums against their single-sign parts.

    For each ``n``: ``beta+/sum_{X_n^+} h`` and ``beta-/sum_{Y_n^-} h`` plus the
    diagnostic ``|ratio - 1| * n / log n``.  Rows whose denominator vanishes
    are flagged ``degenerate`` and carry no ratio.
    """
    V = V if isinstance(V, PotentialAssignment) else PotentialAssignment(V)
    ns = sorted(set(n_range))
    if any(n < 2 for n in ns):
        raise ValueError("n must be >= 2 (the diagnostic divides by log n)")
    tasks = [(m, n, V, L, W, allow_single_step) for n in ns]
    return parallel_map(_prop3_row, tasks, jobs)
