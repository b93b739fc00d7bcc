"""Walk-sum aggregates by dynamic programming, with enumeration as oracle.

Every DP here divides by the vertex factor ``n^2 - j^2`` exactly once, when
a walk arrives at an intermediate vertex; the endpoints carry no factor.
That is the same bookkeeping as :func:`combwalks.walks.h1`, so DP values and
brute-force sums agree bit for bit on rational inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from operator import add
from typing import Optional

from .numerics import SparsePolynomial, format_rational, fsum_any, is_exact
from .walks import (
    ASCENDING,
    DESCENDING,
    PotentialAssignment,
    StepSet,
    WalkClass,
    endpoints,
    enumerate_walks,
    h_weight,
)


@dataclass(frozen=True)
class SumResult:
    value: object
    exact: bool
    walk_count: int
    truncated: bool = False
    truncation: Optional[dict] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, SparsePolynomial):
            value = v.to_json()
        elif is_exact(v):
            value = format_rational(v)
        else:
            c = complex(v)
            value = {"re": c.real, "im": c.imag}
        d = {
            "value": value,
            "exact": self.exact,
            "walk_count": self.walk_count,
            "truncated": self.truncated,
        }
        if self.truncation is not None:
            d["truncation"] = dict(self.truncation)
        if self.note:
            d["note"] = self.note
        return d


def _acc(terms):
    terms = list(terms)
    if any(isinstance(t, SparsePolynomial) for t in terms):
        return reduce(add, terms, SparsePolynomial())
    return fsum_any(terms)


def _as_assignment(V) -> PotentialAssignment:
    if isinstance(V, PotentialAssignment):
        return V
    return PotentialAssignment(V)


def _empty(note: Optional[str] = None) -> SumResult:
    return SumResult(Fraction(0), True, 0, note=note)


def sum_bruteforce(c: WalkClass, V) -> SumResult:
    """Sum of ``h`` over :func:`enumerate_walks` (the oracle)."""
    V = _as_assignment(V)
    walks = enumerate_walks(c)
    value = fsum_any(h_weight(w, c.n, c.direction, V) for w in walks)
    truncated = c.truncation is not None and c.sign_filter == "all" and c.kappa is None
    return SumResult(
        value,
        exact=V.exact and not truncated,
        walk_count=len(walks),
        truncated=truncated,
        truncation=_trunc_dict(c.truncation.max_steps, c.truncation.window) if truncated else None,
    )


def _trunc_dict(L: int, W: int) -> dict:
    return {"L": L, "W": W}


def _positive_dp(n: int, steps, weight, allow_single_step: bool = True):
    """Vertex-ordered DP over ``-n < j < n``; returns (value, walk_count)."""
    n2 = n * n
    A = {-n: Fraction(1)}
    cnt = {-n: 1}
    for j in range(-n + 2, n, 2):
        src = [s for s in steps if j - s in A]
        A[j] = _acc(weight(s) * A[j - s] for s in src) / (n2 - j * j)
        cnt[j] = sum(cnt[j - s] for s in src)
    last = [s for s in steps if n - s in A and (allow_single_step or n - s != -n)]
    value = _acc(weight(s) * A[n - s] for s in last)
    return value, sum(cnt[n - s] for s in last)


def sum_positive_dp(n: int, F: StepSet, V, allow_single_step: bool = True) -> SumResult:
    """Sum of ``h`` over ascending walks using only the positive steps of ``F``.

    ``O(n * |F+|)`` scalar operations.  Exact when ``V`` is rational.
    """
    V = _as_assignment(V)
    steps = F.positive_part
    if not steps:
        raise ValueError("positive part of the step set is empty")
    value, count = _positive_dp(n, steps, V, allow_single_step)
    return SumResult(value, exact=V.exact, walk_count=count)


def abs_sum_positive(n: int, F: StepSet, V, allow_single_step: bool = True) -> SumResult:
    """``sum |h|`` over the positive walks; ``h1 > 0`` there, so ``|V|`` suffices."""
    return sum_positive_dp(n, F, _as_assignment(V).absolute(), allow_single_step)


def sum_polynomial(n: int, F: StepSet, allow_single_step: bool = True) -> SparsePolynomial:
    """The positive-walk sum as a polynomial in the variables ``V(2k)``."""
    steps = F.positive_part
    if not steps:
        raise ValueError("positive part of the step set is empty")
    variables = {s: SparsePolynomial.variable(s) for s in steps}
    value, _ = _positive_dp(n, steps, variables.__getitem__, allow_single_step)
    if not isinstance(value, SparsePolynomial):
        value = SparsePolynomial.constant(value)
    return value


def _kappa_dp(n: int, R: int, S: int, kappa: int, absolute: bool, allow_single_step: bool):
    if R < 1 or S < 1 or kappa < 0:
        raise ValueError("need R, S >= 1 and kappa >= 0")
    rest = n + R * kappa
    if rest % S:
        return None
    q = rest // S
    total = q + kappa
    if total == 1 and not allow_single_step:
        return Fraction(0), 0
    n2 = n * n
    # state: (vertex, negatives used) -> [value, count]; layer t fixes positives used
    layer = {(-n, 0): (Fraction(1), 1)}
    for t in range(1, total + 1):
        nxt: dict = {}
        for (j, k), (val, cnt) in layer.items():
            moves = []
            if t - 1 - k < q:
                moves.append((j + 2 * S, k))
            if k < kappa:
                moves.append((j - 2 * R, k + 1))
            for nj, nk in moves:
                if t < total:
                    d = n2 - nj * nj
                    if d == 0:
                        continue
                    v = val / (abs(d) if absolute else d)
                else:
                    v = val
                if (nj, nk) in nxt:
                    ov, oc = nxt[(nj, nk)]
                    nxt[(nj, nk)] = (ov + v, oc + cnt)
                else:
                    nxt[(nj, nk)] = (v, cnt)
        layer = nxt
    val, cnt = layer.get((n, kappa), (Fraction(0), 0))
    return val, cnt


def kappa_sum(n: int, R: int, S: int, kappa: int, allow_single_step: bool = True) -> SumResult:
    """``B_kappa(n)``: exact sum of ``h1`` over ascending walks on ``{-2R, +2S}``
    with exactly ``kappa`` negative steps.

    When ``S`` does not divide ``n + R*kappa`` the class is empty and the
    result is 0 with ``walk_count == 0``.
    """
    out = _kappa_dp(n, R, S, kappa, False, allow_single_step)
    if out is None:
        return _empty("empty class")
    val, cnt = out
    return SumResult(val, True, cnt, note=None if cnt else "empty class")


def kappa_abs_sum(n: int, R: int, S: int, kappa: int, allow_single_step: bool = True) -> SumResult:
    """Exact ``sum |h1|`` over the same class as :func:`kappa_sum`."""
    out = _kappa_dp(n, R, S, kappa, True, allow_single_step)
    if out is None:
        return _empty("empty class")
    val, cnt = out
    return SumResult(val, True, cnt, note=None if cnt else "empty class")


def _dead(j: int, n: int, eff_steps) -> bool:
    # with single-sign effective steps, a walk past +-n can never come back
    if all(s > 0 for s in eff_steps):
        return j > n
    if all(s < 0 for s in eff_steps):
        return j < -n
    return False


def beta_truncated(
    n: int,
    F: StepSet,
    V,
    L: int,
    W: int,
    direction: str = ASCENDING,
    allow_single_step: bool = True,
) -> SumResult:
    """Sum of ``h`` over all admissible walks with at most ``L`` steps whose
    vertices stay in ``|j| <= n + W``.

    Layered DP over ``(layer, vertex)``.  ``truncated`` is False only when the
    cap provably removed nothing: no live state survives layer ``L`` and no
    live transition left the window (a state is live if some step with
    nonzero weight can still lead it to the target).
    """
    if L < 1 or W < 0:
        raise ValueError("need L >= 1 and W >= 0")
    V = _as_assignment(V)
    start, target = endpoints(n, direction)
    steps = tuple(F)
    eff = tuple(s for s in steps if V(s) != 0)
    bound = n + W
    n2 = n * n

    cur = {start: (Fraction(1), 1)}
    live = {start} if eff else set()
    finals, final_count = [], 0
    cut = False
    for t in range(1, L + 1):
        nxt: dict = {}
        for j, (val, cnt) in cur.items():
            for s in steps:
                nj = j + s
                if abs(nj) > bound:
                    continue
                contrib = V(s) * val
                if nj == target:
                    if t > 1 or allow_single_step:
                        finals.append(contrib)
                        final_count += cnt
                    continue
                if abs(nj) == n:
                    continue
                contrib = contrib / (n2 - nj * nj)
                if nj in nxt:
                    ov, oc = nxt[nj]
                    nxt[nj] = (ov + contrib, oc + cnt)
                else:
                    nxt[nj] = (contrib, cnt)
        nlive = set()
        for j in live:
            for s in eff:
                nj = j + s
                if nj == target or abs(nj) == n or _dead(nj, n, eff):
                    continue
                if abs(nj) > bound:
                    cut = True
                    continue
                nlive.add(nj)
        cur, live = nxt, nlive
    truncated = cut or bool(live)
    value = fsum_any(finals) if finals else Fraction(0)
    return SumResult(
        value,
        exact=V.exact and not truncated,
        walk_count=final_count,
        truncated=truncated,
        truncation=_trunc_dict(L, W),
    )


def sum_dp(c: WalkClass, V) -> SumResult:
    """DP counterpart of :func:`sum_bruteforce` for every finite class shape."""
    V = _as_assignment(V)
    if not c.is_finite:
        from .walks import InfiniteClassError

        raise InfiniteClassError("infinite class: set a sign filter, kappa, or truncation")
    if c.direction == DESCENDING:
        try:
            return sum_dp(c.reflected(), V.reflected())
        except ValueError:
            return _empty("empty class")
    if c.truncation is not None:
        if c.kappa is not None or c.sign_filter != "all":
            raise NotImplementedError("truncation combined with other filters: use sum_bruteforce")
        return beta_truncated(
            c.n, c.step_set, V, c.truncation.max_steps, c.truncation.window,
            allow_single_step=c.allow_single_step,
        )
    if c.kappa is not None:
        neg, pos = c.step_set.negative_part[0], c.step_set.positive_part[0]
        if c.sign_filter == "positive_only" and c.kappa > 0:
            return _empty("empty class")
        res = kappa_sum(c.n, -neg // 2, pos // 2, c.kappa, c.allow_single_step)
        if res.walk_count == 0:
            return res
        q = (2 * c.n - neg * c.kappa) // pos
        if c.sign_filter == "negative_only" and q > 0:
            return _empty("empty class")
        value = res.value * V(neg) ** c.kappa * V(pos) ** q
        return SumResult(value, V.exact, res.walk_count)
    if c.sign_filter == "negative_only":
        return _empty("empty class")
    if not c.step_set.positive_part:
        return _empty("empty class")
    return sum_positive_dp(c.n, c.step_set, V, c.allow_single_step)
