"""Exit criteria for the package, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import math
import random
import time
from fractions import Fraction
from itertools import combinations


from combwalks.cli import main
from combwalks.explore import prop3_scan, q3_scan, ratio_positive
from combwalks.export import RunManifest, render, stable_view
from combwalks.identities import (
    EQUAL,
    MISMATCH,
    catalan_zero_check,
    prop1_check,
    prop1_hypothesis_constant,
    prop2_sides,
    random_rational_assignment,
)
from combwalks.numerics import format_rational, poly_eval
from combwalks.sums import (
    beta_truncated,
    kappa_abs_sum,
    kappa_sum,
    sum_bruteforce,
    sum_polynomial,
    sum_positive_dp,
)
from combwalks.walks import PotentialAssignment, StepSet, WalkClass, enumerate_walks, h1

from conftest import naive_h1, naive_walks


def test_c1_catalan_vanishing():
    t0 = time.perf_counter()
    for m in range(1, 16):
        assert kappa_sum(2 * m + 1, 1, 2, 1).value == 0
        assert catalan_zero_check(m).verdict == EQUAL
    assert time.perf_counter() - t0 < 10


def test_c2_gapped_index_identities():
    t0 = time.perf_counter()
    for m in range(1, 13):
        for k in range(1, m + 1):
            lhs, rhs = prop2_sides(k, m, "a")
            assert lhs == rhs, (k, m, "a")
        for k in range(1, m):
            lhs, rhs = prop2_sides(k, m, "b")
            assert lhs == rhs, (k, m, "b")
    assert time.perf_counter() - t0 < 30


def test_c3_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(3)
    assignments = [random_rational_assignment(rng, (2, 4, 6)) for _ in range(20)]
    subsets = [c for r in (1, 2, 3) for c in combinations((2, 4, 6), r)]
    for steps in subsets:
        F = StepSet(steps)
        for n in range(1, 9):
            cls = WalkClass(n, F, sign_filter="positive_only")
            for V in assignments:
                dp = sum_positive_dp(n, F, V)
                bf = sum_bruteforce(cls, V)
                assert format_rational(dp.value) == format_rational(bf.value), (steps, n)
    for R in (1, 2):
        for S in (1, 2):
            for kappa in range(4):
                for n in range(1, 10):
                    walks = enumerate_walks(WalkClass(n, StepSet.two_point(R, S), kappa=kappa))
                    bf = sum((h1(w, n) for w in walks), Fraction(0))
                    res = kappa_sum(n, R, S, kappa)
                    assert format_rational(res.value) == format_rational(bf), (R, S, kappa, n)
                    assert res.walk_count == len(walks)
    assert time.perf_counter() - t0 < 60


def test_c4_product_formula_proportionality():
    constants = {}
    for n in range(2, 11):
        r = prop1_check(n)
        assert r.verdict != MISMATCH, n
        constants[n] = Fraction(1) if r.verdict == EQUAL else r.constant
    assert constants[2] == 1
    assert constants[3] == Fraction(-1, 4)
    assert constants[4] == Fraction(1, 36)
    hypothesis = {n: constants[n] == prop1_hypothesis_constant(n) for n in constants}
    for n, ok in hypothesis.items():
        print(f"c({n}) = {format_rational(constants[n])}; (-1)^n/((n-1)!)^2 hypothesis: {'holds' if ok else 'fails'}")
    # reported, not assumed: the status is surfaced by the check itself
    assert all(prop1_check(n).extra["hypothesis_holds"] == hypothesis[n] for n in constants)


def test_c5_pinned_b3_at_3():
    assert kappa_sum(3, 1, 2, 3).value == Fraction(1, 2949120)
    assert kappa_abs_sum(3, 1, 2, 3).value == Fraction(1, 2949120)
    walks = naive_walks(3, (-2, 4), max_len=6)
    kappa3 = [w for w in walks if sum(s < 0 for s in w) == 3]
    assert sum(naive_h1(w, 3) for w in kappa3) == Fraction(1, 2949120)


def test_c6_three_negative_step_scan(tmp_path, capsys):
    t0 = time.perf_counter()
    rows = q3_scan(range(1, 41), oracle_upto=6)
    assert [r.params["m"] for r in rows] == list(range(1, 41))
    for r in rows:
        m, n = r.params["m"], r.params["n"]
        assert isinstance(r.values["B3"], Fraction)
        assert math.isfinite(r.values["growth_abs_sum_approx"]) and r.values["growth_abs_sum_approx"] > 0
        if m <= 6:
            assert r.flags["oracle"] == "match"
            walks = [w for w in naive_walks(n, (-2, 4), max_len=m + 5) if sum(s < 0 for s in w) == 3]
            assert r.values["B3"] == sum((naive_h1(w, n) for w in walks), Fraction(0))
            assert r.values["abs_sum"] == sum((abs(naive_h1(w, n)) for w in walks), Fraction(0))
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        assert main(["explore", "q3", "--m-max", "40", "--format", "csv", "--out", str(path)]) == 0
        outs.append(stable_view(path.read_text(), "csv").encode())
    assert outs[0] == outs[1]
    assert time.perf_counter() - t0 < 300


def test_c7_random_weight_ratios(tmp_path):
    F = StepSet.up_to(4)
    rng = random.Random(7)
    for n in range(1, 25):
        V = PotentialAssignment({2: Fraction(rng.randint(1, 9), rng.randint(1, 9)), 4: Fraction(rng.randint(1, 9), rng.randint(1, 9))})
        ratio = ratio_positive(n, F, V)[0]
        assert ratio == 1 and isinstance(ratio, Fraction)
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert main(["explore", "q2", "--m", "4", "--samples", "100", "--seed", "2024", "--n-min", "4", "--n-max", "24",
                     "--format", "json", "--out", str(path)]) == 0
        outs.append(stable_view(path.read_text(), "json").encode())
    assert outs[0] == outs[1]


PROP3_V = PotentialAssignment({2: Fraction(1, 2), 4: Fraction(1, 3), -2: Fraction(1, 5), -4: Fraction(1, 7)})
PROP3_DIAG_BOUND = 2e-3  # envelope pinned from the first run: max diagnostic was 1.67e-3 at n = 4


def test_c8_truncated_series():
    F = StepSet.up_to(4)
    Vpos = PotentialAssignment({2: Fraction(3, 5), 4: Fraction(-2, 7), -2: 0, -4: 0})
    for n in range(2, 13):
        r = beta_truncated(n, F, Vpos, n, 0)
        assert r.value == sum_positive_dp(n, F, Vpos).value
        assert r.truncated is False and r.exact
    rows = prop3_scan(4, range(4, 25), PROP3_V, L=40, W=4)
    assert [r.params["n"] for r in rows] == list(range(4, 25))
    text = render(rows, RunManifest("explore prop3", {}), "csv")
    assert text.count("\n") == 2 + 1 + 21
    diags = [r.values[k] for r in rows for k in ("diag_plus_approx", "diag_minus_approx")]
    assert max(diags) <= PROP3_DIAG_BOUND
    gaps = [abs(r.values["ratio_plus_approx"] - 1) for r in rows]
    assert gaps == sorted(gaps, reverse=True)
    degenerate = prop3_scan(4, [4, 5], PotentialAssignment({}), L=10, W=1)
    assert all(r.flags["flag"] == "degenerate" for r in degenerate)


def test_c9_polynomial_layer():
    rng = random.Random(9)
    F = StepSet((2, 4, 6))
    polys = {n: sum_polynomial(n, F) for n in range(1, 13)}
    for n, p in polys.items():
        for _ in range(100):
            V = random_rational_assignment(rng, (2, 4, 6))
            assert poly_eval(p, V) == sum_positive_dp(n, F, V).value
    for m in (2, 4, 6, 8):
        for n in range(1, 13):
            for mono, c in sum_polynomial(n, StepSet.up_to(m)).terms.items():
                assert sum((s // 2) * e for s, e in mono) == n
                assert c > 0
