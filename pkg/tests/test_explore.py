from fractions import Fraction

import numpy as np
import pytest

from combwalks.explore import (
    ANNULUS,
    prop3_scan,
    q1_scan,
    q2_rows,
    q2_scan,
    q3_scan,
    ratio_positive,
    sample_annulus,
)
from combwalks.export import RunManifest, render, stable_view
from combwalks.walks import PotentialAssignment, StepSet


def _row(rows, **params):
    for r in rows:
        if all(r.params[k] == v for k, v in params.items()):
            return r
    raise KeyError(params)


def test_q1_examples():
    r = q1_scan(4, [2], full=True)[0]
    assert r.values["terms"] == 2 and r.values["polynomial"] == "V(4) + 1/4*V(2)^2"
    r = q1_scan(2, [3], full=True)[0]
    assert r.values["terms"] == 1 and r.values["polynomial"] == "1/64*V(2)^3"
    r = q1_scan(6, [3], full=True)[0]
    assert r.values["terms"] == 3
    assert r.values["polynomial"] == "V(6) + 1/4*V(2)*V(4) + 1/64*V(2)^3"


def test_q1_normalized_pure_power():
    rows = q1_scan(4, range(1, 9))
    assert all(r.values["normalized_V2_power"] == 1 for r in rows)
    assert all(r.values["weighted_degrees"] == str(r.params["n"]) for r in rows)


def test_annulus_sampling():
    z = sample_annulus(500, 3, seed=7)
    r = np.abs(z)
    assert z.shape == (500, 3)
    assert r.min() >= ANNULUS[0] and r.max() <= ANNULUS[1]
    assert np.array_equal(z, sample_annulus(500, 3, seed=7))


def test_ratio_one_for_positive_real():
    F = StepSet.up_to(4)
    V = PotentialAssignment({2: Fraction(3, 2), 4: Fraction(1, 3)})
    for n in range(1, 25):
        assert ratio_positive(n, F, V)[0] == 1
    rows = q2_rows([0.7, 1.9], 4, range(4, 25))
    assert all(r.values["ratio_approx"] == 1.0 for r in rows)


def test_ratio_sign_aligned_example():
    ratio, absolute, signed = ratio_positive(3, StepSet.up_to(4), PotentialAssignment({2: -1, 4: 1}))
    assert ratio == 1
    assert absolute == Fraction(1, 64) + Fraction(1, 4)


def test_near_cancellation_guard():
    # n = 2: V(2)^2/4 + V(4) vanishes at V(2) = 2, V(4) = -1
    rows = q2_rows([2.0, -1.0], 4, [2, 3])
    r2 = _row(rows, n=2)
    assert r2.flags["flag"] == "near-cancellation" and r2.values["ratio_approx"] is None
    assert _row(rows, n=3).flags["flag"] == ""
    assert ratio_positive(2, StepSet.up_to(4), PotentialAssignment({2: 2, 4: -1}))[0] is None


def test_q2_running_max_monotone():
    rows = q2_scan(4, range(4, 25), samples=10, seed=3)
    for sid in range(10):
        col = [r.values["running_max_approx"] for r in sorted(rows, key=lambda r: r.params["n"]) if r.params["sample"] == sid]
        assert col == sorted(col)
        assert all(c >= 1.0 for c in col)


def test_q2_parallel_matches_serial():
    serial = q2_scan(4, range(4, 10), samples=4, seed=11, jobs=1)
    pooled = q2_scan(4, range(4, 10), samples=4, seed=11, jobs=2)
    assert [r.record() for r in serial] == [r.record() for r in pooled]


def test_q3_examples():
    r = q3_scan([1])[0]
    assert r.values["B3"] == Fraction(1, 2949120)
    assert r.values["abs_sum"] == Fraction(1, 2949120)
    assert r.values["mfact_abs_B3_approx"] == pytest.approx(3.391e-7, rel=1e-3)
    assert r.flags["oracle"] == "match"


def test_q3_only_odd_kappa_rows():
    rows = q3_scan(range(1, 8))
    assert [r.params["n"] for r in rows] == [2 * m + 1 for m in range(1, 8)]
    assert all(r.values["walk_count"] > 0 for r in rows)


F4 = StepSet.up_to(4)


def test_prop3_zero_negative_weights_gives_unit_ratios():
    V = PotentialAssignment({2: Fraction(1, 2), 4: Fraction(1, 3), -2: 0, -4: 0})
    rows = prop3_scan(4, range(4, 13), V, L=30, W=2)
    for r in rows:
        # descending side: negative weights vanish, so beta- and its reference are both 0
        assert r.values["ratio_plus_approx"] == 1.0
        assert not r.flags["truncated_plus"]


def test_prop3_symmetric_weights_unit_ratios():
    V = PotentialAssignment({2: Fraction(1, 2), 4: Fraction(1, 3)})
    Vr = PotentialAssignment({-2: Fraction(1, 2), -4: Fraction(1, 3)})
    for W in (V, Vr):
        for r in prop3_scan(4, [4, 5, 6], W, L=20, W=2):
            ratio = r.values["ratio_plus_approx"] if W is V else r.values["ratio_minus_approx"]
            assert ratio == 1.0


def test_prop3_degenerate_guard():
    rows = prop3_scan(4, [4, 6], PotentialAssignment({}), L=10, W=1)
    for r in rows:
        assert r.flags["flag"] == "degenerate"
        assert r.values["ratio_plus_approx"] is None and r.values["diag_plus_approx"] is None


def test_prop3_float_near_cancellation_guard():
    V = PotentialAssignment({2: 2.0, 4: -1.0, -2: 2.0, -4: -1.0})
    r = prop3_scan(4, [2], V, L=4, W=0)[0]
    assert r.flags["flag"] == "degenerate"


def test_render_is_deterministic_modulo_run_info():
    rows = q3_scan(range(1, 4))
    for fmt in ("json", "csv", "text"):
        a = render(rows, RunManifest("explore q3", {"m_max": 3}, wall_time_s=0.1), fmt)
        b = render(list(reversed(rows)), RunManifest("explore q3", {"m_max": 3}, wall_time_s=9.0), fmt)
        assert stable_view(a, fmt) == stable_view(b, fmt)


def test_csv_float_digits_and_rationals():
    rows = q3_scan([1, 2])
    text = render(rows, RunManifest("explore q3", {}), "csv")
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    first = dict(zip(header, lines[1].split(",")))
    assert first["B3"] == "1/2949120"
    assert first["mfact_abs_B3_approx"] == format(1 / 2949120, ".17g")
    assert float(first["mfact_abs_B3_approx"]) == 1 / 2949120
