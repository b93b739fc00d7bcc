"""Signed steps: truncated sums over walks that may overshoot and return.

Run: python3 demos/05_truncated_series.py
"""
from fractions import Fraction

from combwalks import PotentialAssignment
from combwalks.explore import prop3_scan

V = PotentialAssignment({2: Fraction(1, 2), 4: Fraction(1, 3), -2: Fraction(1, 5), -4: Fraction(1, 7)})
for r in prop3_scan(4, range(4, 17, 2), V, L=40, W=4):
    print(r.params["n"], "%.6f" % r.values["ratio_plus_approx"], "%.2e" % r.values["diag_plus_approx"], r.flags)
