"""Walks with exactly three negative steps: exact sums and growth.

Run: python3 demos/03_three_negative_steps.py
"""
from combwalks.explore import q3_scan

rows = q3_scan(range(1, 31), oracle_upto=5)
print(f"{'m':>3} {'walks':>8} {'(m! sum|h1|)^(1/m)':>20}")
for r in rows:
    print(f"{r.params['m']:>3} {r.values['walk_count']:>8} {r.values['growth_abs_sum_approx']:>20.6g}")
