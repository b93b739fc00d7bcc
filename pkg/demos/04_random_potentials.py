"""sum |h| / |sum h| under random complex step weights on an annulus.

Run: python3 demos/04_random_potentials.py
"""
import numpy as np

from combwalks.explore import q2_scan

rows = q2_scan(4, range(4, 21), samples=20, seed=2024)
final = {}
for r in rows:
    final[r.params["sample"]] = r.values["running_max_approx"]
vals = np.array([v for v in final.values() if v is not None])
print("running max of the ratio at n = 20 over 20 samples")
print("min %.4g  median %.4g  max %.4g" % (vals.min(), np.median(vals), vals.max()))
