"""Walks between -n and n, their weights, and the sum over a class.

Run: python3 demos/01_walks_and_weights.py
"""
from fractions import Fraction

from combwalks import PotentialAssignment, StepSet, WalkClass, enumerate_walks, h1
from combwalks.sums import sum_bruteforce, sum_positive_dp

# %% Every ascending walk from -3 to 3 with steps in {2, 4}.
F = StepSet.up_to(4)
cls = WalkClass(3, F, sign_filter="positive_only")
for w in enumerate_walks(cls):
    print(w, "h1 =", h1(w, 3))

# %% Attach a weight V(s) to each step and sum over the class in two ways.
V = PotentialAssignment({2: Fraction(1, 3), 4: Fraction(-7, 2)})
print("enumeration:", sum_bruteforce(cls, V).value)
print("vertex DP:  ", sum_positive_dp(3, F, V).value)

# %% The DP stays fast long after enumeration would be hopeless.
big = sum_positive_dp(200, F, V)
print("n = 200: exact value with a", len(str(big.value.denominator)), "digit denominator over", big.walk_count, "walks")
