"""Exact identity checks: product formula, gapped sums, vanishing sums.

Run: python3 demos/02_identities.py
"""
from combwalks.identities import catalan_zero_check, prop1_check, prop1_hypothesis_constant, prop2_check

# %% The walk polynomial is a rational multiple of a closed product formula.
for n in range(2, 8):
    r = prop1_check(n)
    print(n, r.verdict, r.constant, "expected", prop1_hypothesis_constant(n))

# %% Gapped-index sums agree with elementary symmetric sums.
for m in range(1, 6):
    print(m, [prop2_check(k, m, "a").verdict for k in range(1, m + 1)])

# %% One-negative-step walks with steps {-2, 4} sum to zero.
print([catalan_zero_check(m).verdict for m in range(1, 11)])
