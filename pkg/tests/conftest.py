import itertools
import random
from fractions import Fraction

import pytest


def naive_walks(n, steps, direction="ascending", max_len=None, window=None):
    """Every step sequence up to ``max_len`` checked directly against the rules.

    Deliberately shares no code with the package: partial sums, boundary test
    and endpoint test are recomputed here from scratch.
    """
    start, target = (-n, n) if direction == "ascending" else (n, -n)
    span = abs(target - start)
    if max_len is None:
        max_len = span // min(abs(s) for s in steps) + 1
    out = []
    for length in range(1, max_len + 1):
        for seq in itertools.product(sorted(steps), repeat=length):
            if sum(seq) != target - start:
                continue
            j, ok = start, True
            for t, s in enumerate(seq):
                j += s
                if window is not None and abs(j) > n + window:
                    ok = False
                    break
                if t < length - 1 and (j == n or j == -n):
                    ok = False
                    break
            if ok:
                out.append(seq)
    return sorted(out)


def naive_h1(seq, n, direction="ascending"):
    j = -n if direction == "ascending" else n
    out = Fraction(1)
    for s in seq[:-1]:
        j += s
        out /= n * n - j * j
    return out


def naive_h(seq, n, V, direction="ascending"):
    out = naive_h1(seq, n, direction)
    for s in seq:
        out *= V.get(s, 0)
    return out


@pytest.fixture
def rng():
    return random.Random(20261019)


def random_rational(rng, lo=-9, hi=9, den=9, nonzero=True):
    while True:
        q = Fraction(rng.randint(lo, hi), rng.randint(1, den))
        if q or not nonzero:
            return q


ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        name = report.nodeid.split("::", 1)[1]
        ACCEPTANCE_RESULTS[name] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (status, secs) in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{status}  {name}  ({secs:.2f}s)")
