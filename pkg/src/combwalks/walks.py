"""Steps, walks, admissibility and the walk weights ``h1`` and ``h``.

A walk of size ``n`` runs from ``-n`` to ``n`` (ascending) or from ``n`` to
``-n`` (descending) using nonzero even steps.  It is admissible when none of
its intermediate vertices lands on ``+n`` or ``-n``.  Exhaustive enumeration
here is the ground truth that the dynamic programs in :mod:`combwalks.sums`
are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .numerics import Scalar, as_rational, format_rational, is_exact

ASCENDING = "ascending"
DESCENDING = "descending"
DIRECTIONS = (ASCENDING, DESCENDING)
SIGN_FILTERS = ("all", "positive_only", "negative_only")

Walk = tuple  # tuple of nonzero even ints, length >= 1


class InfiniteClassError(ValueError):
    pass


class BoundaryVertexError(ZeroDivisionError):
    pass


def _check_direction(direction: str) -> None:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def endpoints(n: int, direction: str) -> tuple:
    _check_direction(direction)
    return (-n, n) if direction == ASCENDING else (n, -n)


@dataclass(frozen=True)
class StepSet:
    """Finite set of permitted steps; every element is even and nonzero."""

    steps: frozenset

    def __init__(self, steps: Iterable[int]):
        steps = frozenset(int(s) for s in steps)
        bad = sorted(s for s in steps if s == 0 or s % 2)
        if bad:
            raise ValueError(f"steps must be nonzero even integers, got {bad}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def up_to(cls, m: int) -> "StepSet":
        """``F_m``: all nonzero even ``j`` with ``|j| <= m``."""
        return cls(j for j in range(-m, m + 1) if j and j % 2 == 0)

    @classmethod
    def two_point(cls, R: int, S: int) -> "StepSet":
        """``{-2R, +2S}``, the step set of the kappa-classes."""
        if R < 1 or S < 1:
            raise ValueError("R and S must be >= 1")
        return cls((-2 * R, 2 * S))

    @property
    def positive_part(self) -> tuple:
        return tuple(sorted(s for s in self.steps if s > 0))

    @property
    def negative_part(self) -> tuple:
        return tuple(sorted(s for s in self.steps if s < 0))

    def reflected(self) -> "StepSet":
        return StepSet(-s for s in self.steps)

    def filtered(self, sign_filter: str) -> tuple:
        if sign_filter == "positive_only":
            return self.positive_part
        if sign_filter == "negative_only":
            return self.negative_part
        return tuple(sorted(self.steps))

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.steps))

    def __contains__(self, s) -> bool:
        return s in self.steps

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> list:
        return sorted(self.steps)


class PotentialAssignment:
    """Weights ``V(m)`` for nonzero even steps; unlisted steps weigh 0.

    Values are Fractions (ints are promoted) or floats/complex numbers.  A key
    of 0 is refused: ``V(0) = 0`` holds by definition and is not data.
    """

    __slots__ = ("mapping",)

    def __init__(self, values: Mapping[int, Scalar] | None = None):
        clean = {}
        for k, v in (values or {}).items():
            k = int(k)
            if k == 0:
                raise ValueError("V(0) is fixed to 0 and cannot be assigned")
            if k % 2:
                raise ValueError(f"V({k}): steps are even")
            if isinstance(v, (int, Fraction, str)) and not isinstance(v, bool):
                v = as_rational(v)
            clean[k] = v
        self.mapping = clean

    def __call__(self, step: int) -> Scalar:
        return self.mapping.get(step, Fraction(0))

    def __getitem__(self, step: int) -> Scalar:
        return self.mapping[step]

    def __contains__(self, step) -> bool:
        return step in self.mapping

    def __eq__(self, other):
        if isinstance(other, PotentialAssignment):
            return self.mapping == other.mapping
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"V({k})={v}" for k, v in sorted(self.mapping.items()))
        return f"PotentialAssignment({body})"

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.mapping.values())

    def reflected(self) -> "PotentialAssignment":
        """``V'(s) = V(-s)``; pairs with :meth:`StepSet.reflected`."""
        return PotentialAssignment({-k: v for k, v in self.mapping.items()})

    def absolute(self) -> "PotentialAssignment":
        return PotentialAssignment({k: abs(v) for k, v in self.mapping.items()})

    def support(self) -> tuple:
        return tuple(sorted(k for k, v in self.mapping.items() if v != 0))

    def to_json(self) -> dict:
        out = {}
        for k, v in sorted(self.mapping.items()):
            if is_exact(v):
                out[str(k)] = format_rational(v)
            elif isinstance(v, complex):
                out[str(k)] = {"re": v.real, "im": v.imag}
            else:
                out[str(k)] = v
        return out


@dataclass(frozen=True)
class Truncation:
    max_steps: int
    window: int

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps L must be >= 1")
        if self.window < 0:
            raise ValueError("window W must be >= 0")


@dataclass(frozen=True)
class WalkClass:
    """Declarative description of a family of admissible walks."""

    n: int
    step_set: StepSet
    direction: str = ASCENDING
    sign_filter: str = "all"
    kappa: Optional[int] = None
    truncation: Optional[Truncation] = None
    allow_single_step: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        _check_direction(self.direction)
        if self.sign_filter not in SIGN_FILTERS:
            raise ValueError(f"sign_filter must be one of {SIGN_FILTERS}")
        if not isinstance(self.step_set, StepSet):
            object.__setattr__(self, "step_set", StepSet(self.step_set))
        if self.kappa is not None:
            if self.kappa < 0:
                raise ValueError("kappa must be >= 0")
            if len(self.step_set.positive_part) != 1 or len(self.step_set.negative_part) != 1:
                raise ValueError("kappa requires a step set of the form {-2R, +2S}")

    @property
    def start(self) -> int:
        return endpoints(self.n, self.direction)[0]

    @property
    def target(self) -> int:
        return endpoints(self.n, self.direction)[1]

    @property
    def is_finite(self) -> bool:
        return (
            self.sign_filter != "all"
            or self.kappa is not None
            or self.truncation is not None
        )

    def allowed_steps(self) -> tuple:
        return self.step_set.filtered(self.sign_filter)

    def reflected(self) -> "WalkClass":
        """Image under ``s -> -s`` with the direction swapped."""
        flip = {"all": "all", "positive_only": "negative_only", "negative_only": "positive_only"}
        kappa = self.kappa
        if kappa is not None:
            # negatives of the image are the positives of the original
            pos, neg = self.step_set.positive_part[0], self.step_set.negative_part[0]
            rest = (self.target - self.start) - neg * kappa
            if rest % pos or rest < 0:
                raise ValueError("empty kappa-class has no canonical reflection")
            kappa = rest // pos
        return WalkClass(
            n=self.n,
            step_set=self.step_set.reflected(),
            direction=DESCENDING if self.direction == ASCENDING else ASCENDING,
            sign_filter=flip[self.sign_filter],
            kappa=kappa,
            truncation=self.truncation,
            allow_single_step=self.allow_single_step,
        )

    def contains(self, walk: Sequence[int]) -> bool:
        return bool(is_admissible(walk, self.n, self.direction, self))

    def to_json(self) -> dict:
        d = {
            "n": self.n,
            "direction": self.direction,
            "steps": self.step_set.to_json(),
            "sign_filter": self.sign_filter,
        }
        if self.kappa is not None:
            d["kappa"] = self.kappa
        if self.truncation is not None:
            d["truncation"] = {"L": self.truncation.max_steps, "W": self.truncation.window}
        if not self.allow_single_step:
            d["allow_single_step"] = False
        return d

    @classmethod
    def from_json(cls, d: dict) -> "WalkClass":
        trunc = d.get("truncation")
        return cls(
            n=d["n"],
            step_set=StepSet(d["steps"]),
            direction=d.get("direction", ASCENDING),
            sign_filter=d.get("sign_filter", "all"),
            kappa=d.get("kappa"),
            truncation=Truncation(trunc["L"], trunc["W"]) if trunc else None,
            allow_single_step=d.get("allow_single_step", True),
        )


class Admissibility(NamedTuple):
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def vertices(walk: Sequence[int], n: int, direction: str = ASCENDING) -> tuple:
    """Vertices ``j(0), ..., j(nu+1)`` (partial sums from the start point)."""
    j = endpoints(n, direction)[0]
    out = [j]
    for s in walk:
        j += s
        out.append(j)
    return tuple(out)


def is_admissible(
    walk: Sequence[int],
    n: int,
    direction: str = ASCENDING,
    constraints: Optional[WalkClass] = None,
) -> Admissibility:
    """Check a walk against the admissibility rule and optional class constraints.

    Never raises for a bad walk; the ``reason`` field says what failed.
    """
    if len(walk) == 0:
        return Admissibility(False, "empty walk")
    if any(s == 0 or s % 2 for s in walk):
        return Admissibility(False, "odd or zero step")
    start, target = endpoints(n, direction)
    if sum(walk) != target - start:
        return Admissibility(False, "wrong endpoint")
    vs = vertices(walk, n, direction)
    if any(abs(j) == n for j in vs[1:-1]):
        return Admissibility(False, "boundary vertex")
    if constraints is None:
        return Admissibility(True)
    c = constraints
    if c.n != n or c.direction != direction:
        return Admissibility(False, "class mismatch")
    if any(s not in c.step_set for s in walk):
        return Admissibility(False, "step not permitted")
    if c.sign_filter == "positive_only" and any(s < 0 for s in walk):
        return Admissibility(False, "sign filter")
    if c.sign_filter == "negative_only" and any(s > 0 for s in walk):
        return Admissibility(False, "sign filter")
    if c.kappa is not None and sum(1 for s in walk if s < 0) != c.kappa:
        return Admissibility(False, "kappa count")
    if c.truncation is not None:
        if len(walk) > c.truncation.max_steps:
            return Admissibility(False, "too many steps")
        if any(abs(j) > n + c.truncation.window for j in vs):
            return Admissibility(False, "outside window")
    if not c.allow_single_step and len(walk) == 1:
        return Admissibility(False, "single step excluded")
    return Admissibility(True)


def h1(walk: Sequence[int], n: int, direction: str = ASCENDING) -> Fraction:
    """``prod 1/(n^2 - j(t)^2)`` over the intermediate vertices ``t = 1..nu``."""
    out = Fraction(1)
    n2 = n * n
    for j in vertices(walk, n, direction)[1:-1]:
        d = n2 - j * j
        if d == 0:
            raise BoundaryVertexError(f"vertex on boundary: j={j} equals +-{n}")
        out /= d
    return out


def h_weight(walk: Sequence[int], n: int, direction: str, V) -> Scalar:
    """``h1(walk)`` times the product of the step weights ``V(x(t))``."""
    w = h1(walk, n, direction)
    for s in walk:
        w = w * V(s)
    return w


def _compositions(total: int, parts: Sequence[int]) -> Iterator[tuple]:
    # lexicographic because ``parts`` is ascending
    if total == 0:
        yield ()
        return
    for p in parts:
        if p > total:
            break
        for rest in _compositions(total - p, parts):
            yield (p,) + rest


def _enumerate_kappa(c: WalkClass) -> list:
    neg = c.step_set.negative_part[0]
    pos = c.step_set.positive_part[0]
    kappa = c.kappa
    if c.sign_filter == "positive_only" and kappa > 0:
        return []
    span = c.target - c.start
    rest = span - neg * kappa
    if rest % pos or rest < 0:
        return []
    q = rest // pos
    if c.sign_filter == "negative_only" and q > 0:
        return []
    total = q + kappa
    if total == 0:
        return []
    out = []
    for negs in combinations(range(total), kappa):
        ns = set(negs)
        w = tuple(neg if t in ns else pos for t in range(total))
        if c.contains(w):
            out.append(w)
    return sorted(out)


def _enumerate_dfs(c: WalkClass) -> list:
    steps = c.allowed_steps()
    if not steps:
        return []
    n, start, target = c.n, c.start, c.target
    L = c.truncation.max_steps if c.truncation else None
    bound = n + c.truncation.window if c.truncation else None
    monotone = c.sign_filter != "all"
    out = []
    path: list = []

    def dfs(j: int) -> None:
        if L is not None and len(path) >= L:
            return
        for s in steps:
            nj = j + s
            if bound is not None and abs(nj) > bound:
                continue
            if monotone and (nj - target) * (start - target) < 0:
                continue  # overshot; monotone walks cannot come back
            path.append(s)
            if nj == target:
                out.append(tuple(path))
            elif abs(nj) != n:
                dfs(nj)
            path.pop()

    dfs(start)
    return sorted(w for w in out if c.contains(w))


def enumerate_walks(c: WalkClass) -> list:
    """All admissible walks of a finite class, sorted lexicographically."""
    if not c.is_finite:
        raise InfiniteClassError("infinite class: set a sign filter, kappa, or truncation")
    if c.sign_filter == "positive_only" and c.direction == DESCENDING:
        return []
    if c.sign_filter == "negative_only" and c.direction == ASCENDING:
        return []
    if c.kappa is not None and c.truncation is None:
        return _enumerate_kappa(c)
    if c.sign_filter == "positive_only" and c.truncation is None and c.kappa is None:
        walks = list(_compositions(2 * c.n, c.step_set.positive_part))
        return sorted(w for w in walks if c.allow_single_step or len(w) > 1)
    if c.sign_filter == "negative_only" and c.truncation is None and c.kappa is None:
        parts = [-s for s in reversed(c.step_set.negative_part)]
        walks = [tuple(-s for s in w) for w in _compositions(2 * c.n, parts)]
        return sorted(w for w in walks if c.allow_single_step or len(w) > 1)
    return _enumerate_dfs(c)
