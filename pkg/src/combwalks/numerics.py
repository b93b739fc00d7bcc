"""Exact scalars and sparse multivariate polynomials.

Rationals are plain :class:`fractions.Fraction` objects; this module adds the
canonical ``"num/den"`` text form used in every exported file, and a small
sparse polynomial type whose variables are the step weights ``V(2k)``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

ExactRational = Fraction
ApproxComplex = complex
Scalar = Union[Fraction, int, float, complex]

_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


class UnassignedVariableError(KeyError):
    """A polynomial variable has no value in the assignment."""

    def __init__(self, step: int):
        super().__init__(step)
        self.step = step

    def __str__(self) -> str:
        return f"unassigned variable V({self.step})"


class NotProportionalError(ValueError):
    pass


class ZeroDivisorError(ZeroDivisionError):
    pass


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and canonical strings to a Fraction.

    Floats are refused: an exact result must never be seeded by a rounded
    value.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(q) -> str:
    """Canonical base-10 form: ``"num/den"``, or ``"num"`` when den == 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    """Inverse of :func:`format_rational`.

    Non-reduced input such as ``"2/4"`` is accepted and normalised; decimals,
    whitespace and signs on the denominator are rejected.
    """
    s = s.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(s)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def fsum_any(values: Iterable[Scalar]) -> Scalar:
    """Sum that is exact for rationals and compensated for floats/complex."""
    vals = list(values)
    if not vals:
        return Fraction(0)
    if all(is_exact(v) for v in vals):
        return sum(vals, Fraction(0))
    if any(isinstance(v, complex) for v in vals):
        re_ = math.fsum(complex(v).real for v in vals)
        im_ = math.fsum(complex(v).imag for v in vals)
        return complex(re_, im_)
    return math.fsum(float(v) for v in vals)


Monomial = tuple  # sorted tuple of (step, exponent) pairs, exponents > 0


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for step, e in b:
        d[step] = d.get(step, 0) + e
    return tuple(sorted(d.items()))


class SparsePolynomial:
    """Polynomial in the variables ``V(2k)`` with Fraction coefficients.

    Terms are stored as ``{monomial: coeff}`` where a monomial is a sorted
    tuple of ``(step, exponent)`` pairs.  Zero coefficients are never stored,
    so two polynomials are equal exactly when their term maps are equal.
    Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_rational(c)
            if c == 0:
                continue
            mono = tuple(sorted((int(s), int(e)) for s, e in mono if e != 0))
            for s, e in mono:
                if s <= 0 or s % 2:
                    raise ValueError(f"variable V({s}) is not a positive even step")
                if e < 0:
                    raise ValueError("negative exponent")
            clean[mono] = clean.get(mono, Fraction(0)) + c
            if clean[mono] == 0:
                del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def variable(cls, step: int) -> "SparsePolynomial":
        return cls({((step, 1),): 1})

    @classmethod
    def constant(cls, c) -> "SparsePolynomial":
        return cls({(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def variables(self) -> tuple:
        return tuple(sorted({s for mono in self._terms for s, _ in mono}))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def exponent_vector(self, mono: Monomial, variables=None) -> tuple:
        variables = self.variables if variables is None else variables
        d = dict(mono)
        return tuple(d.get(s, 0) for s in variables)

    def sorted_terms(self) -> list:
        """Terms sorted lexicographically by dense exponent vector."""
        vs = self.variables
        return sorted(self._terms.items(), key=lambda kv: self.exponent_vector(kv[0], vs))

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            return other
        return SparsePolynomial.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return SparsePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            c = as_rational(other)
            return SparsePolynomial({m: v * c for m, v in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SparsePolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return SparsePolynomial({m: v / c for m, v in self._terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self._terms == other._terms
        if is_exact(other):
            return self == SparsePolynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def weighted_degrees(self) -> set:
        """Set of ``sum(k * c_k)`` over monomials ``prod V(2k)^c_k``."""
        return {sum((s // 2) * e for s, e in mono) for mono in self._terms}

    def __call__(self, assignment):
        return poly_eval(self, assignment)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"V({s})" + (f"^{e}" if e > 1 else "") for s, e in mono]
            if not factors:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_rational(c) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SparsePolynomial({self})"

    def to_json(self) -> list:
        vs = self.variables
        return [
            {
                "exponents": {str(s): e for s, e in zip(vs, self.exponent_vector(mono, vs))},
                "coeff": format_rational(c),
            }
            for mono, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "SparsePolynomial":
        terms = {}
        for t in data:
            mono = tuple((int(s), int(e)) for s, e in t["exponents"].items() if int(e))
            terms[mono] = parse_rational(t["coeff"])
        return cls(terms)


def _lookup(assignment, step: int):
    values = getattr(assignment, "mapping", assignment)
    try:
        return values[step]
    except KeyError:
        raise UnassignedVariableError(step) from None


def poly_eval(p: SparsePolynomial, assignment) -> Scalar:
    """Evaluate ``p`` at ``assignment`` (a mapping or PotentialAssignment).

    Every variable of ``p`` must be explicitly present.  The result is exact
    when all assigned values are rational.
    """
    vals = {s: _lookup(assignment, s) for s in p.variables}
    total = []
    for mono, c in p.sorted_terms():
        term = c
        for s, e in mono:
            term = term * vals[s] ** e
        total.append(term)
    return fsum_any(total)


def proportionality_constant(p: SparsePolynomial, q: SparsePolynomial) -> Fraction:
    """Return ``c`` with ``p == c * q`` termwise.

    Raises :class:`NotProportionalError` when supports differ or term ratios
    disagree, and :class:`ZeroDivisorError` when ``q`` is zero but ``p`` is not.
    """
    if q.is_zero():
        if p.is_zero():
            return Fraction(0)
        raise ZeroDivisorError("zero divisor: q is the zero polynomial")
    if p.is_zero():
        return Fraction(0)
    pt, qt = p.terms, q.terms
    if pt.keys() != qt.keys():
        raise NotProportionalError("not proportional: supports differ")
    ratios = {pt[m] / qt[m] for m in qt}
    if len(ratios) != 1:
        raise NotProportionalError("not proportional: term ratios disagree")
    return ratios.pop()
