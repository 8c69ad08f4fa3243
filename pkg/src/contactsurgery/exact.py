"""Exact rationals, negative continued fractions, and 2x2 integer matrices.

Surgery coefficients are :class:`fractions.Fraction` values plus the
distinguished :data:`INF` point.  Expansions, chain products and
boundary slopes run on a compiled kernel when available (falling back
to the pure twin on import failure or on int64 overflow), so every
result is exact regardless of backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _cfcore_py as _pure
from .errors import (
    BadEntry,
    DivisionByZero,
    NonNegativeCoefficient,
    ParseError,
    SingularMatrix,
)

try:
    from . import _cfcore as _fast
except ImportError:
    _fast = None


def kernel_backend() -> str:
    """Name of the kernel backend selected at import: 'compiled' or 'pure'."""
    return "pure" if _fast is None else "compiled"


class _Infinity:
    """The infinite surgery coefficient / slope, distinct from every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("contactsurgery-inf")


INF = _Infinity()

Coefficient = Fraction | _Infinity


def is_infinite(r) -> bool:
    return r is INF


def parse_rational(text: str) -> Coefficient:
    """Parse 'p/q', 'p' or 'inf' into an exact coefficient."""
    text = text.strip()
    if text in ("inf", "-inf", "oo"):
        return INF
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def format_rational(r: Coefficient) -> str:
    if r is INF:
        return "inf"
    return str(r)


@dataclass(frozen=True)
class IntMat2:
    """2x2 integer matrix, columns the images of the (meridian, longitude) basis."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMat2":
        det = self.det()
        if det == 1:
            return IntMat2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return IntMat2(-self.d, self.b, self.c, -self.a)
        raise SingularMatrix(f"matrix {self} has det {det}, expected +-1")

    def apply(self, p: int, q: int) -> tuple[int, int]:
        return self.a * p + self.b * q, self.c * p + self.d * q

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "IntMat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)


@dataclass(frozen=True)
class Curve:
    """Primitive class p*meridian + q*longitude on a torus boundary."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError("curve class (0, 0) is not a curve")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"curve class ({self.p}, {self.q}) is not primitive")

    @property
    def slope(self) -> Coefficient:
        """Slope q/p with the meridian at slope 0 and the longitude at infinity."""
        if self.p == 0:
            return INF
        return Fraction(self.q, self.p)


def neg_cf_expand(r) -> list[int]:
    """Canonical negative continued fraction of r < 0.

    Entries [a1, ..., an] satisfy a1 <= -1, ai <= -2 for i >= 2 and
    evaluate back to r under :func:`cf_eval`.  The recurrence takes
    a = floor(r) and continues on -1/(r - a).
    """
    if r is INF or not isinstance(r, (int, Fraction)):
        raise NonNegativeCoefficient(f"expected a finite rational < 0, got {r!r}")
    r = Fraction(r)
    if r >= 0:
        raise NonNegativeCoefficient(f"expected r < 0, got {r}")
    return _run("neg_cf_expand", r.numerator, r.denominator)


def cf_eval(entries: Sequence[int]) -> Fraction:
    """Evaluate a1 - 1/(a2 - 1/(... - 1/an)) exactly."""
    entries = _int_list(entries)
    try:
        num, den = _run("cf_eval", entries)
    except ZeroDivisionError:
        raise DivisionByZero(
            f"inner tail of {entries} evaluates to zero"
        ) from None
    return Fraction(num, den)


def chain_matrix(rs: Sequence[int]) -> IntMat2:
    """Certificate matrix (1 1; 0 1) * prod_i (-ri 1; -1 0) for a chain rs.

    Has det 1, and first-column ratio a/c equal to the chain's surgery
    coefficient [r1+1, r2, ..., rn].
    """
    rs = _chain_entries(rs)
    return IntMat2(*_run("chain_product", rs))


def boundary_slope(rs: Sequence[int]) -> Fraction:
    """Dividing-set slope y/x on the outer torus after the chain rs.

    (x, y) is the integer solution of prod_i (-ri 1; -1 0) (x, y)^T = (-1, 1)^T;
    the value equals cf_eval([rn, ..., r2, r1+1]).
    """
    rs = _chain_entries(rs)
    x, y = _run("boundary_solve", rs)
    return Fraction(y, x)


def tight_count(rs: Sequence[int]) -> int:
    """Number |(r1+1) * ... * (rn+1)| of tight structures realizing the chain."""
    rs = _chain_entries(rs)
    return abs(math.prod(r + 1 for r in rs))


def mobius_curve(m: IntMat2, curve: Curve) -> Curve:
    """Image of a primitive curve class under a unimodular matrix."""
    if m.det() not in (1, -1):
        raise SingularMatrix(f"matrix {m} has det {m.det()}, expected +-1")
    p, q = m.apply(curve.p, curve.q)
    return Curve(p, q)


def negative_chain(r) -> list[int]:
    """Chain entries [r1, ..., rn], all <= -2, with r = [r1+1, r2, ..., rn]."""
    entries = neg_cf_expand(r)
    return [entries[0] - 1, *entries[1:]]


def boundary_cf(rs: Sequence[int]) -> list[int]:
    """Reversed-and-shifted entry list [rn, ..., r2, r1+1] for the slope identity."""
    rs = _chain_entries(rs)
    rev = list(reversed(rs))
    rev[-1] += 1
    return rev


def truncated_boundary_cf(rs: Sequence[int]) -> list[int] | None:
    """Truncation [rn, ..., rk+1, rk + 1] at the first rk < -2, or None if all -2."""
    rs = _chain_entries(rs)
    for k, r in enumerate(rs):
        if r < -2:
            rev = list(reversed(rs[k:]))
            rev[-1] += 1
            return rev
    return None


def _int_list(entries) -> list[int]:
    out = [int(e) for e in entries]
    if not out:
        raise BadEntry("continued fraction needs at least one entry")
    if any(e != v for e, v in zip(entries, out)):
        raise BadEntry(f"non-integer entry in {list(entries)}")
    return out


def _chain_entries(rs) -> list[int]:
    rs = _int_list(rs)
    bad = [r for r in rs if r > -2]
    if bad:
        raise BadEntry(f"chain entries must be <= -2, got {bad}")
    return rs


def _run(name, *args):
    if _fast is not None:
        try:
            return getattr(_fast, name)(*args)
        except OverflowError:
            pass
    return getattr(_pure, name)(*args)
