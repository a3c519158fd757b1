"""Exact arithmetic on numbers written in the positional system with base grossone.

A :class:`GrossNumber` is a finite sum ``c_1 ①^p_1 + c_2 ①^p_2 + ...`` stored as a
tuple of ``(power, digit)`` pairs with strictly decreasing integer powers and
nonzero float digits.  The empty tuple is zero.  Arithmetic is exact whenever the
digit arithmetic is exact (e.g. dyadic digits of moderate size).

Text form (``GrossLiteral``)::

    number ::= '0' | term ('+' term)*
    term   ::= digit '@' power

so ``1@1`` is ①, ``1@-1`` is ①⁻¹ and ``1@1+-12.0312@-1`` is ① - 12.0312·①⁻¹.
"""

from __future__ import annotations

import math
import re
from numbers import Real
from typing import Iterable

__all__ = [
    "GrossNumber",
    "GrossError",
    "GrossParseError",
    "PowerOverflowError",
    "DigitOverflowError",
    "UnsupportedDivisionError",
    "GROSSONE",
    "ZERO",
    "ONE",
    "normalize",
    "parse",
    "parse_scalar",
]

POWER_MIN = -(2**63)
POWER_MAX = 2**63 - 1

_SUPERSCRIPT = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


class GrossError(ArithmeticError):
    """Base class for grossone arithmetic errors."""


class UnsupportedDivisionError(GrossError):
    """Division by zero or by a value with more than one term."""


class PowerOverflowError(GrossError, OverflowError):
    """A grosspower left the signed 64-bit range."""


class DigitOverflowError(GrossError, OverflowError):
    """A grossdigit overflowed the double range."""


class GrossParseError(ValueError):
    """Malformed gross literal; ``position`` is the offending character offset."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"{reason} at position {position} in {text!r}")


def _check_power(p: int) -> int:
    if not POWER_MIN <= p <= POWER_MAX:
        raise PowerOverflowError(f"grosspower {p} out of range")
    return p


def _check_digit(d) -> float:
    d = float(d)
    if not math.isfinite(d):
        raise ValueError(f"grossdigit must be finite, got {d!r}")
    return d


def normalize(raw_terms: Iterable[tuple[int, float]]) -> "GrossNumber":
    """Merge like powers, drop zero digits and sort by decreasing power."""
    acc: dict[int, float] = {}
    for p, d in raw_terms:
        p = _check_power(int(p))
        d = _check_digit(d)
        acc[p] = acc[p] + d if p in acc else d
    terms = tuple((p, acc[p]) for p in sorted(acc, reverse=True) if acc[p] != 0.0)
    return GrossNumber._make(terms)


def _merge(a: tuple, b: tuple, negate_b: bool) -> tuple:
    # a + b (or a - b) over sorted term tuples
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        pa, da = a[i]
        pb, db = b[j]
        if pa > pb:
            out.append(a[i])
            i += 1
        elif pa < pb:
            out.append((pb, -db) if negate_b else b[j])
            j += 1
        else:
            d = da - db if negate_b else da + db
            if d != 0.0:
                out.append((pa, d))
            i += 1
            j += 1
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend((p, -d) for p, d in b[j:]) if negate_b else out.extend(b[j:])
    return tuple(out)


def _scale(terms: tuple, c: float) -> tuple:
    if c == 0.0:
        return ()
    return tuple((p, d * c) for p, d in terms if d * c != 0.0)


def _cmp_terms(a: tuple, b: tuple) -> int:
    """Sign of ``a - b`` decided by the highest power where the two differ."""
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        pa, da = a[i]
        pb, db = b[j]
        if pa > pb:
            return 1 if da > 0 else -1
        if pa < pb:
            return -1 if db > 0 else 1
        if da != db:
            return 1 if da > db else -1
        i += 1
        j += 1
    if i < na:
        return 1 if a[i][1] > 0 else -1
    if j < nb:
        return -1 if b[j][1] > 0 else 1
    return 0


class GrossNumber:
    """Immutable value ``sum(digit * ①**power)``.

    Mixed arithmetic with Python ints and floats treats the real operand as the
    purely finite number ``r@0``.
    """

    __slots__ = ("_terms",)

    def __init__(self, value: "GrossNumber | Real | str | Iterable[tuple[int, float]]" = 0):
        if isinstance(value, GrossNumber):
            terms = value._terms
        elif isinstance(value, str):
            terms = parse(value)._terms
        elif isinstance(value, Real):
            terms = GrossNumber.from_real(value)._terms
        else:
            terms = normalize(value)._terms
        object.__setattr__(self, "_terms", terms)

    @classmethod
    def _make(cls, terms: tuple) -> "GrossNumber":
        for _, d in terms:
            if not math.isfinite(d):
                raise DigitOverflowError(f"grossdigit overflow: {d!r}")
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        return obj

    @classmethod
    def from_real(cls, r: Real) -> "GrossNumber":
        d = _check_digit(r)
        return cls._make(((0, d),) if d != 0.0 else ())

    @classmethod
    def monomial(cls, digit: float, power: int) -> "GrossNumber":
        d = _check_digit(digit)
        return cls._make(((_check_power(int(power)), d),) if d != 0.0 else ())

    def __setattr__(self, name, value):
        raise AttributeError("GrossNumber is immutable")

    def __reduce__(self):
        return (GrossNumber._make, (self._terms,))

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, float], ...]:
        return self._terms

    @property
    def leading_power(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_finite(self) -> bool:
        """Finite in the broad sense: no positive grosspower."""
        return not self._terms or self._terms[0][0] <= 0

    def is_purely_finite(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_infinite(self) -> bool:
        return bool(self._terms) and self._terms[0][0] > 0

    def is_infinitesimal(self) -> bool:
        return bool(self._terms) and self._terms[0][0] < 0

    def digit(self, power: int) -> float:
        for p, d in self._terms:
            if p == power:
                return d
        return 0.0

    def to_real(self) -> float:
        """Value as a float; only defined for purely finite numbers."""
        if not self._terms:
            return 0.0
        if len(self._terms) == 1 and self._terms[0][0] == 0:
            return self._terms[0][1]
        raise GrossError(f"{self} is not purely finite")

    def __float__(self) -> float:
        return self.to_real()

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GrossNumber):
            return other
        if isinstance(other, Real):
            return GrossNumber.from_real(other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, GrossNumber):
            return GrossNumber._make(_merge(self._terms, other._terms, False))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GrossNumber._make(_merge(self._terms, other._terms, False))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GrossNumber._make(_merge(self._terms, other._terms, True))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GrossNumber._make(_merge(other._terms, self._terms, True))

    def __neg__(self):
        return GrossNumber._make(tuple((p, -d) for p, d in self._terms))

    def __pos__(self):
        return self

    def __abs__(self):
        if self._terms and self._terms[0][1] < 0:
            return -self
        return self

    def __mul__(self, other):
        if isinstance(other, Real) and not isinstance(other, GrossNumber):
            return GrossNumber._make(_scale(self._terms, _check_digit(other)))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(b) == 1 and b[0][0] == 0:
            return GrossNumber._make(_scale(a, b[0][1]))
        if len(a) == 1 and a[0][0] == 0:
            return GrossNumber._make(_scale(b, a[0][1]))
        return normalize((_check_power(pa + pb), da * db) for pa, da in a for pb, db in b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Real) and not isinstance(other, GrossNumber):
            c = _check_digit(other)
            if c == 0.0:
                raise UnsupportedDivisionError("division by zero")
            return GrossNumber._make(tuple((p, d / c) for p, d in self._terms if d / c != 0.0))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.div_by_monomial(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other.div_by_monomial(self)

    def div_by_monomial(self, m: "GrossNumber") -> "GrossNumber":
        """Divide by a single-term number; anything else is an error."""
        if len(m._terms) != 1:
            what = "zero" if not m._terms else f"multi-term value {m}"
            raise UnsupportedDivisionError(f"cannot divide by {what}")
        pm, dm = m._terms[0]
        out = []
        for p, d in self._terms:
            q = d / dm
            if q != 0.0:
                out.append((_check_power(p - pm), q))
        return GrossNumber._make(tuple(out))

    # -- comparison -----------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0 or 1 as ``self`` is less than, equal to or greater than ``other``."""
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare GrossNumber with {type(other).__name__}")
        return _cmp_terms(self._terms, other._terms)

    def __eq__(self, other):
        if isinstance(other, GrossNumber):
            return self._terms == other._terms
        if isinstance(other, Real):
            if isinstance(other, float) and not math.isfinite(other):
                return False
            return self._terms == GrossNumber.from_real(other)._terms
        return NotImplemented

    def __hash__(self):
        if not self._terms:
            return hash(0.0)
        if len(self._terms) == 1 and self._terms[0][0] == 0:
            return hash(self._terms[0][1])
        return hash(self._terms)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _cmp_terms(self._terms, other._terms) < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _cmp_terms(self._terms, other._terms) <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _cmp_terms(self._terms, other._terms) > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _cmp_terms(self._terms, other._terms) >= 0

    def __bool__(self):
        return bool(self._terms)

    # -- text -----------------------------------------------------------

    def to_literal(self) -> str:
        if not self._terms:
            return "0"
        return "+".join(f"{_format_digit(d)}@{p}" for p, d in self._terms)

    __str__ = to_literal

    def __repr__(self):
        return f"GrossNumber({self.to_literal()!r})"

    def pretty(self) -> str:
        """Human-readable rendering with the ① glyph, e.g. ``① - 12.0312·①⁻¹``."""
        if not self._terms:
            return "0"
        parts = []
        for k, (p, d) in enumerate(self._terms):
            sign = "-" if d < 0 else "+"
            mag = abs(d)
            if p == 0:
                body = _format_digit(mag)
            else:
                unit = "①" if p == 1 else "①" + str(p).translate(_SUPERSCRIPT)
                body = unit if mag == 1.0 else f"{_format_digit(mag)}·{unit}"
            if k == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


def _format_digit(d: float) -> str:
    if d.is_integer() and abs(d) < 2**53:
        return str(int(d))
    return repr(d)


_TERM = re.compile(r"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)@([+-]?\d+)")


def parse(text: str) -> GrossNumber:
    """Parse a gross literal such as ``-12.0312@-1+1@1``; terms may come in any order."""
    if text == "0":
        return GrossNumber._make(())
    if not text:
        raise GrossParseError(text, 0, "empty literal")
    raw = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if m is None:
            raise GrossParseError(text, pos, "expected term 'digit@power'")
        raw.append((int(m.group(2)), float(m.group(1))))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise GrossParseError(text, pos, "expected '+'")
        pos += 1
        if pos == len(text):
            raise GrossParseError(text, pos, "dangling '+'")
    return normalize(raw)


GROSSONE = GrossNumber.monomial(1.0, 1)
ZERO = GrossNumber._make(())
ONE = GrossNumber.monomial(1.0, 0)


def parse_scalar(text: str) -> GrossNumber:
    """Like :func:`parse`, but a plain finite real such as ``2.5`` also means ``2.5@0``."""
    try:
        return GrossNumber.from_real(float(text))
    except ValueError:
        return parse(text)
