"""Finitely supported coordinate vectors and scalar helpers.

A :class:`FinVec` stands in both for points ``x`` of a sequence space and for
functionals ``f`` on it: it is a finite map from opaque index labels to
non-zero scalars.  Scalars are :class:`fractions.Fraction` in exact mode and
``float`` otherwise; the two are never mixed silently inside one vector.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Union

from .errors import ValidationError

Scalar = Union[Fraction, float]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text) -> Scalar:
    """Parse ``"p/q"``, an integer, or a decimal literal.

    Integers and ``p/q`` give an exact Fraction.  Decimal literals such as
    ``"0.25"`` are also read exactly (as 1/4), since they are finite decimals.
    Python numbers pass through: ints become Fractions, floats stay floats.
    """
    if isinstance(text, bool):
        raise ValidationError(f"not a scalar: {text!r}")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        if not math.isfinite(text):
            raise ValidationError(f"non-finite scalar: {text!r}")
        return text
    if not isinstance(text, str):
        raise ValidationError(f"not a scalar: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m:
        num, den = m.groups()
        if den is not None and int(den) == 0:
            raise ValidationError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"malformed rational literal: {text!r}") from None


def format_scalar(value) -> str:
    """Render a scalar for reports: ``p/q`` for rationals, 17 digits for floats."""
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, _RationalABC):
        return str(Fraction(value))
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def is_exact(value) -> bool:
    return isinstance(value, _RationalABC) and not isinstance(value, bool)


class FinVec(Mapping):
    """Immutable finitely supported vector ``label -> scalar``.

    Zero entries are dropped on construction, so ``support`` is exactly the
    key set.

    >>> v = FinVec({"a": 2, "b": 0, "c": Fraction(1, 2)})
    >>> sorted(v.support)
    ['a', 'c']
    >>> v["c"]
    Fraction(1, 2)
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, entries: Mapping | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data = {}
        for label, value in items:
            if isinstance(value, int) and not isinstance(value, bool):
                value = Fraction(value)
            elif not isinstance(value, (Fraction, float)):
                value = parse_scalar(value)
            if value != 0:
                data[label] = value
        self._data = data
        self._hash = None

    # Mapping protocol
    def __getitem__(self, label):
        return self._data[label]

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, FinVec):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == FinVec(other)._data
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {format_scalar(v)}" for k, v in self._data.items())
        return f"FinVec({{{inner}}})"

    def get(self, label, default=0):
        return self._data.get(label, default)

    @property
    def support(self) -> frozenset:
        return frozenset(self._data)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self._data.values())

    # linear structure
    def __add__(self, other: "FinVec") -> "FinVec":
        out = dict(self._data)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return FinVec(out)

    def __sub__(self, other: "FinVec") -> "FinVec":
        out = dict(self._data)
        for k, v in other.items():
            out[k] = out.get(k, 0) - v
        return FinVec(out)

    def __neg__(self) -> "FinVec":
        return FinVec({k: -v for k, v in self._data.items()})

    def scale(self, t) -> "FinVec":
        return FinVec({k: t * v for k, v in self._data.items()})

    def __mul__(self, t):
        return self.scale(t)

    __rmul__ = __mul__

    def abs_values(self) -> list:
        return [abs(v) for v in self._data.values()]

    def sorted_abs(self) -> list:
        """Absolute values in non-increasing order (the decreasing rearrangement)."""
        return sorted(self.abs_values(), reverse=True)

    def relabel(self, mapping) -> "FinVec":
        return FinVec({mapping[k]: v for k, v in self._data.items()})

    # norms that need no space parameters
    def l1(self):
        return sum(self.abs_values(), Fraction(0) if self.exact else 0.0)

    def linf(self):
        vals = self.abs_values()
        if not vals:
            return Fraction(0)
        return max(vals)

    # serialization
    def to_json(self) -> dict:
        return {str(k): format_scalar(v) for k, v in self._data.items()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FinVec":
        if not isinstance(obj, Mapping):
            raise ValidationError("vector JSON must be an object of label -> rational string")
        return cls({str(k): parse_scalar(v) for k, v in obj.items()})

    @classmethod
    def parse(cls, text: str) -> "FinVec":
        """Parse the CLI form ``a=2,b=1/3``."""
        text = text.strip()
        if not text:
            return cls()
        entries = {}
        for part in text.split(","):
            if "=" not in part:
                raise ValidationError(f"vector entry {part!r} is not label=value")
            label, value = part.split("=", 1)
            label = label.strip()
            if not label:
                raise ValidationError(f"empty label in {part!r}")
            if label in entries:
                raise ValidationError(f"duplicate label {label!r}")
            entries[label] = parse_scalar(value)
        return cls(entries)


def ones(n: int, prefix: str = "e") -> FinVec:
    """``e_1 + ... + e_n`` with labels ``e1..en``."""
    return FinVec({f"{prefix}{k}": Fraction(1) for k in range(1, n + 1)})


def from_sequence(values: Iterable, prefix: str = "e") -> FinVec:
    """Vector whose k-th coordinate (label ``e{k}``, 1-based) is ``values[k-1]``."""
    return FinVec({f"{prefix}{k}": v for k, v in enumerate(values, start=1)})
