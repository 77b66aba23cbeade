"""Ordinals below omega**omega in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` pairs with strictly
decreasing natural exponents and positive coefficients; ``()`` is zero.
The text grammar is ``w^2*3+w*4+7`` (``w`` may also be written ``ω``).
"""
from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterable

from .errors import ValidationError


@total_ordering
class Ordinal:
    __slots__ = ("terms",)

    def __init__(self, terms: Iterable = ()):
        terms = tuple((int(e), int(c)) for e, c in terms)
        for e, c in terms:
            if e < 0 or c < 1:
                raise ValidationError(f"bad CNF term w^{e}*{c}")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if e2 >= e1:
                raise ValidationError("CNF exponents must be strictly decreasing")
        self.terms = terms

    # constructors
    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValidationError("ordinals are non-negative")
        return cls(((0, n),) if n else ())

    @classmethod
    def omega_power(cls, e: int, c: int = 1) -> "Ordinal":
        return cls(((e, c),))

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        return parse_ordinal(text)

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    @property
    def finite_part(self) -> int:
        return self.terms[-1][1] if self.terms and self.terms[-1][0] == 0 else 0

    @property
    def degree(self) -> int:
        """Leading exponent (``-1`` for zero)."""
        return self.terms[0][0] if self.terms else -1

    # order
    def _key(self):
        return self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    # arithmetic
    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return mul(Ordinal.of(other), self)
        return NotImplemented

    def successor(self) -> "Ordinal":
        return add(self, Ordinal.of(1))

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal.of(1)
OMEGA = Ordinal.omega_power(1)


def compare(a: Ordinal, b: Ordinal) -> int:
    """``-1``, ``0`` or ``1``; CNF terms compare lexicographically."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return -1 if ea < eb else 1
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    head = [t for t in a.terms if t[0] > lead]
    same = [c for e, c in a.terms if e == lead]
    first = (lead, b.terms[0][1] + (same[0] if same else 0))
    return Ordinal(head + [first] + list(b.terms[1:]))


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product ``a * b`` (left factor repeated ``b`` times)."""
    if a.is_zero() or b.is_zero():
        return ZERO
    e1, c1 = a.terms[0]
    out = ZERO
    for f, d in b.terms:
        if f == 0:
            part = Ordinal(((e1, c1 * d),) + a.terms[1:])
        else:
            part = Ordinal(((e1 + f, d),))
        out = add(out, part)
    return out


def q_of(eta: Ordinal) -> Ordinal:
    """The ``beta`` with ``w*beta <= eta < w*(beta+1)``.

    In CNF: drop the finite part and lower every exponent by one.
    """
    return Ordinal((e - 1, c) for e, c in eta.terms if e > 0)


def omega_times(beta: Ordinal) -> Ordinal:
    """``w * beta``: raise every exponent by one."""
    return Ordinal((e + 1, c) for e, c in beta.terms)


# ---------------------------------------------------------------------------
# text format

_TERM_RE = re.compile(r"^(?:(?:w|ω)(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    if not isinstance(text, str):
        raise ValidationError(f"ordinal literal must be a string, got {text!r}")
    s = text.replace(" ", "")
    if not s:
        raise ValidationError("empty ordinal literal")
    if s == "0":
        return ZERO
    terms = []
    for part in s.split("+"):
        m = _TERM_RE.match(part)
        if not m:
            raise ValidationError(f"malformed ordinal term {part!r} in {text!r}")
        exp, coef, const = m.groups()
        if const is not None:
            e, c = 0, int(const)
        else:
            e = int(exp) if exp is not None else 1
            c = int(coef) if coef is not None else 1
        if c == 0:
            raise ValidationError(f"zero coefficient in {text!r}")
        terms.append((e, c))
    try:
        return Ordinal(terms)
    except ValidationError:
        raise ValidationError(f"ordinal {text!r} is not in Cantor normal form") from None


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        base = "w" if e == 1 else f"w^{e}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def as_ordinal(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.of(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise ValidationError(f"not an ordinal: {x!r}")
