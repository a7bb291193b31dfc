"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents, each exponent itself a :class:`CnfOrdinal`.
Construction always canonicalizes, so ``==`` is structural equality.
"""
from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterable, Tuple, Union

#: Maximum exponent nesting depth accepted at construction.
MAX_DEPTH = 8


class OrdinalError(ValueError):
    pass


@total_ordering
class CnfOrdinal:
    __slots__ = ("terms", "_hash", "depth")

    def __init__(self, terms: Iterable[Tuple["CnfOrdinal", int]] = ()):
        merged: list[list] = []
        pairs = [(CnfOrdinal.of(e), c) for e, c in terms]
        for exp, coef in sorted(pairs, key=lambda t: t[0], reverse=True):
            if coef < 0:
                raise OrdinalError("negative coefficient")
            if coef == 0:
                continue
            if merged and merged[-1][0] == exp:
                merged[-1][1] += coef
            else:
                merged.append([exp, coef])
        self.terms: Tuple[Tuple[CnfOrdinal, int], ...] = tuple((e, c) for e, c in merged)
        self.depth = 1 + max((e.depth for e, _ in self.terms), default=-1)
        if self.depth > MAX_DEPTH:
            raise OrdinalError(f"exponent nesting depth {self.depth} exceeds cap {MAX_DEPTH}")
        self._hash = hash(self.terms)

    @classmethod
    def of(cls, value: Union[int, "CnfOrdinal"]) -> "CnfOrdinal":
        if isinstance(value, CnfOrdinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot make an ordinal from {value!r}")
        if value < 0:
            raise OrdinalError("negative ordinal")
        return _ZERO if value == 0 else cls([(_ZERO, value)])

    @classmethod
    def omega_pow(cls, exp: Union[int, "CnfOrdinal"], coef: int = 1) -> "CnfOrdinal":
        return cls([(cls.of(exp), coef)])

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def __int__(self) -> int:
        if not self.is_finite():
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "CnfOrdinal":
        return self.terms[0][0] if self.terms else _ZERO

    def finite_part(self) -> int:
        return self.terms[-1][1] if self.is_successor() else 0

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = CnfOrdinal.of(other) if other >= 0 else None
            if other is None:
                return False
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = CnfOrdinal.of(other)
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        return cmp(self, other) < 0

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        return std_add(self, CnfOrdinal.of(other))

    def __radd__(self, other):
        return std_add(CnfOrdinal.of(other), self)

    def __repr__(self):
        return f"CnfOrdinal({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


_ZERO = CnfOrdinal.__new__(CnfOrdinal)
_ZERO.terms = ()
_ZERO.depth = 0
_ZERO._hash = hash(())

ZERO = _ZERO
ONE = CnfOrdinal.of(1)
OMEGA = CnfOrdinal.omega_pow(1)


def cmp(a: CnfOrdinal, b: CnfOrdinal) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def std_add(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    """Ordinary (left-absorbing) ordinal addition."""
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = []
    for exp, coef in a.terms:
        c = cmp(exp, lead)
        if c > 0:
            kept.append((exp, coef))
        elif c == 0:
            kept.append((exp, coef + b.terms[0][1]))
            return CnfOrdinal(kept + list(b.terms[1:]))
        else:
            break
    return CnfOrdinal(kept + list(b.terms))


def nat_sum(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    """Hessenberg natural sum: merge the normal forms coefficientwise."""
    return CnfOrdinal(list(a.terms) + list(b.terms))


def nat_prod(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    """Hessenberg natural product.

    Each pair of terms ``w^x*m`` and ``w^y*n`` contributes ``w^(x (+) y)*(m*n)``
    and the contributions are natural-summed.
    """
    return CnfOrdinal(
        [(nat_sum(ea, eb), ca * cb) for ea, ca in a.terms for eb, cb in b.terms]
    )


def omax(*values: CnfOrdinal) -> CnfOrdinal:
    best = ZERO
    for v in values:
        if v > best:
            best = v
    return best


def pred_exponent(e: CnfOrdinal) -> CnfOrdinal:
    """``-1 + e``: one less for finite ``e >= 1``, unchanged for infinite ``e``."""
    if e.is_zero():
        raise OrdinalError("0 has no predecessor")
    return CnfOrdinal.of(int(e) - 1) if e.is_finite() else e


def one_plus_inverse(a: CnfOrdinal) -> CnfOrdinal:
    """The ordinal ``b`` with ``1 + b == a`` (``a >= 1``)."""
    if a.is_zero():
        raise OrdinalError("0 has no such decomposition")
    return CnfOrdinal.of(int(a) - 1) if a.is_finite() else a


def divmod_omega(a: CnfOrdinal) -> Tuple[CnfOrdinal, int]:
    """Split ``a == w*q + r`` with ``r`` finite."""
    q = CnfOrdinal([(pred_exponent(e), c) for e, c in a.terms if not e.is_zero()])
    return q, a.finite_part()


def omega_times(q: CnfOrdinal) -> CnfOrdinal:
    """``w * q`` for any ``q``."""
    return CnfOrdinal([(std_add(ONE, e), c) for e, c in q.terms])


# -- text syntax ---------------------------------------------------------------

def to_text(a: CnfOrdinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp.is_zero():
            parts.append(str(coef))
            continue
        if exp == ONE:
            base = "w"
        elif exp.is_finite() or (len(exp.terms) == 1 and exp.terms[0] == (ONE, 1)):
            base = f"w^{to_text(exp)}"
        else:
            base = f"w^({to_text(exp)})"
        parts.append(base if coef == 1 else f"{base}*{coef}")
    return "+".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


class _CnfParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise OrdinalError(f"{msg} at offset {self.pos} in {self.text!r}")

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None, None
        kind = m.lastindex
        return kind, m

    def take(self, kind):
        k, m = self.peek()
        if k != kind:
            self.error("unexpected token")
        self.pos = m.end()
        return m.group(kind)

    def expr(self) -> CnfOrdinal:
        value = self.term()
        while self.peek()[0] == 5:
            self.take(5)
            value = std_add(value, self.term())
        return value

    def term(self) -> CnfOrdinal:
        k, _ = self.peek()
        if k == 1:
            return CnfOrdinal.of(int(self.take(1)))
        if k == 6:
            self.take(6)
            inner = self.expr()
            self.take(7)
            return inner
        if k != 2:
            self.error("expected w, number or '('")
        self.take(2)
        exp = ONE
        if self.peek()[0] == 3:
            self.take(3)
            k, _ = self.peek()
            if k == 1:
                exp = CnfOrdinal.of(int(self.take(1)))
            elif k == 2:
                self.take(2)
                exp = OMEGA
            elif k == 6:
                self.take(6)
                exp = self.expr()
                self.take(7)
            else:
                self.error("bad exponent")
        coef = 1
        if self.peek()[0] == 4:
            self.take(4)
            coef = int(self.take(1))
            if coef < 1:
                self.error("coefficient must be positive")
        return CnfOrdinal.omega_pow(exp, coef)


def parse_cnf(text: str) -> CnfOrdinal:
    """Parse ``w^e*c + ...`` text, e.g. ``w^2*3+w+4`` or ``w^(w+1)``."""
    p = _CnfParser(text)
    value = p.expr()
    if text[p.pos:].strip():
        p.error("trailing input")
    return value


def to_structured(a: CnfOrdinal) -> list:
    """Nested-list form ``[[exponent, coefficient], ...]`` for JSON output."""
    return [[to_structured(e), c] for e, c in a.terms]
