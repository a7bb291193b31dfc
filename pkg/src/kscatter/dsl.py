"""Text syntax for terms and addresses.

::

    term  := 0 | 1 | nat | w | w* | k | k* | Q | Qk | ac(nat) | ac(w)
           | ord(cnf) | fin(nat; a<b, ...) | inv(term) | sum(term, term)
           | lsum(index; term, ...) | limsum(term, term [, address]) | NAME
    index := fin(nat; a<b, ...) | ac(nat) | nat
    address := int | p/q | ord(cnf) | (address, address) | [address, ...]

Names resolve against the example catalog unless another table is given.
Parsing normalizes: finite chains become ordinals and ``inv(w)`` equals ``w*``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .finposet import CycleError, FinPoset
from .ordinal import OMEGA, CnfOrdinal, OrdinalError, parse_cnf
from .ordinal import to_text as cnf_text
from .terms import (AC_OMEGA, KAPPA, QKAPPA, RATS, Ac, AcOmega, Fin, Inv, Kappa, LimSum, Ord,
                    QKappa, Rats, SumConst, SumList, Term, TermError, ac, fin, limsum, ordinal)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.msg, self.line, self.col = msg, line, col


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([()\[\],;<*/\-]))")


@dataclass(frozen=True)
class Span:
    start: int
    end: int


class _Parser:
    def __init__(self, text: str, names: Optional[Mapping[str, Term]]):
        self.text = text
        self.pos = 0
        self.names = names
        self.spans: list[tuple[Term, Span]] = []

    # -- lexing --------------------------------------------------------------
    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, msg, pos=None):
        raise ParseError(msg, *self.where(pos))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        m = _TOKEN.match(self.text, self.pos)
        return m.group(m.lastindex) if m else None

    def next(self) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            self.skip_ws()
            self.fail("unexpected end of input" if self.pos >= len(self.text) else
                      f"unexpected character {self.text[self.pos]!r}")
        self.pos = m.end()
        return m.group(m.lastindex)

    def expect(self, tok: str):
        self.skip_ws()
        at = self.pos
        got = self.next()
        if got != tok:
            self.fail(f"expected {tok!r}, found {got!r}", at)

    def nat(self) -> int:
        self.skip_ws()
        at = self.pos
        tok = self.next()
        if not tok.isdigit():
            self.fail(f"expected a number, found {tok!r}", at)
        return int(tok)

    def raw_until_close(self) -> tuple[str, int]:
        """Text up to the matching ``)``, consumed along with it."""
        depth, start = 1, self.pos
        while self.pos < len(self.text):
            c = self.text[self.pos]
            depth += (c == "(") - (c == ")")
            if depth == 0:
                self.pos += 1
                return self.text[start:self.pos - 1], start
            self.pos += 1
        self.fail("unbalanced parentheses", start)

    def cnf(self) -> CnfOrdinal:
        raw, at = self.raw_until_close()
        try:
            return parse_cnf(raw)
        except OrdinalError as exc:
            self.fail(f"bad ordinal: {exc}", at)

    # -- grammar -------------------------------------------------------------
    def term(self) -> Term:
        self.skip_ws()
        start = self.pos
        try:
            t = self._term()
        except (TermError, CycleError) as exc:
            self.fail(str(exc), start)
        self.spans.append((t, Span(start, self.pos)))
        return t

    def _star(self) -> bool:
        if self.peek() == "*":
            self.next()
            return True
        return False

    def _term(self) -> Term:
        at = self.pos
        tok = self.next()
        if tok.isdigit():
            return ordinal(int(tok))
        if tok == "w":
            return Inv(Ord(OMEGA)) if self._star() else Ord(OMEGA)
        if tok == "k":
            return Inv(KAPPA) if self._star() else KAPPA
        if tok == "Q":
            return RATS
        if tok == "Qk":
            return QKAPPA
        if tok in ("ord", "ac", "fin", "inv", "sum", "lsum", "limsum") and self.peek() == "(":
            self.next()
            return getattr(self, "_" + tok)()
        if tok[0].isalpha() or tok[0] == "_":
            table = self.names if self.names is not None else _catalog_names()
            if tok not in table:
                self.fail(f"unknown name {tok!r}", at)
            return table[tok]
        self.fail(f"unexpected {tok!r}", at)

    def _ord(self):
        return ordinal(self.cnf())

    def _ac(self):
        self.skip_ws()
        if self.peek() == "w":
            self.next()
            self.expect(")")
            return AC_OMEGA
        n = self.nat()
        self.expect(")")
        if n < 1:
            self.fail("ac(n) needs n >= 1")
        return ac(n)

    def _fin_poset(self) -> FinPoset:
        n = self.nat()
        self.expect(";")
        pairs = []
        self.skip_ws()
        if self.peek() != ")":
            while True:
                self.skip_ws()
                at = self.pos
                a = self.nat()
                self.expect("<")
                b = self.nat()
                if a >= n or b >= n:
                    self.fail(f"element out of range for fin({n})", at)
                pairs.append((a, b))
                self.skip_ws()
                if self.peek() != ",":
                    break
                self.next()
        self.expect(")")
        try:
            return FinPoset.from_relations(n, pairs)
        except CycleError as exc:
            self.fail(f"cycle {exc.cycle} in fin literal")

    def _fin(self):
        return fin(self._fin_poset())

    def _inv(self):
        body = self.term()
        self.expect(")")
        return Inv(body)

    def _sum(self):
        a = self.term()
        self.expect(",")
        b = self.term()
        self.expect(")")
        return SumConst(a, b)

    def _index(self) -> FinPoset:
        self.skip_ws()
        at = self.pos
        tok = self.next()
        if tok.isdigit():
            return FinPoset.chain(int(tok))
        if tok == "fin":
            self.expect("(")
            return self._fin_poset()
        if tok == "ac":
            self.expect("(")
            n = self.nat()
            self.expect(")")
            return FinPoset.antichain(n)
        self.fail(f"expected an index poset, found {tok!r}", at)

    def _lsum(self):
        index = self._index()
        self.expect(";")
        family = [self.term()]
        self.skip_ws()
        while self.peek() == ",":
            self.next()
            family.append(self.term())
        self.expect(")")
        return SumList(index, tuple(family))

    def _limsum(self):
        base = self.term()
        self.expect(",")
        step = self.term()
        bp = None
        self.skip_ws()
        if self.peek() == ",":
            self.next()
            self.skip_ws()
            at = self.pos
            raw = self.address()
            from .address import AddressError, normalize_address
            try:
                bp = normalize_address(step, raw)
            except AddressError as exc:
                self.fail(f"bad basepoint: {exc}", at)
        self.expect(")")
        return limsum(base, step, bp)

    def address(self):
        self.skip_ws()
        at = self.pos
        tok = self.next()
        if tok == "-":
            return -self._number_tail(self.nat())
        if tok.isdigit():
            return self._number_tail(int(tok))
        if tok == "ord":
            self.expect("(")
            return self.cnf()
        if tok in ("(", "["):
            close = ")" if tok == "(" else "]"
            items = []
            self.skip_ws()
            if self.peek() != close:
                items.append(self.address())
                self.skip_ws()
                while self.peek() == ",":
                    self.next()
                    items.append(self.address())
                    self.skip_ws()
            self.expect(close)
            if tok == "(":
                if len(items) != 2:
                    self.fail("a pair address needs exactly two coordinates", at)
                return tuple(items)
            return list(items)
        self.fail(f"unexpected {tok!r} in address", at)

    def _number_tail(self, num: int):
        if self.peek() == "/":
            self.next()
            den = self.nat()
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return num

    def finish(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("trailing input")


def _catalog_names():
    from .catalog import NAMED
    return NAMED


def parse(text: str, names: Optional[Mapping[str, Term]] = None) -> Term:
    """Parse a term; errors carry line and column."""
    p = _Parser(text, names)
    t = p.term()
    p.finish()
    return t


def parse_with_spans(text: str, names: Optional[Mapping[str, Term]] = None):
    """Parse and also return ``(subterm, Span)`` records in completion order."""
    p = _Parser(text, names)
    t = p.term()
    p.finish()
    return t, p.spans


def parse_address(text: str, t: Optional[Term] = None):
    """Parse an address; with ``t`` it is also validated and normalized."""
    p = _Parser(text, {})
    raw = p.address()
    p.finish()
    if t is None:
        return raw
    from .address import normalize_address
    return normalize_address(t, raw)


# -- printing ------------------------------------------------------------------------

def _poset_text(p: FinPoset, allow_short: bool) -> str:
    if allow_short and p.is_linear():
        return str(p.n)
    if allow_short and not p.pairs() and p.n >= 1:
        return f"ac({p.n})"
    pairs = ", ".join(f"{a}<{b}" for a, b in p.covers())
    return f"fin({p.n}; {pairs})" if pairs else f"fin({p.n};)"


def to_text(t: Term) -> str:
    """Canonical text; ``parse(to_text(t)) == t`` for normalized terms."""
    from .address import format_address

    if isinstance(t, Ord):
        a = t.alpha
        if a.is_finite():
            return str(int(a))
        return "w" if a == OMEGA else f"ord({cnf_text(a)})"
    if isinstance(t, Kappa):
        return "k"
    if isinstance(t, Rats):
        return "Q"
    if isinstance(t, QKappa):
        return "Qk"
    if isinstance(t, Ac):
        return f"ac({t.n})"
    if isinstance(t, AcOmega):
        return "ac(w)"
    if isinstance(t, Fin):
        return _poset_text(t.poset, False)
    if isinstance(t, Inv):
        if t.body == Ord(OMEGA):
            return "w*"
        if isinstance(t.body, Kappa):
            return "k*"
        return f"inv({to_text(t.body)})"
    if isinstance(t, SumConst):
        return f"sum({to_text(t.index)}, {to_text(t.summand)})"
    if isinstance(t, SumList):
        fam = ", ".join(to_text(f) for f in t.family)
        return f"lsum({_poset_text(t.index, True)}; {fam})"
    if isinstance(t, LimSum):
        return (f"limsum({to_text(t.base)}, {to_text(t.step)}, "
                f"{format_address(t.step, t.basepoint)})")
    raise TermError(f"not a term: {t!r}")
