"""Abstract syntax of the order calculus.

Terms are immutable and hashable, so attribute synthesis can be memoized on
them.  Use the lower-case factory functions (``ordinal``, ``fin``, ``ac``,
``limsum`` ...) to get normalized terms: finite chains become ``Ord(n)``,
``w*`` is ``Inv(Ord(w))`` and ``k*`` is ``Inv(Kappa())``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Tuple, Union

from .finposet import FinPoset
from .ordinal import OMEGA, CnfOrdinal


class TermError(ValueError):
    """Ill-formed term, or a construction outside the decidable fragment."""


class Term:
    __slots__ = ()

    def children(self) -> Tuple["Term", ...]:
        return ()

    def __str__(self):
        from .dsl import to_text
        return to_text(self)


@dataclass(frozen=True)
class Fin(Term):
    poset: FinPoset


@dataclass(frozen=True)
class Ord(Term):
    alpha: CnfOrdinal

    def __post_init__(self):
        if not isinstance(self.alpha, CnfOrdinal):
            object.__setattr__(self, "alpha", CnfOrdinal.of(self.alpha))


@dataclass(frozen=True)
class Kappa(Term):
    """The symbolic uncountable regular cardinal, as an ordinal."""


@dataclass(frozen=True)
class Rats(Term):
    """The rationals."""


@dataclass(frozen=True)
class QKappa(Term):
    """The saturated dense order of size kappa."""


@dataclass(frozen=True)
class Ac(Term):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise TermError("ac(n) needs n >= 1")


@dataclass(frozen=True)
class AcOmega(Term):
    """A countably infinite antichain."""


@dataclass(frozen=True)
class Inv(Term):
    body: Term

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class SumConst(Term):
    index: Term
    summand: Term

    def children(self):
        return (self.index, self.summand)


@dataclass(frozen=True)
class SumList(Term):
    index: FinPoset
    family: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "family", tuple(self.family))
        if len(self.family) != self.index.n:
            raise TermError(
                f"lsum family has {len(self.family)} terms for an index of size {self.index.n}"
            )

    def children(self):
        return self.family


@dataclass(frozen=True)
class LimSum(Term):
    """Direct limit of ``base``, ``sum(base, step)``, ``sum(sum(base, step), step)``, ...

    Stage ``n`` sits inside stage ``n+1`` by sending ``x`` to the point
    ``basepoint`` of the copy of ``step`` placed at ``x``.
    """

    base: Term
    step: Term
    basepoint: Any = field(default=None)

    def __post_init__(self):
        from .address import AddressError, default_address, normalize_address

        bp = self.basepoint
        try:
            bp = default_address(self.step) if bp is None else normalize_address(self.step, bp)
        except AddressError as exc:
            raise TermError(f"bad limsum basepoint: {exc}") from None
        object.__setattr__(self, "basepoint", bp)

    def children(self):
        return (self.base, self.step)


# -- normalized constructors -----------------------------------------------

def ordinal(alpha: Union[int, CnfOrdinal]) -> Ord:
    return Ord(CnfOrdinal.of(alpha))


OMEGA_T = Ord(OMEGA)
OMEGA_STAR = Inv(OMEGA_T)
KAPPA = Kappa()
KAPPA_STAR = Inv(KAPPA)
RATS = Rats()
QKAPPA = QKappa()
AC_OMEGA = AcOmega()
EMPTY = Ord(CnfOrdinal.of(0))
POINT = Ord(CnfOrdinal.of(1))


def fin(poset: FinPoset) -> Term:
    return ordinal(poset.n) if poset.is_linear() else Fin(poset)


def ac(n: int) -> Term:
    return POINT if n == 1 else Ac(n)


def inv(t: Term) -> Inv:
    return Inv(t)


def sum_const(index: Term, summand: Term) -> SumConst:
    return SumConst(index, summand)


def lsum(index: FinPoset, family) -> SumList:
    return SumList(index, tuple(family))


def limsum(base: Term, step: Term, basepoint=None) -> LimSum:
    return LimSum(base, step, basepoint)


def concat(*parts: Term) -> Term:
    """Ordered concatenation ``parts[0] + parts[1] + ...``."""
    if len(parts) == 1:
        return parts[0]
    return SumList(FinPoset.chain(len(parts)), tuple(parts))


def is_empty(t: Term) -> bool:
    """Structural emptiness; blocks inside an empty context are dead."""
    if isinstance(t, Ord):
        return t.alpha.is_zero()
    if isinstance(t, Fin):
        return t.poset.n == 0
    if isinstance(t, Inv):
        return is_empty(t.body)
    if isinstance(t, SumConst):
        return is_empty(t.index) or is_empty(t.summand)
    if isinstance(t, SumList):
        return all(is_empty(f) for f in t.family)
    if isinstance(t, LimSum):
        return is_empty(t.base)
    return False


def walk(t: Term):
    yield t
    for c in t.children():
        yield from walk(c)


# -- cardinality classes ---------------------------------------------------

_RANK = {"fin": 0, "aleph0": 1, "kappa": 2}


@dataclass(frozen=True)
class CardClass:
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in _RANK:
            raise ValueError(self.kind)
        if self.kind != "fin":
            object.__setattr__(self, "n", 0)

    @classmethod
    def fin(cls, n: int) -> "CardClass":
        return cls("fin", n)

    @property
    def finite(self) -> bool:
        return self.kind == "fin"

    def _key(self):
        return (_RANK[self.kind], self.n)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __add__(self, other: "CardClass") -> "CardClass":
        if self.finite and other.finite:
            return CardClass.fin(self.n + other.n)
        return max(self, other, key=CardClass._key)

    def __mul__(self, other: "CardClass") -> "CardClass":
        if self == ZERO_CARD or other == ZERO_CARD:
            return ZERO_CARD
        if self.finite and other.finite:
            return CardClass.fin(self.n * other.n)
        return max(self, other, key=CardClass._key)

    def __str__(self):
        return str(self.n) if self.finite else self.kind

    def to_json(self):
        return self.n if self.finite else self.kind


ZERO_CARD = CardClass.fin(0)
ONE_CARD = CardClass.fin(1)
ALEPH0 = CardClass("aleph0")
KAPPA_CARD = CardClass("kappa")


def card_max(*cards: CardClass) -> CardClass:
    return max(cards, key=CardClass._key, default=ZERO_CARD)
