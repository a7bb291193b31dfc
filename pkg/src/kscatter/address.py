"""Element coordinates ("addresses") for terms.

=================  ==========================================================
term               address
=================  ==========================================================
``Fin``, ``Ac``    element label ``0..n-1``
``AcOmega``        any natural number
``Ord``, ``Kappa`` an ordinal below the order type (``CnfOrdinal``)
``Rats``, ``Qk``   a ``Fraction``
``Inv(t)``         an address of ``t``
``sum(I, B)``      ``(address in I, address in B)``
``lsum(P; ...)``   ``(block label, address in that block)``
``limsum``         ``(address in base, word of step addresses)``; the word
                   never ends with the basepoint
=================  ==========================================================

``Kappa`` has no upper bound on its coordinates unless a concrete
instantiation bound is passed in.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from .ordinal import CnfOrdinal, to_text
from .terms import (Ac, AcOmega, Fin, Inv, Kappa, LimSum, Ord, QKappa, Rats,
                    SumConst, SumList, Term, is_empty)


class AddressError(ValueError):
    pass


def _as_ordinal(a) -> CnfOrdinal:
    if isinstance(a, CnfOrdinal):
        return a
    if isinstance(a, int) and not isinstance(a, bool) and a >= 0:
        return CnfOrdinal.of(a)
    raise AddressError(f"expected an ordinal coordinate, got {a!r}")


def _as_int(a, bound: Optional[int]) -> int:
    if isinstance(a, CnfOrdinal) and a.is_finite():
        a = int(a)
    if not isinstance(a, int) or isinstance(a, bool) or a < 0 or (bound is not None and a >= bound):
        raise AddressError(f"expected a label below {bound}, got {a!r}")
    return a


def _pair(a):
    if not isinstance(a, (tuple, list)) or len(a) != 2:
        raise AddressError(f"expected a pair, got {a!r}")
    return a


def normalize_address(t: Term, a: Any, kappa_bound: Optional[CnfOrdinal] = None):
    """Validate ``a`` against ``t`` and return its canonical form."""
    if isinstance(t, Fin):
        return _as_int(a, t.poset.n)
    if isinstance(t, Ac):
        return _as_int(a, t.n)
    if isinstance(t, AcOmega):
        return _as_int(a, None)
    if isinstance(t, Ord):
        o = _as_ordinal(a)
        if not o < t.alpha:
            raise AddressError(f"{o} is not below {t.alpha}")
        return o
    if isinstance(t, Kappa):
        o = _as_ordinal(a)
        if kappa_bound is not None and not o < kappa_bound:
            raise AddressError(f"{o} is not below the kappa instantiation {kappa_bound}")
        return o
    if isinstance(t, (Rats, QKappa)):
        if isinstance(a, CnfOrdinal) and a.is_finite():
            a = int(a)
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise AddressError(f"expected a rational, got {a!r}")
        return Fraction(a)
    if isinstance(t, Inv):
        return normalize_address(t.body, a, kappa_bound)
    if isinstance(t, SumConst):
        i, b = _pair(a)
        return (normalize_address(t.index, i, kappa_bound),
                normalize_address(t.summand, b, kappa_bound))
    if isinstance(t, SumList):
        i, b = _pair(a)
        i = _as_int(i, t.index.n)
        return (i, normalize_address(t.family[i], b, kappa_bound))
    if isinstance(t, LimSum):
        x, word = _pair(a)
        if not isinstance(word, (tuple, list)):
            raise AddressError(f"expected a word of step addresses, got {word!r}")
        word = [normalize_address(t.step, s, kappa_bound) for s in word]
        while word and word[-1] == t.basepoint:
            word.pop()
        return (normalize_address(t.base, x, kappa_bound), tuple(word))
    raise AddressError(f"unknown term {t!r}")


def is_valid(t: Term, a: Any, kappa_bound: Optional[CnfOrdinal] = None) -> bool:
    try:
        return normalize_address(t, a, kappa_bound) == a
    except AddressError:
        return False


def _first_live(t: SumList):
    for i in t.index.linear_extension():
        if not is_empty(t.family[i]):
            yield i


def default_address(t: Term):
    """A canonical element: the least one when ``t`` is linear with a least element."""
    if isinstance(t, (Fin, Ac, AcOmega)):
        if isinstance(t, Fin) and t.poset.n == 0:
            raise AddressError("empty term has no elements")
        return 0
    if isinstance(t, Ord):
        if t.alpha.is_zero():
            raise AddressError("empty term has no elements")
        return CnfOrdinal.of(0)
    if isinstance(t, Kappa):
        return CnfOrdinal.of(0)
    if isinstance(t, (Rats, QKappa)):
        return Fraction(0)
    if isinstance(t, Inv):
        return default_address(t.body)
    if isinstance(t, SumConst):
        return (default_address(t.index), default_address(t.summand))
    if isinstance(t, SumList):
        for i in _first_live(t):
            return (i, default_address(t.family[i]))
        raise AddressError("empty term has no elements")
    if isinstance(t, LimSum):
        return (default_address(t.base), ())
    raise AddressError(f"unknown term {t!r}")


def least_address(t: Term):
    """Address of the least element of a linear term, or ``None``."""
    if isinstance(t, Ord):
        return None if t.alpha.is_zero() else CnfOrdinal.of(0)
    if isinstance(t, Kappa):
        return CnfOrdinal.of(0)
    if isinstance(t, (Rats, QKappa)):
        return None
    if isinstance(t, Fin):
        lows = [x for x in range(t.poset.n) if t.poset.up[x] | 1 << x == (1 << t.poset.n) - 1]
        return lows[0] if lows else None
    if isinstance(t, Ac):
        return 0 if t.n == 1 else None
    if isinstance(t, AcOmega):
        return None
    if isinstance(t, Inv):
        return greatest_address(t.body)
    if isinstance(t, SumConst):
        i, b = least_address(t.index), least_address(t.summand)
        return None if i is None or b is None else (i, b)
    if isinstance(t, SumList):
        live = list(_first_live(t))
        if not live:
            return None
        firsts = [i for i in live if not any(t.index.less(j, i) for j in live)]
        if len(firsts) != 1 or not all(t.index.less(firsts[0], j) for j in live if j != firsts[0]):
            return None
        b = least_address(t.family[firsts[0]])
        return None if b is None else (firsts[0], b)
    if isinstance(t, LimSum):
        x = least_address(t.base)
        if x is None or least_address(t.step) != t.basepoint:
            return None
        return (x, ())
    raise AddressError(f"unknown term {t!r}")


def greatest_address(t: Term):
    """Address of the greatest element of a linear term, or ``None``."""
    if isinstance(t, Ord):
        if not t.alpha.is_successor():
            return None
        return CnfOrdinal(list(t.alpha.terms[:-1]) + [(0, t.alpha.finite_part() - 1)])
    if isinstance(t, (Kappa, Rats, QKappa, AcOmega)):
        return None
    if isinstance(t, Fin):
        highs = [x for x in range(t.poset.n) if t.poset.down[x] | 1 << x == (1 << t.poset.n) - 1]
        return highs[0] if highs else None
    if isinstance(t, Ac):
        return 0 if t.n == 1 else None
    if isinstance(t, Inv):
        return least_address(t.body)
    if isinstance(t, SumConst):
        i, b = greatest_address(t.index), greatest_address(t.summand)
        return None if i is None or b is None else (i, b)
    if isinstance(t, SumList):
        live = list(_first_live(t))
        lasts = [i for i in live if not any(t.index.less(i, j) for j in live)]
        if len(lasts) != 1 or not all(t.index.less(j, lasts[0]) for j in live if j != lasts[0]):
            return None
        b = greatest_address(t.family[lasts[0]])
        return None if b is None else (lasts[0], b)
    if isinstance(t, LimSum):
        x = greatest_address(t.base)
        if x is None or greatest_address(t.step) != t.basepoint:
            return None
        return (x, ())
    raise AddressError(f"unknown term {t!r}")


def format_address(t: Term, a) -> str:
    """Text form of an address, readable back by :func:`kscatter.dsl.parse_address`."""
    if isinstance(t, (Ord, Kappa)):
        return str(int(a)) if a.is_finite() else f"ord({to_text(a)})"
    if isinstance(t, (Rats, QKappa)):
        return str(a)
    if isinstance(t, (Fin, Ac, AcOmega)):
        return str(a)
    if isinstance(t, Inv):
        return format_address(t.body, a)
    if isinstance(t, SumConst):
        return f"({format_address(t.index, a[0])}, {format_address(t.summand, a[1])})"
    if isinstance(t, SumList):
        return f"({a[0]}, {format_address(t.family[a[0]], a[1])})"
    if isinstance(t, LimSum):
        word = ", ".join(format_address(t.step, s) for s in a[1])
        return f"({format_address(t.base, a[0])}, [{word}])"
    raise AddressError(f"unknown term {t!r}")
