"""Attribute synthesis: one bottom-up pass computing the order-theoretic
profile of a term, with kappa kept symbolic (uncountable, regular,
``kappa^{<kappa} = kappa``).

Rule table
----------
Leaves (``wf`` = no descending sequence, ``cowf`` = no ascending one)::

    term      card    linear  wf_w  wf_k  cowf_w  cowf_k  scat_w  wks  sks  wkd
    Ord(a)    |a|     yes     T     T     a<w     T       T       T    T    F
    Kappa     kappa   yes     T     T     F       F       T       T    T    F
    Rats      aleph0  yes     F     T     F       T       F       T    T    F
    QKappa    kappa   yes     F     F     F       F       F       F    F    T
    Ac(n)     n       no      T     T     T       T       T       T    T    F
    AcOmega   aleph0  no      T     T     T       T       T       T    T    F

``Inv`` swaps ``wf``/``cowf`` and first/last.  Sums over a nonempty index
with nonempty blocks: cardinalities multiply (or add), and linearity, both
well-foundedness columns, all three scatteredness columns and "is an
antichain" are conjunctions over index and live blocks.  A linear sum has an
adjacent pair iff a block does or two neighbouring blocks meet at a
last/first pair; it is weakly kappa-dense iff it has two points, no adjacent
pair and every live block with two or more points is weakly kappa-dense.

``limsum(base, step, bp)`` is treated as ``sum(base, M)`` where ``M`` is the
direct limit over a one-point base (finite words over ``step``).  See
:func:`_limit_core` for ``M``.

Weak kappa-density is a property of linear orders; nonlinear terms report
``False`` and ``None`` for first/last/adjacency.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from typing import Optional

from .finposet import FinPoset
from .ordinal import ONE, ZERO, CnfOrdinal, nat_prod, nat_sum, omax, std_add, to_structured, to_text
from .terms import (ALEPH0, KAPPA_CARD, ONE_CARD, ZERO_CARD, Ac, AcOmega, CardClass, Fin, Inv,
                    Kappa, LimSum, Ord, QKappa, Rats, SumConst, SumList, Term, TermError, card_max)

IN, OUT, UNKNOWN = "in", "out", "unknown"


@dataclass(frozen=True)
class HierInfo:
    status: str
    alpha_bound: Optional[CnfOrdinal] = None
    rho_bound: Optional[CnfOrdinal] = None
    reason: str = ""

    @property
    def in_h(self) -> bool:
        return self.status == IN

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "in_h": self.in_h,
            "alpha_bound": None if self.alpha_bound is None else to_text(self.alpha_bound),
            "rho_bound": None if self.rho_bound is None else to_text(self.rho_bound),
            "reason": self.reason,
        }


@dataclass(frozen=True)
class AttrReport:
    card: CardClass
    linear: bool
    is_antichain: bool
    ac_card: CardClass
    wf_omega: bool
    wf_kappa: bool
    cowf_omega: bool
    cowf_kappa: bool
    has_first: Optional[bool]
    has_last: Optional[bool]
    has_adjacent_pair: Optional[bool]
    weakly_kappa_dense: bool
    weakly_kappa_scattered: bool
    strongly_kappa_scattered: bool
    scattered_omega: bool
    hier: Optional[HierInfo] = None

    @property
    def fac(self) -> bool:
        return self.ac_card.finite

    @property
    def kappa_ac(self) -> bool:
        return self.ac_card < KAPPA_CARD

    @property
    def embeds_weakly_kappa_dense(self) -> bool:
        return not self.strongly_kappa_scattered

    @property
    def empty(self) -> bool:
        return self.card == ZERO_CARD

    @property
    def singleton(self) -> bool:
        return self.card == ONE_CARD

    def to_json(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k not in ("card", "ac_card", "hier")}
        out["card"] = self.card.to_json()
        out["ac_card"] = self.ac_card.to_json()
        out["fac"] = self.fac
        out["kappa_ac"] = self.kappa_ac
        out["embeds_weakly_kappa_dense"] = self.embeds_weakly_kappa_dense
        out["hier"] = None if self.hier is None else self.hier.to_json()
        return out


def _linear_report(card, *, wf_w, wf_k, cowf_w, cowf_k, first, last, adj, wkd, wks=True, sks=True, scat=True):
    return AttrReport(card, True, card <= ONE_CARD, ONE_CARD if card != ZERO_CARD else ZERO_CARD,
                      wf_w, wf_k, cowf_w, cowf_k, first, last, adj, wkd, wks, sks, scat)


EMPTY_REPORT = AttrReport(ZERO_CARD, True, True, ZERO_CARD, True, True, True, True,
                          False, False, False, False, True, True, True)


def _two_plus(card: CardClass) -> bool:
    return not (card.finite and card.n < 2)


# -- leaves ----------------------------------------------------------------------

def _ord(alpha: CnfOrdinal) -> AttrReport:
    if alpha.is_zero():
        return EMPTY_REPORT
    fin = alpha.is_finite()
    card = CardClass.fin(int(alpha)) if fin else ALEPH0
    return _linear_report(card, wf_w=True, wf_k=True, cowf_w=fin, cowf_k=True,
                          first=True, last=alpha.is_successor(), adj=alpha >= 2, wkd=False)


def _fin(p: FinPoset) -> AttrReport:
    if p.n == 0:
        return EMPTY_REPORT
    lin = p.is_linear()
    return AttrReport(
        CardClass.fin(p.n), lin, not p.pairs(), CardClass.fin(p.width()),
        True, True, True, True,
        True if lin else None, True if lin else None, (p.n >= 2) if lin else None,
        False, True, True, True,
    )


_LEAVES = {
    Kappa: _linear_report(KAPPA_CARD, wf_w=True, wf_k=True, cowf_w=False, cowf_k=False,
                          first=True, last=False, adj=True, wkd=False),
    Rats: _linear_report(ALEPH0, wf_w=False, wf_k=True, cowf_w=False, cowf_k=True,
                         first=False, last=False, adj=False, wkd=False, scat=False),
    QKappa: _linear_report(KAPPA_CARD, wf_w=False, wf_k=False, cowf_w=False, cowf_k=False,
                           first=False, last=False, adj=False, wkd=True, wks=False, sks=False,
                           scat=False),
    AcOmega: AttrReport(ALEPH0, False, True, ALEPH0, True, True, True, True,
                        None, None, None, False, True, True, True),
}


def _ac(n: int) -> AttrReport:
    if n == 1:
        return _ord(ONE)
    return AttrReport(CardClass.fin(n), False, True, CardClass.fin(n), True, True, True, True,
                      None, None, None, False, True, True, True)


# -- constructors ------------------------------------------------------------------

def invert(r: AttrReport) -> AttrReport:
    return replace(r, wf_omega=r.cowf_omega, cowf_omega=r.wf_omega,
                   wf_kappa=r.cowf_kappa, cowf_kappa=r.wf_kappa,
                   has_first=r.has_last, has_last=r.has_first, hier=None)


def sum_const(ri: AttrReport, rb: AttrReport) -> AttrReport:
    """Attributes of ``sum(I, B)`` from those of ``I`` and ``B``."""
    if ri.empty or rb.empty:
        return EMPTY_REPORT
    if rb.singleton:
        return replace(ri, hier=None)
    linear = ri.linear and rb.linear
    card = ri.card * rb.card
    first = last = adj = None
    wkd = False
    if linear:
        first = ri.has_first and rb.has_first
        last = ri.has_last and rb.has_last
        adj = rb.has_adjacent_pair or (ri.has_adjacent_pair and rb.has_first and rb.has_last)
        wkd = _two_plus(card) and not adj and rb.weakly_kappa_dense
    return AttrReport(
        card, linear, ri.is_antichain and rb.is_antichain, ri.ac_card * rb.ac_card,
        ri.wf_omega and rb.wf_omega, ri.wf_kappa and rb.wf_kappa,
        ri.cowf_omega and rb.cowf_omega, ri.cowf_kappa and rb.cowf_kappa,
        first, last, adj, wkd,
        ri.weakly_kappa_scattered and rb.weakly_kappa_scattered,
        ri.strongly_kappa_scattered and rb.strongly_kappa_scattered,
        ri.scattered_omega and rb.scattered_omega,
    )


def sum_list(index: FinPoset, reports) -> AttrReport:
    """Attributes of ``lsum(P; B_0, ..., B_{n-1})``; empty blocks are dropped."""
    live = [i for i, r in enumerate(reports) if not r.empty]
    if not live:
        return EMPTY_REPORT
    if len(live) == 1:
        return replace(reports[live[0]], hier=None)
    idx = index.restrict(live)
    rs = [reports[i] for i in live]
    linear = idx.is_linear() and all(r.linear for r in rs)
    card = ZERO_CARD
    for r in rs:
        card = card + r.card
    ac_card = ZERO_CARD
    for a in idx.antichains():
        total = ZERO_CARD
        for i in a:
            total = total + rs[i].ac_card
        ac_card = card_max(ac_card, total)
    first = last = adj = None
    wkd = False
    if linear:
        order = [rs[i] for i in idx.linear_extension()]
        first, last = order[0].has_first, order[-1].has_last
        adj = any(r.has_adjacent_pair for r in order) or any(
            a.has_last and b.has_first for a, b in zip(order, order[1:]))
        wkd = not adj and all(r.weakly_kappa_dense for r in order if _two_plus(r.card))
    return AttrReport(
        card, linear, not idx.pairs() and all(r.is_antichain for r in rs), ac_card,
        all(r.wf_omega for r in rs), all(r.wf_kappa for r in rs),
        all(r.cowf_omega for r in rs), all(r.cowf_kappa for r in rs),
        first, last, adj, wkd,
        all(r.weakly_kappa_scattered for r in rs),
        all(r.strongly_kappa_scattered for r in rs),
        all(r.scattered_omega for r in rs),
    )


def _limit_core(t: LimSum, rs: AttrReport) -> AttrReport:
    """Attributes of the direct limit ``M`` of ``step^n`` (one-point base, ``|step| >= 2``).

    Elements are finite words compared at their first difference, padding
    with the basepoint.  If ``a < b`` in ``step`` then ``(b), (a,b), (a,a,b), ...``
    descends and ``(a), (b,a), (b,b,a), ...`` ascends, so any comparable pair
    kills both countable well-foundedness columns and scatteredness (a
    prefix-free code over ``{a, b}`` gives a copy of the rationals).  The
    kappa columns follow the step: ``M`` is a countable increasing union
    and kappa is regular.
    """
    from .address import greatest_address, least_address

    card = card_max(ALEPH0, rs.card)
    anti = rs.is_antichain
    if rs.linear:
        ac_card = ONE_CARD
    elif anti:
        ac_card = card
    else:
        ac_card = card_max(ALEPH0, rs.ac_card)
    first = last = adj = None
    wkd = False
    if rs.linear:
        first = least_address(t.step) == t.basepoint
        last = greatest_address(t.step) == t.basepoint
        adj = False
        wkd = rs.card == KAPPA_CARD
    if rs.card < KAPPA_CARD or anti:
        sks = True
    elif rs.linear:
        sks = False
    else:
        raise TermError(
            f"strong kappa-scatteredness of the limit over {t.step} is not decided by the engine")
    return AttrReport(
        card, rs.linear, anti, ac_card,
        anti, rs.wf_kappa, anti, rs.cowf_kappa,
        first, last, adj, wkd,
        rs.weakly_kappa_scattered, sks, anti,
    )


def limit_core_report(t: LimSum) -> AttrReport:
    rs = attrs(t.step)
    if rs.singleton:
        return _ord(ONE)
    return _limit_core(t, rs)


# -- entry points ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _synth(t: Term) -> AttrReport:
    if isinstance(t, Ord):
        return _ord(t.alpha)
    if isinstance(t, Fin):
        return _fin(t.poset)
    if isinstance(t, Ac):
        return _ac(t.n)
    if type(t) in _LEAVES:
        return _LEAVES[type(t)]
    if isinstance(t, Inv):
        return invert(_synth(t.body))
    if isinstance(t, SumConst):
        return sum_const(_synth(t.index), _synth(t.summand))
    if isinstance(t, SumList):
        return sum_list(t.index, [_synth(f) for f in t.family])
    if isinstance(t, LimSum):
        rb = _synth(t.base)
        if rb.empty:
            return EMPTY_REPORT
        return sum_const(rb, limit_core_report(t))
    raise TermError(f"not a term: {t!r}")


@lru_cache(maxsize=None)
def attrs(t: Term) -> AttrReport:
    """Full attribute report of ``t``, hierarchy information included."""
    return replace(_synth(t), hier=hierarchy_info(t))


# -- hierarchy -----------------------------------------------------------------------

def _shortcut(r: AttrReport) -> bool:
    return r.fac and (r.wf_kappa or r.cowf_kappa)


def _alpha(t: Term) -> HierInfo:
    r = _synth(t)
    if r.empty or _shortcut(r):
        return HierInfo(IN, ONE, reason="FAC and kappa-well-founded on one side")
    if not r.fac:
        return HierInfo(OUT, reason="antichain of infinite size")
    if not r.weakly_kappa_scattered:
        return HierInfo(OUT, reason="embeds a strongly kappa-dense order")
    if isinstance(t, Inv):
        h = _alpha(t.body)
        return replace(h, reason="inverse" if h.in_h else h.reason)
    if isinstance(t, SumConst):
        hi, hb = _alpha(t.index), _alpha(t.summand)
        return _combine([hi, hb], lambda: std_add(hb.alpha_bound, hi.alpha_bound), "sum")
    if isinstance(t, SumList):
        live = [f for f in t.family if not _synth(f).empty]
        hs = [_alpha(f) for f in live]
        if len(hs) == 1:
            return hs[0]
        return _combine(hs, lambda: std_add(omax(*(h.alpha_bound for h in hs)), ONE), "finite sum")
    if isinstance(t, LimSum):
        hb = _alpha(t.base)
        core = limit_core_report(t)
        if core.singleton:
            return hb
        if not _shortcut(core):
            return HierInfo(UNKNOWN, reason="limit core not at the base level")
        return _combine([hb], lambda: std_add(ONE, hb.alpha_bound), "limit as a sum")
    return HierInfo(UNKNOWN, reason="no rule")


def _combine(parts, bound, reason):
    if any(h.status == OUT for h in parts):
        return HierInfo(OUT, reason="a part is outside")
    if any(h.status == UNKNOWN for h in parts):
        return HierInfo(UNKNOWN, reason="a part is undecided")
    return HierInfo(IN, bound(), reason=reason)


def hierarchy_info(t: Term) -> HierInfo:
    """Membership in the kappa-hierarchy and an upper bound on the least level.

    The bound is sound, not claimed minimal.  ``rho_bound`` holds
    :func:`rho_surrogate` whenever the term has the FAC.
    """
    h = _alpha(t)
    rho = rho_surrogate(t) if _synth(t).fac else None
    return replace(h, rho_bound=rho)


# -- antichain-rank surrogate ------------------------------------------------------

RHO_VARIANTS = ("antichain", "width")


def rho_surrogate(t: Term, variant: str = "antichain") -> CnfOrdinal:
    """Conjectured upper bound on the antichain rank of every finite restriction.

    ``antichain``: a finite sum takes the largest natural sum of block
    values over an antichain of its index.  ``width``: a finite sum takes
    the index width times the largest block value.  Both use the natural
    product for constant sums.
    """
    if variant not in RHO_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    r = _synth(t)
    if not r.fac:
        raise TermError(f"{t} does not have the FAC")
    return _rho(t, variant)


def _rho(t: Term, variant: str) -> CnfOrdinal:
    r = _synth(t)
    if r.empty:
        return ZERO
    if r.linear:
        return ONE
    if isinstance(t, Fin):
        return t.poset.antichain_rank_exact()
    if isinstance(t, Ac):
        return CnfOrdinal.of(t.n)
    if isinstance(t, Inv):
        return _rho(t.body, variant)
    if isinstance(t, SumConst):
        return nat_prod(_rho(t.index, variant), _rho(t.summand, variant))
    if isinstance(t, SumList):
        vals = [_rho(f, variant) for f in t.family]
        if variant == "width":
            live = [i for i, f in enumerate(t.family) if not _synth(f).empty]
            w = t.index.restrict(live).width()
            return nat_prod(CnfOrdinal.of(w), omax(*vals))
        best = ZERO
        for a in t.index.antichains():
            total = ZERO
            for i in a:
                total = nat_sum(total, vals[i])
            best = omax(best, total)
        return best
    if isinstance(t, LimSum):
        return nat_prod(_rho(t.base, variant), ONE)
    raise TermError(f"no antichain-rank rule for {t}")


def classify_kappa_ac(t: Term) -> str:
    ac = _synth(t).ac_card
    if ac.finite:
        return "fac"
    return "kappa_ac_only" if ac == ALEPH0 else "large_antichain"


def ordinal_json(a: CnfOrdinal) -> dict:
    return {"cnf": to_text(a), "structured": to_structured(a)}
