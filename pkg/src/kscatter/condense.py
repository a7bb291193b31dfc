"""Condensation of linear terms.

Three interval equivalences share one engine:

``finite``
    ``a ~ b`` when finitely many points lie between them.
``h``
    ``a ~ b`` when the interval between them is scattered (countable level).
``kappa``
    ``a ~ b`` when the interval is in the kappa-hierarchy, as decided by the
    attribute engine; undecided cases raise :class:`Indeterminate`.

Each rule returns the quotient as a term plus a classifier sending an input
address to ``(quotient address, class term)``.  Constant sums whose summand
condenses to an order with first and last classes along an index with
adjacent points merge neighbouring boundary classes; the closed form for an
ordinal index ``w*g + n`` is ``sum(g, 1 + sum(w, D')) + (1 + sum(n, D'))``
where ``D'`` is the summand quotient without its first point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .address import greatest_address, least_address
from .attrs import IN, UNKNOWN, attrs
from .finposet import FinPoset
from .ordinal import ONE, ZERO, CnfOrdinal, divmod_omega, one_plus_inverse, std_add
from .sampler import EQUAL, GREATER, LESS, SamplerConfig, compare, sample_restriction
from .terms import (EMPTY, OMEGA_T, POINT, Fin, Inv, Kappa, LimSum, Ord, QKappa, Rats, SumConst,
                    SumList, Term, TermError, is_empty, ordinal)

MODES = ("finite", "h", "kappa")
ITERATION_CAP = 16


class CondenseError(TermError):
    pass


class Indeterminate(CondenseError):
    """The attribute engine cannot decide hierarchy membership of some interval."""


class Unsupported(CondenseError):
    pass


@dataclass
class Cond:
    quotient: Term
    classify: Callable
    first_class: Optional[Term]
    last_class: Optional[Term]

    def project(self, a):
        return self.classify(a)[0]

    @property
    def single(self) -> bool:
        return self.quotient == POINT


@dataclass
class CondensationResult:
    term: Term
    mode: str
    quotient: Term
    cond: Cond

    def project(self, a):
        return self.cond.classify(a)[0]

    def class_term(self, a) -> Term:
        return self.cond.classify(a)[1]

    @property
    def singleton(self) -> bool:
        return self.quotient == POINT

    def class_map(self, addresses) -> list[dict]:
        from .address import format_address
        from .dsl import to_text
        out = []
        for a in addresses:
            q, ct = self.cond.classify(a)
            out.append({"address": format_address(self.term, a),
                        "class": format_address(self.quotient, q),
                        "class_term": to_text(ct)})
        return out


# -- term builders that keep address maps ----------------------------------------

def _sum(index: Term, summand: Term):
    if index == POINT:
        return summand, lambda i, b: b
    if summand == POINT:
        return index, lambda i, b: i
    return SumConst(index, summand), lambda i, b: (i, b)


def _concat(parts):
    live = [k for k, p in enumerate(parts) if not is_empty(p)]
    if not live:
        return EMPTY, None
    if len(live) == 1:
        return parts[live[0]], lambda k, a: a
    pos = {k: j for j, k in enumerate(live)}
    return (SumList(FinPoset.chain(len(live)), tuple(parts[k] for k in live)),
            lambda k, a: (pos[k], a))


def _concat_terms(parts) -> Term:
    return _concat([p for p in parts if p is not None])[0]


def _minus_one(b: CnfOrdinal) -> CnfOrdinal:
    return one_plus_inverse(b)


def drop_first(t: Term):
    """``t`` without its least point, and the address map on the remaining points."""
    if isinstance(t, Ord):
        return Ord(one_plus_inverse(t.alpha)), _minus_one
    if isinstance(t, Kappa):
        return t, _minus_one
    if isinstance(t, Inv):
        body, m = drop_last(t.body)
        return Inv(body), m
    if isinstance(t, SumConst):
        i0 = least_address(t.index)
        ti, mi = drop_first(t.index)
        tb, mb = drop_first(t.summand)
        rest, inj_rest = _sum(ti, t.summand)
        out, inj = _concat([tb, rest])
        return out, lambda a: inj(0, mb(a[1])) if a[0] == i0 else inj(1, inj_rest(mi(a[0]), a[1]))
    if isinstance(t, SumList):
        k0 = least_address(t)[0]
        tk, mk = drop_first(t.family[k0])
        fam = list(t.family)
        fam[k0] = tk
        if is_empty(tk):
            keep = [k for k in range(len(fam)) if k != k0]
            out, inj = _concat([fam[k] for k in keep])
            pos = {k: j for j, k in enumerate(keep)}
            return out, lambda a: inj(pos[a[0]], a[1])
        return SumList(t.index, tuple(fam)), lambda a: (a[0], mk(a[1])) if a[0] == k0 else a
    raise Unsupported(f"cannot remove the first point of {t}")


def drop_last(t: Term):
    """``t`` without its greatest point, and the address map on the remaining points."""
    if isinstance(t, Ord):
        a = t.alpha
        return Ord(CnfOrdinal(list(a.terms[:-1]) + [(ZERO, a.finite_part() - 1)])), lambda b: b
    if isinstance(t, Inv):
        body, m = drop_first(t.body)
        return Inv(body), m
    if isinstance(t, SumConst):
        i1 = greatest_address(t.index)
        ti, mi = drop_last(t.index)
        tb, mb = drop_last(t.summand)
        rest, inj_rest = _sum(ti, t.summand)
        out, inj = _concat([rest, tb])
        return out, lambda a: inj(1, mb(a[1])) if a[0] == i1 else inj(0, inj_rest(mi(a[0]), a[1]))
    if isinstance(t, SumList):
        k1 = greatest_address(t)[0]
        tk, mk = drop_last(t.family[k1])
        fam = list(t.family)
        fam[k1] = tk
        if is_empty(tk):
            keep = [k for k in range(len(fam)) if k != k1]
            out, inj = _concat([fam[k] for k in keep])
            pos = {k: j for j, k in enumerate(keep)}
            return out, lambda a: inj(pos[a[0]], a[1])
        return SumList(t.index, tuple(fam)), lambda a: (a[0], mk(a[1])) if a[0] == k1 else a
    raise Unsupported(f"cannot remove the last point of {t}")


# -- the engine ----------------------------------------------------------------------

def _trivial(t: Term, mode: str) -> bool:
    """Is ``t`` small enough that any interval made of pieces of it stays one class?"""
    r = attrs(t)
    if mode == "finite":
        return r.card.finite
    if mode == "h":
        return r.scattered_omega
    status = r.hier.status
    if status == UNKNOWN:
        raise Indeterminate(f"hierarchy membership of {t} is undecided")
    return status == IN


def _collapse(t: Term) -> Cond:
    return Cond(POINT, lambda a: (ZERO, t), t, t)


def _identity(t: Term) -> Cond:
    return Cond(t, lambda a: (a, POINT), None, None)


def _cond(t: Term, mode: str) -> Cond:
    if is_empty(t):
        return Cond(EMPTY, lambda a: (a, POINT), None, None)
    if _trivial(t, mode):
        return _collapse(t)
    if isinstance(t, Fin):
        return _cond(ordinal(t.poset.n), mode)
    if isinstance(t, Ord):
        return _cond_ord(t.alpha)
    if isinstance(t, Kappa):
        return Cond(t, lambda b: (divmod_omega(b)[0], OMEGA_T), OMEGA_T, None)
    if isinstance(t, (Rats, QKappa)):
        return _identity(t)
    if isinstance(t, Inv):
        c = _cond(t.body, mode)
        q, flip = _inv(c.quotient)

        def classify(a):
            cq, ct = c.classify(a)
            return flip(cq), _inv(ct)[0]

        return Cond(q, classify,
                    None if c.last_class is None else _inv(c.last_class)[0],
                    None if c.first_class is None else _inv(c.first_class)[0])
    if isinstance(t, SumConst):
        return _cond_sum(t, mode)
    if isinstance(t, SumList):
        return _cond_list(t, mode)
    if isinstance(t, LimSum):
        if attrs(t.step).singleton:
            c = _cond(t.base, mode)
            return Cond(c.quotient, lambda a: c.classify(a[0]), c.first_class, c.last_class)
        return _identity(t)
    raise Unsupported(f"no condensation rule for {t}")


def _inv(t: Term):
    """Inverse of ``t`` with finite chains and double inverses simplified."""
    if isinstance(t, Ord) and t.alpha.is_finite():
        n = int(t.alpha)
        return t, lambda a: CnfOrdinal.of(n - 1 - int(a))
    if isinstance(t, Inv):
        return t.body, lambda a: a
    return Inv(t), lambda a: a


def _cond_ord(alpha: CnfOrdinal) -> Cond:
    gamma, n = divmod_omega(alpha)
    top = std_add(gamma, ONE) if n else gamma

    def classify(b):
        q, _ = divmod_omega(b)
        return (q, ordinal(n)) if q == gamma else (q, OMEGA_T)

    first = OMEGA_T if not gamma.is_zero() else ordinal(n)
    if n:
        last = ordinal(n)
    elif gamma.is_successor():
        last = OMEGA_T
    else:
        last = None
    return Cond(ordinal(top), classify, first, last)


def _merges(left: Term, right: Term, cl: Cond, cr: Cond, mode: str) -> bool:
    """Do the last class of ``left`` and the first class of ``right`` fuse when adjacent?"""
    if mode == "finite":
        return bool(attrs(left).has_last and attrs(right).has_first)
    return bool(attrs(cl.quotient).has_last and attrs(cr.quotient).has_first)


def _cond_sum(t: SumConst, mode: str) -> Cond:
    index, body = t.index, t.summand
    if _trivial(body, mode):
        ci = _cond(index, mode)

        def classify(a):
            q, ct = ci.classify(a[0])
            return q, _sum(ct, body)[0]

        return Cond(ci.quotient, classify,
                    None if ci.first_class is None else _sum(ci.first_class, body)[0],
                    None if ci.last_class is None else _sum(ci.last_class, body)[0])
    d = _cond(body, mode)
    ri = attrs(index)
    if not (ri.has_adjacent_pair and _merges(body, body, d, d, mode)):
        q, inj = _sum(index, d.quotient)

        def classify(a):
            dq, ct = d.classify(a[1])
            return inj(a[0], dq), ct

        return Cond(q, classify, d.first_class if ri.has_first else None,
                    d.last_class if ri.has_last else None)
    return _cond_sum_merge(index, body, d, mode)


def _cond_sum_merge(index: Term, body: Term, d: Cond, mode: str) -> Cond:
    if isinstance(index, (Ord, Kappa)):
        return _merge_along_ordinal(index, d)
    if isinstance(index, Inv):
        # sum(J*, B) is the inverse of sum(J, B*); addresses coincide
        c = _cond(Inv(SumConst(index.body, Inv(body))), mode)
        return c
    if isinstance(index, SumConst):
        inner = SumConst(index.index, SumConst(index.summand, body))
        c = _cond(inner, mode)
        return Cond(c.quotient, lambda a: c.classify((a[0][0], (a[0][1], a[1]))),
                    c.first_class, c.last_class)
    if isinstance(index, SumList):
        inner = SumList(index.index, tuple(SumConst(f, body) for f in index.family))
        c = _cond(inner, mode)
        return Cond(c.quotient, lambda a: c.classify((a[0][0], (a[0][1], a[1]))),
                    c.first_class, c.last_class)
    if isinstance(index, LimSum) and attrs(index.step).singleton:
        c = _cond(SumConst(index.base, body), mode)
        return Cond(c.quotient, lambda a: c.classify((a[0][0], a[1])), c.first_class, c.last_class)
    raise Unsupported(f"boundary merging along {index} is not supported")


def _merge_along_ordinal(index: Term, d: Cond) -> Cond:
    if isinstance(index, Kappa):
        gamma_t, n = index, 0
    else:
        gamma, n = divmod_omega(index.alpha)
        gamma_t = ordinal(gamma)
    dq = d.quotient
    first_q, last_q = least_address(dq), greatest_address(dq)
    dp, df = drop_first(dq)
    seam = _concat_terms([d.last_class, d.first_class])

    s_omega, inj_so = _sum(OMEGA_T, dp)
    w_lim, inj_wl = _concat([POINT, s_omega])
    p_lim, inj_pl = _sum(gamma_t, w_lim) if not is_empty(gamma_t) else (EMPTY, None)
    s_fin, inj_sf = _sum(ordinal(n), dp) if n else (EMPTY, None)
    w_fin, inj_wf = _concat([POINT, s_fin]) if n else (EMPTY, None)
    quotient, inj_q = _concat([p_lim, w_fin])

    def classify(a):
        beta, b = a
        q, r = divmod_omega(beta)
        in_tail = isinstance(index, Ord) and q == divmod_omega(index.alpha)[0]
        cq, ct = d.classify(b)
        inj_s, inj_w = (inj_sf, inj_wf) if in_tail else (inj_so, inj_wl)
        if cq == first_q and r == 0:
            inner = inj_w(0, ZERO)
        elif cq == first_q:
            inner, ct = inj_w(1, inj_s(CnfOrdinal.of(r - 1), df(last_q))), seam
        else:
            inner = inj_w(1, inj_s(CnfOrdinal.of(r), df(cq)))
            if cq == last_q and not (in_tail and r == n - 1):
                ct = seam
        return (inj_q(1, inner) if in_tail else inj_q(0, inj_pl(q, inner))), ct

    return Cond(quotient, classify, d.first_class, d.last_class if n else None)


def _cond_list(t: SumList, mode: str) -> Cond:
    live = [k for k in t.index.linear_extension() if not is_empty(t.family[k])]
    if not t.index.restrict(live).is_linear():
        raise CondenseError(f"{t} is not linear")
    conds = [_cond(t.family[k], mode) for k in live]
    m = len(live)
    merge_prev = [False] + [_merges(t.family[live[j - 1]], t.family[live[j]], conds[j - 1], conds[j], mode)
                            for j in range(1, m)]
    parts, maps = [], []
    for j, c in enumerate(conds):
        if merge_prev[j]:
            p, f = drop_first(c.quotient)
        else:
            p, f = c.quotient, (lambda x: x)
        parts.append(p)
        maps.append(f)
    quotient, inj = _concat(parts)

    # boundary tokens: ("F", j) first class, ("L", j) last class; single-class pieces share one
    def token(kind, j):
        return ("F", j) if conds[j].single else (kind, j)

    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for j in range(1, m):
        if merge_prev[j]:
            a, b = find(token("L", j - 1)), find(token("F", j))
            if a != b:
                parent[b] = a
    groups: dict = {}
    for j in range(m):
        for kind in ("F", "L"):
            tok = token(kind, j)
            groups.setdefault(find(tok), [])
            if tok not in groups[find(tok)]:
                groups[find(tok)].append(tok)
    group_info = {}
    for root, toks in groups.items():
        if len(toks) < 2:
            continue
        toks.sort(key=lambda x: (x[1], x[0] == "L"))
        kind, j = toks[0]
        rep = (greatest_address(parts[j]) if kind == "L" else least_address(parts[j]))
        members = []
        for kd, i in toks:
            c = conds[i]
            members.append(c.first_class if kd == "F" else c.last_class)
        group_info[root] = (inj(j, rep), _concat_terms(members))

    pos = {k: j for j, k in enumerate(live)}

    def classify(a):
        j = pos[a[0]]
        c = conds[j]
        cq, ct = c.classify(a[1])
        for kind, edge in (("F", least_address(c.quotient)), ("L", greatest_address(c.quotient))):
            if edge is not None and cq == edge:
                root = find(token(kind, j))
                if root in group_info:
                    return group_info[root]
        return inj(j, maps[j](cq)), ct

    def edge_class(kind, j):
        root = find(token(kind, j))
        if root in group_info:
            return group_info[root][1]
        c = conds[j]
        return c.first_class if kind == "F" else c.last_class

    return Cond(quotient, classify, edge_class("F", 0), edge_class("L", m - 1))


# -- public API ----------------------------------------------------------------------

def condense(t: Term, mode: str = "finite") -> CondensationResult:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not attrs(t).linear:
        raise CondenseError(f"{t} is not linear")
    c = _cond(t, mode)
    return CondensationResult(t, mode, c.quotient, c)


def condense_finite(t: Term) -> CondensationResult:
    return condense(t, "finite")


def condense_H(t: Term, level: str = "omega") -> CondensationResult:
    """Condensation by "the interval is in the hierarchy".

    ``level="omega"`` reads membership as scatteredness; ``level="kappa"``
    asks the symbolic engine and may raise :class:`Indeterminate`.
    """
    return condense(t, "h" if level == "omega" else "kappa")


class RankError(CondenseError):
    pass


def hausdorff_rank(t: Term) -> CnfOrdinal:
    """Least number of finite-condensation steps after which the order is finite.

    Recursion: finite orders 0, an ordinal its leading exponent, a constant
    sum ``rank(I)`` when the summand is finite and ``rank(B) + rank(I)``
    otherwise, a finite sum the largest block rank, inverses unchanged.
    Orders containing kappa have rank at least kappa and are rejected.
    """
    r = attrs(t)
    if not r.linear:
        raise RankError(f"{t} is not linear")
    if not r.scattered_omega:
        raise RankError(f"{t} is not scattered")
    return _rank(t)


def _rank(t: Term) -> CnfOrdinal:
    r = attrs(t)
    if r.card.finite:
        return ZERO
    if isinstance(t, Ord):
        return t.alpha.leading_exponent
    if isinstance(t, Kappa):
        raise RankError("a copy of kappa has rank at least kappa")
    if isinstance(t, Inv):
        return _rank(t.body)
    if isinstance(t, SumConst):
        if attrs(t.summand).card.finite:
            return _rank(t.index)
        return std_add(_rank(t.summand), _rank(t.index))
    if isinstance(t, SumList):
        best = ZERO
        for f in t.family:
            best = max(best, _rank(f))
        return best
    if isinstance(t, LimSum):
        return _rank(t.base)
    raise RankError(f"no rank rule for {t}")


def literal_rank(t: Term, cap: int = ITERATION_CAP) -> Optional[int]:
    """Count condensation steps until the quotient is finite; ``None`` past ``cap``."""
    for steps in range(cap + 1):
        if attrs(t).card.finite:
            return steps
        t = condense_finite(t).quotient
    return None


# -- verification ----------------------------------------------------------------

def successor(t: Term, a):
    """Immediate successor of ``a`` in linear ``t``, or ``None``."""
    return _step(t, a, True)


def _step(t: Term, a, up: bool):
    if isinstance(t, (Ord, Kappa)):
        if up:
            b = std_add(a, ONE)
            return b if isinstance(t, Kappa) or b < t.alpha else None
        return _ord_pred(a)
    if isinstance(t, (Rats, QKappa)):
        return None
    if isinstance(t, Inv):
        return _step(t.body, a, not up)
    edge = least_address if up else greatest_address
    if isinstance(t, SumConst):
        s = _step(t.summand, a[1], up)
        if s is not None:
            return (a[0], s)
        i = _step(t.index, a[0], up)
        e = edge(t.summand)
        return None if i is None or e is None else (i, e)
    if isinstance(t, SumList):
        s = _step(t.family[a[0]], a[1], up)
        if s is not None:
            return (a[0], s)
        order = [k for k in t.index.linear_extension() if not is_empty(t.family[k])]
        j = order.index(a[0]) + (1 if up else -1)
        if not 0 <= j < len(order):
            return None
        e = edge(t.family[order[j]])
        return None if e is None else (order[j], e)
    if isinstance(t, LimSum):
        if attrs(t.step).singleton:
            x = _step(t.base, a[0], up)
            return None if x is None else (x, ())
        return None
    raise Unsupported(f"no successor rule for {t}")


def _ord_pred(a: CnfOrdinal):
    if not a.is_successor():
        return None
    return CnfOrdinal(list(a.terms[:-1]) + [(ZERO, a.finite_part() - 1)])


def finitely_apart(t: Term, a, b, bound: int = 256) -> bool:
    """Does walking successors from the smaller point reach the larger within ``bound``?

    Sampled coordinates are small, so finitely apart sample points are
    far fewer than ``bound`` steps apart.
    """
    if compare(t, a, b) == GREATER:
        a, b = b, a
    for _ in range(bound):
        if a == b:
            return True
        a = successor(t, a)
        if a is None or compare(t, a, b) == GREATER:
            return False
    return False


def verify(result: CondensationResult, n: int = 24, seed: int = 0,
           cfg: SamplerConfig = SamplerConfig()) -> list[dict]:
    """Check a condensation on a sample; returns problems (empty when clean).

    Classes must be convex, the projection monotone, every class term a
    single class of its own, and (finite mode) membership must agree with
    walking successors.  In the scattered modes a non-point quotient must
    have no adjacent pair.
    """
    t = result.term
    addrs = sample_restriction(t, n, seed, cfg).addresses
    cls = [result.cond.classify(a) for a in addrs]
    problems = []
    for i, a in enumerate(addrs):
        for j, b in enumerate(addrs):
            rel = compare(t, a, b)
            qrel = compare(result.quotient, cls[i][0], cls[j][0])
            if rel == LESS and qrel == GREATER:
                problems.append({"kind": "not_monotone", "pair": [i, j]})
            if rel == LESS and qrel == EQUAL:
                for k, c in enumerate(addrs):
                    if compare(t, a, c) == LESS and compare(t, c, b) == LESS and cls[k][0] != cls[i][0]:
                        problems.append({"kind": "not_convex", "triple": [i, k, j]})
            if result.mode == "finite" and rel == LESS:
                if finitely_apart(t, a, b) != (qrel == EQUAL):
                    problems.append({"kind": "finite_distance_mismatch", "pair": [i, j]})
    for _, ct in cls:
        if result.mode == "h" and not attrs(ct).scattered_omega:
            problems.append({"kind": "class_not_scattered", "class": str(ct)})
        if result.mode == "finite" and condense_finite(ct).quotient != POINT:
            problems.append({"kind": "class_not_single", "class": str(ct)})
    if result.mode != "finite" and not result.singleton:
        if attrs(result.quotient).has_adjacent_pair:
            problems.append({"kind": "quotient_has_adjacent_pair"})
    return problems
