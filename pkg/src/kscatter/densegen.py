"""Finite stages of a saturated dense order at the countable level.

A stage is a finite chain whose points carry rational labels (so it visibly
embeds in ``Q``) and birth rounds.  A gap request ``(S, T)`` with ``S < T``
asks for a point strictly above ``S`` and below ``T``; it only depends on
``max S`` and ``min T``, so each request test is a position lookup.

Saturation adds, each round, one witness for every unmet request over the
points present at the start of the round.  With side bound ``b >= 1`` the
unmet requests are exactly the gaps between neighbours plus the two ends,
so a round takes ``n`` points to ``2n + 1``.  :func:`saturate_literal`
enumerates the requests one by one and serves as the reference.
"""
from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional


@dataclass
class StageOrder:
    labels: dict = field(default_factory=dict)
    birth: dict = field(default_factory=dict)
    order: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    _next_id: int = 0

    @classmethod
    def chain(cls, n: int) -> "StageOrder":
        s = cls()
        for k in range(n):
            s.add(Fraction(k), 0)
        return s

    def add(self, label: Fraction, birth: int, request=None) -> int:
        i = self._next_id
        self._next_id += 1
        self.labels[i] = label
        self.birth[i] = birth
        keys = [self.labels[j] for j in self.order]
        self.order.insert(bisect.bisect_left(keys, label), i)
        if request is not None:
            self.trace.append({"id": i, "round": birth, "label": str(label),
                               "request": {"S": sorted(request[0]), "T": sorted(request[1])}})
        return i

    def __len__(self):
        return len(self.order)

    def positions(self) -> dict:
        return {x: k for k, x in enumerate(self.order)}

    def less(self, a: int, b: int) -> bool:
        return self.labels[a] < self.labels[b]

    def born_by(self, stage: int) -> list:
        return [x for x in self.order if self.birth[x] <= stage]

    def copy(self) -> "StageOrder":
        return StageOrder(dict(self.labels), dict(self.birth), list(self.order), list(self.trace),
                          self._next_id)

    def is_consistent(self) -> bool:
        keys = [self.labels[x] for x in self.order]
        return all(a < b for a, b in zip(keys, keys[1:]))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "labels": {str(k): str(v) for k, v in sorted(self.labels.items())},
            "birth": {str(k): v for k, v in sorted(self.birth.items())},
            "trace": self.trace,
        }


def _between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def request_key(req):
    s, t = req
    return (len(s) + len(t), tuple(sorted(s)), tuple(sorted(t)))


def is_met(p: StageOrder, s, t, pos: Optional[dict] = None) -> bool:
    """Is some point of ``p`` strictly above all of ``s`` and below all of ``t``?"""
    pos = pos if pos is not None else p.positions()
    lo = max((pos[x] for x in s), default=-1)
    hi = min((pos[x] for x in t), default=len(p.order))
    return hi - lo > 1


def requests(p: StageOrder, b: int, over: Optional[Iterable[int]] = None):
    """All ``(S, T)`` over ``over`` with ``S < T`` and sides of size at most ``b``,
    in canonical order (total size, then sorted id tuples)."""
    pts = sorted(over if over is not None else p.order, key=lambda x: p.labels[x])
    out = []
    n = len(pts)
    for size in range(0, 2 * b + 1):
        batch = []
        for combo in combinations(range(n), size):
            for j in range(max(0, size - b), min(size, b) + 1):
                s = frozenset(pts[k] for k in combo[:j])
                t = frozenset(pts[k] for k in combo[j:])
                batch.append((s, t))
        batch.sort(key=request_key)
        out.extend(batch)
    return out


def check_star(p: StageOrder, b: int, over: Optional[Iterable[int]] = None) -> list:
    """Unmet requests with sides at most ``b`` (drawn from ``over`` if given)."""
    pos = p.positions()
    return [r for r in requests(p, b, over) if not is_met(p, r[0], r[1], pos)]


def _gap_requests(p: StageOrder, seed: Optional[int]):
    """The unmet requests of one round, one per gap, in processing order."""
    pts = list(p.order)
    if not pts:
        return [(frozenset(), frozenset())]
    ends = [(frozenset(), frozenset([pts[0]])), (frozenset([pts[-1]]), frozenset())]
    inner = sorted(((frozenset([a]), frozenset([c])) for a, c in zip(pts, pts[1:])), key=request_key)
    reqs = sorted(ends, key=request_key) + inner
    if seed is not None:
        random.Random(seed).shuffle(reqs)
    return reqs


def _witness(p: StageOrder, s, t) -> Fraction:
    lo = max((p.labels[x] for x in s), default=None)
    hi = min((p.labels[x] for x in t), default=None)
    if lo is not None:
        above = [p.labels[x] for x in p.order if p.labels[x] > lo]
        nxt = min(above, default=None)
        hi = nxt if hi is None else min(hi, nxt) if nxt is not None else hi
    if hi is not None:
        below = [p.labels[x] for x in p.order if p.labels[x] < hi]
        prv = max(below, default=None)
        lo = prv if lo is None else max(lo, prv) if prv is not None else lo
    return _between(lo, hi)


def saturate(start: StageOrder, rounds: int, b: int = 3, seed: Optional[int] = None) -> StageOrder:
    """Run ``rounds`` rounds of gap-request saturation with side bound ``b``.

    ``seed=None`` processes requests in canonical order; a seed shuffles
    the processing order, which changes ids but not the order type.
    """
    if b < 1:
        raise ValueError("side bound must be at least 1")
    p = start.copy()
    first = max(p.birth.values(), default=0) + 1 if p.order else 1
    for r in range(first, first + rounds):
        for s, t in _gap_requests(p, None if seed is None else seed * 1000 + r):
            if not is_met(p, s, t):
                p.add(_witness(p, s, t), r, (s, t))
    return p


def saturate_literal(start: StageOrder, rounds: int, b: int = 3) -> StageOrder:
    """Reference saturation: enumerate every request of each round explicitly."""
    if b < 1:
        raise ValueError("side bound must be at least 1")
    p = start.copy()
    first = max(p.birth.values(), default=0) + 1 if p.order else 1
    for r in range(first, first + rounds):
        for s, t in requests(p, b, list(p.order)):
            if not is_met(p, s, t):
                p.add(_witness(p, s, t), r, (s, t))
    return p


# -- back and forth -----------------------------------------------------------------

@dataclass
class BackAndForth:
    mapping: dict
    rounds_done: int
    failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def _check_iso(a: StageOrder, b: StageOrder, pairs: dict):
    items = sorted(pairs.items(), key=lambda kv: a.labels[kv[0]])
    for (x1, y1), (x2, y2) in zip(items, items[1:]):
        if not b.less(y1, y2):
            raise ValueError(f"pairs are not order preserving at {x1}->{y1}, {x2}->{y2}")
    if len(set(pairs.values())) != len(pairs):
        raise ValueError("pairs are not injective")


def _place(src: StageOrder, dst: StageOrder, fwd: dict, x: int):
    """Counterpart of ``x`` for the partial map ``fwd`` (src -> dst), or the failing gap."""
    lo = max((a for a in fwd if src.less(a, x)), key=lambda a: src.labels[a], default=None)
    hi = min((a for a in fwd if src.less(x, a)), key=lambda a: src.labels[a], default=None)
    ylo = None if lo is None else fwd[lo]
    yhi = None if hi is None else fwd[hi]
    used = set(fwd.values())
    cands = [y for y in dst.order if y not in used
             and (ylo is None or dst.less(ylo, y)) and (yhi is None or dst.less(y, yhi))]
    if not cands:
        return None, ([] if ylo is None else [ylo], [] if yhi is None else [yhi])
    return min(cands, key=lambda y: (dst.birth[y], dst.labels[y])), None


def back_and_forth(a: StageOrder, b: StageOrder, pairs: Optional[dict] = None,
                   rounds: int = 10) -> BackAndForth:
    """Extend a partial isomorphism, alternating forth (from ``a``) and back (from ``b``).

    Each step takes the least unmatched id on the active side and picks the
    counterpart with the earliest birth (then the lowest label) inside the
    corresponding gap.  On failure the certificate names that gap as
    ``(S, T)`` on the side where no point was found.
    """
    fwd = dict(pairs or {})
    _check_iso(a, b, fwd)
    for k in range(rounds):
        forth = k % 2 == 0
        src, dst = (a, b) if forth else (b, a)
        m = fwd if forth else {v: u for u, v in fwd.items()}
        free = sorted(x for x in src.order if x not in m)
        if not free:
            return BackAndForth(fwd, k, {"reason": "exhausted", "side": "A" if forth else "B"})
        x = free[0]
        y, gap = _place(src, dst, m, x)
        if y is None:
            return BackAndForth(fwd, k, {"reason": "unfillable_gap", "side": "B" if forth else "A",
                                         "element": x, "S": gap[0], "T": gap[1]})
        if forth:
            fwd[x] = y
        else:
            fwd[y] = x
    return BackAndForth(fwd, rounds)


# -- descending chains -------------------------------------------------------------

def longest_descending(p: StageOrder) -> list:
    """A longest descending chain: in a chain, every point in decreasing order."""
    return list(reversed(p.order))


def stage_filtered_descending(p: StageOrder) -> list:
    """Longest descending chain whose points were born in strictly increasing rounds.

    In particular no two points share a birth round.  Each round's
    bottom witness extends such a chain, so after ``r`` rounds its length
    is at least ``r``.
    """
    pts = list(reversed(p.order))
    best: list = []
    length = [1] * len(pts)
    prev = [-1] * len(pts)
    for i in range(len(pts)):
        for j in range(i):
            if p.birth[pts[j]] < p.birth[pts[i]] and length[j] + 1 > length[i]:
                length[i], prev[i] = length[j] + 1, j
    if pts:
        i = max(range(len(pts)), key=lambda k: length[k])
        while i != -1:
            best.append(pts[i])
            i = prev[i]
    return best[::-1]

