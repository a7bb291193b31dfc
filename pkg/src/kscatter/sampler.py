"""Concrete elements of terms: comparison, seeded sampling of finite
restrictions, and refutation probes for the symbolic attributes.

Sampling needs a concrete model, so kappa is instantiated as a countable
ordinal (``w^2`` unless configured) and ``Qk`` as the rationals.  Every
output carries that instantiation label: facts checked here are about the
instantiated order and say nothing about kappa-level claims.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .address import AddressError, default_address, format_address, normalize_address
from .attrs import AttrReport, attrs, rho_surrogate, RHO_VARIANTS
from .finposet import FinPoset
from .ordinal import OMEGA, CnfOrdinal, cmp, nat_prod, std_add, to_text
from .terms import (Ac, AcOmega, Fin, Inv, Kappa, LimSum, Ord, QKappa, Rats, SumConst, SumList,
                    Term, is_empty)

LESS, GREATER, EQUAL, INCOMPARABLE = "less", "greater", "equal", "incomparable"
_FLIP = {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL, INCOMPARABLE: INCOMPARABLE}

DEFAULT_KAPPA = nat_prod(OMEGA, OMEGA)


@dataclass(frozen=True)
class SamplerConfig:
    kappa: CnfOrdinal = DEFAULT_KAPPA
    width: int = 8
    max_word: int = 3
    depth_weight: float = 0.5
    attempts_per_point: int = 50

    @property
    def label(self) -> str:
        return f"kappa:=ord({to_text(self.kappa)}), Qk:=Q"


def _sign(x) -> str:
    return LESS if x < 0 else GREATER if x > 0 else EQUAL


def compare(t: Term, a, b) -> str:
    """Order relation between two canonical addresses of ``t``."""
    if isinstance(t, Fin):
        if a == b:
            return EQUAL
        return LESS if t.poset.less(a, b) else GREATER if t.poset.less(b, a) else INCOMPARABLE
    if isinstance(t, (Ac, AcOmega)):
        return EQUAL if a == b else INCOMPARABLE
    if isinstance(t, (Ord, Kappa)):
        return _sign(cmp(a, b))
    if isinstance(t, (Rats, QKappa)):
        return _sign(a - b)
    if isinstance(t, Inv):
        return _FLIP[compare(t.body, a, b)]
    if isinstance(t, SumConst):
        c = compare(t.index, a[0], b[0])
        return compare(t.summand, a[1], b[1]) if c == EQUAL else c
    if isinstance(t, SumList):
        if a[0] == b[0]:
            return compare(t.family[a[0]], a[1], b[1])
        i, j = a[0], b[0]
        return LESS if t.index.less(i, j) else GREATER if t.index.less(j, i) else INCOMPARABLE
    if isinstance(t, LimSum):
        c = compare(t.base, a[0], b[0])
        if c != EQUAL:
            return c
        u, v = a[1], b[1]
        for k in range(max(len(u), len(v))):
            x = u[k] if k < len(u) else t.basepoint
            y = v[k] if k < len(v) else t.basepoint
            c = compare(t.step, x, y)
            if c != EQUAL:
                return c
        return EQUAL
    raise AddressError(f"unknown term {t!r}")


# -- random descent -------------------------------------------------------------

def _below_power(rng: random.Random, e: CnfOrdinal, cfg: SamplerConfig) -> CnfOrdinal:
    """A random ordinal below ``w^e``."""
    if e.is_zero():
        return CnfOrdinal.of(0)
    if e.is_finite() and int(e) == 1 or rng.random() >= cfg.depth_weight:
        return CnfOrdinal.of(rng.randrange(cfg.width))
    e2 = _below_ordinal(rng, e, cfg)
    head = CnfOrdinal.omega_pow(e2, rng.randint(1, cfg.width)) if not e2.is_zero() else \
        CnfOrdinal.of(rng.randint(1, cfg.width))
    return std_add(head, _below_power(rng, e2, cfg))


def _below_ordinal(rng: random.Random, alpha: CnfOrdinal, cfg: SamplerConfig) -> CnfOrdinal:
    if alpha.is_finite():
        return CnfOrdinal.of(rng.randrange(int(alpha)))
    i = rng.randrange(len(alpha.terms))
    prefix = CnfOrdinal(alpha.terms[:i])
    e, c = alpha.terms[i]
    mid = CnfOrdinal.omega_pow(e, rng.randrange(c)) if c > 1 else CnfOrdinal.of(0)
    return std_add(std_add(prefix, mid), _below_power(rng, e, cfg))


def random_address(t: Term, rng: random.Random, cfg: SamplerConfig = SamplerConfig()):
    if isinstance(t, Fin):
        return rng.randrange(t.poset.n)
    if isinstance(t, Ac):
        return rng.randrange(t.n)
    if isinstance(t, AcOmega):
        return rng.randrange(cfg.width * 4)
    if isinstance(t, Ord):
        return _below_ordinal(rng, t.alpha, cfg)
    if isinstance(t, Kappa):
        return _below_ordinal(rng, cfg.kappa, cfg)
    if isinstance(t, (Rats, QKappa)):
        den = rng.randint(1, cfg.width)
        return Fraction(rng.randint(-cfg.width * den, cfg.width * den), den)
    if isinstance(t, Inv):
        return random_address(t.body, rng, cfg)
    if isinstance(t, SumConst):
        return (random_address(t.index, rng, cfg), random_address(t.summand, rng, cfg))
    if isinstance(t, SumList):
        live = [i for i, f in enumerate(t.family) if not is_empty(f)]
        i = rng.choice(live)
        return (i, random_address(t.family[i], rng, cfg))
    if isinstance(t, LimSum):
        word = [random_address(t.step, rng, cfg) for _ in range(rng.randint(0, cfg.max_word))]
        return normalize_address(t, (random_address(t.base, rng, cfg), word))
    raise AddressError(f"unknown term {t!r}")


@dataclass
class Sample:
    term: Term
    seed: int
    addresses: list
    poset: FinPoset
    complete: bool
    instantiation: str
    requested: int = 0

    def to_json(self) -> dict:
        from .dsl import to_text as term_text
        return {
            "term": term_text(self.term),
            "seed": self.seed,
            "instantiation": self.instantiation,
            "requested": self.requested,
            "complete": self.complete,
            "addresses": [format_address(self.term, a) for a in self.addresses],
            "pairs": [list(p) for p in self.poset.pairs()],
        }


def relation_poset(t: Term, addresses) -> FinPoset:
    """The restriction of ``t`` to the given addresses, labelled by position."""
    n = len(addresses)
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and compare(t, addresses[i], addresses[j]) == LESS:
                up[i] |= 1 << j
    return FinPoset(n, up)


def sample_restriction(t: Term, n: int, seed: int, cfg: SamplerConfig = SamplerConfig()) -> Sample:
    """``n`` distinct addresses by seeded random descent, ordered by :func:`compare`.

    The result is flagged incomplete when fewer than ``n`` distinct
    addresses turned up (small terms).
    """
    rng = random.Random(seed)
    found: list = []
    seen: set = set()
    if not is_empty(t):
        for _ in range(n * cfg.attempts_per_point):
            if len(found) == n:
                break
            a = random_address(t, rng, cfg)
            if a not in seen:
                seen.add(a)
                found.append(a)
    return Sample(t, seed, found, relation_poset(t, found), len(found) == n, cfg.label, n)


def sample_json(sample: Sample) -> str:
    return json.dumps(sample.to_json(), sort_keys=True)


# -- refutation probes ------------------------------------------------------------

def comparable_pair(t: Term):
    """Some ``a < b`` in ``t``, or ``None`` when ``t`` is an antichain."""
    if isinstance(t, Fin):
        ps = t.poset.pairs()
        return ps[0] if ps else None
    if isinstance(t, (Ac, AcOmega)):
        return None
    if isinstance(t, Ord):
        return (CnfOrdinal.of(0), CnfOrdinal.of(1)) if t.alpha >= 2 else None
    if isinstance(t, Kappa):
        return (CnfOrdinal.of(0), CnfOrdinal.of(1))
    if isinstance(t, (Rats, QKappa)):
        return (Fraction(0), Fraction(1))
    if isinstance(t, Inv):
        p = comparable_pair(t.body)
        return None if p is None else (p[1], p[0])
    if is_empty(t):
        return None
    if isinstance(t, SumConst):
        p = comparable_pair(t.summand)
        if p is not None:
            x = default_address(t.index)
            return ((x, p[0]), (x, p[1]))
        p = comparable_pair(t.index)
        if p is not None:
            b = default_address(t.summand)
            return ((p[0], b), (p[1], b))
        return None
    if isinstance(t, SumList):
        for i, f in enumerate(t.family):
            p = comparable_pair(f) if not is_empty(f) else None
            if p is not None:
                return ((i, p[0]), (i, p[1]))
        for i, j in t.index.pairs():
            if not is_empty(t.family[i]) and not is_empty(t.family[j]):
                return ((i, default_address(t.family[i])), (j, default_address(t.family[j])))
        return None
    if isinstance(t, LimSum):
        p = comparable_pair(t.base)
        if p is not None:
            return ((p[0], ()), (p[1], ()))
        p = comparable_pair(t.step)
        if p is not None:
            x = default_address(t.base)
            return (normalize_address(t, (x, [p[0]])), normalize_address(t, (x, [p[1]])))
        return None
    raise AddressError(f"unknown term {t!r}")


def chain_pattern(t: Term, n: int, descending: bool) -> Optional[list]:
    """``n`` strictly monotone addresses drawn from an unbounded pattern.

    Patterns only come from infinite monotone families (a ``w``-sequence
    in an infinite ordinal, the integers inside ``Q``, repeated letters in a
    limit word), so success for every ``n`` refutes well-foundedness in the
    probed direction.  ``None`` means no pattern was found.
    """
    if isinstance(t, (Fin, Ac, AcOmega)):
        return None
    if isinstance(t, Ord):
        if descending or t.alpha.is_finite():
            return None
        return [CnfOrdinal.of(k) for k in range(n)]
    if isinstance(t, Kappa):
        return None if descending else [CnfOrdinal.of(k) for k in range(n)]
    if isinstance(t, (Rats, QKappa)):
        return [Fraction(-k if descending else k) for k in range(n)]
    if isinstance(t, Inv):
        return chain_pattern(t.body, n, not descending)
    if is_empty(t):
        return None
    if isinstance(t, SumConst):
        c = chain_pattern(t.index, n, descending)
        if c is not None:
            b = default_address(t.summand)
            return [(x, b) for x in c]
        c = chain_pattern(t.summand, n, descending)
        if c is not None:
            x = default_address(t.index)
            return [(x, y) for y in c]
        return None
    if isinstance(t, SumList):
        for i, f in enumerate(t.family):
            c = chain_pattern(f, n, descending) if not is_empty(f) else None
            if c is not None:
                return [(i, y) for y in c]
        return None
    if isinstance(t, LimSum):
        c = chain_pattern(t.base, n, descending)
        if c is not None:
            return [(x, ()) for x in c]
        p = comparable_pair(t.step)
        if p is None:
            return None
        lo, hi = p
        x = default_address(t.base)
        # descending: (hi), (lo, hi), (lo, lo, hi), ...; ascending swaps roles
        fill, last = (lo, hi) if descending else (hi, lo)
        return [normalize_address(t, (x, [fill] * k + [last])) for k in range(n)]
    raise AddressError(f"unknown term {t!r}")


def _is_chain(t: Term, seq, descending: bool) -> bool:
    want = GREATER if descending else LESS
    return all(compare(t, a, b) == want for a, b in zip(seq, seq[1:]))


@dataclass
class Violation:
    kind: str
    term: str
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "term": self.term, **self.detail}


def check_sample(t: Term, sample: Sample, report: AttrReport) -> list[Violation]:
    """Instantiation-invariant consequences of ``report`` on one sample."""
    from .dsl import to_text as term_text

    out = []
    name = term_text(t)
    p = sample.poset
    addr = lambda idx: [format_address(t, sample.addresses[i]) for i in idx]
    if not p.is_valid():
        out.append(Violation("not_a_strict_order", name, {"seed": sample.seed}))
        return out
    if report.linear and not p.is_linear():
        bad = next((i, j) for i in range(p.n) for j in range(p.n) if not p.comparable(i, j))
        out.append(Violation("linear_but_incomparable", name, {"seed": sample.seed, "addresses": addr(bad)}))
    if report.fac:
        m = report.ac_card.n
        big = max(p.antichains(), key=len, default=frozenset())
        if len(big) > m:
            out.append(Violation("antichain_exceeds_bound", name,
                                 {"seed": sample.seed, "bound": m, "addresses": addr(sorted(big))}))
        exact = p.antichain_rank_exact()
        for v in RHO_VARIANTS:
            bound = rho_surrogate(t, v)
            if exact > bound:
                out.append(Violation("rho_not_dominating", name,
                                     {"seed": sample.seed, "variant": v, "exact": to_text(exact),
                                      "bound": to_text(bound), "addresses": addr(range(p.n))}))
    return out


def oracle_check(t: Term, report: Optional[AttrReport] = None, budget: int = 16,
                 seeds=range(3), size: int = 10, cfg: SamplerConfig = SamplerConfig()) -> list[Violation]:
    """Probe ``report`` against samples of ``t`` and against chain patterns.

    Finite samples can only refute claims: linearity and finite antichain
    bounds are checked on every sample, and a claimed failure of
    well-foundedness (either direction, countable level) must come with an
    explicit monotone chain of length ``budget``.
    """
    from .dsl import to_text as term_text

    report = report or attrs(t)
    out = []
    for s in seeds:
        out.extend(check_sample(t, sample_restriction(t, size, s, cfg), report))
    for desc, claim in ((True, report.wf_omega), (False, report.cowf_omega)):
        if claim:
            continue
        chain = chain_pattern(t, budget, desc)
        if chain is None or not _is_chain(t, chain, desc):
            out.append(Violation("no_chain_found", term_text(t),
                                 {"direction": "descending" if desc else "ascending", "budget": budget}))
    return out
