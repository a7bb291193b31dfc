"""Regression suites run by ``kscatter check``.

Each suite returns a :class:`SuiteResult`: named properties with a pass
flag and, on failure, counterexamples carrying term text plus the
addresses or index subsets involved.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from .attrs import attrs, hierarchy_info
from .catalog import FINITE_POSETS, HIERARCHY_TEXTS, LINEAR_TEXTS, NONLINEAR_TEXTS
from .condense import RankError, condense_finite, condense_H, hausdorff_rank, literal_rank, verify
from .config import Config
from .densegen import (StageOrder, back_and_forth, check_star, saturate,
                       stage_filtered_descending)
from .dsl import parse, to_text
from .finposet import FinPoset, all_posets
from .ordinal import ONE, CnfOrdinal, parse_cnf
from .ordinal import to_text as ord_text
from .sampler import SamplerConfig, check_sample, sample_restriction
from .terms import Inv, fin

MAX_EXAMPLES = 5


@dataclass
class PropertyResult:
    name: str
    passed: bool = True
    cases: int = 0
    counterexamples: list = field(default_factory=list)

    def fail(self, example: dict):
        self.passed = False
        if len(self.counterexamples) < MAX_EXAMPLES:
            self.counterexamples.append(example)

    def expect(self, ok: bool, example: dict):
        self.cases += 1
        if not ok:
            self.fail(example)

    def to_json(self) -> dict:
        return {"property": self.name, "passed": self.passed, "cases": self.cases,
                "counterexamples": self.counterexamples}


@dataclass
class SuiteResult:
    name: str
    properties: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def prop(self, name: str) -> PropertyResult:
        p = PropertyResult(name)
        self.properties.append(p)
        return p

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed,
                "properties": [p.to_json() for p in self.properties]}


def _poset_json(p: FinPoset) -> dict:
    return {"n": p.n, "pairs": [list(x) for x in p.pairs()]}


def _sampler_config(cfg: Config) -> SamplerConfig:
    return SamplerConfig(kappa=parse_cnf(cfg.kappa))


# -- suites ---------------------------------------------------------------------

def finite_suite(cfg: Config = Config()) -> SuiteResult:
    """Antichain rank and augmentation laws over every poset up to ``max_finite_n``."""
    s = SuiteResult("finite")
    lin, anti, inv, mono, aug, weak = (s.prop(n) for n in (
        "rank_linear_is_1", "rank_antichain_is_n", "rank_inverse_invariant",
        "rank_monotone_under_restriction", "augmentations_valid_and_containing",
        "weakenings_valid_and_contained"))
    for n in range(cfg.max_finite_n + 1):
        for p in all_posets(n):
            r = p.antichain_rank_exact()
            if n and p.is_linear():
                lin.expect(r == ONE, {"poset": _poset_json(p), "rank": ord_text(r)})
            if n and not p.pairs():
                anti.expect(r == CnfOrdinal.of(n), {"poset": _poset_json(p), "rank": ord_text(r)})
            ri = p.inverse().antichain_rank_exact()
            inv.expect(ri == r, {"poset": _poset_json(p), "rank": ord_text(r), "inverse_rank": ord_text(ri)})
            for drop in range(n):
                sub = [x for x in range(n) if x != drop]
                rs = p.restrict(sub).antichain_rank_exact()
                mono.expect(rs <= r, {"poset": _poset_json(p), "subset": sub, "rank": ord_text(r),
                                      "restricted_rank": ord_text(rs)})
            base = set(p.pairs())
            for q in p.augmentations():
                aug.expect(q.is_valid() and base <= set(q.pairs()),
                           {"poset": _poset_json(p), "augmentation": _poset_json(q)})
            for q in p.weakenings():
                weak.expect(q.is_valid() and set(q.pairs()) <= base,
                            {"poset": _poset_json(p), "weakening": _poset_json(q)})
    return s


EXPECTED_ALPHA = {"k": 1, "L": 1, "sum(k, k*)": 2}


def hierarchy_suite(cfg: Config = Config(), samples: int = 3, size: int = 6) -> SuiteResult:
    """Closure of the hierarchy under inverses and finite restrictions."""
    s = SuiteResult("hierarchy")
    inv_p = s.prop("alpha_invariant_under_inverse")
    res_p = s.prop("finite_restrictions_in_h")
    exact = s.prop("exact_alpha_values")
    scfg = _sampler_config(cfg)
    for text in HIERARCHY_TEXTS:
        t = parse(text)
        h, hi = hierarchy_info(t), hierarchy_info(Inv(t))
        inv_p.expect(h.alpha_bound == hi.alpha_bound and h.status == hi.status,
                     {"term": text, "alpha": h.to_json(), "inverse_alpha": hi.to_json()})
        if h.in_h:
            for seed in range(samples):
                smp = sample_restriction(t, size, seed, scfg)
                wrapped = fin(smp.poset)
                res_p.expect(hierarchy_info(wrapped).in_h,
                             {"term": text, "seed": seed, "addresses": smp.to_json()["addresses"],
                              "restriction": _poset_json(smp.poset)})
    for text, want in EXPECTED_ALPHA.items():
        got = hierarchy_info(parse(text)).alpha_bound
        exact.expect(got == CnfOrdinal.of(want),
                     {"term": text, "expected": want, "got": None if got is None else ord_text(got)})
    return s


def examples_suite(cfg: Config = Config()) -> SuiteResult:
    """Exact attribute values for the L-family and the two-block antichain witness."""
    s = SuiteResult("examples")
    wkd = s.prop("L_n_not_weakly_dense_L_is")
    lprops = s.prop("L_wf_kappa_wks_in_h")
    witness = s.prop("two_block_witness")
    for n in range(4):
        r = attrs(parse(f"L{n}"))
        wkd.expect(not r.weakly_kappa_dense, {"term": f"L{n}", "weakly_kappa_dense": True})
    r = attrs(parse("L"))
    wkd.expect(r.weakly_kappa_dense, {"term": "L", "weakly_kappa_dense": False})
    got = {"wf_kappa": r.wf_kappa, "weakly_kappa_scattered": r.weakly_kappa_scattered,
           "in_h": r.hier.in_h}
    lprops.expect(all(got.values()), {"term": "L", **got})
    text = "lsum(ac(2); k, ac(w))"
    r = attrs(parse(text))
    got = {"fac": r.fac, "kappa_ac": r.kappa_ac, "weakly_kappa_scattered": r.weakly_kappa_scattered}
    witness.expect(got == {"fac": False, "kappa_ac": True, "weakly_kappa_scattered": True},
                  {"term": text, **got})
    return s


def condense_suite(cfg: Config = Config()) -> SuiteResult:
    """Condensation against scatteredness and the literal iteration."""
    s = SuiteResult("condense")
    single = s.prop("condense_H_singleton_iff_scattered")
    ranks = s.prop("recursive_rank_equals_literal")
    clean = s.prop("condensation_verifies_on_samples")
    for text in LINEAR_TEXTS:
        t = parse(text)
        res = condense_H(t)
        sc = attrs(t).scattered_omega
        single.expect(res.singleton == sc, {"term": text, "quotient": to_text(res.quotient),
                                            "scattered_omega": sc})
        for r in (res, condense_finite(t)):
            problems = verify(r, seed=0, cfg=_sampler_config(cfg))
            clean.expect(not problems, {"term": text, "mode": r.mode, "problems": problems[:3]})
        if not sc:
            continue
        try:
            rank = hausdorff_rank(t)
        except RankError:
            continue
        if rank <= CnfOrdinal.of(4):
            lit = literal_rank(t, cfg.iteration_cap)
            ranks.expect(lit is not None and CnfOrdinal.of(lit) == rank,
                         {"term": text, "recursive": ord_text(rank), "literal": lit})
    return s


def dense_suite(cfg: Config = Config(), rounds: int = 4, bound: int = 3) -> SuiteResult:
    """Saturation, stage-filtered descent and back-and-forth at the countable level."""
    s = SuiteResult("dense")
    star = s.prop("round_r_minus_1_requests_met")
    desc = s.prop("stage_filtered_descent_grows")
    bnf = s.prop("back_and_forth_10_rounds")
    p = saturate(StageOrder.chain(2), rounds, bound)
    prior = p.born_by(rounds - 1)
    unmet = check_star(p, bound, prior)
    star.expect(not unmet, {"start": "chain(2)", "rounds": rounds, "bound": bound,
                            "unmet": [{"S": sorted(a), "T": sorted(b)} for a, b in unmet[:3]]})
    chain = stage_filtered_descending(p)
    desc.expect(len(chain) >= rounds, {"rounds": rounds, "chain": chain})
    a = saturate(StageOrder.chain(2), 3, 2)
    b = saturate(StageOrder.chain(2), 3, 2, seed=7)
    res = back_and_forth(a, b, rounds=10)
    bnf.expect(res.ok and res.rounds_done >= 10, {"rounds_done": res.rounds_done, "failure": res.failure})
    return s


def sampler_suite(cfg: Config = Config(), size: int = 8) -> SuiteResult:
    """Seeded samples across the catalog against the attribute report."""
    s = SuiteResult("sampler")
    sound = s.prop("samples_consistent_with_report")
    texts = LINEAR_TEXTS + NONLINEAR_TEXTS
    scfg = _sampler_config(cfg)
    for seed in range(cfg.sampler_budget):
        text = texts[seed % len(texts)]
        t = parse(text)
        smp = sample_restriction(t, size, seed, scfg)
        bad = check_sample(t, smp, attrs(t))
        sound.expect(not bad, {"term": text, "seed": seed, "violations": [v.to_json() for v in bad]})
    return s


def roundtrip_suite(cfg: Config = Config()) -> SuiteResult:
    s = SuiteResult("roundtrip")
    rt = s.prop("parse_print_identity")
    for text in LINEAR_TEXTS + NONLINEAR_TEXTS + HIERARCHY_TEXTS:
        t = parse(text)
        back = to_text(t)
        rt.expect(parse(back) == t, {"term": text, "printed": back})
    for name, p in FINITE_POSETS.items():
        t = fin(p)
        rt.expect(parse(to_text(t)) == t, {"term": name, "printed": to_text(t)})
    return s


def determinism_suite(cfg: Config = Config()) -> SuiteResult:
    """Representative commands run twice must serialize identically."""
    from .cli import run

    s = SuiteResult("determinism")
    same = s.prop("identical_json")
    commands = [["analyze", "L"], ["sample", "lsum(ac(2); k, ac(w))", "-n", "8", "--seed", "3"],
                ["gen-dense", "--rounds", "3", "--bound", "2", "--seed", "5"],
                ["condense", "--mode", "h", "sum(Q, k)"], ["rank", "--kind", "hierarchy", "L"]]
    for argv in commands:
        outs = [run(argv, cfg)[1] for _ in range(2)]
        same.expect(outs[0] == outs[1], {"command": argv})
    return s


SUITES: dict[str, Callable[[Config], SuiteResult]] = {
    "finite": finite_suite,
    "hierarchy": hierarchy_suite,
    "examples": examples_suite,
    "condense": condense_suite,
    "dense": dense_suite,
    "sampler": sampler_suite,
    "roundtrip": roundtrip_suite,
    "determinism": determinism_suite,
}


def run_suite(name: str, cfg: Config = Config()) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        start = time.perf_counter()
        res = SUITES[n](cfg)
        res.seconds = time.perf_counter() - start
        out.append(res)
    return out


def summary_line(res: SuiteResult) -> str:
    return f"{'PASS' if res.passed else 'FAIL'} {res.name}"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
