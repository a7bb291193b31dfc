"""Command line entry point: ``kscatter VERB ...``, JSON on stdout.

Exit codes: 0 success, 1 a check suite failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import ordinal
from .address import AddressError
from .attrs import RHO_VARIANTS, attrs, hierarchy_info, ordinal_json, rho_surrogate
from .catalog import FINITE_POSETS, HIERARCHY_TEXTS, LINEAR_TEXTS, NAMED, NONLINEAR_TEXTS, describe
from .condense import MODES, Indeterminate, RankError, condense, hausdorff_rank, literal_rank, verify
from .config import Config, load_config
from .densegen import StageOrder, saturate, stage_filtered_descending
from .dsl import ParseError, parse, to_text
from .finposet import CycleError
from .ordinal import OrdinalError, parse_cnf
from .sampler import SamplerConfig, sample_restriction
from .terms import Fin, LimSum, SumConst, SumList, Inv, Term, TermError

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, sort_keys=True, indent=2) + "\n"


def term_dot(t: Term) -> str:
    """The syntax tree of ``t`` as a DOT digraph."""
    lines = ["digraph T {"]
    counter = [0]

    def visit(u: Term) -> int:
        k = counter[0]
        counter[0] += 1
        if isinstance(u, Inv):
            kids, label = [u.body], "inv"
        elif isinstance(u, SumConst):
            kids, label = [u.index, u.summand], "sum"
        elif isinstance(u, SumList):
            kids, label = list(u.family), f"lsum {u.index.n}"
        elif isinstance(u, LimSum):
            kids, label = [u.base, u.step], "limsum"
        else:
            kids, label = [], to_text(u)
        lines.append(f"  t{k} [label={json.dumps(label)}];")
        for c in kids:
            lines.append(f"  t{k} -> t{visit(c)};")
        return k

    visit(t)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write_dot(path: Optional[str], text: str):
    if path:
        Path(path).write_text(text)


def _cap(name: str, value: int, cap: int):
    if value < 0 or value > cap:
        raise UsageError(f"{name}={value} outside 0..{cap}")


def _sampler(cfg: Config) -> SamplerConfig:
    return SamplerConfig(kappa=parse_cnf(cfg.kappa))


# -- verbs -------------------------------------------------------------------------

def cmd_analyze(args, cfg: Config) -> tuple[int, dict]:
    t = parse(args.term)
    r = attrs(t)
    out = {"command": "analyze", "term": to_text(t), "report": r.to_json()}
    if r.fac:
        out["rho_surrogate"] = {v: ordinal_json(rho_surrogate(t, v)) for v in RHO_VARIANTS}
    _write_dot(args.dot, t.poset.to_dot() if isinstance(t, Fin) else term_dot(t))
    return 0, out


def cmd_rank(args, cfg: Config) -> tuple[int, dict]:
    t = parse(args.term)
    out = {"command": "rank", "kind": args.kind, "term": to_text(t)}
    if args.kind == "hausdorff":
        try:
            r = hausdorff_rank(t)
        except RankError as exc:
            raise UsageError(str(exc))
        out["rank"] = ordinal_json(r)
        if r.is_finite() and int(r) <= cfg.iteration_cap:
            out["literal_iterations"] = literal_rank(t, cfg.iteration_cap)
    elif args.kind == "antichain":
        if isinstance(t, Fin):
            out["exact"] = True
            out["rank"] = ordinal_json(t.poset.antichain_rank_exact())
        elif not attrs(t).fac:
            out["exact"] = False
            out["fac"] = False
            out["rank"] = None
        else:
            out["exact"] = attrs(t).linear or attrs(t).empty
            out["rank"] = ordinal_json(rho_surrogate(t, args.variant))
            out["variant"] = args.variant
    else:
        h = hierarchy_info(t)
        out["hierarchy"] = h.to_json()
        out["rank"] = None if h.alpha_bound is None else ordinal_json(h.alpha_bound)
    return 0, out


def cmd_condense(args, cfg: Config) -> tuple[int, dict]:
    t = parse(args.term)
    _cap("samples", args.samples, cfg.max_sample_n)
    out = {"command": "condense", "mode": args.mode, "term": to_text(t)}
    try:
        res = condense(t, args.mode)
    except Indeterminate as exc:
        out.update(status="indeterminate", reason=str(exc))
        return 0, out
    addrs = sample_restriction(t, args.samples, args.seed, _sampler(cfg)).addresses
    out.update(status="ok", quotient=to_text(res.quotient), singleton=res.singleton,
               class_map=res.class_map(addrs),
               problems=verify(res, n=args.samples, seed=args.seed, cfg=_sampler(cfg)))
    return 0, out


def cmd_sample(args, cfg: Config) -> tuple[int, dict]:
    t = parse(args.term)
    _cap("n", args.n, cfg.max_sample_n)
    smp = sample_restriction(t, args.n, args.seed, _sampler(cfg))
    out = {"command": "sample", "sample": smp.to_json()}
    if smp.poset.n <= 12:
        out["antichain_rank_exact"] = ordinal_json(smp.poset.antichain_rank_exact())
    labels = out["sample"]["addresses"]
    _write_dot(args.dot, smp.poset.to_dot(labels))
    return 0, out


def cmd_gen_dense(args, cfg: Config) -> tuple[int, dict]:
    _cap("rounds", args.rounds, cfg.max_rounds)
    _cap("bound", args.bound, cfg.max_bound)
    if args.bound < 1:
        raise UsageError("bound must be at least 1")
    p = saturate(StageOrder.chain(args.start), args.rounds, args.bound, args.seed)
    return 0, {"command": "gen-dense", "rounds": args.rounds, "bound": args.bound,
               "seed": args.seed, "start": args.start, "size": len(p),
               "stage_filtered_descending": stage_filtered_descending(p), "stage": p.to_json()}


def cmd_check(args, cfg: Config) -> tuple[int, dict]:
    from .checks import SUITES, run_suite, summary_line

    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(args.suite, cfg)
    for r in results:
        print(summary_line(r), file=sys.stderr)
    ok = all(r.passed for r in results)
    return (0 if ok else 1), {"command": "check", "suite": args.suite, "passed": ok,
                              "results": [r.to_json() for r in results]}


def cmd_examples(args, cfg: Config) -> tuple[int, dict]:
    return 0, {
        "command": "examples",
        "named": {k: {"term": to_text(v), "description": describe(k)} for k, v in NAMED.items()},
        "linear": LINEAR_TEXTS,
        "nonlinear": NONLINEAR_TEXTS,
        "hierarchy": HIERARCHY_TEXTS,
        "finite_posets": {k: to_text(Fin(p)) if not p.is_linear() else f"{p.n}"
                          for k, p in FINITE_POSETS.items()},
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kscatter", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="key=value file with caps")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", help="full attribute report")
    p.add_argument("term")
    p.add_argument("--dot", help="write a DOT graph to this path")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("rank", help="Hausdorff, antichain or hierarchy rank")
    p.add_argument("--kind", choices=("hausdorff", "antichain", "hierarchy"), default="hausdorff")
    p.add_argument("--variant", choices=RHO_VARIANTS, default="antichain")
    p.add_argument("term")
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("condense", help="condensation quotient and class map")
    p.add_argument("--mode", choices=MODES, default="finite")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("term")
    p.set_defaults(fn=cmd_condense)

    p = sub.add_parser("sample", help="seeded finite restriction")
    p.add_argument("term")
    p.add_argument("-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dot", help="write the sampled poset's Hasse diagram here")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("gen-dense", help="saturate a finite chain")
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--start", type=int, default=2, help="size of the starting chain")
    p.set_defaults(fn=cmd_gen_dense)

    p = sub.add_parser("check", help="run a regression suite")
    p.add_argument("suite")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("examples", help="list the example catalog")
    p.set_defaults(fn=cmd_examples)
    return ap


def run(argv, cfg: Optional[Config] = None) -> tuple[int, str]:
    """Execute one command; returns the exit code and the stdout text."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        if cfg is None:
            cfg = load_config(args.config) if args.config else Config()
        ordinal.MAX_DEPTH = cfg.ordinal_depth
        code, out = args.fn(args, cfg)
    except (ParseError, TermError, AddressError, CycleError, OrdinalError, UsageError,
            ValueError, OSError) as exc:
        print(f"kscatter: error: {exc}", file=sys.stderr)
        return 2, ""
    return code, _dump(out)


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
