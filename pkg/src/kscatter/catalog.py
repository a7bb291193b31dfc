"""Example catalog: the named L-family, anchor terms and small posets."""
from __future__ import annotations

from .finposet import FinPoset
from .terms import KAPPA, OMEGA_STAR, SumConst, Term, limsum

L0 = SumConst(OMEGA_STAR, KAPPA)


def l_n(n: int) -> Term:
    """``L_0`` summed along ``L_{n-1}``, starting from ``sum(w*, k)``."""
    t = L0
    for _ in range(n):
        t = SumConst(t, L0)
    return t


#: direct limit of the L_n, each point sent to the base element of its block
L = limsum(L0, L0)

NAMED: dict[str, Term] = {"L0": L0, "L1": l_n(1), "L2": l_n(2), "L3": l_n(3), "L": L}

_DESCRIPTIONS = {
    "L0": "sum along w* of copies of k",
    "L1": "sum along L0 of copies of L0",
    "L2": "sum along L1 of copies of L0",
    "L3": "sum along L2 of copies of L0",
    "L": "direct limit of the L_n",
}

#: linear terms; text forms so that the catalog also exercises the parser
LINEAR_TEXTS = [
    "L0", "L1", "L2", "L3", "L",
    "sum(Q, k)", "sum(k, k*)", "Qk", "w", "w*", "k", "k*", "Q",
    "ord(w^2)", "sum(w*, w)", "sum(w, w)", "ord(w^2*3+w+4)", "sum(w, ord(w+1))",
    "lsum(2; w*, w)", "sum(Q, w)", "limsum(1, 2, 0)", "lsum(2; w, Q)", "5",
    "ord(w^3)", "ord(w^4)", "sum(w*, ord(w+1))", "sum(ord(w^2), w*)",
    "inv(ord(w^2+1))", "lsum(3; ord(w^2), 1, w*)", "sum(w, Q)",
]

NONLINEAR_TEXTS = [
    "lsum(ac(2); k, ac(w))", "ac(3)", "ac(w)", "sum(ac(2), w)", "sum(k, ac(2))",
    "sum(w, fin(3; 0<1))", "lsum(ac(2); L0, k*)", "lsum(fin(3; 0<1, 0<2); w, Q, k)",
    "inv(sum(ac(2), k))", "limsum(ac(2), 2, 0)", "limsum(1, ac(3), 0)",
    "sum(ac(2), Qk)", "lsum(ac(2); w*, fin(4; 0<2, 1<2, 1<3))",
]

#: the twenty terms used for hierarchy regressions
HIERARCHY_TEXTS = [
    "k", "k*", "L0", "L1", "L2", "L3", "L", "sum(k, k*)", "sum(Q, k)", "Q",
    "w", "w*", "ord(w^2)", "sum(w*, w)", "lsum(ac(2); k, k*)", "sum(ac(2), w)",
    "sum(k, ac(2))", "lsum(fin(3; 0<1, 0<2); w, Q, k)", "sum(sum(k, k*), k)", "ac(3)",
]

FINITE_POSETS: dict[str, FinPoset] = {
    "point": FinPoset.chain(1),
    "chain3": FinPoset.chain(3),
    "antichain3": FinPoset.antichain(3),
    "vee": FinPoset.from_relations(3, [(0, 1), (0, 2)]),
    "wedge": FinPoset.from_relations(3, [(0, 2), (1, 2)]),
    "N": FinPoset.from_relations(4, [(0, 2), (1, 2), (1, 3)]),
    "diamond": FinPoset.from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    "two_chains": FinPoset.from_relations(4, [(0, 1), (2, 3)]),
    "butterfly": FinPoset.from_relations(4, [(0, 2), (0, 3), (1, 2), (1, 3)]),
    "chain_plus_point": FinPoset.from_relations(3, [(0, 1)]),
}


def parsed(texts):
    from .dsl import parse
    return [parse(s) for s in texts]


def linear_terms():
    return parsed(LINEAR_TEXTS)


def nonlinear_terms():
    return parsed(NONLINEAR_TEXTS)


def all_terms():
    return linear_terms() + nonlinear_terms()


def describe(name: str) -> str:
    return _DESCRIPTIONS.get(name, "")
