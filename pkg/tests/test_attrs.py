from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import brute_width, posets
from kscatter.attrs import IN, OUT, attrs, hierarchy_info, invert, rho_surrogate
from kscatter.catalog import HIERARCHY_TEXTS, L, LINEAR_TEXTS, NONLINEAR_TEXTS, l_n
from kscatter.dsl import parse
from kscatter.finposet import FinPoset, lex_sum
from kscatter.ordinal import OMEGA, CnfOrdinal, nat_prod
from kscatter.terms import (AC_OMEGA, KAPPA, QKAPPA, RATS, CardClass, Fin, Inv, SumConst, SumList,
                            TermError, ac, fin, limsum, ordinal)

LEAVES = st.sampled_from([ordinal(1), ordinal(2), ordinal(3), ordinal(OMEGA), ordinal(nat_prod(OMEGA, OMEGA)),
                          KAPPA, RATS, QKAPPA, ac(2), ac(3), AC_OMEGA])


def _extend(children):
    return st.one_of(
        children.map(Inv),
        st.tuples(children, children).map(lambda p: SumConst(*p)),
        st.integers(1, 3).flatmap(lambda n: st.tuples(
            posets(max_n=n).filter(lambda p: p.n == n), st.lists(children, min_size=n, max_size=n))
        ).map(lambda p: SumList(p[0], tuple(p[1]))),
        st.tuples(children, children).map(lambda p: limsum(*p)),
    )


TERMS = st.recursive(LEAVES | posets(max_n=4).filter(lambda p: p.n > 0).map(fin), _extend, max_leaves=5)


def synth(t):
    try:
        return attrs(t)
    except TermError:
        assume(False)


def strip(r):
    return replace(r, hier=None)


@given(TERMS)
def test_inverse_is_an_involution(t):
    r = synth(t)
    assert strip(attrs(Inv(Inv(t)))) == strip(r)
    assert strip(attrs(Inv(t))) == invert(strip(r))
    assert hierarchy_info(Inv(t)).status == hierarchy_info(t).status
    assert hierarchy_info(Inv(t)).alpha_bound == hierarchy_info(t).alpha_bound


@given(TERMS)
def test_report_implications(t):
    r = synth(t)
    if r.linear:
        assert r.ac_card <= CardClass.fin(1)
    if r.wf_omega:
        assert r.wf_kappa
    if r.cowf_omega:
        assert r.cowf_kappa
    if r.scattered_omega:
        assert r.weakly_kappa_scattered
    if r.strongly_kappa_scattered:
        assert r.weakly_kappa_scattered
    if r.weakly_kappa_dense:
        assert r.linear and not r.strongly_kappa_scattered
    if r.fac:
        assert r.kappa_ac
    if r.card.finite:
        assert r.wf_omega and r.cowf_omega and r.scattered_omega and r.fac
    if r.hier.in_h:
        assert r.fac and r.weakly_kappa_scattered
    if r.is_antichain:
        assert r.ac_card == r.card


@given(TERMS, st.integers(1, 3))
def test_constant_sum_matches_listed_sum(t, n):
    body = synth(t)
    for index in (FinPoset.chain(n), FinPoset.antichain(n), FinPoset.from_relations(3, [(0, 1)])):
        listed = SumList(index, (t,) * index.n)
        const = SumConst(fin(index), t)
        assert strip(attrs(const)) == strip(attrs(listed)), (index, t, body)


@given(posets(max_n=3).filter(lambda p: p.n > 0), st.data())
def test_finite_sums_match_brute_force(index, data):
    blocks = [data.draw(posets(max_n=3).filter(lambda p: p.n > 0)) for _ in range(index.n)]
    total = lex_sum(index, blocks)
    r = attrs(SumList(index, tuple(fin(b) for b in blocks)))
    assert r.card == CardClass.fin(total.n)
    assert r.ac_card == CardClass.fin(brute_width(total))
    assert r.linear == total.is_linear()
    assert r.is_antichain == (not total.pairs())
    assert r.wf_omega and r.cowf_omega and r.scattered_omega and not r.weakly_kappa_dense
    if total.is_linear():
        assert r.has_first and r.has_last
        assert r.has_adjacent_pair == (total.n >= 2)


@given(posets(max_n=5).filter(lambda p: p.n > 0))
def test_rho_is_exact_on_finite_posets(p):
    t = fin(p)
    for v in ("antichain", "width"):
        assert rho_surrogate(t, v) >= p.antichain_rank_exact()


@given(posets(max_n=3).filter(lambda p: p.n > 0), st.data())
def test_rho_dominates_finite_sums(index, data):
    blocks = [data.draw(posets(max_n=3).filter(lambda p: p.n > 0)) for _ in range(index.n)]
    t = SumList(index, tuple(fin(b) for b in blocks))
    exact = lex_sum(index, blocks).antichain_rank_exact()
    assert rho_surrogate(t, "antichain") >= exact
    assert rho_surrogate(t, "width") >= exact


# -- catalog values ----------------------------------------------------------------

@pytest.mark.parametrize("n", range(4))
def test_l_n_not_weakly_dense(n):
    r = attrs(l_n(n))
    assert not r.weakly_kappa_dense
    assert r.linear and r.wf_kappa and r.weakly_kappa_scattered


def test_l_limit_values():
    r = attrs(L)
    assert r.weakly_kappa_dense
    assert r.wf_kappa and r.weakly_kappa_scattered and r.hier.in_h
    assert not r.strongly_kappa_scattered
    assert hierarchy_info(L).alpha_bound == CnfOrdinal.of(1)


def test_two_block_witness():
    r = attrs(parse("lsum(ac(2); k, ac(w))"))
    assert not r.fac and r.kappa_ac and r.weakly_kappa_scattered
    assert r.hier.status == OUT


@pytest.mark.parametrize("text,alpha", [("k", 1), ("k*", 1), ("sum(k, k*)", 2), ("L", 1), ("w", 1),
                                        ("ac(3)", 1), ("sum(sum(k, k*), k)", 3), ("Q", 1),
                                        ("sum(Q, k)", 1)])
def test_hierarchy_values(text, alpha):
    h = hierarchy_info(parse(text))
    assert h.status == IN and h.alpha_bound == CnfOrdinal.of(alpha)


@pytest.mark.parametrize("text", ["Qk", "ac(w)", "sum(ac(2), Qk)"])
def test_outside_hierarchy(text):
    assert hierarchy_info(parse(text)).status == OUT


@pytest.mark.parametrize("text,value", [("Q", False), ("Qk", False), ("w", True), ("k", True),
                                        ("sum(w*, w)", True), ("L", False), ("L0", True)])
def test_scattered_omega(text, value):
    assert attrs(parse(text)).scattered_omega is value


def test_leaf_rows():
    k = attrs(KAPPA)
    assert k.wf_omega and not k.cowf_omega and not k.cowf_kappa and k.has_first and not k.has_last
    q = attrs(RATS)
    assert not q.wf_omega and q.wf_kappa and q.cowf_kappa and not q.has_adjacent_pair
    qk = attrs(QKAPPA)
    assert qk.weakly_kappa_dense and not qk.weakly_kappa_scattered and not qk.wf_kappa


def test_limsum_over_dyadic_rationals_is_not_well_founded():
    r = attrs(parse("limsum(1, 2, 0)"))
    assert r.linear and not r.wf_omega and not r.scattered_omega and not r.has_adjacent_pair


def test_catalog_is_analyzable():
    for text in LINEAR_TEXTS + NONLINEAR_TEXTS + HIERARCHY_TEXTS:
        r = attrs(parse(text))
        assert r.to_json()["hier"]["status"] in ("in", "out", "unknown")


def test_fin_leaf():
    p = FinPoset.from_relations(4, [(0, 2), (1, 2), (1, 3)])
    r = attrs(Fin(p))
    assert r.card == CardClass.fin(4) and r.ac_card == CardClass.fin(2) and not r.linear
    assert r.has_first is None
