from __future__ import annotations

import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import brute_width, posets
from kscatter.attrs import attrs
from kscatter.catalog import LINEAR_TEXTS, NONLINEAR_TEXTS
from kscatter.dsl import parse
from kscatter.finposet import FinPoset, lex_sum
from kscatter.ordinal import CnfOrdinal
from kscatter.sampler import (EQUAL, GREATER, INCOMPARABLE, LESS, SamplerConfig, chain_pattern,
                              check_sample, compare, oracle_check, sample_json, sample_restriction)
from kscatter.terms import Ac, Fin, Inv, Ord, SumConst, SumList, TermError, ac, fin, ordinal

# -- explicit expansion of finite terms (oracle for compare) -----------------------


def explode(t):
    """All addresses of a finite term with the order they realize, built by lex_sum."""
    if isinstance(t, Fin):
        return list(range(t.poset.n)), t.poset
    if isinstance(t, Ac):
        return list(range(t.n)), FinPoset.antichain(t.n)
    if isinstance(t, Ord):
        n = int(t.alpha)
        return [CnfOrdinal.of(i) for i in range(n)], FinPoset.chain(n)
    if isinstance(t, Inv):
        addrs, p = explode(t.body)
        return addrs, p.inverse()
    if isinstance(t, SumConst):
        ia, ip = explode(t.index)
        ba, bp = explode(t.summand)
        return [(i, b) for i in ia for b in ba], lex_sum(ip, [bp] * ip.n)
    if isinstance(t, SumList):
        parts = [explode(f) for f in t.family]
        return ([(k, a) for k, (addrs, _) in enumerate(parts) for a in addrs],
                lex_sum(t.index, [p for _, p in parts]))
    raise TypeError(t)


FIN_LEAVES = st.one_of(st.integers(1, 3).map(ordinal), st.integers(2, 3).map(ac),
                       posets(max_n=3).filter(lambda p: p.n > 0).map(fin))


def _extend(children):
    return st.one_of(
        children.map(Inv),
        st.tuples(children, children).map(lambda p: SumConst(*p)),
        st.integers(1, 3).flatmap(lambda n: st.tuples(
            posets(max_n=n).filter(lambda p: p.n == n), st.lists(children, min_size=n, max_size=n))
        ).map(lambda p: SumList(p[0], tuple(p[1]))),
    )


FINITE_TERMS = st.recursive(FIN_LEAVES, _extend, max_leaves=4)


@given(FINITE_TERMS)
def test_compare_matches_explicit_expansion(t):
    addrs, p = explode(t)
    assume(len(addrs) <= 40)
    for (i, a), (j, b) in itertools.product(enumerate(addrs), repeat=2):
        want = EQUAL if i == j else LESS if p.less(i, j) else GREATER if p.less(j, i) else INCOMPARABLE
        assert compare(t, a, b) == want


@given(FINITE_TERMS)
def test_finite_report_matches_expansion(t):
    addrs, p = explode(t)
    assume(len(addrs) <= 12)
    r = attrs(t)
    assert int(r.card.n) == p.n
    assert r.linear == p.is_linear()
    assert r.ac_card.n == brute_width(p)


@given(FINITE_TERMS, st.integers(0, 10**6))
def test_full_sample_of_finite_term_is_the_expansion(t, seed):
    addrs, p = explode(t)
    assume(len(addrs) <= 8)
    s = sample_restriction(t, len(addrs), seed)
    assert s.complete
    order = sorted(range(len(addrs)), key=lambda k: addrs.index(s.addresses[k]))
    again = s.poset.relabel([order.index(k) for k in range(len(addrs))])
    assert again == p


ALL_TEXTS = LINEAR_TEXTS + NONLINEAR_TEXTS


@pytest.mark.parametrize("text", ALL_TEXTS)
def test_samples_respect_report(text):
    t = parse(text)
    for seed in range(3):
        s = sample_restriction(t, 10, seed)
        assert s.poset.is_valid()
        assert check_sample(t, s, attrs(t)) == []


@pytest.mark.parametrize("text", ALL_TEXTS)
def test_oracle_probe_clean(text):
    assert oracle_check(parse(text)) == []


@given(st.sampled_from(ALL_TEXTS), st.integers(0, 10**9), st.integers(1, 12))
def test_sampling_is_deterministic(text, seed, n):
    t = parse(text)
    assert sample_json(sample_restriction(t, n, seed)) == sample_json(sample_restriction(t, n, seed))


@given(st.sampled_from(ALL_TEXTS), st.integers(0, 10**9))
def test_compare_is_a_strict_order_on_samples(text, seed):
    t = parse(text)
    s = sample_restriction(t, 6, seed)
    a = s.addresses
    for x, y in itertools.product(a, repeat=2):
        c = compare(t, x, y)
        assert (c == EQUAL) == (x == y)
        assert compare(t, y, x) == {LESS: GREATER, GREATER: LESS}.get(c, c)
    for x, y, z in itertools.product(a, repeat=3):
        if compare(t, x, y) == LESS and compare(t, y, z) == LESS:
            assert compare(t, x, z) == LESS


@pytest.mark.parametrize("text,desc", [("w*", True), ("Q", True), ("Q", False), ("w", False),
                                       ("L", True), ("limsum(1, 2, 0)", True), ("k", False)])
def test_chain_patterns_are_monotone(text, desc):
    t = parse(text)
    chain = chain_pattern(t, 20, desc)
    assert chain is not None and len(set(chain)) == 20
    want = GREATER if desc else LESS
    assert all(compare(t, a, b) == want for a, b in zip(chain, chain[1:]))


@pytest.mark.parametrize("text,desc", [("w", True), ("5", True), ("k", True), ("ac(3)", True)])
def test_no_pattern_for_well_founded_direction(text, desc):
    assert chain_pattern(parse(text), 5, desc) is None


def test_small_terms_flag_incomplete_samples():
    s = sample_restriction(parse("3"), 5, 0)
    assert not s.complete and len(s.addresses) == 3


def test_kappa_instantiation_is_recorded():
    cfg = SamplerConfig(kappa=CnfOrdinal.omega_pow(3))
    s = sample_restriction(parse("k"), 4, 1, cfg)
    assert "w^3" in s.instantiation
    assert all(a < CnfOrdinal.omega_pow(3) for a in s.addresses)


def test_antichain_bound_never_exceeded():
    for text in ALL_TEXTS:
        t = parse(text)
        r = attrs(t)
        if not r.fac:
            continue
        for seed in range(5):
            s = sample_restriction(t, 10, seed)
            assert s.poset.width() <= r.ac_card.n


def test_rho_requires_fac():
    from kscatter.attrs import rho_surrogate
    with pytest.raises(TermError):
        rho_surrogate(parse("ac(w)"))
