from __future__ import annotations

import pytest
from hypothesis import given

from conftest import posets
from kscatter.catalog import HIERARCHY_TEXTS, LINEAR_TEXTS, NAMED, NONLINEAR_TEXTS
from kscatter.dsl import ParseError, parse, parse_address, parse_with_spans, to_text
from kscatter.finposet import FinPoset
from kscatter.ordinal import OMEGA, CnfOrdinal, parse_cnf
from kscatter.terms import KAPPA, OMEGA_STAR, Fin, Inv, LimSum, Ord, SumConst, SumList, fin


def test_documented_examples():
    assert parse("sum(inv(w), k)") == SumConst(Inv(Ord(OMEGA)), KAPPA)
    assert parse("L0") == SumConst(OMEGA_STAR, KAPPA)
    assert parse("w") == parse("ord(w)")
    assert parse("w*") == parse("inv(w)")
    # finite chains normalize to ordinals
    assert parse("fin(3; 0<1, 1<2)") == Ord(CnfOrdinal.of(3))
    assert parse("ac(1)") == Ord(CnfOrdinal.of(1))


@pytest.mark.parametrize("text", LINEAR_TEXTS + NONLINEAR_TEXTS + HIERARCHY_TEXTS)
def test_round_trip(text):
    t = parse(text)
    assert parse(to_text(t)) == t


@given(posets(max_n=6))
def test_fin_round_trip(p):
    t = fin(p)
    assert parse(to_text(t)) == t


def test_names_resolve():
    for name, t in NAMED.items():
        assert parse(name) == t
    assert parse("L", names={"L": KAPPA}) == KAPPA


@pytest.mark.parametrize("text,line,col", [
    ("sum(w, )", 1, 8),
    ("sum(w\n, Z)", 2, 3),
    ("fin(3; 0<1, 1<0)", 1, None),
    ("lsum(2; w)", 1, None),
    ("ord(w^)", 1, 5),
    ("sum(w, w) x", 1, None),
    ("fin(2; 0<5)", 1, None),
])
def test_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    if col is not None:
        assert info.value.col == col


def test_spans_cover_subterms():
    text = "sum(w, lsum(ac(2); k, Q))"
    t, spans = parse_with_spans(text)
    assert spans[-1][0] == t and spans[-1][1].start == 0 and spans[-1][1].end == len(text)
    inner = [s for u, s in spans if isinstance(u, SumList)][0]
    assert text[inner.start:inner.end] == "lsum(ac(2); k, Q)"


def test_addresses():
    assert parse_address("(3, -1/2)") == (3, parse_address("-1/2"))
    assert parse_address("[1, 2]") == [1, 2]
    assert parse_address("ord(w+1)") == parse_cnf("w+1")
    t = parse("limsum(1, 2, 0)")
    assert isinstance(t, LimSum)
    with pytest.raises(ParseError):
        parse_address("(1, 2, 3)")


def test_index_forms():
    assert parse("lsum(ac(2); w, w)").index == FinPoset.antichain(2)
    assert parse("lsum(2; w, w)").index == FinPoset.chain(2)
    assert isinstance(parse("fin(3; 0<1)"), Fin)
