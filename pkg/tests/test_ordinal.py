from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polynomial_ordinals, to_cnf
from kscatter.ordinal import (OMEGA, ONE, ZERO, CnfOrdinal, OrdinalError, cmp, divmod_omega, nat_prod,
                              nat_sum, omega_times, one_plus_inverse, parse_cnf, std_add, to_structured,
                              to_text)


def poly_cmp(a: dict, b: dict) -> int:
    for e in range(max(list(a) + list(b) + [0]), -1, -1):
        x, y = a.get(e, 0), b.get(e, 0)
        if x != y:
            return -1 if x < y else 1
    return 0


def poly_std_add(a: dict, b: dict) -> dict:
    if not b:
        return dict(a)
    lead = max(b)
    out = {e: c for e, c in a.items() if e > lead}
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    out[lead] = b[lead] + a.get(lead, 0)
    return out


def poly_nat_sum(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return out


def poly_nat_prod(a, b):
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


ords = polynomial_ordinals()


@given(ords, ords)
def test_comparison_matches_polynomial_order(a, b):
    assert cmp(to_cnf(a), to_cnf(b)) == poly_cmp(a, b)
    assert (to_cnf(a) < to_cnf(b)) == (poly_cmp(a, b) < 0)


@given(ords, ords)
def test_std_add_matches_absorption(a, b):
    assert std_add(to_cnf(a), to_cnf(b)) == to_cnf(poly_std_add(a, b))


@given(ords, ords)
def test_natural_operations_match_polynomials(a, b):
    assert nat_sum(to_cnf(a), to_cnf(b)) == to_cnf(poly_nat_sum(a, b))
    assert nat_prod(to_cnf(a), to_cnf(b)) == to_cnf(poly_nat_prod(a, b))


@given(ords, ords, ords)
def test_std_add_associative_and_monotone(a, b, c):
    x, y, z = to_cnf(a), to_cnf(b), to_cnf(c)
    assert std_add(std_add(x, y), z) == std_add(x, std_add(y, z))
    assert std_add(x, y) >= y
    assert std_add(x, y) >= x
    if y < z:
        assert std_add(x, y) < std_add(x, z)


@given(ords, ords)
def test_natural_sum_dominates_standard_sums(a, b):
    x, y = to_cnf(a), to_cnf(b)
    s = nat_sum(x, y)
    assert s == nat_sum(y, x)
    assert s >= std_add(x, y) and s >= std_add(y, x)


@given(ords)
def test_text_round_trip(a):
    x = to_cnf(a)
    assert parse_cnf(to_text(x)) == x


def test_nested_exponents_round_trip():
    ww = CnfOrdinal.omega_pow(OMEGA)
    x = CnfOrdinal([(ww, 2), (3, 1), (0, 7)])
    assert parse_cnf(to_text(x)) == x
    assert x > CnfOrdinal.omega_pow(100, 9)


@given(ords)
def test_divmod_omega_reconstructs(a):
    x = to_cnf(a)
    q, r = divmod_omega(x)
    assert std_add(omega_times(q), CnfOrdinal.of(r)) == x


def test_one_plus_inverse():
    assert one_plus_inverse(CnfOrdinal.of(5)) == CnfOrdinal.of(4)
    assert one_plus_inverse(OMEGA) == OMEGA
    assert std_add(ONE, one_plus_inverse(CnfOrdinal.of(1))) == ONE


def test_basic_values():
    assert std_add(ONE, OMEGA) == OMEGA
    assert std_add(OMEGA, ONE) != OMEGA
    assert nat_sum(ONE, OMEGA) == std_add(OMEGA, ONE)
    assert to_text(nat_prod(OMEGA, OMEGA)) == "w^2"
    assert ZERO.is_zero() and OMEGA.is_limit() and CnfOrdinal.of(3).is_successor()
    assert to_structured(CnfOrdinal.of(3)) == to_structured(CnfOrdinal.of(3))


@pytest.mark.parametrize("bad", ["", "w^", "3 +", "-1", "w^(2", "x"])
def test_parse_errors(bad):
    with pytest.raises(OrdinalError):
        parse_cnf(bad)


def test_depth_cap():
    x = ONE
    with pytest.raises(OrdinalError):
        for _ in range(20):
            x = CnfOrdinal.omega_pow(x)


def test_negative_rejected():
    with pytest.raises(OrdinalError):
        CnfOrdinal.of(-1)
    with pytest.raises(TypeError):
        CnfOrdinal.of(True)


@given(st.integers(0, 50), st.integers(0, 50))
def test_finite_arithmetic(m, n):
    a, b = CnfOrdinal.of(m), CnfOrdinal.of(n)
    assert int(std_add(a, b)) == m + n == int(nat_sum(a, b))
    assert int(nat_prod(a, b)) == m * n
