from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from kscatter.finposet import FinPoset
from kscatter.ordinal import CnfOrdinal

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def record_acceptance():
    def record(k: int, ok: bool, text: str):
        ACCEPTANCE[k] = (ok, text)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
    return record


# -- strategies ------------------------------------------------------------------

def polynomial_ordinals(max_exp: int = 4, max_coef: int = 5):
    """Ordinals below w^w as {exponent: coefficient} dicts."""
    return st.dictionaries(st.integers(0, max_exp), st.integers(1, max_coef), max_size=max_exp + 1)


def to_cnf(poly: dict) -> CnfOrdinal:
    return CnfOrdinal([(e, c) for e, c in poly.items()])


@st.composite
def posets(draw, max_n: int = 6):
    """Random strict order: a random DAG under a random labelling, closed transitively."""
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(perm[i], perm[j]) for i, j in itertools.combinations(range(n), 2) if draw(st.booleans())]
    return FinPoset.from_relations(n, pairs)


def closure_matrix(n: int, pairs) -> np.ndarray:
    """Transitive closure by repeated boolean squaring (oracle for from_relations)."""
    m = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        m[a, b] = True
    while True:
        nxt = m | ((m.astype(int) @ m.astype(int)) > 0)
        if (nxt == m).all():
            return m
        m = nxt


def brute_width(p: FinPoset) -> int:
    best = 0
    for mask in range(1 << p.n):
        pts = [i for i in range(p.n) if mask >> i & 1]
        if all(not p.less(a, b) and not p.less(b, a) for a, b in itertools.combinations(pts, 2)):
            best = max(best, len(pts))
    return best
