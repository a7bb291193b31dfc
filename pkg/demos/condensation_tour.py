"""Condense a handful of linear terms and compare ranks with literal iteration."""
from __future__ import annotations

from kscatter import attrs, condense_finite, condense_H, parse, to_text
from kscatter.condense import RankError, hausdorff_rank, literal_rank

TERMS = ["w", "ord(w^3)", "sum(w*, w)", "sum(Q, k)", "lsum(2; w, Q)", "L", "limsum(1, 2, 0)"]

if __name__ == "__main__":
    for text in TERMS:
        t = parse(text)
        fin = condense_finite(t).quotient
        h = condense_H(t).quotient
        try:
            rank = f"{hausdorff_rank(t)} (literal {literal_rank(t)})"
        except RankError:
            rank = "n/a"
        print(f"{text:18} scattered={attrs(t).scattered_omega!s:5} finite->{to_text(fin)[:30]:30} "
              f"H->{to_text(h)[:24]:24} rank={rank}")
