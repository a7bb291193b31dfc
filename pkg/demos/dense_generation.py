"""Grow a countable dense order from a two-point chain and match two copies."""
from __future__ import annotations

from kscatter.densegen import StageOrder, back_and_forth, check_star, saturate, stage_filtered_descending

if __name__ == "__main__":
    p = StageOrder.chain(2)
    for r in range(1, 5):
        p = saturate(p, 1, 3)
        chain = stage_filtered_descending(p)
        print(f"round {r}: {len(p):3} points, descending chain with distinct births: {len(chain)}")
    print("unmet requests over points born by round 3:", len(check_star(p, 3, p.born_by(3))))
    a = saturate(StageOrder.chain(2), 3, 2)
    b = saturate(StageOrder.chain(2), 3, 2, seed=7)
    res = back_and_forth(a, b, rounds=10)
    print("back-and-forth:", "ok" if res.ok else res.failure, res.mapping)
    res = back_and_forth(a, StageOrder.chain(2), {0: 0, 1: 1}, rounds=4)
    print("against a bare 2-chain:", res.failure)
