"""Explicit finite strict partial orders and brute-force oracles.

Elements are ``0..n-1``.  The strict order is held as one bitmask per
element (``up[i]`` has bit ``j`` set iff ``i < j``); :attr:`FinPoset.lt`
gives the same relation as a boolean numpy matrix.
"""
from __future__ import annotations

import itertools
import json
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .ordinal import CnfOrdinal

#: Default cap on the length of augmentation/weakening streams.
STREAM_CAP = 10**6


class CycleError(ValueError):
    def __init__(self, cycle):
        super().__init__(f"relation has a cycle: {' < '.join(map(str, cycle))}")
        self.cycle = cycle


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _close(n: int, up: list[int]) -> list[int]:
    """Transitive closure of bitmask rows (Warshall)."""
    up = list(up)
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    return up


class FinPoset:
    __slots__ = ("n", "up", "__dict__")

    def __init__(self, n: int, up: Sequence[int]):
        # trusted constructor: ``up`` must already be a strict order
        self.n = n
        self.up = tuple(up)

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "FinPoset":
        up = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair {(a, b)} outside 0..{n - 1}")
            up[a] |= 1 << b
        direct = list(up)
        up = _close(n, up)
        for i in range(n):
            if up[i] >> i & 1:
                raise CycleError(_find_cycle(n, direct, i))
        return cls(n, up)

    @classmethod
    def from_matrix(cls, lt) -> "FinPoset":
        lt = np.asarray(lt, dtype=bool)
        n = lt.shape[0]
        return cls.from_relations(n, zip(*np.nonzero(lt)))

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        return cls(n, [((1 << n) - 1) & ~((1 << (i + 1)) - 1) for i in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "FinPoset":
        return cls(n, [0] * n)

    # -- basic queries -----------------------------------------------------
    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or bool((self.up[i] >> j | self.up[j] >> i) & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i, row in enumerate(self.up):
            for j in _bits(row):
                down[j] |= 1 << i
        return tuple(down)

    @cached_property
    def comp(self) -> tuple[int, ...]:
        """Comparability masks, each element counted as comparable to itself."""
        return tuple(self.up[i] | self.down[i] | 1 << i for i in range(self.n))

    @property
    def lt(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i, row in enumerate(self.up):
            for j in _bits(row):
                m[i, j] = True
        return m

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i])]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (transitive reduction)."""
        out = []
        for i in range(self.n):
            row = self.up[i]
            indirect = 0
            for j in _bits(row):
                indirect |= self.up[j]
            out.extend((i, j) for j in _bits(row & ~indirect))
        return out

    def is_linear(self) -> bool:
        full = (1 << self.n) - 1
        return all(c == full for c in self.comp)

    def is_valid(self) -> bool:
        for i in range(self.n):
            if self.up[i] >> i & 1:
                return False
            for j in _bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    return False
        return True

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, FinPoset) and self.n == other.n and self.up == other.up

    def __hash__(self):
        return hash((self.n, self.up))

    def __repr__(self):
        rel = ", ".join(f"{a}<{b}" for a, b in self.covers())
        return f"FinPoset({self.n}; {rel})"

    # -- operations --------------------------------------------------------
    def inverse(self) -> "FinPoset":
        return FinPoset(self.n, self.down)

    def restrict(self, subset: Iterable[int]) -> "FinPoset":
        keep = sorted(set(subset))
        index = {x: k for k, x in enumerate(keep)}
        up = []
        for x in keep:
            up.append(sum(1 << index[y] for y in _bits(self.up[x]) if y in index))
        return FinPoset(len(keep), up)

    def interval(self, a: int, b: int) -> set[int]:
        return set(_bits(self.up[a] & self.down[b]))

    def relabel(self, perm: Sequence[int]) -> "FinPoset":
        """Poset with element ``i`` renamed ``perm[i]``."""
        up = [0] * self.n
        for i in range(self.n):
            up[perm[i]] = sum(1 << perm[j] for j in _bits(self.up[i]))
        return FinPoset(self.n, up)

    def canonical(self) -> "FinPoset":
        """Isomorphism-class representative by exhaustive relabeling (n <= 7)."""
        if self.n > 7:
            raise ValueError("canonical form only supported up to 7 elements")
        return min(
            (self.relabel(p) for p in itertools.permutations(range(self.n))),
            key=lambda q: q.up,
        )

    # -- antichains and ranks ------------------------------------------------
    def antichains(self) -> list[frozenset]:
        """All non-empty antichains."""
        out = []
        comp = self.comp

        def grow(start, chosen, blocked):
            for x in range(start, self.n):
                if blocked >> x & 1:
                    continue
                nxt = chosen | (1 << x)
                out.append(frozenset(_bits(nxt)))
                grow(x + 1, nxt, blocked | comp[x])

        grow(0, 0, 0)
        return out

    def width(self) -> int:
        return max((len(a) for a in self.antichains()), default=0)

    def antichain_rank_exact(self) -> CnfOrdinal:
        """Rank of the non-empty antichains ordered by reverse inclusion.

        An antichain's rank is the sup of ``rank(B) + 1`` over proper
        superset antichains ``B``; the poset's rank is the sup of
        ``rank(A) + 1``, so a one-point poset has rank 1.
        """
        masks = sorted((sum(1 << x for x in a) for a in self.antichains()),
                       key=lambda m: -bin(m).count("1"))
        rank: dict[int, int] = {}
        comp = self.comp
        for m in masks:
            blocked = 0
            for x in _bits(m):
                blocked |= comp[x]
            r = 0
            for y in _bits(((1 << self.n) - 1) & ~blocked):
                r = max(r, rank[m | 1 << y] + 1)
            rank[m] = r
        return CnfOrdinal.of(max((r + 1 for r in rank.values()), default=0))

    def longest_chain(self, descending: bool = False) -> list[int]:
        """A longest chain, listed increasingly (or decreasingly)."""
        order = self.linear_extension()
        best = {}
        for x in order:
            preds = [best[y] for y in _bits(self.down[x])]
            best[x] = max(preds, key=len, default=[]) + [x]
        chain = max(best.values(), key=len, default=[])
        return chain[::-1] if descending else chain

    def linear_extension(self) -> list[int]:
        remaining = set(range(self.n))
        order = []
        while remaining:
            x = min(y for y in remaining if not (self.down[y] & sum(1 << z for z in remaining)))
            order.append(x)
            remaining.remove(x)
        return order

    # -- embeddings ----------------------------------------------------------
    def embeddings(self, target: "FinPoset", strict: bool = False) -> Iterator[tuple[int, ...]]:
        """Injections ``f`` from this poset into ``target`` with ``p < q => f(p) < f(q)``.

        With ``strict`` the map must also reflect the order, so incomparable
        elements go to incomparable elements.
        """
        n, m = self.n, target.n
        if n > m:
            return
        f = [-1] * n

        def ok(x, y):
            for z in range(x):
                w = f[z]
                if self.less(z, x) and not target.less(w, y):
                    return False
                if self.less(x, z) and not target.less(y, w):
                    return False
                if strict and not self.comparable(x, z) and target.comparable(w, y):
                    return False
            return True

        def place(x, used):
            if x == n:
                yield tuple(f)
                return
            for y in range(m):
                if used >> y & 1 or not ok(x, y):
                    continue
                f[x] = y
                yield from place(x + 1, used | 1 << y)
            f[x] = -1

        yield from place(0, 0)

    def embeds(self, target: "FinPoset", strict: bool = False) -> Optional[tuple[int, ...]]:
        return next(self.embeddings(target, strict), None)

    # -- augmentations / weakenings -------------------------------------------
    def augmentations(self, cap: int = STREAM_CAP) -> Iterator["FinPoset"]:
        """Every strict order on the same universe containing this one."""
        full = [((1 << self.n) - 1) & ~(1 << i) for i in range(self.n)]
        return itertools.islice(_orders_between(self.n, self.up, full), cap)

    def weakenings(self, cap: int = STREAM_CAP) -> Iterator["FinPoset"]:
        """Every strict order on the same universe contained in this one."""
        return itertools.islice(_orders_between(self.n, [0] * self.n, self.up), cap)

    def linear_extensions(self) -> Iterator["FinPoset"]:
        def build(prefix, remaining):
            if not remaining:
                yield FinPoset.chain(self.n).relabel(prefix)
                return
            rem_mask = sum(1 << z for z in remaining)
            for x in sorted(remaining):
                if not self.down[x] & rem_mask:
                    yield from build(prefix + [x], remaining - {x})

        yield from build([], set(range(self.n)))

    # -- export --------------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json(cls, data: dict) -> "FinPoset":
        return cls.from_relations(data["n"], [tuple(p) for p in data["pairs"]])

    def to_dot(self, labels: Optional[Sequence[str]] = None, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i in range(self.n):
            label = labels[i] if labels else str(i)
            lines.append(f"  n{i} [label={json.dumps(label)}];")
        lines.extend(f"  n{a} -> n{b};" for a, b in self.covers())
        lines.append("}")
        return "\n".join(lines) + "\n"


def _find_cycle(n, direct, start):
    # DFS from ``start`` back to itself over the raw pairs
    stack = [(start, [start])]
    seen = set()
    while stack:
        x, path = stack.pop()
        for y in _bits(direct[x]):
            if y == start:
                return path + [start]
            if y not in seen:
                seen.add(y)
                stack.append((y, path + [y]))
    return [start, start]


def _orders_between(n: int, lower: Sequence[int], upper: Sequence[int]) -> Iterator[FinPoset]:
    """All strict orders R on ``0..n-1`` with ``lower <= R <= upper`` (as relations).

    Elements are added one at a time; the new element ``k`` picks a down-set
    ``D`` and an up-set ``U`` of the order on ``0..k-1`` with ``D < U``, which
    reaches every order exactly once.
    """
    lower = list(lower)
    upper = list(upper)

    def extend(k, up, down):
        if k == n:
            yield FinPoset(n, up)
            return
        old = (1 << k) - 1
        need_down = sum(1 << i for i in range(k) if lower[i] >> k & 1)
        need_up = lower[k] & old
        allow_down = sum(1 << i for i in range(k) if upper[i] >> k & 1)
        allow_up = upper[k] & old
        for dmask in range(1 << k):
            if dmask & ~allow_down or need_down & ~dmask:
                continue
            if any(down[x] & ~dmask for x in _bits(dmask)):
                continue
            rest = old & ~dmask
            umask = rest
            while True:
                ok = not (umask & ~allow_up) and not (need_up & ~umask)
                if ok and any(up[x] & ~umask for x in _bits(umask)):
                    ok = False
                if ok and any((up[d] & umask) != umask for d in _bits(dmask)):
                    ok = False
                if ok:
                    nup = list(up) + [umask]
                    ndown = list(down) + [dmask]
                    for d in _bits(dmask):
                        nup[d] |= 1 << k
                    for u in _bits(umask):
                        ndown[u] |= 1 << k
                    yield from extend(k + 1, nup, ndown)
                if umask == 0:
                    break
                umask = (umask - 1) & rest

    yield from extend(0, [], [])


def all_posets(n: int) -> Iterator[FinPoset]:
    """Every labeled strict partial order on ``n`` points."""
    return _orders_between(n, [0] * n, [((1 << n) - 1) & ~(1 << i) for i in range(n)])


def lex_sum(index: FinPoset, family: Sequence[FinPoset]) -> FinPoset:
    """Lexicographic sum of ``family`` along ``index``; empty blocks vanish."""
    if len(family) != index.n:
        raise ValueError("family length must equal index size")
    offsets = []
    total = 0
    for block in family:
        offsets.append(total)
        total += block.n
    up = [0] * total
    for i, block in enumerate(family):
        above = 0
        for j in _bits(index.up[i]):
            above |= ((1 << family[j].n) - 1) << offsets[j]
        for x in range(block.n):
            up[offsets[i] + x] = (block.up[x] << offsets[i]) | above
    return FinPoset(total, up)
