"""Lattice invariants: length, breadth, order dimension, distributivity.

Order dimension is computed in the order-theoretic sense: the least m
such that the order embeds in a product of m chains, equivalently the
least number of linear extensions whose intersection is the order.  On
distributive lattices this coincides with the least m admitting a
join-and-meet-preserving embedding into a product of m chains; a
non-distributive lattice embeds in no product of chains as a
sublattice, so the order-theoretic number is the one tabulated.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field

from .lattice import Lattice, _bits


def length(L: Lattice) -> int:
    """Length of the longest chain, counted in cover steps."""
    order = sorted(range(L.size), key=lambda x: L.down_masks()[x].bit_count())
    dist = [0] * L.size
    covers = L.upcover_masks()
    for x in order:
        for y in _bits(covers[x]):
            if dist[x] + 1 > dist[y]:
                dist[y] = dist[x] + 1
    return dist[L.top]


def breadth(L: Lattice) -> int:
    """Smallest p such that every join of p+1 elements drops to p of them."""
    elems = range(L.size)
    for p in range(1, L.size + 1):
        ok = True
        for sub in itertools.combinations(elems, p + 1):
            j = L.join_all(sub)
            if not any(L.join_all(sub[:i] + sub[i + 1:]) == j for i in range(p + 1)):
                ok = False
                break
        if ok:
            return p
    return L.size


def is_distributive(L: Lattice) -> bool:
    n = L.size
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)):
                    return False
    return True


def _critical_pairs(L: Lattice) -> list[tuple[int, int]]:
    """Pairs (x, y), x incomparable y, with down(x) in down(y) and up(y) in up(x)."""
    up = L.up_masks()
    down = L.down_masks()
    out = []
    for x in range(L.size):
        for y in range(L.size):
            if x == y or L.leq(x, y) or L.leq(y, x):
                continue
            sdx = down[x] & ~(1 << x)
            sdy = down[y] & ~(1 << y)
            suy = up[y] & ~(1 << y)
            sux = up[x] & ~(1 << x)
            if sdx & ~sdy == 0 and suy & ~sux == 0:
                out.append((x, y))
    return out


def _conflict(L: Lattice, p1: tuple[int, int], p2: tuple[int, int]) -> bool:
    # two critical pairs that no single linear extension can reverse both
    (x1, y1), (x2, y2) = p1, p2
    return L.leq(x1, y2) and L.leq(x2, y1)


class _ReverseClasses:
    """Assign critical pairs to classes kept acyclic under reversal edges."""

    def __init__(self, L: Lattice, m: int):
        self.n = L.size
        base = [L.up_masks()[v] & ~(1 << v) for v in range(self.n)]
        self.reach = [list(base) for _ in range(m)]
        self.used = 0

    def try_add(self, cls: int, pair: tuple[int, int]):
        """Add the reversal edge y -> x to class cls; None if it cycles."""
        x, y = pair
        reach = self.reach[cls]
        if (reach[x] >> y) & 1:
            return None
        saved = list(reach)
        add = reach[x] | (1 << x)
        reach[y] |= add
        bit_y = 1 << y
        for v in range(self.n):
            if reach[v] & bit_y:
                reach[v] |= reach[y]
        return saved

    def undo(self, cls: int, saved):
        self.reach[cls] = saved


def order_dimension(L: Lattice) -> int:
    """Least m with an order embedding of L into a product of m chains."""
    n = L.size
    if all(
        L.leq(x, y) or L.leq(y, x)
        for x in range(n) for y in range(x + 1, n)
    ):
        return 1
    pairs = _critical_pairs(L)
    assert pairs, "a non-chain order has a critical pair"
    needed = 2 * len(pairs) + 100
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)
    conflicts = [
        [_conflict(L, p, q) for q in pairs] for p in pairs
    ]
    # greedy clique of pairwise conflicting pairs gives a lower bound
    clique: list[int] = []
    by_degree = sorted(range(len(pairs)), key=lambda i: -sum(conflicts[i]))
    for i in by_degree:
        if all(conflicts[i][j] for j in clique):
            clique.append(i)
    lower = max(2, len(clique))
    order = sorted(range(len(pairs)), key=lambda i: -sum(conflicts[i]))

    for m in itertools.count(lower):
        classes = _ReverseClasses(L, m)
        assignment = [-1] * len(pairs)

        def place(pos: int) -> bool:
            if pos == len(order):
                return True
            i = order[pos]
            limit = min(m, classes.used + 1)
            for cls in range(limit):
                saved = classes.try_add(cls, pairs[i])
                if saved is None:
                    continue
                bump = cls == classes.used
                if bump:
                    classes.used += 1
                assignment[i] = cls
                if place(pos + 1):
                    return True
                assignment[i] = -1
                classes.undo(cls, saved)
                if bump:
                    classes.used -= 1
            return False

        if place(0):
            return m
    raise AssertionError("unreachable")


@dataclass
class InvariantRecord:
    """Per-lattice invariants in the shape of one appendix table row."""

    node_id: int
    cardinality: int
    pdim_quotient: int | None = None
    spdim_quotient: int | None = None
    pdim_ideal: int | None = None
    spdim_ideal: int | None = None
    length: int | None = None
    order_dimension: int | None = None
    breadth: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "node_id": self.node_id,
            "cardinality": self.cardinality,
            "pdim_quotient": self.pdim_quotient,
            "spdim_quotient": self.spdim_quotient,
            "pdim_ideal": self.pdim_ideal,
            "spdim_ideal": self.spdim_ideal,
            "length": self.length,
            "order_dimension": self.order_dimension,
            "breadth": self.breadth,
        }
        out.update(self.extra)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantRecord":
        known = {
            "node_id", "cardinality", "pdim_quotient", "spdim_quotient",
            "pdim_ideal", "spdim_ideal", "length", "order_dimension", "breadth",
        }
        extra = {k: v for k, v in data.items() if k not in known}
        return cls(
            node_id=data["node_id"],
            cardinality=data["cardinality"],
            pdim_quotient=data.get("pdim_quotient"),
            spdim_quotient=data.get("spdim_quotient"),
            pdim_ideal=data.get("pdim_ideal"),
            spdim_ideal=data.get("spdim_ideal"),
            length=data.get("length"),
            order_dimension=data.get("order_dimension"),
            breadth=data.get("breadth"),
            extra=extra,
        )
