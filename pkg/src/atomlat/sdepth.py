"""Exact Stanley depth via interval partitions of characteristic posets.

The characteristic poset of I (for chosen g = componentwise lcm of the
generators) is the set of exponent vectors a <= g lying in I (IDEAL
mode) or outside I (QUOTIENT mode).  A partition of it into intervals
[a, b] encodes a Stanley decomposition whose value is the minimum of
rho(b) = #{j : b_j = g_j}; sdepth is the best achievable value.

The decision procedure covers points in lexicographic order: the
lexicographically smallest uncovered point is minimal among uncovered
points, so it must be the bottom of its interval.  Point sets are
bitmasks over the lex-sorted point list, which makes interval
construction and disjointness single mask operations.

For squarefree boxes whose points all have rho <= d, every interval in
a valid partition tops out at rho exactly d, so an interval with bottom
at rho a covers binom(d - a, r - a) points of rho r.  Solving these
count equations bottom-up yields the unique candidate number of
intervals per bottom rank; a negative entry refutes the current branch
without further search.  This check runs at every node of the search
on the residual rank histogram.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from math import comb, prod

from .ideals import MonomialIdeal


class Mode(Enum):
    IDEAL = "ideal"
    QUOTIENT = "quotient"


class ResourceLimitError(RuntimeError):
    """Raised when a characteristic box exceeds the configured cap."""


DEFAULT_BOX_CAP = 4 ** 8
_ENV_BOX_CAP = "ATOMLAT_BOX_CAP"

_MEMO_LIMIT = 1 << 19  # failed-state memo entries, per decision call


def _effective_cap(box_cap: int | None) -> int:
    if box_cap is not None:
        return box_cap
    env = os.environ.get(_ENV_BOX_CAP)
    return int(env) if env else DEFAULT_BOX_CAP


@dataclass(frozen=True)
class CharacteristicPoset:
    """Points of the box [0, g] on one side of the ideal membership test."""

    g: tuple[int, ...]
    mode: Mode
    points: tuple[tuple[int, ...], ...]  # sorted lexicographically

    @property
    def num_vars(self) -> int:
        return len(self.g)

    def rho(self, point) -> int:
        return sum(1 for pj, gj in zip(point, self.g) if pj == gj)

    def index_of(self, point) -> int:
        return self.points.index(tuple(point))


def char_poset(I: MonomialIdeal, mode: Mode, box_cap: int | None = None) -> CharacteristicPoset:
    """Enumerate the characteristic poset of I in the given mode."""
    if not isinstance(mode, Mode):
        raise TypeError("mode must be Mode.IDEAL or Mode.QUOTIENT")
    g = tuple(max(col) for col in zip(*I.generators))
    box = prod(e + 1 for e in g)
    cap = _effective_cap(box_cap)
    if box > cap:
        raise ResourceLimitError(
            f"characteristic box has {box} points, over the cap of {cap}"
        )
    pts = []
    for a in itertools.product(*(range(e + 1) for e in g)):
        if I.contains_monomial(a) == (mode is Mode.IDEAL):
            pts.append(a)
    return CharacteristicPoset(g=g, mode=mode, points=tuple(pts))


@dataclass(frozen=True)
class IntervalPartition:
    """A partition of a characteristic poset into intervals [a, b]."""

    intervals: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def value(self, g) -> int:
        return min(
            sum(1 for bj, gj in zip(b, g) if bj == gj) for _, b in self.intervals
        )

    def to_lists(self) -> list[list[list[int]]]:
        return [[list(a), list(b)] for a, b in self.intervals]


def check_partition(P: CharacteristicPoset, part: IntervalPartition, d: int) -> None:
    """Raise ValueError unless part is a valid partition with value >= d."""
    covered = set()
    for a, b in part.intervals:
        if not all(x <= y for x, y in zip(a, b)):
            raise ValueError(f"interval ends {a}, {b} are not ordered")
        if a not in P.points or b not in P.points:
            raise ValueError(f"interval ends {a}, {b} are not poset points")
        if P.rho(b) < d:
            raise ValueError(f"interval top {b} has rho {P.rho(b)} < {d}")
        members = [
            p for p in P.points
            if all(x <= y <= z for x, y, z in zip(a, p, b))
        ]
        for p in members:
            if p in covered:
                raise ValueError(f"point {p} covered twice")
            covered.add(p)
    if len(covered) != len(P.points):
        raise ValueError("partition does not cover every point")


class _PointIndex:
    """Bitmask machinery over the lex-sorted point list of a poset."""

    def __init__(self, P: CharacteristicPoset):
        self.P = P
        pts = P.points
        self.count = len(pts)
        n = P.num_vars
        # geq[j][v] = mask of points with coordinate j >= v (and dually)
        self.geq = []
        self.leq = []
        for j in range(n):
            buckets = [0] * (P.g[j] + 1)
            for i, p in enumerate(pts):
                buckets[p[j]] |= 1 << i
            geq_j = [0] * (P.g[j] + 2)
            for v in range(P.g[j], -1, -1):
                geq_j[v] = geq_j[v + 1] | buckets[v]
            leq_j = [0] * (P.g[j] + 1)
            acc = 0
            for v in range(P.g[j] + 1):
                acc |= buckets[v]
                leq_j[v] = acc
            self.geq.append(geq_j)
            self.leq.append(leq_j)
        self._up: dict[int, int] = {}
        self._down: dict[int, int] = {}

    def up_mask(self, i: int) -> int:
        m = self._up.get(i)
        if m is None:
            p = self.P.points[i]
            m = -1
            for j, v in enumerate(p):
                m &= self.geq[j][v]
            self._up[i] = m
        return m

    def down_mask(self, i: int) -> int:
        m = self._down.get(i)
        if m is None:
            p = self.P.points[i]
            m = -1
            for j, v in enumerate(p):
                m &= self.leq[j][v]
            self._down[i] = m
        return m


def _count_refutes(cnt: list[int], d: int) -> bool:
    """True if no interval-type multiset matches the rank histogram.

    Assumes every interval top sits at rho exactly d, so the number of
    intervals with bottom rank r is forced bottom-up; any negative
    forced value means the histogram cannot be tiled.
    """
    m = [0] * (d + 1)
    for r in range(d + 1):
        s = cnt[r]
        for a in range(r):
            if m[a]:
                s -= comb(d - a, r - a) * m[a]
        if s < 0:
            return True
        m[r] = s
    return False


def sdepth_decision(P: CharacteristicPoset, d: int) -> IntervalPartition | None:
    """A partition into intervals with every rho(top) >= d, or None.

    The returned certificate has been re-verified by check_partition.
    """
    n = P.num_vars
    if not 0 <= d <= n:
        raise ValueError(f"d must lie in 0..{n}")
    pts = P.points
    count = len(pts)
    if count == 0:
        return IntervalPartition(())
    if d == 0:
        part = IntervalPartition(tuple((p, p) for p in pts))
        check_partition(P, part, d)
        return part
    idx = _PointIndex(P)
    ranks = [P.rho(p) for p in pts]
    tops = 0
    for i, r in enumerate(ranks):
        if r >= d:
            tops |= 1 << i
    if tops == 0:
        return None
    for i in range(count):
        if idx.up_mask(i) & tops == 0:
            return None  # point i cannot lie in any admissible interval
    # rank counting applies when intervals cannot top out above d
    counting = max(ranks) == d and all(e == 1 for e in P.g)
    cnt = [0] * (d + 1)
    if counting:
        for r in ranks:
            cnt[r] += 1
        if _count_refutes(cnt, d):
            return None
    full = (1 << count) - 1
    failed: set[int] = set()
    # stack frames: (covered mask, forced bottom, iterator over candidate
    # tops); chosen[k] records the interval placed by frame k together
    # with its rank histogram for backtracking
    chosen: list[tuple[int, int, list[int]]] = []
    stack = []

    def open_state(covered: int):
        free = ~covered & full
        p = (free & -free).bit_length() - 1
        cands = idx.up_mask(p) & tops
        stack.append((covered, p, _bits_iter(cands)))

    open_state(0)
    while stack:
        covered, p, it = stack[-1]
        advanced = False
        for t in it:
            interval = idx.up_mask(p) & idx.down_mask(t)
            new_cov = covered | interval
            if interval & covered or new_cov in failed:
                continue
            delta = [0] * (d + 1)
            if counting:
                for i in _bits_iter(interval):
                    delta[ranks[i]] += 1
                for r, x in enumerate(delta):
                    cnt[r] -= x
                if _count_refutes(cnt, d):
                    for r, x in enumerate(delta):
                        cnt[r] += x
                    continue
            chosen.append((p, t, delta))
            if new_cov == full:
                part = IntervalPartition(
                    tuple((pts[a], pts[b]) for a, b, _ in chosen)
                )
                check_partition(P, part, d)
                return part
            open_state(new_cov)
            advanced = True
            break
        if not advanced:
            if len(failed) < _MEMO_LIMIT:
                failed.add(covered)
            stack.pop()
            if chosen and len(chosen) == len(stack):
                _, _, delta = chosen.pop()
                if counting:
                    for r, x in enumerate(delta):
                        cnt[r] += x
    return None


def _bits_iter(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def sdepth_certificate(
    I: MonomialIdeal, mode: Mode, box_cap: int | None = None
) -> tuple[int, IntervalPartition]:
    """sdepth together with a witnessing interval partition."""
    P = char_poset(I, mode, box_cap=box_cap)
    for d in range(I.num_vars, -1, -1):
        part = sdepth_decision(P, d)
        if part is not None:
            return d, part
    raise AssertionError("unreachable: d = 0 always has a partition")


def sdepth(I: MonomialIdeal, mode: Mode, box_cap: int | None = None) -> int:
    """Stanley depth of I (Mode.IDEAL) or of S/I (Mode.QUOTIENT)."""
    return sdepth_certificate(I, mode, box_cap=box_cap)[0]


def spdim(I: MonomialIdeal, mode: Mode, box_cap: int | None = None) -> int:
    """Stanley projective dimension, n - sdepth."""
    return I.num_vars - sdepth(I, mode, box_cap=box_cap)
