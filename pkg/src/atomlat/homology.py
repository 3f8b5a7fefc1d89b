"""Betti numbers of S/I from the lcm-lattice, via simplicial homology.

For an element m of the lcm-lattice, beta_{i,m} is the rank of the
reduced homology H~_{i-2} of the order complex of the open interval
(bottom, m), over the rationals; beta_{0,bottom} = 1.  All ranks are
computed exactly with fraction-free integer elimination.

The "crosscut" method replaces each interval complex by the homotopy
equivalent complex of atom subsets whose join stays below m; it gives
the same ranks on far fewer faces and is what the bulk pipeline uses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import Lattice, _bits, is_atomistic


class SimplicialComplex:
    """A finite abstract simplicial complex.

    Faces are sorted vertex tuples; the empty face is always present,
    so the complex {()} is the "empty" complex with H~_{-1} of rank 1.
    """

    def __init__(self, faces):
        seen = set()
        for f in faces:
            t = tuple(sorted(f))
            if len(set(t)) != len(t):
                raise ValueError(f"face {f!r} repeats a vertex")
            seen.add(t)
        seen.add(())
        for f in seen:
            for i in range(len(f)):
                if f[:i] + f[i + 1:] not in seen:
                    raise ValueError(f"not closed under subsets at face {f!r}")
        by_dim: dict[int, list] = {}
        for f in seen:
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._by_dim = {d: tuple(sorted(fs)) for d, fs in by_dim.items()}
        self.dim = max(self._by_dim)

    def faces(self, d: int) -> tuple:
        return self._by_dim.get(d, ())

    @property
    def num_faces(self) -> int:
        return sum(len(fs) for fs in self._by_dim.values())

    @property
    def vertices(self) -> tuple:
        return tuple(f[0] for f in self.faces(0))

    def euler_characteristic_reduced(self) -> int:
        return sum((-1) ** d * len(self.faces(d)) for d in self._by_dim)


def order_complex(L: Lattice, lo: int, hi: int) -> SimplicialComplex:
    """All chains in the open interval (lo, hi) of L."""
    if lo == hi or not L.leq(lo, hi):
        raise ValueError(f"({lo}, {hi}) is not a nonempty open interval")
    up = L.up_masks()
    down = L.down_masks()
    inner = [
        x for x in range(L.size)
        if x != lo and x != hi and (up[lo] >> x) & 1 and (down[hi] >> x) & 1
    ]
    # list chain elements in a linear extension so extending by a later
    # element only needs one comparison against the current maximum
    inner.sort(key=lambda x: _popcount_int(down[x]))
    faces = [()]

    def grow(chain, start):
        for i in range(start, len(inner)):
            x = inner[i]
            if not chain or (up[chain[-1]] >> x) & 1:
                faces.append(chain + (x,))
                grow(chain + (x,), i + 1)

    grow((), 0)
    return SimplicialComplex(faces)


def _popcount_int(x: int) -> int:
    return x.bit_count()


def integer_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix, by fraction-free Bareiss elimination."""
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            v = m[i][c]
            if v:
                if piv is None or abs(v) < abs(m[piv][c]):
                    piv = i
                if abs(v) == 1:
                    break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            vi = m[i][c]
            ri = m[i]
            rr = m[rank]
            for j in range(c + 1, ncols):
                ri[j] = (pv * ri[j] - vi * rr[j]) // prev
            ri[c] = 0
        prev = pv
        rank += 1
    return rank


def _boundary_rank(C: SimplicialComplex, d: int) -> int:
    """Rank of the boundary map from d-faces to (d-1)-faces."""
    cols = C.faces(d)
    if not cols or d < 0:
        return 0
    rows_idx = {f: i for i, f in enumerate(C.faces(d - 1))}
    mat = [[0] * len(cols) for _ in rows_idx]
    for j, face in enumerate(cols):
        sign = 1
        for i in range(len(face)):
            facet = face[:i] + face[i + 1:]
            mat[rows_idx[facet]][j] += sign
            sign = -sign
    return integer_rank(mat)


def reduced_homology_ranks(C: SimplicialComplex) -> tuple[int, ...]:
    """Ranks of H~_j over the rationals for j = -1 .. dim(C)."""
    ranks = {d: _boundary_rank(C, d) for d in range(0, C.dim + 1)}
    out = []
    for d in range(-1, C.dim + 1):
        nd = len(C.faces(d))
        out.append(nd - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return tuple(out)


@dataclass(frozen=True)
class BettiTable:
    """Multigraded Betti numbers of S/I, indexed by lattice elements."""

    entries: tuple[tuple[int, int, int], ...]  # (degree i, element, value > 0)

    def value(self, i: int, m: int) -> int:
        for deg, elem, val in self.entries:
            if deg == i and elem == m:
                return val
        return 0

    def total(self, i: int) -> int:
        return sum(val for deg, _, val in self.entries if deg == i)

    @property
    def max_degree(self) -> int:
        return max(deg for deg, _, _ in self.entries)

    def totals(self) -> tuple[int, ...]:
        return tuple(self.total(i) for i in range(self.max_degree + 1))

    def to_records(self) -> list[dict]:
        return [
            {"i": deg, "element": elem, "value": val}
            for deg, elem, val in self.entries
        ]


def _interval_ranks(L: Lattice, m: int) -> tuple[int, ...]:
    return reduced_homology_ranks(order_complex(L, L.bottom, m))


def _crosscut_ranks(L: Lattice, m: int) -> tuple[int, ...]:
    """Ranks for the complex of atom subsets below m joining below m."""
    below = [a for a in L.atoms if L.leq(a, m)]
    t = len(below)
    faces = []
    for s in range(1 << t):
        if L.join_all(below[i] for i in _bits(s)) != m:
            faces.append(tuple(i for i in _bits(s)))
    return reduced_homology_ranks(SimplicialComplex(faces))


def betti_table(L, method: str = "interval") -> BettiTable:
    """The Betti table of S/I for any ideal I whose lcm-lattice is L.

    Accepts a Lattice or an LcmLattice; the input must be atomistic.
    """
    lat: Lattice = getattr(L, "lattice", L)
    if not is_atomistic(lat):
        raise ValueError("betti_table requires an atomistic lattice")
    if method not in ("interval", "crosscut"):
        raise ValueError(f"unknown method {method!r}")
    entries = [(0, lat.bottom, 1)]
    atom_set = set(lat.atoms)
    for m in range(lat.size):
        if m == lat.bottom:
            continue
        if method == "crosscut":
            if m in atom_set:
                entries.append((1, m, 1))
                continue
            ranks = _crosscut_ranks(lat, m)
        else:
            ranks = _interval_ranks(lat, m)
        for t, r in enumerate(ranks):
            if r:
                entries.append((t + 1, m, r))  # homology degree t-1 = i-2
    entries.sort()
    return BettiTable(tuple(entries))


def pdim_quotient(L, method: str = "interval") -> int:
    """Projective dimension of S/I, read off the lcm-lattice."""
    return betti_table(L, method=method).max_degree


def pdim_ideal(L, method: str = "interval") -> int:
    return pdim_quotient(L, method=method) - 1


def depth_quotient(I, method: str = "interval") -> int:
    """depth S/I = n - pdim S/I, from the lcm-lattice of I."""
    from .ideals import lcm_lattice

    return I.num_vars - pdim_quotient(lcm_lattice(I), method=method)
