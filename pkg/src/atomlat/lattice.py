"""Finite lattices on dense bitmask order matrices.

Elements are integers 0..size-1.  The order is stored row-wise as Python
ints: bit y of row x is set iff x <= y.  All derived structure (join and
meet tables, covers, atoms) is computed once on demand and cached; a
Lattice is immutable after construction.

Sizes of interest here stay below a few dozen elements, so int bitmasks
beat any array library and keep everything exact and hashable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


class LatticeError(ValueError):
    """Raised when data fails to define a lattice."""


def _popcount(x: int) -> int:
    return x.bit_count() if hasattr(x, "bit_count") else bin(x).count("1")


def _bits(mask: int):
    """Yield set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """A finite lattice given by its order relation.

    Use one of the constructors: :func:`boolean_lattice`,
    :meth:`Lattice.from_leq`, :meth:`Lattice.from_covers`,
    :meth:`Lattice.from_atom_family`, or :func:`load_lattice`.
    """

    __slots__ = (
        "size",
        "_up",
        "_down",
        "_atoms",
        "_join",
        "_meet",
        "_bottom",
        "_top",
        "_upcovers",
    )

    def __init__(self, up_rows: tuple[int, ...], atoms: tuple[int, ...] | None = None,
                 _validated: bool = False):
        self.size = len(up_rows)
        self._up = tuple(up_rows)
        self._down = None
        self._join = None
        self._meet = None
        self._upcovers = None
        if self.size == 0:
            raise LatticeError("empty element set")
        if not _validated:
            self._validate_order()
        self._bottom = None
        self._top = None
        self._atoms = None
        # building the tables also proves joins and meets exist
        self._build_tables()
        computed = self._compute_atoms()
        if atoms is None:
            self._atoms = computed
        else:
            if sorted(atoms) != sorted(computed):
                raise LatticeError("declared atoms do not cover the bottom element")
            self._atoms = tuple(atoms)

    # -- construction -------------------------------------------------

    @classmethod
    def from_leq(cls, leq) -> "Lattice":
        """Build from any size x size truthy matrix with leq[x][y] iff x <= y."""
        n = len(leq)
        rows = []
        for x in range(n):
            row_entries = leq[x]
            if len(row_entries) != n:
                raise LatticeError("order matrix is not square")
            row = 0
            for y in range(n):
                if row_entries[y]:
                    row |= 1 << y
            rows.append(row)
        return cls(tuple(rows))

    @classmethod
    def from_covers(cls, size: int, covers, atoms: tuple[int, ...] | None = None) -> "Lattice":
        """Build from a cover list of pairs [x, y] meaning y covers x."""
        pairs = []
        seen = set()
        for p in covers:
            x, y = int(p[0]), int(p[1])
            if not (0 <= x < size and 0 <= y < size):
                raise LatticeError(f"cover pair ({x}, {y}) out of range")
            if x == y:
                raise LatticeError(f"cover pair ({x}, {y}) is reflexive")
            if (x, y) in seen:
                raise LatticeError(f"duplicate cover pair ({x}, {y})")
            seen.add((x, y))
            pairs.append((x, y))
        rows = [1 << x for x in range(size)]
        # transitive closure by fixpoint; size passes suffice for any dag
        for _ in range(size):
            changed = False
            for x, y in pairs:
                new = rows[x] | rows[y]
                if new != rows[x]:
                    rows[x] = new
                    changed = True
            if not changed:
                break
        lat = cls(tuple(rows), atoms=atoms)
        declared = sorted(pairs)
        actual = sorted(
            (x, y) for x in range(size) for y in _bits(lat.upcover_masks()[x])
        )
        if declared != actual:
            raise LatticeError("cover list is not the cover relation of its order")
        return lat

    @classmethod
    def from_atom_family(cls, num_atoms: int, masks: tuple[int, ...]) -> "Lattice":
        """Build an atomistic lattice from its family of atom-set bitmasks.

        ``masks`` lists, for each element, the set of atoms below it as a
        bitmask over atom positions 0..num_atoms-1; ordered by mask value.
        """
        masks = tuple(sorted(masks))
        if len(set(masks)) != len(masks):
            raise LatticeError("duplicate atom sets in family")
        n = len(masks)
        rows = []
        for x in range(n):
            mx = masks[x]
            row = 0
            for y in range(n):
                if mx & ~masks[y] == 0:
                    row |= 1 << y
            rows.append(row)
        lat = cls(tuple(rows), _validated=True)
        if len(lat.atoms) != num_atoms:
            raise LatticeError("family does not have the declared number of atoms")
        return lat

    # -- validation ---------------------------------------------------

    def _validate_order(self):
        n = self.size
        up = self._up
        for x in range(n):
            row = up[x]
            if row >> n:
                raise LatticeError("order matrix is not square")
            if not (row >> x) & 1:
                raise LatticeError(f"order not reflexive at {x}")
            for y in _bits(row & ~(1 << x)):
                if (up[y] >> x) & 1:
                    raise LatticeError(f"order not antisymmetric on ({x}, {y})")
                if up[y] & ~row:
                    raise LatticeError(f"order not transitive at ({x}, {y})")

    def _build_tables(self):
        n = self.size
        up = self._up
        down = [0] * n
        for x in range(n):
            for y in _bits(up[x]):
                down[y] |= 1 << x
        self._down = tuple(down)
        up_index = {up[x]: x for x in range(n)}
        down_index = {down[x]: x for x in range(n)}
        join = []
        meet = []
        for x in range(n):
            jrow = []
            mrow = []
            for y in range(n):
                common_up = up[x] & up[y]
                z = up_index.get(common_up)
                if z is None:
                    raise LatticeError(f"elements {x}, {y} have no join")
                jrow.append(z)
                common_down = down[x] & down[y]
                w = down_index.get(common_down)
                if w is None:
                    raise LatticeError(f"elements {x}, {y} have no meet")
                mrow.append(w)
            join.append(tuple(jrow))
            meet.append(tuple(mrow))
        self._join = tuple(join)
        self._meet = tuple(meet)
        full = (1 << n) - 1
        self._bottom = up_index[full]
        self._top = down_index[full]

    def _compute_atoms(self) -> tuple[int, ...]:
        return tuple(_bits(self.upcover_masks()[self._bottom]))

    # -- basic queries ------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool((self._up[x] >> y) & 1)

    def join(self, x: int, y: int) -> int:
        return self._join[x][y]

    def meet(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def join_all(self, elems) -> int:
        """Join of an iterable of elements; empty join is the bottom."""
        acc = self._bottom
        for e in elems:
            acc = self._join[acc][e]
        return acc

    @property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        return self._join

    @property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        return self._meet

    @property
    def bottom(self) -> int:
        return self._bottom

    @property
    def top(self) -> int:
        return self._top

    @property
    def atoms(self) -> tuple[int, ...]:
        return self._atoms

    def up_masks(self) -> tuple[int, ...]:
        return self._up

    def down_masks(self) -> tuple[int, ...]:
        return self._down

    def upcover_masks(self) -> tuple[int, ...]:
        """For each x, the bitmask of elements covering x."""
        if self._upcovers is None:
            up = self._up
            res = []
            for x in range(self.size):
                strict = up[x] & ~(1 << x)
                reachable = 0
                for y in _bits(strict):
                    reachable |= up[y] & ~(1 << y)
                res.append(strict & ~reachable)
            self._upcovers = tuple(res)
        return self._upcovers

    def covers_of(self, x: int) -> tuple[int, ...]:
        return tuple(_bits(self.upcover_masks()[x]))

    def atom_mask_of(self, x: int) -> int:
        """Atoms below x, as a bitmask over positions in self.atoms."""
        m = 0
        for i, a in enumerate(self._atoms):
            if (self._up[a] >> x) & 1:
                m |= 1 << i
        return m

    # -- dunder -------------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self._up == other._up and self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash((self._up, self._atoms))

    def __repr__(self) -> str:
        return f"Lattice(size={self.size}, atoms={len(self._atoms)})"


@dataclass(frozen=True)
class LatticeMorphism:
    """A map between lattices, stored as an image tuple indexed by domain element."""

    domain: Lattice
    codomain: Lattice
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_join_preserving(self) -> bool:
        dom, cod, f = self.domain, self.codomain, self.mapping
        if f[dom.bottom] != cod.bottom:
            return False
        for x in range(dom.size):
            for y in range(x + 1, dom.size):
                if f[dom.join(x, y)] != cod.join(f[x], f[y]):
                    return False
        return True

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.codomain.size


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant key: equal keys iff isomorphic lattices."""

    key: bytes

    @property
    def hex(self) -> str:
        return self.key.hex()

    def __lt__(self, other: "CanonicalForm") -> bool:
        return self.key < other.key


# ---------------------------------------------------------------------
# constructions and operations


def boolean_lattice(k: int) -> Lattice:
    """The lattice of subsets of a k-element set; element index = subset bitmask."""
    if k < 1:
        raise ValueError("boolean_lattice requires k >= 1")
    n = 1 << k
    universe = n - 1
    rows = []
    for x in range(n):
        row = 0
        s = x
        while True:
            row |= 1 << s
            if s == universe:
                break
            s = (s + 1) | x
        rows.append(row)
    return Lattice(tuple(rows), _validated=True)


def meet_irreducibles(L: Lattice) -> tuple[int, ...]:
    """Elements other than the bottom that are covered by exactly one element."""
    covers = L.upcover_masks()
    return tuple(
        x for x in range(L.size)
        if x != L.bottom and _popcount(covers[x]) == 1
    )


def is_atomistic(L: Lattice) -> bool:
    """True iff every element is the join of the atoms below it."""
    up = L.up_masks()
    for x in range(L.size):
        acc = L.bottom
        for a in L.atoms:
            if (up[a] >> x) & 1:
                acc = L.join(acc, a)
        if acc != x:
            return False
    return True


def quotient(L: Lattice, a: int) -> tuple[Lattice, LatticeMorphism]:
    """Collapse a meet-irreducible element into its unique cover.

    Returns the quotient lattice together with the join-preserving
    surjection from L onto it.  Raises ValueError if a is not
    meet-irreducible.
    """
    if a not in meet_irreducibles(L):
        raise ValueError(f"element {a} is not meet-irreducible")
    cover_mask = L.upcover_masks()[a]
    a_plus = cover_mask.bit_length() - 1
    n = L.size
    low = (1 << a) - 1

    def drop_bit(row: int) -> int:
        return (row & low) | ((row >> (a + 1)) << a)

    keep = [x for x in range(n) if x != a]
    rows = tuple(drop_bit(L.up_masks()[x]) for x in keep)
    new_index = {}
    for new, old in enumerate(keep):
        new_index[old] = new
    atoms = None
    if a not in L.atoms:
        atoms = tuple(new_index[x] for x in L.atoms)
    Q = Lattice(rows, atoms=atoms, _validated=True)
    mapping = tuple(
        new_index[x] if x != a else new_index[a_plus] for x in range(n)
    )
    return Q, LatticeMorphism(L, Q, mapping)


def free_map(L: Lattice) -> LatticeMorphism:
    """The join-preserving map from the boolean lattice on L's atoms onto L.

    Sends the subset S of atom positions to the join of the corresponding
    atoms of L.  Surjective exactly because L is atomistic.
    """
    if not is_atomistic(L):
        raise ValueError("free_map requires an atomistic lattice")
    k = len(L.atoms)
    B = boolean_lattice(k)
    mapping = []
    for s in range(1 << k):
        mapping.append(L.join_all(L.atoms[i] for i in _bits(s)))
    return LatticeMorphism(B, L, tuple(mapping))


# ---------------------------------------------------------------------
# canonical forms

_FAMILY_PERM_LIMIT = 7
_perm_tables_cache: dict[int, list[list[int]]] = {}


def _perm_tables(k: int) -> list[list[int]]:
    """For each permutation of k atom positions, the induced map on k-bit masks."""
    tables = _perm_tables_cache.get(k)
    if tables is None:
        tables = []
        for perm in itertools.permutations(range(k)):
            t = [0] * (1 << k)
            for m in range(1 << k):
                pm = 0
                r = m
                while r:
                    low = r & -r
                    pm |= 1 << perm[low.bit_length() - 1]
                    r ^= low
                t[m] = pm
            tables.append(t)
        _perm_tables_cache[k] = tables
    return tables


def family_key(num_atoms: int, masks) -> bytes:
    """Canonical key of an atomistic lattice given as a family of atom-set masks.

    Minimizes, over all permutations of the atoms, the characteristic
    bit-vector of the family inside the full boolean lattice.
    """
    k = num_atoms
    members = tuple(masks)
    best = None
    for table in _perm_tables(k):
        chi = 0
        for m in members:
            chi |= 1 << table[m]
        if best is None or chi < best:
            best = chi
    width = max(1, (1 << k) // 8 if (1 << k) % 8 == 0 else (1 << k) // 8 + 1)
    return b"A" + bytes([k]) + best.to_bytes(width, "big")


def _refine(cells: list[tuple[int, ...]], up: tuple[int, ...], down: tuple[int, ...]):
    """Stable partition refinement on up/down color multisets."""
    n = len(up)
    while True:
        color = [0] * n
        for ci, cell in enumerate(cells):
            for x in cell:
                color[x] = ci
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs = {}
            for x in cell:
                ups = {}
                for y in _bits(up[x] & ~(1 << x)):
                    ups[color[y]] = ups.get(color[y], 0) + 1
                downs = {}
                for y in _bits(down[x] & ~(1 << x)):
                    downs[color[y]] = downs.get(color[y], 0) + 1
                sig = (tuple(sorted(ups.items())), tuple(sorted(downs.items())))
                sigs.setdefault(sig, []).append(x)
            if len(sigs) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(sigs):
                    new_cells.append(tuple(sigs[sig]))
        cells = new_cells
        if not changed:
            return cells


def _matrix_key(size: int, up: tuple[int, ...]) -> bytes:
    """Lexicographically minimal packed order matrix over all relabelings.

    Partition refinement on degree signatures first, then backtracking
    over the remaining within-cell choices (individualize and re-refine).
    """
    n = size
    down = [0] * n
    for x in range(n):
        for y in _bits(up[x]):
            down[y] |= 1 << x
    down = tuple(down)

    sig0 = {}
    for x in range(n):
        sig0.setdefault((_popcount(up[x]), _popcount(down[x])), []).append(x)
    cells = [tuple(sig0[s]) for s in sorted(sig0)]
    cells = _refine(cells, up, down)

    best: list[bytes | None] = [None]

    def serialize(order: list[int]) -> bytes:
        pos = [0] * n
        for i, x in enumerate(order):
            pos[x] = i
        nbytes = (n * n + 7) // 8
        acc = 0
        for i, x in enumerate(order):
            row = 0
            for y in _bits(up[x]):
                row |= 1 << pos[y]
            acc = (acc << n) | row
        return acc.to_bytes(nbytes, "big")

    def rec(cells: list[tuple[int, ...]]):
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                for v in cell:
                    rest = tuple(x for x in cell if x != v)
                    split = cells[:i] + [(v,), rest] + cells[i + 1:]
                    rec(_refine(split, up, down))
                return
        order = [cell[0] for cell in cells]
        key = serialize(order)
        if best[0] is None or key < best[0]:
            best[0] = key

    rec(cells)
    return b"G" + bytes([n]) + best[0]


def canonical_form(L: Lattice) -> CanonicalForm:
    """Canonical form deciding lattice isomorphism.

    Atomistic lattices on few atoms use the atom-set family key; the
    general path minimizes the order matrix over consistent relabelings.
    """
    if len(L.atoms) <= _FAMILY_PERM_LIMIT and is_atomistic(L):
        masks = sorted(L.atom_mask_of(x) for x in range(L.size))
        return CanonicalForm(family_key(len(L.atoms), masks))
    return CanonicalForm(_matrix_key(L.size, L.up_masks()))


# ---------------------------------------------------------------------
# file format


def lattice_to_dict(L: Lattice) -> dict:
    covers = sorted(
        (x, y) for x in range(L.size) for y in _bits(L.upcover_masks()[x])
    )
    return {
        "size": L.size,
        "atoms": list(L.atoms),
        "covers": [list(p) for p in covers],
    }


def lattice_from_dict(data: dict) -> Lattice:
    try:
        size = int(data["size"])
        atoms = tuple(int(a) for a in data["atoms"])
        covers = data["covers"]
    except (KeyError, TypeError) as exc:
        raise LatticeError(f"malformed lattice record: {exc}") from None
    if size < 1:
        raise LatticeError("size must be positive")
    return Lattice.from_covers(size, covers, atoms=atoms)


def save_lattice(L: Lattice, path) -> None:
    with open(path, "w") as fh:
        json.dump(lattice_to_dict(L), fh)
        fh.write("\n")


def load_lattice(path) -> Lattice:
    with open(path) as fh:
        data = json.load(fh)
    return lattice_from_dict(data)


# ---------------------------------------------------------------------
# axioms, used by tests and debug assertions


def verify_lattice_axioms(L: Lattice) -> None:
    """Exhaustively check absorption, associativity, and order consistency."""
    n = L.size
    for x in range(n):
        assert L.join(x, x) == x and L.meet(x, x) == x
        assert L.leq(L.bottom, x) and L.leq(x, L.top)
    for x in range(n):
        for y in range(n):
            j, m = L.join(x, y), L.meet(x, y)
            assert j == L.join(y, x) and m == L.meet(y, x)
            assert L.meet(x, j) == x and L.join(x, m) == x
            assert L.leq(x, y) == (j == y) == (m == x)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                assert L.join(L.join(x, y), z) == L.join(x, L.join(y, z))
                assert L.meet(L.meet(x, y), z) == L.meet(x, L.meet(y, z))
