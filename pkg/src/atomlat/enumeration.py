"""Enumeration of atomistic lattices on k atoms, farthest-first from the boolean lattice.

Every atomistic lattice on k labeled atoms is, up to isomorphism, the
family of its atom-sets: the subsets of atoms realized as {atoms below x}
for x in L, ordered by inclusion.  Collapsing a non-atom meet-irreducible
element into its unique cover simply deletes that member from the family,
so the whole search runs on tuples of small bitmasks.

Levels are processed in strictly decreasing cardinality: the working set
starts at the full boolean family, and each round replaces it with the
deduplicated quotients of its members.  Node ids are assigned level by
level in canonical-key order, which makes them globally sorted by
(cardinality descending, canonical key).
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field

from .lattice import CanonicalForm, Lattice, family_key, _popcount


@dataclass(frozen=True)
class DagNode:
    id: int
    lattice: Lattice
    cardinality: int
    canonical: CanonicalForm
    family: tuple[int, ...]


@dataclass
class EnumerationDag:
    """Quotient dag: nodes are isomorphism classes, edges single collapses."""

    k: int
    nodes: tuple[DagNode, ...]
    edges: frozenset[tuple[int, int]]
    _parents: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _children: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _anc: list[int] | None = field(default=None, repr=False)
    _desc: list[int] | None = field(default=None, repr=False)

    def __post_init__(self):
        for i in range(len(self.nodes)):
            self._parents[i] = []
            self._children[i] = []
        for p, c in sorted(self.edges):
            self._parents[c].append(p)
            self._children[p].append(c)

    def node(self, node_id: int) -> DagNode:
        return self.nodes[node_id]

    def parents_of(self, node_id: int) -> list[int]:
        return self._parents[node_id]

    def children_of(self, node_id: int) -> list[int]:
        return self._children[node_id]

    def root(self) -> DagNode:
        return self.nodes[0]

    def node_by_canonical(self, form: CanonicalForm) -> DagNode | None:
        for n in self.nodes:
            if n.canonical == form:
                return n
        return None

    def ancestor_masks(self) -> list[int]:
        """Bitmask of strict ancestors per node id; ids are topological."""
        if self._anc is None:
            anc = [0] * len(self.nodes)
            for c in range(len(self.nodes)):
                for p in self._parents[c]:
                    anc[c] |= anc[p] | (1 << p)
            self._anc = anc
        return self._anc

    def descendant_masks(self) -> list[int]:
        if self._desc is None:
            desc = [0] * len(self.nodes)
            for p in range(len(self.nodes) - 1, -1, -1):
                for c in self._children[p]:
                    desc[p] |= desc[c] | (1 << c)
            self._desc = desc
        return self._desc


def admissible_members(family: tuple[int, ...]) -> list[int]:
    """Members of the family that are non-atom meet-irreducibles.

    A member is meet-irreducible iff its strict supersets within the
    family have a unique minimal element; atoms (singleton masks) and the
    bottom are excluded.
    """
    out = []
    for m in family:
        if _popcount(m) < 2:
            continue
        sups = [f for f in family if f != m and m & ~f == 0]
        if not sups:
            continue
        least = min(sups, key=_popcount)
        if all(least & ~f == 0 for f in sups):
            out.append(m)
    return out


def _expand_one(args):
    k, parent_id, family = args
    out = []
    for m in admissible_members(family):
        child = tuple(f for f in family if f != m)
        out.append((parent_id, family_key(k, child), child))
    return out


def levels(k: int, jobs: int = 1):
    """Yield (level_nodes, level_edges) per cardinality level.

    level_nodes: list of (id, key_bytes, family); level_edges: list of
    (parent_id, child_id) pairs ending in this level.  Only the current
    level is retained between iterations.
    """
    if k < 1:
        raise ValueError("need at least one atom")
    root_family = tuple(range(1 << k))
    current = [(0, family_key(k, root_family), root_family)]
    next_id = 1
    yield current, []

    pool = None
    if jobs > 1:
        pool = multiprocessing.Pool(jobs)
    try:
        while True:
            tasks = [(k, node_id, fam) for node_id, _key, fam in current]
            if pool is not None:
                chunks = pool.map(_expand_one, tasks, chunksize=64)
            else:
                chunks = map(_expand_one, tasks)
            found: dict[bytes, tuple[int, ...]] = {}
            pending_edges: list[tuple[int, bytes]] = []
            for chunk in chunks:
                for parent_id, key, child in chunk:
                    if key not in found:
                        found[key] = child
                    pending_edges.append((parent_id, key))
            if not found:
                return
            level_nodes = []
            ids = {}
            for key in sorted(found):
                ids[key] = next_id
                level_nodes.append((next_id, key, found[key]))
                next_id += 1
            level_edges = sorted(set((p, ids[key]) for p, key in pending_edges))
            yield level_nodes, level_edges
            current = level_nodes
    finally:
        if pool is not None:
            pool.close()
            pool.join()


def generate_all(k: int, jobs: int = 1) -> EnumerationDag:
    """All isomorphism classes of atomistic lattices on k atoms, with the
    collapse edges between them."""
    nodes = []
    edges = []
    for level_nodes, level_edges in levels(k, jobs=jobs):
        for node_id, key, family in level_nodes:
            lat = Lattice.from_atom_family(k, family)
            nodes.append(
                DagNode(
                    id=node_id,
                    lattice=lat,
                    cardinality=len(family),
                    canonical=CanonicalForm(key),
                    family=family,
                )
            )
        edges.extend(level_edges)
    return EnumerationDag(k=k, nodes=tuple(nodes), edges=frozenset(edges))


def _values(dag: EnumerationDag, value) -> list[int]:
    if callable(value):
        return [value(n) for n in dag.nodes]
    return [value[n.id] for n in dag.nodes]


def maximal_nodes_by_value(dag: EnumerationDag, value) -> dict[int, tuple[int, ...]]:
    """Per attained value v, the nodes of value v with no strict ancestor of value v."""
    vals = _values(dag, value)
    anc = dag.ancestor_masks()
    class_mask: dict[int, int] = {}
    for i, v in enumerate(vals):
        class_mask[v] = class_mask.get(v, 0) | (1 << i)
    out: dict[int, tuple[int, ...]] = {}
    for v, mask in sorted(class_mask.items()):
        sel = tuple(i for i in range(len(vals)) if vals[i] == v and not (anc[i] & mask))
        out[v] = sel
    return out


def minimal_nodes_by_value(dag: EnumerationDag, value) -> dict[int, tuple[int, ...]]:
    """Per attained value v, the nodes of value v with no strict descendant of value v."""
    vals = _values(dag, value)
    desc = dag.descendant_masks()
    class_mask: dict[int, int] = {}
    for i, v in enumerate(vals):
        class_mask[v] = class_mask.get(v, 0) | (1 << i)
    out: dict[int, tuple[int, ...]] = {}
    for v, mask in sorted(class_mask.items()):
        sel = tuple(i for i in range(len(vals)) if vals[i] == v and not (desc[i] & mask))
        out[v] = sel
    return out
