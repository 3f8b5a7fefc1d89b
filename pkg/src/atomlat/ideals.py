"""Monomial ideals, lcm-lattices, and realizations of atomistic lattices.

A monomial is an exponent vector; an ideal is its minimal generating
set.  The lcm-lattice of an ideal collects the least common multiples
of all nonempty generator subsets, ordered by divisibility, with a
formal bottom adjoined.  Conversely every finite atomistic lattice is
the lcm-lattice of some squarefree monomial ideal; ``realize`` builds
one and re-checks itself by recomputing the lcm-lattice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lattice import (
    CanonicalForm,
    Lattice,
    canonical_form,
    is_atomistic,
    meet_irreducibles,
)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def minimalize(vectors):
    """Drop vectors divisible by another; keep first occurrences in order."""
    vecs = []
    for v in vectors:
        if v not in vecs:
            vecs.append(v)
    keep = []
    for v in vecs:
        if not any(w != v and _divides(w, v) for w in vecs):
            keep.append(v)
    return keep


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal monomial generators."""

    num_vars: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be at least 1")
        if not self.generators:
            raise ValueError("generator list is empty")
        for g in self.generators:
            if len(g) != self.num_vars:
                raise ValueError(f"generator {g} has wrong length")
            if any(e < 0 for e in g):
                raise ValueError(f"generator {g} has a negative exponent")
            if not any(g):
                raise ValueError("the unit monomial cannot generate a proper ideal")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generators")
        for g in self.generators:
            for h in self.generators:
                if g != h and _divides(g, h):
                    raise ValueError(
                        f"generators not minimal: {format_monomial(g)} divides "
                        f"{format_monomial(h)}"
                    )

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def contains_monomial(self, vec) -> bool:
        """Whether the monomial with this exponent vector lies in the ideal."""
        return any(_divides(g, vec) for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.generators for e in g)

    def __str__(self) -> str:
        return format_ideal(self)


_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


def _parse_monomial(text: str, original: str) -> dict[int, int]:
    src = text.replace("*", "").replace(" ", "").replace("\t", "")
    if not src:
        raise ValueError(f"empty monomial in {original!r}")
    if src == "1":
        raise ValueError("unit generator '1' rejected: the ideal must be proper")
    exps: dict[int, int] = {}
    pos = 0
    while pos < len(src):
        m = _FACTOR.match(src, pos)
        if m is None:
            raise ValueError(f"cannot parse monomial {text!r} at {src[pos:]!r}")
        idx = int(m.group(1))
        if idx < 1:
            raise ValueError(f"variable index must be >= 1 in {text!r}")
        exp = int(m.group(2)) if m.group(2) else 1
        exps[idx] = exps.get(idx, 0) + exp
        pos = m.end()
    if not any(exps.values()):
        raise ValueError("unit generator rejected: the ideal must be proper")
    return exps


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse a comma-separated list of monomials in variables x1..xN.

    '*' between factors is optional, '^' marks powers.  The generator
    set is minimalized; num_vars is the highest variable index used.
    """
    parts = [p for p in text.split(",")]
    if not parts or not any(p.strip() for p in parts):
        raise ValueError("no generators given")
    raw = [_parse_monomial(p, text) for p in parts]
    n = max(max(e) for e in raw)
    vectors = [tuple(e.get(j + 1, 0) for j in range(n)) for e in raw]
    gens = minimalize(vectors)
    return MonomialIdeal(n, tuple(gens))


def format_monomial(vec) -> str:
    parts = []
    for j, e in enumerate(vec):
        if e == 1:
            parts.append(f"x{j + 1}")
        elif e > 1:
            parts.append(f"x{j + 1}^{e}")
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    return ", ".join(format_monomial(g) for g in I.generators)


def ideal_to_dict(I: MonomialIdeal) -> dict:
    return {"num_vars": I.num_vars, "generators": [list(g) for g in I.generators]}


def ideal_from_dict(data: dict) -> MonomialIdeal:
    try:
        n = int(data["num_vars"])
        gens = tuple(tuple(int(e) for e in g) for g in data["generators"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed ideal record: {exc}") from None
    return MonomialIdeal(n, gens)


@dataclass(frozen=True)
class LcmLattice:
    """A lattice together with its monomial labels.

    ``labels[x]`` is the exponent vector of element x; the bottom is
    labeled by the zero vector (the monomial 1).
    """

    lattice: Lattice
    labels: tuple[tuple[int, ...], ...]

    def label_of(self, x: int) -> tuple[int, ...]:
        return self.labels[x]

    def element_of(self, vec) -> int:
        return self.labels.index(tuple(vec))


def lcm_lattice(I: MonomialIdeal) -> LcmLattice:
    """All lcms of nonempty generator subsets, ordered by divisibility.

    A formal bottom (the monomial 1) is adjoined; the atoms are exactly
    the generators.
    """
    closure = set(I.generators)
    frontier = list(closure)
    while frontier:
        nxt = []
        for v in frontier:
            for w in list(closure):
                u = _lcm(v, w)
                if u not in closure:
                    closure.add(u)
                    nxt.append(u)
        frontier = nxt
    zero = (0,) * I.num_vars
    labels = (zero,) + tuple(sorted(closure))
    index = {v: i for i, v in enumerate(labels)}
    rows = []
    for x, vx in enumerate(labels):
        row = 0
        for y, vy in enumerate(labels):
            if _divides(vx, vy):
                row |= 1 << y
        rows.append(row)
    atoms = tuple(index[g] for g in I.generators)
    lat = Lattice(tuple(rows), atoms=atoms, _validated=True)
    # the joins of the lattice must agree with coordinatewise max
    for x in range(lat.size):
        for y in range(x + 1, lat.size):
            if labels[lat.join(x, y)] != _lcm(labels[x], labels[y]):
                raise AssertionError("lcm-lattice join disagrees with lcm")
    if not is_atomistic(lat):
        raise AssertionError("lcm-lattice is not atomistic")
    return LcmLattice(lat, labels)


def realize(L: Lattice) -> MonomialIdeal:
    """A squarefree monomial ideal whose lcm-lattice is isomorphic to L.

    One variable per meet-irreducible m; the generator for atom a uses
    x_m exactly when a is not below m.  The construction is re-checked
    by recomputing the lcm-lattice and comparing canonical forms.
    """
    if not is_atomistic(L):
        raise ValueError("realize requires an atomistic lattice")
    k = len(L.atoms)
    if k < 1:
        raise ValueError("realize requires at least one atom")
    if k == 1:
        return MonomialIdeal(1, ((1,),))
    mis = meet_irreducibles(L)
    n = len(mis)
    gens = tuple(
        tuple(0 if L.leq(a, m) else 1 for m in mis) for a in L.atoms
    )
    I = MonomialIdeal(n, gens)
    check = canonical_form(lcm_lattice(I).lattice)
    if check != canonical_form(L):
        raise AssertionError("realization failed its lcm-lattice round-trip check")
    return I


def lcm_lattice_form(I: MonomialIdeal) -> CanonicalForm:
    """Canonical form of the lcm-lattice; equal forms mean isomorphic lattices."""
    return canonical_form(lcm_lattice(I).lattice)
