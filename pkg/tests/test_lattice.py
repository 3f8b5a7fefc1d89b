import itertools
import random

import pytest

from atomlat import (
    Lattice,
    LatticeError,
    boolean_lattice,
    canonical_form,
    free_map,
    is_atomistic,
    load_lattice,
    meet_irreducibles,
    quotient,
    save_lattice,
)
from atomlat.lattice import family_key, verify_lattice_axioms


def chain(n):
    return Lattice.from_covers(n, [(i, i + 1) for i in range(n - 1)])


def diamond(n):
    # bottom, n pairwise-incomparable atoms, top
    masks = (0,) + tuple(1 << i for i in range(n)) + ((1 << n) - 1,)
    return Lattice.from_atom_family(n, masks)


def pentagon():
    # 0 < 1 < 3 < 4 and 0 < 2 < 4
    return Lattice.from_covers(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])


def relabeled(L, perm):
    # perm[new] = old
    n = len(L)
    inv = {old: new for new, old in enumerate(perm)}
    leq = [[L.leq(perm[i], perm[j]) for j in range(n)] for i in range(n)]
    lat = Lattice.from_leq(leq)
    assert lat.bottom == inv[L.bottom]
    return lat


SAMPLES = [chain(1), chain(2), chain(4), diamond(3), diamond(4), pentagon(),
           boolean_lattice(2), boolean_lattice(3), boolean_lattice(4)]


def test_axioms_hold_on_samples():
    for L in SAMPLES:
        verify_lattice_axioms(L)


def test_boolean_lattice_structure():
    B = boolean_lattice(3)
    assert len(B) == 8
    assert B.bottom == 0 and B.top == 7
    assert B.atoms == (1, 2, 4)
    for x in range(8):
        for y in range(8):
            assert B.join(x, y) == x | y
            assert B.meet(x, y) == x & y
            assert B.leq(x, y) == (x | y == y)


def test_join_meet_basics():
    L = pentagon()
    assert L.join(1, 2) == 4
    assert L.meet(3, 2) == 0
    assert L.join_all(()) == L.bottom
    assert L.join_all((1, 3)) == 3
    C = chain(4)
    assert C.join(1, 3) == 3 and C.meet(1, 3) == 1
    assert C.atoms == (1,)


def test_covers_and_masks_agree():
    for L in SAMPLES:
        n = len(L)
        for x in range(n):
            direct = tuple(
                y for y in range(n)
                if x != y and L.leq(x, y)
                and not any(L.leq(x, z) and L.leq(z, y)
                            for z in range(n) if z not in (x, y))
            )
            assert L.covers_of(x) == direct


def test_meet_irreducibles_of_small_booleans():
    # single-cover scan: in B_3 only the three coatoms qualify, since each
    # atom sits below two distinct covers
    assert meet_irreducibles(boolean_lattice(2)) == (1, 2)
    assert meet_irreducibles(boolean_lattice(3)) == (3, 5, 6)
    B = boolean_lattice(4)
    assert meet_irreducibles(B) == (7, 11, 13, 14)
    for x in meet_irreducibles(B):
        assert len(B.covers_of(x)) == 1
    # the bottom of a chain has one cover but never counts
    assert meet_irreducibles(chain(3)) == (1,)


def test_atomistic_recognition():
    assert is_atomistic(boolean_lattice(2))
    assert is_atomistic(diamond(3))
    assert is_atomistic(chain(2))
    assert not is_atomistic(chain(3))
    assert not is_atomistic(pentagon())


def test_quotient_collapses_one_meet_irreducible():
    B = boolean_lattice(3)
    Q, phi = quotient(B, 3)
    assert len(Q) == 7
    assert is_atomistic(Q)
    assert len(Q.atoms) == 3
    assert phi.is_join_preserving()
    assert phi.is_surjective()
    # the collapsed element lands where its unique cover does
    assert phi.mapping[3] == phi.mapping[7]


def test_quotient_rejects_non_meet_irreducible():
    B = boolean_lattice(3)
    with pytest.raises(ValueError):
        quotient(B, 1)
    with pytest.raises(ValueError):
        quotient(B, 7)


def test_free_map_is_surjective_and_join_preserving():
    for L in [diamond(3), diamond(4), boolean_lattice(3)]:
        phi = free_map(L)
        assert phi.is_join_preserving()
        assert phi.is_surjective()
        assert len(phi.domain) == 1 << len(L.atoms)


def test_canonical_form_is_relabeling_invariant():
    rng = random.Random(7)
    for L in SAMPLES:
        ref = canonical_form(L)
        n = len(L)
        perms = itertools.permutations(range(n)) if n <= 5 else (
            tuple(rng.sample(range(n), n)) for _ in range(30))
        for perm in perms:
            assert canonical_form(relabeled(L, list(perm))) == ref


def test_canonical_form_separates_samples():
    # the sample lattices are pairwise non-isomorphic
    forms = [canonical_form(L) for L in SAMPLES]
    assert len(set(forms)) == len(forms)


def test_family_key_invariant_under_atom_permutation():
    fam = (0, 1, 2, 4, 3, 7)  # three atoms, one extra join
    k = 3
    ref = family_key(k, fam)
    for perm in itertools.permutations(range(k)):
        remapped = []
        for m in fam:
            out = 0
            for i in range(k):
                if m >> i & 1:
                    out |= 1 << perm[i]
            remapped.append(out)
        assert family_key(k, tuple(remapped)) == ref
    assert family_key(k, (0, 1, 2, 4, 5, 7)) == ref  # {0,1} join vs {0,2} join


def test_from_covers_rejects_non_cover_pairs():
    with pytest.raises(LatticeError):
        Lattice.from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])
    with pytest.raises(LatticeError):
        Lattice.from_covers(2, [(0, 0)])


def test_from_leq_rejects_non_lattices():
    # two maximal elements: no join of the atoms
    leq = [
        [1, 1, 1, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    # 0 below everything, 1..3 pairwise incomparable: joins missing
    with pytest.raises(LatticeError):
        Lattice.from_leq(leq)


def test_save_load_round_trip(tmp_path):
    for i, L in enumerate(SAMPLES):
        path = tmp_path / f"lat_{i}.json"
        save_lattice(L, path)
        M = load_lattice(path)
        assert len(M) == len(L)
        assert M.up_masks() == L.up_masks()
        assert M.atoms == L.atoms
