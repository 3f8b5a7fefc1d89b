import pytest

from atomlat import (
    Lattice,
    MonomialIdeal,
    boolean_lattice,
    canonical_form,
    format_ideal,
    format_monomial,
    ideal_from_dict,
    ideal_to_dict,
    is_atomistic,
    lcm_lattice,
    parse_ideal,
    realize,
)
from atomlat.ideals import lcm_lattice_form, minimalize

from reference_data import ROWS


def test_parse_and_format_round_trip():
    I = parse_ideal("x1^2*x3, x2")
    assert I.num_vars == 3
    assert I.generators == ((2, 0, 1), (0, 1, 0))
    assert format_ideal(I) == "x1^2*x3, x2"
    assert format_monomial((0, 0, 0)) == "1"
    for _no, text, _vals in ROWS:
        J = parse_ideal(text)
        assert parse_ideal(format_ideal(J)) == J


def test_parse_accepts_spacing_and_repeats():
    assert parse_ideal("x1 * x1 * x2").generators == ((2, 1),)
    assert parse_ideal("x2,x1") == parse_ideal(" x2 , x1 ")


def test_parse_minimalizes():
    I = parse_ideal("x1, x1*x2, x2^3")
    assert I.generators == ((1, 0), (0, 3))


def test_parse_rejections():
    for bad in ["", "1", "x0", "x1 + x2", "y1", "x1, 1"]:
        with pytest.raises(ValueError):
            parse_ideal(bad)


def test_ideal_validation():
    with pytest.raises(ValueError):
        MonomialIdeal(2, ((0, 0),))
    with pytest.raises(ValueError):
        MonomialIdeal(2, ((1, 0), (1, 0)))
    with pytest.raises(ValueError):
        MonomialIdeal(2, ((1, 0), (1, 1)))
    with pytest.raises(ValueError):
        MonomialIdeal(2, ((1, -1),))


def test_minimalize_keeps_incomparable_vectors():
    vecs = [(1, 0), (0, 2), (1, 1), (2, 0)]
    assert set(minimalize(vecs)) == {(1, 0), (0, 2)}


def test_membership_and_squarefree():
    I = parse_ideal("x1*x2, x3^2")
    assert I.contains_monomial((1, 1, 0))
    assert I.contains_monomial((2, 1, 5))
    assert not I.contains_monomial((1, 0, 1))
    assert not I.is_squarefree()
    assert parse_ideal("x1*x2, x3").is_squarefree()


def test_dict_round_trip():
    I = parse_ideal("x1^2, x2*x3")
    assert ideal_from_dict(ideal_to_dict(I)) == I


def test_lcm_lattice_of_variables_is_boolean():
    I = parse_ideal("x1, x2, x3")
    LL = lcm_lattice(I)
    assert len(LL.lattice) == 8
    assert canonical_form(LL.lattice) == canonical_form(boolean_lattice(3))
    assert LL.label_of(LL.lattice.bottom) == (0, 0, 0)
    assert LL.label_of(LL.lattice.top) == (1, 1, 1)
    # atom i carries generator i
    for i, a in enumerate(LL.lattice.atoms):
        assert LL.label_of(a) == I.generators[i]


def test_lcm_lattice_join_is_lcm():
    I = parse_ideal("x2*x3*x4, x1*x3*x4, x1*x2*x4, x1*x2*x3")
    LL = lcm_lattice(I)
    L = LL.lattice
    assert len(L) == 6
    for x in range(len(L)):
        for y in range(len(L)):
            joined = LL.label_of(L.join(x, y))
            direct = tuple(max(a, b)
                           for a, b in zip(LL.label_of(x), LL.label_of(y)))
            assert joined == direct
    assert LL.element_of((1, 1, 1, 1)) == L.top


def test_lcm_lattice_sizes_match_reference():
    for _no, text, vals in ROWS:
        assert len(lcm_lattice(parse_ideal(text)).lattice) == vals[0]


def test_realize_boolean_gives_distinct_variables():
    I = realize(boolean_lattice(4))
    assert I.num_vars == 4
    assert sorted(I.generators) == [
        (0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]


def test_realize_single_atom():
    I = realize(boolean_lattice(1))
    assert I.generators == ((1,),)
    assert len(lcm_lattice(I).lattice) == 2


def test_realize_round_trips_on_reference_rows():
    for _no, text, _vals in ROWS:
        I = parse_ideal(text)
        L = lcm_lattice(I).lattice
        J = realize(L)
        assert lcm_lattice_form(J) == canonical_form(L)


def test_realize_rejects_non_atomistic():
    chain3 = Lattice.from_covers(3, [(0, 1), (1, 2)])
    assert not is_atomistic(chain3)
    with pytest.raises(ValueError):
        realize(chain3)
