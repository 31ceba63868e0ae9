"""Datum with 4-element fibers (kernel Z4 under a Z2 quotient): round trips
and cohomology against the classical oracle, both trivial and inversion
actions."""

from affext.algebras import find_isomorphism
from affext.cocycles import reconstruct
from affext.cohomology import h2
from affext.datum import extract_datum, group_extension
from affext.groups import classical_h2, inversion_action, trivial_action


ROTATIONS = [0, 2, 4, 6]  # the cyclic order-4 subgroup in the a^i b^j encoding


def test_z8_over_z4(cat, group_eqs):
    ext = group_extension(cat["Z8"], ROTATIONS)
    d, T = extract_datum(ext)
    assert find_isomorphism(cat["Z8"], reconstruct(d, T).alg) is not None
    res = h2(d, group_eqs)
    cla = classical_h2(cat["Z4"], cat["Z2"], trivial_action(cat["Z4"], cat["Z2"]))
    assert res.order == cla.order == 2
    assert res.class_types() == cla.class_types() == ["Z2xZ4", "Z8"]


def test_d4_over_rotations(cat, group_eqs):
    ext = group_extension(cat["D4"], ROTATIONS)
    d, T = extract_datum(ext)
    assert find_isomorphism(cat["D4"], reconstruct(d, T).alg) is not None
    res = h2(d, group_eqs)
    cla = classical_h2(cat["Z4"], cat["Z2"], inversion_action(cat["Z4"], cat["Z2"]))
    assert res.order == cla.order == 2
    assert res.class_types() == cla.class_types() == ["D4", "Q8"]


def test_q8_realizes_the_inversion_datum(cat, group_eqs):
    """Q8 over a cyclic Z4 subgroup extracts the same datum shape as D4 over
    its rotations, so the cohomology and class types coincide."""
    ext = group_extension(cat["Q8"], ROTATIONS)
    d, T = extract_datum(ext)
    assert find_isomorphism(cat["Q8"], reconstruct(d, T).alg) is not None
    res = h2(d, group_eqs)
    assert res.order == 2
    assert res.class_types() == ["D4", "Q8"]
