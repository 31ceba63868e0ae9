import pytest

from affext.algebras import AlgebraError
from affext.groups import (center, classical_h2, commutator_subgroup,
                           element_orders, inversion_action, is_abelian_group,
                           is_action, is_group, iso_type,
                           semidirect_extension, subgroup_generated,
                           trivial_action, verify_grp_lemma)


def test_catalog_sanity(cat):
    expected = {"Z1": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Z2xZ2": 4, "Z5": 5,
                "Z6": 6, "S3": 6, "Z7": 7, "Z8": 8, "Z2xZ4": 8,
                "Z2xZ2xZ2": 8, "D4": 8, "Q8": 8}
    assert {k: v.size for k, v in cat.items()} == expected
    for g in cat.values():
        assert is_group(g)
    assert not is_abelian_group(cat["S3"])
    assert not is_abelian_group(cat["D4"])
    assert not is_abelian_group(cat["Q8"])
    assert is_abelian_group(cat["Z2xZ4"])


def test_element_orders(cat):
    assert sorted(element_orders(cat["Q8"])) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert sorted(element_orders(cat["D4"])) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_center_and_commutator(cat):
    d4 = cat["D4"]
    zc = subgroup_generated(d4, center(d4))
    assert len(zc) == 2
    derived = commutator_subgroup(d4, list(range(8)), list(range(8)))
    assert sorted(derived) == sorted(zc)
    s3 = cat["S3"]
    assert len(center(s3)) == 1
    assert len(commutator_subgroup(s3, list(range(6)), list(range(6)))) == 3


def test_classical_h2_z2_z2(cat):
    res = classical_h2(cat["Z2"], cat["Z2"], trivial_action(cat["Z2"], cat["Z2"]))
    assert res.order == 2
    assert res.class_types() == ["Z2xZ2", "Z4"]
    # the identity pins f(e,e)=f(e,x)=f(x,e); f(1,1) and the pinned value
    # are free, so |Z2| = 4 and the 4 witness maps give |B2| = 2
    assert len(res.cocycles) == 4
    assert len(res.coboundaries) == 2


def test_classical_h2_trivial_quotient(cat):
    res = classical_h2(cat["Z2"], cat["Z1"], trivial_action(cat["Z2"], cat["Z1"]))
    assert res.order == 1
    assert res.class_types() == ["Z2"]


def test_classical_h2_s3_from_inversion(cat):
    res = classical_h2(cat["Z3"], cat["Z2"], inversion_action(cat["Z3"], cat["Z2"]))
    assert res.order == 1
    assert res.class_types() == ["S3"]


def test_classical_h2_rejects_nonabelian_kernel(cat):
    with pytest.raises(AlgebraError):
        classical_h2(cat["S3"], cat["Z2"], trivial_action(cat["S3"], cat["Z2"]))


def test_classical_h2_rejects_non_action(cat):
    bad = tuple(tuple((k + 1) % 2 for k in range(2)) for _ in range(2))
    with pytest.raises(AlgebraError):
        classical_h2(cat["Z2"], cat["Z2"], bad)


def test_semidirect_extension_s3(cat):
    ext = semidirect_extension(cat["Z3"], cat["Z2"],
                               inversion_action(cat["Z3"], cat["Z2"]))
    assert iso_type(ext) == "S3"


def test_is_action_validates(cat):
    assert is_action(cat["Z3"], cat["Z2"], inversion_action(cat["Z3"], cat["Z2"]))
    assert is_action(cat["Z2"], cat["Z2xZ2"], trivial_action(cat["Z2"], cat["Z2xZ2"]))


def test_grp_lemma_z4(cat):
    rep = verify_grp_lemma(cat["Z4"], [0, 2])
    assert rep["holds"], rep


def test_grp_lemma_d4_center(cat):
    d4 = cat["D4"]
    rep = verify_grp_lemma(d4, subgroup_generated(d4, center(d4)))
    assert rep["holds"], rep
    assert rep["parts"]["transfer matches l(x)l(y)l(xy)^-1"] is True


def test_grp_lemma_q8_center(cat):
    q8 = cat["Q8"]
    rep = verify_grp_lemma(q8, subgroup_generated(q8, center(q8)))
    assert rep["holds"], rep


def test_grp_lemma_trivial_kernel(cat):
    rep = verify_grp_lemma(cat["Z4"], [0])
    assert rep["holds"], rep


def test_grp_lemma_s3_a3(cat):
    """Nonabelian ambient group, abelian normal kernel (H = K case)."""
    rep = verify_grp_lemma(cat["S3"], [0, 3, 4])
    assert rep["holds"], rep


def test_grp_lemma_rejects_bad_kernel(cat):
    with pytest.raises(AlgebraError):
        verify_grp_lemma(cat["S3"], [0, 1])  # not normal
    with pytest.raises(AlgebraError):
        verify_grp_lemma(cat["Q8"], list(range(8)))  # not abelian
