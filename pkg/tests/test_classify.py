import pytest

from intrinsic_quadrics.classify import (
    ClassificationMismatch,
    ConstellationP2,
    ConstellationP3Full,
    TablePrediction,
    check_p2,
    cone_prediction,
    constellations_p2,
    enumerate_full_picard3,
    enumerate_picard1,
    enumerate_picard2,
    fano_table_predicate,
    full_fano_smooth,
    iter_full_picard3,
    iter_items,
)
from intrinsic_quadrics.cone import cone_from_generators
from intrinsic_quadrics.quadric import FanoTag


def labels(items):
    return [(it.constellation.type_tag, it.constellation.n, it.constellation.m) for it in items]


def test_dimension_three_census():
    for amax in (0, 1, 4):
        items = enumerate_picard2(3, amax)
        assert labels(items) == [(3, 5, 1), (4, 6, 0)]
        assert items[1].constellation.alpha == 0


def test_picard2_bounds():
    with pytest.raises(ValueError):
        enumerate_picard2(2, 1)
    with pytest.raises(ValueError):
        enumerate_picard2(4, -1)


def test_dimension_four_fano_rows():
    items = enumerate_picard2(4, 1, fano="fano")
    assert items
    for it in items:
        assert fano_table_predicate(it.constellation) == TablePrediction.FANO
    almost = enumerate_picard2(4, 1, fano="almost-fano")
    assert len(almost) >= len(items)
    assert {it.variety.fano_status().tag for it in almost} <= {FanoTag.FANO, FanoTag.TRULY_ALMOST_FANO}


def test_type2_parity():
    assert not [c for c in constellations_p2(7, 2, 1) if c.type_tag == 2]
    assert [c for c in constellations_p2(7, 2, 2) if c.type_tag == 2]
    with pytest.raises(ValueError):
        ConstellationP2(2, 7, 2, 1, None, (0, 0))


def test_constellation_invariants():
    with pytest.raises(ValueError):
        ConstellationP2(1, 5, 2, 2, None, (0, 1))
    with pytest.raises(ValueError):
        ConstellationP2(4, 6, 1, 2, 1, (1,))
    with pytest.raises(ValueError):
        ConstellationP2(4, 7, 0, 0, 0, ())
    c = ConstellationP2(4, 6, 1, 2, 2, (0,))
    assert c.w_degrees() == [(1, 0), (2, 1)] * 3 and c.u_degrees() == [(0, 1)]


@pytest.mark.parametrize(
    "c, expected",
    [
        (ConstellationP2(3, 5, 1, 2), TablePrediction.FANO),
        (ConstellationP2(3, 5, 3, 2), TablePrediction.TRULY_ALMOST_FANO),
        (ConstellationP2(2, 6, 2, 1, None, (0, 0)), TablePrediction.TRULY_ALMOST_FANO),
        (ConstellationP2(4, 6, 2, 1, 0, (1, 1)), TablePrediction.TRULY_ALMOST_FANO),
        (ConstellationP2(4, 6, 0, 0, 0, ()), TablePrediction.FANO),
    ],
)
def test_fano_table(c, expected):
    assert fano_table_predicate(c) == expected
    assert cone_prediction(c.variety()) == expected


def test_picard1():
    assert [(it.constellation.n, it.constellation.m) for it in enumerate_picard1(3)] == [(5, 0)]
    items = enumerate_picard1(4)
    assert [(it.constellation.n, it.constellation.m, it.smooth) for it in items] == [(6, 0, True), (5, 1, False)]
    with pytest.raises(ValueError):
        enumerate_picard1(2)


def test_full_picard3_counts():
    assert len(list(iter_full_picard3(8, 0))) == 1
    at_10_1 = [c for c in iter_full_picard3(10, 1) if c.n == 10 and c.a == 1]
    assert len(at_10_1) == 3
    items = enumerate_full_picard3(10, 1)
    for it in items:
        X = it.variety
        mu = X.relation_degree()
        assert X.anticanonical_class() == (it.constellation.n - 2) // 2 * mu
        assert not X.is_ample(X.anticanonical_class())
    with pytest.raises(ValueError):
        list(iter_full_picard3(6, 0))


def test_p3_tau_matches_statement():
    c = ConstellationP3Full(8, 1)
    assert c.tau().rays == ((0, 1, 0), (1, 1, 0), (1, 2, 1))
    w = c.degrees()
    for i in range(0, 8, 2):
        assert tuple(a + b for a, b in zip(w[i], w[i + 1])) == (1, 1, 1)


def test_full_fano_smooth():
    items = full_fano_smooth(3)
    assert [(it.constellation.rho, it.constellation.n) for it in items] == [(1, 4), (2, 2)]
    flag3 = [it for it in full_fano_smooth(5) if it.constellation.rho == 2 and it.constellation.n == 3][0]
    s = flag3.variety.fano_status()
    assert s.fano_index == 3 and flag3.variety.mukai_check().lhs == 4
    quad = items[0].variety
    assert quad.anticanonical_class().free == (3,) and quad.fano_status().fano_index == 3


def test_mismatch_is_loud():
    class Fake(ConstellationP2):
        def tau(self):
            return cone_from_generators([(1, 1), (3, 2)])

    bad = Fake(3, 5, 1, 2)
    with pytest.raises(ClassificationMismatch, match="tau_X"):
        list(iter_items([bad], check_p2))


def test_deduplication_is_idempotent():
    cs = [c for n in range(5, 9) for m in range(0, 4) for al in range(3) for c in constellations_p2(n, m, al)]
    assert len(cs) == len(set(cs))
    degree_keys = {}
    for c in cs:
        key = (c.type_tag, c.n, tuple(sorted(c.w_degrees())), tuple(sorted(c.u_degrees())))
        assert key not in degree_keys, (c, degree_keys.get(key))
        degree_keys[key] = c
