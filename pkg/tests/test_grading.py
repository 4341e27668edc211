import pytest

from intrinsic_quadrics.abelian import FgAbelianGroup
from intrinsic_quadrics.cone import cone_from_generators
from intrinsic_quadrics.grading import (
    GradedSetup,
    almost_free,
    degree_kernel,
    is_almost_free,
    is_factorially_graded,
    is_pointed_grading,
    moving_cone,
    validate,
    weight_cone,
)

Z1, Z2 = FgAbelianGroup(1), FgAbelianGroup(2)


def setup(K, vecs, q, t, m):
    return GradedSetup.from_vectors(K, vecs, q, t, m)


TYPE4 = setup(Z2, [(1, 0), (0, 1)] * 3, 6, 0, 0)
TYPE3 = setup(Z2, [(0, 1), (2, 1), (1, 1), (1, 1), (1, 1), (1, 0)], 4, 1, 1)
PIC1 = setup(Z1, [(1,)] * 6, 4, 1, 1)


def test_homogeneity_enforced():
    with pytest.raises(ValueError, match="homogeneous"):
        setup(Z2, [(1, 0), (0, 1), (1, 1), (1, 0)], 4, 0, 0)
    with pytest.raises(ValueError, match="q \\+ t >= 3"):
        setup(Z1, [(1,), (1,)], 2, 0, 0)
    with pytest.raises(ValueError, match="pairwise different"):
        setup(Z1, [(1,), (1,), (1,), (1,)], 2, 2, 0)
    with pytest.raises(ValueError, match="expected"):
        setup(Z1, [(1,)] * 4, 4, 0, 1)


def test_relation_degree():
    assert TYPE4.relation_degree == Z2.element((1, 1))
    K = FgAbelianGroup(1, (2, 2))
    sq = tuple(K.element((1,), t) for t in [(0, 0), (1, 0), (0, 1)])
    assert GradedSetup(K, sq, 0, 3, 0).relation_degree == K.element((2,), (0, 0))


def test_cones():
    assert weight_cone(TYPE4) == moving_cone(TYPE4) == cone_from_generators([(1, 0), (0, 1)])
    assert weight_cone(PIC1) == moving_cone(PIC1) == cone_from_generators([(1,)])
    assert moving_cone(TYPE3) == cone_from_generators([(1, 1), (2, 1)])


def test_pointed():
    assert is_pointed_grading(PIC1)
    K = FgAbelianGroup(1, (2,))
    s = GradedSetup(K, (K.element((1,), (0,)),) * 4 + (K.element((0,), (1,)),), 4, 0, 1)
    assert not is_pointed_grading(s)
    line = GradedSetup.from_vectors(Z2, [(1, 0), (-1, 0), (1, 0), (-1, 0), (0, 1)], 4, 0, 1)
    assert not is_pointed_grading(line)


def test_almost_free():
    assert is_almost_free(TYPE4)
    bad = setup(Z2, [(1, 0), (1, 2)] * 3, 6, 0, 0)
    assert not is_almost_free(bad)
    report = validate(bad)
    assert not report.valid and any("almost free" in m for m in report.messages)
    # degenerate: one degree, the empty set generates only the trivial group
    assert almost_free(FgAbelianGroup(0), [FgAbelianGroup(0).zero()])
    assert not almost_free(Z1, [Z1.element((1,))])


def test_factorial_large():
    assert is_factorially_graded(TYPE4) == (True, "q+t>=5")


def test_factorial_shape_2_2():
    rows = [[1, 0, 0, 0], [-1, -1, 2, 0], [-1, -1, 0, 2]]
    K, images = FgAbelianGroup.from_relations(rows, 4)
    s = GradedSetup(K, tuple(K.from_vector(v) for v in images), 2, 2, 0)
    kernel = degree_kernel(s)
    assert len(kernel) == 3
    assert is_factorially_graded(s) == (True, "matrix-shape (2,2)")


def test_factorial_shape_fails():
    s = setup(Z1, [(1,)] * 3, 2, 1, 0)
    assert is_factorially_graded(s) == (False, "fails")
    K = FgAbelianGroup(1, (2, 2))
    sq = [K.element((1,), t) for t in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    # ker Q / <fixed rows> has order 2, hence cyclic
    assert is_factorially_graded(GradedSetup(K, tuple(sq), 0, 4, 0)) == (True, "matrix-shape (0,4)")
    # with an extra S-variable of degree (1,0,0) the quotient picks up a free summand and a Z/2
    s2 = GradedSetup(K, tuple(sq) + (K.element((1,), (0, 0)),), 0, 4, 1)
    assert is_factorially_graded(s2) == (False, "fails")


def test_validate_examples():
    for s in (TYPE4, TYPE3, PIC1):
        r = validate(s)
        assert r.valid, r.messages
        assert r.as_dict()["valid"]
