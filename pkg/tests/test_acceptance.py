"""End-to-end acceptance criteria; one PASS/FAIL line per criterion is printed."""

import random
from itertools import product

import pytest

from acceptance_log import criterion
from intrinsic_quadrics.classify import (
    check_p2,
    cone_prediction,
    enumerate_full_picard3,
    enumerate_picard1,
    enumerate_picard2,
    fano_table_predicate,
    grid_constellations,
    iter_items,
)
from intrinsic_quadrics.cli import main
from intrinsic_quadrics.cone import cone_from_generators, intersect
from intrinsic_quadrics.normalform import normalize_quadric
from intrinsic_quadrics.quadric import FanoTag, xbar_face_mask
from intrinsic_quadrics.sampling import sample_full_fano
from oracles import graded_scramble, permute_form, random_standard_quadric, xbar_face_oracle

GRID = (9, 4, 3)


@pytest.fixture(scope="module")
def grid_items():
    return list(iter_items(grid_constellations(*GRID), check_p2, verify=False))


@pytest.fixture(scope="module")
def p3_items():
    return enumerate_full_picard3(10, 2, verify=False)


@pytest.fixture(scope="module")
def picard1_items():
    return {d: enumerate_picard1(d) for d in range(3, 9)}


def test_criterion_01_dimension_three_census(capsys):
    with criterion(1, "dimension-3 census", limit=1.0) as info:
        rc = main(["classify", "--picard", "2", "--dim", "3"])
        out = capsys.readouterr().out
        assert rc == 0 and out.count("# item ") == 2
        items = enumerate_picard2(3, 3)
        got = [(it.constellation.type_tag, it.constellation.n, it.constellation.m, it.constellation.alpha)
               for it in items]
        assert got == [(3, 5, 1, 2), (4, 6, 0, 0)], got
        for it in items:
            X = it.variety
            assert X.is_smooth() and X.picard_number() == 2 and X.picard_group().index() == 1
            assert X.group.is_torsion_free()
        info["items"] = len(items)


def test_criterion_02_converse_grid():
    with criterion(2, "converse validation grid n<=9 m<=4 alpha<=3", limit=60.0) as info:
        cons = grid_constellations(*GRID)
        types = set()
        for c in cons:
            X = c.variety()
            assert X.report.valid, c.label()
            assert X.is_smooth(), c.label()
            assert X.picard_number() == 2, c.label()
            assert X.group.is_torsion_free()
            if c.type_tag == 3:
                tau = cone_from_generators([(1, 1), (2, 1)], 2)
            else:
                tau = cone_from_generators([(1, 0), (c.alpha, 1)], 2)
            assert X.semiample_cone() == tau, c.label()
            types.add(c.type_tag)
        assert types == {1, 2, 3, 4}
        info["constellations"] = len(cons)


def test_criterion_03_fano_table(grid_items):
    with criterion(3, "Fano table vs cone-based status") as info:
        mismatches = [it.constellation.label() for it in grid_items
                      if fano_table_predicate(it.constellation) != cone_prediction(it.variety)]
        assert not mismatches, mismatches[:5]
        info["checked"] = len(grid_items)
        info["fano"] = sum(cone_prediction(it.variety).value == "Fano" for it in grid_items)
        info["mismatches"] = 0


def test_criterion_04_picard_one(picard1_items):
    with criterion(4, "Picard number one, dim<=8") as info:
        full = partial = 0
        for d, items in picard1_items.items():
            assert items
            for it in items:
                X, c = it.variety, it.constellation
                if c.m == 0:
                    assert X.is_smooth() and X.picard_number() == 1
                    assert X.anticanonical_class().free == (c.n - 2,)
                    assert X.fano_status().tag == FanoTag.FANO
                    full += 1
                else:
                    assert not X.is_quasismooth()
                    partial += 1
        info["m=0"] = full
        info["m>0"] = partial


def test_criterion_05_full_picard_three():
    with criterion(5, "full Picard number three, n<=10 a<=2", limit=60.0) as info:
        items = enumerate_full_picard3(10, 2)
        for it in items:
            X, c = it.variety, it.constellation
            w = c.degrees()
            tau = intersect(cone_from_generators([w[0], w[1], w[5]], 3),
                            cone_from_generators([w[0], w[5], w[7]], 3))
            assert X.is_smooth() and X.picard_number() == 3
            assert X.semiample_cone() == tau
            assert X.fano_status().tag != FanoTag.FANO
        assert items
        info["items"] = len(items)


def test_criterion_06_bpf_saturation(grid_items, p3_items):
    with criterion(6, "base point free monoids saturated") as info:
        pool = [it.variety for it in enumerate_picard2(3, 3)]
        pool += [it.variety for it in grid_items if it.variety.is_smooth()]
        pool += [it.variety for it in p3_items if it.variety.is_smooth()]
        bad = [X.setup for X in pool if not X.bpf_saturated()]
        assert not bad, bad[:3]
        type3 = next(it.variety for it in grid_items
                      if it.constellation.type_tag == 3 and it.constellation.n == 5 and it.constellation.m == 1)
        data = {d.face.indices: d for d in type3.monoid_data()}
        gens = sorted(g.free for g in data[(1, 2, 5)].generators)
        assert gens == [(0, 1), (1, 1), (2, 1)] and data[(1, 2, 5)].saturated
        info["varieties"] = len(pool)


def test_criterion_07_mukai(grid_items, picard1_items):
    with criterion(7, "Mukai inequality for Fano items, dim<=8") as info:
        rho2 = rho1 = 0
        for it in grid_items:
            X = it.variety
            if X.dimension() <= 8 and X.fano_status().tag == FanoTag.FANO:
                mk = X.mukai_check()
                assert mk.holds and mk.lhs < mk.rhs, it.constellation.label()
                rho2 += 1
        for items in picard1_items.values():
            for it in items:
                X = it.variety
                if X.fano_status().tag == FanoTag.FANO and X.is_smooth():
                    assert X.mukai_check().holds
                    rho1 += 1
        assert rho2 and rho1
        info["rho=2 Fano"] = rho2
        info["rho=1 Fano"] = rho1


SCRAMBLE_SHAPES = [(4, 0), (4, 1), (6, 0), (2, 2), (0, 3)]


def _torsions(t):
    plain = [(), (3,)]
    two = [(2,), (2, 2), (4,), (2, 4)]
    return [tt for tt in plain + two if len([b for b in product((0, 1), repeat=len(tt))
                                             if all(k % 2 == 0 or x == 0 for k, x in zip(tt, b))]) >= t]


def test_criterion_08_normal_form_invariance():
    with criterion(8, "normal form invariance under graded scrambling") as info:
        rng = random.Random(20261015)
        runs = with_two = without_two = 0
        for k in range(200):
            q, t = SCRAMBLE_SHAPES[k % len(SCRAMBLE_SHAPES)]
            torsion = rng.choice(_torsions(t))
            K, g = random_standard_quadric(q, t, torsion, rng)
            perm = list(range(g.num_vars))
            rng.shuffle(perm)
            r = normalize_quadric(graded_scramble(permute_form(g, perm), rng))
            assert (r.q, r.t) == (q, t), (k, q, t, torsion)
            assert r.t <= K.two_torsion_order()
            runs += 1
            if K.two_torsion_order() > 1:
                with_two += 1
            else:
                without_two += 1
        assert with_two and without_two
        info["runs"] = runs
        info["with 2-torsion"] = with_two
        info["failures"] = 0


def test_criterion_09_face_oracle():
    with criterion(9, "face predicate vs emptiness oracle, n+m<=8", limit=30.0) as info:
        shapes = faces = 0
        for N in range(1, 9):
            for q in range(0, N + 1, 2):
                for t in range(0, N - q + 1):
                    shapes += 1
                    for mask in range(1 << N):
                        assert xbar_face_mask(q, t, mask) == xbar_face_oracle(q, t, N, mask), (q, t, N, mask)
                        faces += 1
        info["block structures"] = shapes
        info["faces"] = faces


def test_criterion_10_full_fano_picard_bounds():
    with criterion(10, "Picard bounds for full Fano setups") as info:
        found, tries = sample_full_fano(random.Random(51), 200)
        assert len(found) >= 200
        for X in found:
            rho, t = X.picard_number(), X.setup.t
            assert rho <= (1 if t > 1 else 2 if t == 1 else 3), X.setup
            if rho == 3:
                assert t == 0 and X.is_q_factorial()
        info["samples"] = len(found)
        info["draws"] = tries
        info["by t"] = dict(sorted({t: sum(X.setup.t == t for X in found) for t in range(5)}.items()))
        info["violations"] = 0
