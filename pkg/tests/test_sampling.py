import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from intrinsic_quadrics.abelian import FgAbelianGroup
from intrinsic_quadrics.quadric import FanoTag
from intrinsic_quadrics.sampling import random_full_setup, sample_full_fano, two_torsion

ROOT = Path(__file__).resolve().parents[1]


def test_two_torsion():
    assert len(two_torsion(FgAbelianGroup(1, (2, 12)))) == 4
    assert len(two_torsion(FgAbelianGroup(2))) == 1


@pytest.mark.parametrize("seed", range(20))
def test_random_setup_is_homogeneous(seed):
    s = random_full_setup(random.Random(seed))
    if s is None:
        return
    mu = s.relation_degree
    assert s.m == 0
    for i in range(0, s.q, 2):
        assert s.degrees[i] + s.degrees[i + 1] == mu
    for w in s.degrees[s.q:]:
        assert 2 * w == mu
    assert len(set(s.degrees[s.q:])) == s.t


def test_sampled_are_full_fano():
    found, tries = sample_full_fano(random.Random(3), 15)
    assert len(found) == 15 and tries >= 15
    for X in found:
        s = X.setup
        assert X.fano_status().tag == FanoTag.FANO and X.u.free == X.anticanonical_class().free
        # rationally -K is a multiple of the relation degree
        k = Fraction(s.q + s.t - 2, 2)
        assert all(Fraction(a) == k * b for a, b in zip(X.anticanonical_class().free, s.relation_degree.free))


@pytest.mark.parametrize("argv", [
    ["fano_census.py", "--dim-max", "4", "--alpha-max", "1"],
    ["fujita_sweep.py", "--n-max", "6", "--m-max", "2", "--alpha-max", "1", "--p3-n-max", "8", "--p3-a-max", "0"],
    ["full_fano_picard_bounds.py", "--samples", "5"],
])
def test_scripts_run(argv):
    r = subprocess.run([sys.executable, str(ROOT / "scripts" / argv[0]), *argv[1:]],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0, r.stderr
