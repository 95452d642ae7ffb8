from fractions import Fraction
import random

import pytest

from ibeta.algebraic import make_beta
from ibeta.dynamics import SystemParams
from ibeta.errors import BetaOutOfRange, ExperimentalRegionHit, NotCoprime
from ibeta.regions import (
    NonTransitive,
    Transitive,
    admissible_pairs,
    alpha_nk,
    combinatorics,
    cyclic_pieces,
    descend,
    embed,
    endpoints,
    interval_Ink,
    nth_root,
    pieces_disjoint,
    region_plot_rows,
    renorm_down,
    transitivity,
    verify_conjugacy,
)
from ibeta.sampling import random_in


@pytest.fixture(scope="module")
def cube_root_golden():
    return make_beta([-1, 0, 0, -1, 0, 0, 1])


def test_sqrt_golden_interval(sqrt_golden):
    d = interval_Ink(2, 1, sqrt_golden)
    assert d.hi == 2 - sqrt_golden.gen**2
    assert Fraction(346014, 10**6) < d.lo < Fraction(346015, 10**6)
    assert not d.experimental and not d.singleton


def test_root_two_singleton():
    r2 = make_beta([-2, 0, 1])
    d = interval_Ink(2, 1, r2)
    assert d.singleton
    assert d.lo == 1 / (2 + r2.gen)


def test_interval_argument_checks(golden, sqrt_golden):
    with pytest.raises(NotCoprime):
        interval_Ink(4, 2, sqrt_golden)
    with pytest.raises(BetaOutOfRange):
        interval_Ink(2, 1, golden)


def test_rational_endpoints_match_field_ones(sqrt_golden):
    # same formula evaluated on a rational slope
    lo, hi = endpoints(Fraction(5, 4), 2, 1)
    assert lo < hi
    assert [r[:2] for r in region_plot_rows(3, 4)] == [(2, 1), (3, 1), (3, 2)]


def test_combinatorics_rotation():
    s, V, r, h = combinatorics(5, 2)
    assert s == 1
    assert len(V) == len(r) == len(h)


def test_transitivity_verdicts(golden, sqrt_golden):
    assert transitivity(SystemParams(golden, 1 - golden.gen / 2)) == Transitive()
    v = transitivity(SystemParams(sqrt_golden, Fraction(9, 25)))
    assert isinstance(v, NonTransitive) and (v.region.n, v.region.k) == (2, 1)
    assert isinstance(transitivity(SystemParams(sqrt_golden, 2 - sqrt_golden.gen**2)), NonTransitive)
    assert transitivity(SystemParams(sqrt_golden, Fraction(1, 10))).transitive
    assert list(admissible_pairs(golden)) == []


def test_experimental_region(cube_root_golden):
    d = interval_Ink(3, 2, cube_root_golden)
    assert d.experimental
    params = SystemParams(cube_root_golden, (d.lo + d.hi) / 2)
    with pytest.raises(ExperimentalRegionHit) as info:
        transitivity(params)
    assert info.value.result.region.k == 2
    v = transitivity(params, allow_experimental=True)
    assert v.experimental and not v.transitive
    with pytest.raises(ExperimentalRegionHit):
        renorm_down(params, 3, 2)


def test_embed_descend(golden):
    x = golden.element([3, -2], 7)
    root = nth_root(golden, 2)
    y = embed(x, root, 2)
    assert descend(y, golden, 2) == x
    assert y == 3 * root.rational(Fraction(1, 7)) - 2 * root.gen**2 / 7
    assert descend(root.gen, golden, 2) is None


def test_round_trip(golden):
    rng = random.Random(5)
    root = nth_root(golden, 2)
    for _ in range(10):
        alpha = random_in(rng, golden, golden.zero, 2 - golden.gen)
        a = alpha_nk(golden, alpha, 2, 1)
        back = renorm_down(SystemParams(root, a), 2, 1)
        assert back == embed(alpha, root, 2)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (5, 3)])
def test_alpha_nk_maps_onto_interval(golden, n, k):
    d = interval_Ink(n, k, nth_root(golden, n))
    ends = {alpha_nk(golden, golden.zero, n, k), alpha_nk(golden, 2 - golden.gen, n, k)}
    assert ends == {d.lo, d.hi}


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 3)])
def test_conjugacy_for_small_rotations(golden, n, k):
    assert verify_conjugacy(golden, (2 - golden.gen) / 3, n, k, sample_count=8)


def test_other_exponent_breaks_conjugacy(golden):
    assert not verify_conjugacy(golden, (2 - golden.gen) / 3, 3, 2, sample_count=8, exponent=3)


def test_cyclic_pieces(sqrt_golden):
    params = SystemParams(sqrt_golden, Fraction(9, 25))
    pieces = cyclic_pieces(params, 2)
    assert len(pieces) == 2
    assert pieces_disjoint(params, 2)
