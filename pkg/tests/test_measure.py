from fractions import Fraction

import pytest

from ibeta.algebraic import make_beta
from ibeta.dynamics import SystemParams
from ibeta.measure import (
    check_invariance,
    parry_density,
    preimage,
    support_components,
    support_pieces,
)


def test_golden_greedy_closed_form(golden):
    g = golden.gen
    dens = parry_density(SystemParams(golden, golden.zero), 10)
    assert dens.exact
    assert dens.breakpoints == [0, 1 / g, 1]
    assert dens.values == [1 + 1 / g, golden.one]
    assert dens.total_mass() == (1 + 1 / g) / g + (1 - 1 / g)


def test_truncated_density_has_tail(golden):
    dens = parry_density(SystemParams(golden, golden.rational(Fraction(1, 5))), 20)
    assert not dens.exact
    assert Fraction(1, 10**4) < dens.tail_bound < Fraction(11, 10**5)
    lo, hi = dens.value_interval(0)
    assert hi - lo >= 2 * dens.tail_bound


def test_invariance_exact(golden):
    assert check_invariance(SystemParams(golden, golden.zero), 10, 7) == 0
    assert check_invariance(SystemParams(golden, (2 - golden.gen) / 3), 40, 5) == 0


def test_invariance_truncated(golden):
    params = SystemParams(golden, golden.rational(Fraction(1, 5)))
    dens = parry_density(params, 20)
    assert check_invariance(params, 20, 6) <= 2 * dens.tail_bound


def test_preimage_is_exact(golden):
    params = SystemParams(golden, golden.rational(Fraction(1, 7)))
    lo, hi = golden.rational(Fraction(1, 3)), golden.rational(Fraction(1, 2))
    pieces = preimage(params, lo, hi)
    assert pieces
    for u, v in pieces:
        assert u < v


def test_support_of_renormalisable_map(sqrt_golden):
    params = SystemParams(sqrt_golden, Fraction(9, 25))
    comps = support_components(params)
    assert len(comps) == 3
    assert comps[0][0] == 0 and comps[-1][1] == 1
    assert len(support_pieces(params)) == 2
    # the truncated density is already exactly 0 off the support
    dens = parry_density(params, 60)
    for j, v in enumerate(dens.values):
        lo, hi = dens.breakpoints[j], dens.breakpoints[j + 1]
        inside = any(a <= lo and hi <= b for a, b in comps)
        assert (v.sign() > 0) == inside
    assert dens.support() == comps


def test_support_singleton_parameter():
    r2 = make_beta([-2, 0, 1])
    params = SystemParams(r2, 1 / (2 + r2.gen))
    assert support_components(params) == [(r2.zero, r2.one)]


def test_order_must_be_positive(golden):
    with pytest.raises(ValueError):
        parry_density(SystemParams(golden, golden.zero), 0)
