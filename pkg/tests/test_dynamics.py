from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ibeta.algebraic import make_beta
from ibeta.dynamics import (
    CapExceeded,
    EventuallyPeriodic,
    Side,
    SystemParams,
    expand,
    orbit,
    preper_test,
    project,
    rho_vector,
    step,
    verify_rho_identity,
)
from ibeta.errors import IndexOutOfRange, OutOfDomain
from ibeta.sampling import random_in


def test_domain_checks(golden):
    g = golden.gen
    SystemParams(golden, 2 - g)
    with pytest.raises(OutOfDomain):
        SystemParams(golden, 3 - g)
    with pytest.raises(OutOfDomain):
        SystemParams(golden, -1)
    params = SystemParams(golden, golden.zero)
    with pytest.raises(OutOfDomain):
        step(params, "plus", golden.rational(2))


def test_discontinuity(golden):
    params = SystemParams(golden, golden.zero)
    assert params.p == 1 / golden.gen
    # plus takes the upper branch at p, minus the lower one
    assert step(params, "plus", params.p) == (1, golden.zero)
    assert step(params, "minus", params.p) == (0, golden.one)


def test_greedy_golden_expansions(golden):
    params = SystemParams(golden, golden.zero)
    assert "".join(map(str, expand(params, "plus", 1, 5))) == "11000"
    assert "".join(map(str, expand(params, "minus", 1, 4))) == "1010"
    lazy = SystemParams(golden, 2 - golden.gen)
    x = 1 - lazy.alpha / (golden.gen - 1)
    assert "".join(map(str, expand(lazy, "minus", x, 4))) == "0111"


def test_orbit_of_one(golden):
    rec = orbit(SystemParams(golden, golden.zero), Side.PLUS, golden.one)
    assert rec.status == EventuallyPeriodic(2, 1)
    assert str(rec.word()) == "11(0)"


def test_three_cycle(golden):
    # (beta2, 1 - beta2/2): p -> 0 -> alpha -> p
    params = SystemParams(golden, 1 - golden.gen / 2)
    rec = orbit(params, "plus", params.p)
    assert rec.status == EventuallyPeriodic(0, 3)
    assert rec.state(1) == 0 and rec.state(2) == params.alpha and rec.state(3) == params.p


def test_cap_exceeded_outside_pisot():
    root2 = make_beta([-2, 0, 1])
    params = SystemParams(root2, Fraction(1, 3))
    rec = orbit(params, "plus", Fraction(1, 7), 10)
    assert rec.status == CapExceeded(10)
    assert not rec.periodic
    res = preper_test(params, Fraction(1, 7), cap=10)
    assert res.status == CapExceeded(10)


def test_preper_test_golden(golden):
    params = SystemParams(golden, (2 - golden.gen) / 3)
    res = preper_test(params, Fraction(1, 2))
    assert res.status == EventuallyPeriodic(0, 24)
    assert res.bound_trace == 6


def test_rho_vector(golden):
    params = SystemParams(golden, golden.zero)
    rec = orbit(params, "plus", golden.one)
    r = rho_vector(rec, 1)
    assert r.r == (1, 0) and r.shared_den == 1
    with pytest.raises(IndexOutOfRange):
        rho_vector(rec, 50)


@pytest.mark.parametrize("n", range(8))
def test_rho_identity(golden, n):
    params = SystemParams(golden, (2 - golden.gen) / 3)
    assert verify_rho_identity(params, Fraction(1, 2), n)


def test_project_inverts_orbit(tribonacci, rng):
    b = tribonacci.gen
    for _ in range(10):
        params = SystemParams(tribonacci, random_in(rng, tribonacci, tribonacci.zero, 2 - b, 12))
        x = random_in(rng, tribonacci, tribonacci.zero, tribonacci.one, 12)
        for side in Side:
            rec = orbit(params, side, x)
            assert project(params, rec.word()) == x


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40), st.integers(1, 40), st.integers(0, 40), st.sampled_from(["plus", "minus"]))
def test_orbit_stays_in_unit_interval(a_num, a_den, x_num, side):
    beta = make_beta([-1, -1, 1])
    top = 2 - beta.gen
    alpha = top * Fraction(min(a_num, a_den), a_den)
    params = SystemParams(beta, alpha)
    x = beta.rational(Fraction(x_num, 40))
    rec = orbit(params, side, x)
    assert rec.periodic
    for y in rec.states:
        assert 0 <= y <= 1
