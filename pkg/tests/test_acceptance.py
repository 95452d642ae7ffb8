"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Random draws use ``ibeta.sampling.random_in`` with fixed seeds, so every run
sees the same parameters.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

from ibeta.algebraic import make_beta
from ibeta.dynamics import Side, SystemParams, expand, orbit, preper_test, project, step
from ibeta.errors import PisotGuaranteeViolated
from ibeta.kneading import (
    ShiftTag,
    admissible,
    classify_shift,
    kneading_pair,
    language,
    spectral_radius,
    subshift_graph,
)
from ibeta.lorenz import search_sft_alpha
from ibeta.measure import check_invariance, parry_density
from ibeta.polynomial import multinacci_poly
from ibeta.regions import (
    alpha_nk,
    embed,
    interval_Ink,
    nth_root,
    renorm_down,
    transitivity,
    Transitive,
    verify_conjugacy,
)
from ibeta.sampling import random_in

UNIVOQUE_14 = [1, -1, 0, 1, -1, 0, 1, -1, 0, 0, -1, 1, 0, -2, 1]


@contextmanager
def criterion(number, title, limit):
    """Print one verdict line; fail on a wrong answer or on a runtime over ``limit`` seconds."""
    start = time.perf_counter()
    notes = {}
    try:
        yield notes
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        print(f"criterion {number} FAIL  {title} ({elapsed:.1f} s) {notes or ''} :: {exc}")
        raise
    elapsed = time.perf_counter() - start
    verdict = "PASS" if elapsed < limit else "FAIL"
    print(f"criterion {number} {verdict}  {title} ({elapsed:.1f} s, limit {limit} s) {notes or ''}")
    assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"


def multinacci(m):
    return make_beta(multinacci_poly(m))


def test_criterion_1_golden_expansions():
    with criterion(1, "greedy/symmetric/lazy golden and univoque expansions", 5):
        b2 = multinacci(2)
        g = b2.gen
        cases = [(b2.zero, Side.PLUS, "11(0)"), (1 - g / 2, Side.PLUS, "(10)"), (2 - g, Side.MINUS, "0(1)")]
        for alpha, side, expected in cases:
            params = SystemParams(b2, alpha)
            x = 1 - alpha / (g - 1)
            assert str(orbit(params, side, x).word()) == expected

        beta = make_beta(UNIVOQUE_14)
        top = 2 - beta.gen
        for alpha in (beta.zero, top / 4, top / 2, 3 * top / 4, top):
            params = SystemParams(beta, alpha)
            x = 1 - alpha / (beta.gen - 1)
            for side in Side:
                assert str(orbit(params, side, x).word()) == "111001011(1001010)"


def test_criterion_2_sqrt_golden_kneading():
    with criterion(2, "kneading pair and class at (sqrt beta2, 2 - beta2)", 1):
        beta = make_beta([-1, 0, -1, 0, 1])
        pair = kneading_pair(SystemParams(beta, 2 - beta.gen**2))
        assert str(pair.upper) == "(1001)"
        assert str(pair.lower) == "01(10)"
        assert classify_shift(pair).tag is ShiftTag.SOFIC_NOT_SFT


def test_criterion_3_multinacci_prefixes():
    with criterion(3, "multinacci kneading prefixes and orbit meeting", 30) as notes:
        rng = random.Random(3)
        checked = 0
        for m in range(2, 7):
            beta = multinacci(m)
            b = beta.gen
            for _ in range(25):
                alpha = random_in(rng, beta, beta.zero, 2 - b, open_interval=True)
                params = SystemParams(beta, alpha)
                assert expand(params, Side.PLUS, params.p, m + 1) == (1,) + (0,) * m
                assert expand(params, Side.MINUS, params.p, m + 1) == (0,) + (1,) * m
                target = alpha * b**m
                for side in Side:
                    x = params.p
                    for _ in range(m + 1):
                        _, x = step(params, side, x)
                    assert x == target
                checked += 1
        notes["pairs"] = checked


def test_criterion_4_pisot_orbits_close():
    with criterion(4, "eventual periodicity over beta2, beta3, beta4 (cap 10^6)", 120) as notes:
        cap = 10**6
        failures = {}
        for m in (2, 3, 4):
            rng = random.Random(0)
            beta = multinacci(m)
            bad = 0
            for _ in range(100):
                alpha = random_in(rng, beta, beta.zero, 2 - beta.gen)
                params = SystemParams(beta, alpha)
                x = random_in(rng, beta, params.left, params.right)
                try:
                    res = preper_test(params, x, cap)
                except PisotGuaranteeViolated:
                    bad += 1
                    continue
                assert res.periodic
            failures[f"beta{m}"] = bad
        notes["cap_exhausted"] = failures
        assert sum(failures.values()) == 0, f"PisotGuaranteeViolated events: {failures}"


def test_criterion_5_sft_search_grid():
    with criterion(5, "finite-type search on a 50-point alpha grid for beta2", 300) as notes:
        beta = multinacci(2)
        top = 2 - beta.gen
        eps = Fraction(1, 10**4)
        moved = 0
        for i in range(1, 51):
            alpha = top * Fraction(i, 51)
            found = search_sft_alpha(beta, alpha, eps)
            assert abs(found - alpha) < eps
            moved += found != alpha
            pair = kneading_pair(SystemParams(beta, found))
            # both invariants eventually periodic, both shifted invariants purely periodic
            assert pair.exact
            assert pair.upper.shift().is_periodic and pair.lower.shift().is_periodic
            assert classify_shift(pair).tag is ShiftTag.SFT
        notes["moved"] = moved


def test_criterion_6_commutation_and_admissibility():
    with criterion(6, "projection/shift commutation and admissibility closure", 120):
        rng = random.Random(6)
        bases = [multinacci(2), multinacci(3)]
        for i in range(200):
            beta = bases[i % 2]
            alpha = random_in(rng, beta, beta.zero, 2 - beta.gen, 20)
            params = SystemParams(beta, alpha)
            x = random_in(rng, beta, params.left, params.right, 20)
            side = Side.PLUS if i % 4 < 2 else Side.MINUS
            n = rng.randint(0, 50)
            word = orbit(params, side, x).word()
            y = x
            for _ in range(n):
                _, y = step(params, side, y)
            assert project(params, word.shift(n)) == y
            pair = kneading_pair(params)
            assert admissible(word, pair, side)
        b2 = multinacci(2)
        pair = kneading_pair(SystemParams(b2, 1 - b2.gen / 2))
        assert classify_shift(pair).tag is ShiftTag.SFT
        assert language(pair, 8) == subshift_graph(pair).labels(8)


def test_criterion_7_region_identities():
    with criterion(7, "region endpoints, transitivity, renormalisation", 60):
        b2 = multinacci(2)
        sq = nth_root(b2, 2)
        assert interval_Ink(2, 1, sq).hi == 2 - sq.gen**2
        r2 = make_beta([-2, 0, 1])
        d = interval_Ink(2, 1, r2)
        assert d.singleton and d.lo == 1 / (2 + r2.gen)
        assert transitivity(SystemParams(b2, 1 - b2.gen / 2)) == Transitive()
        rng = random.Random(7)
        for _ in range(20):
            alpha = random_in(rng, b2, b2.zero, 2 - b2.gen)
            a = alpha_nk(b2, alpha, 2, 1)
            assert renorm_down(SystemParams(sq, a), 2, 1) == embed(alpha, sq, 2)
        assert verify_conjugacy(b2, (2 - b2.gen) / 3, 2, 1, sample_count=20)


def test_criterion_8_parry_density():
    with criterion(8, "Parry density closed form, sign and invariance", 120) as notes:
        b2 = multinacci(2)
        g = b2.gen
        dens = parry_density(SystemParams(b2, b2.zero), 30)
        assert dens.exact
        assert dens.breakpoints == [0, 1 / g, 1]
        assert dens.values == [1 + 1 / g, b2.one]

        rng = random.Random(8)
        bases = [b2, multinacci(3), make_beta([-1, 0, -1, 0, 1])]
        exact = 0
        for i in range(50):
            beta = bases[i % 3]
            params = SystemParams(beta, random_in(rng, beta, beta.zero, 2 - beta.gen))
            N = 40
            dens = parry_density(params, N)
            for j, v in enumerate(dens.values):
                if dens.exact:
                    assert v.sign() >= 0
                else:
                    assert dens.value_interval(j)[1] >= 0
            gap = check_invariance(params, N, 8)
            if dens.exact:
                exact += 1
                assert gap == 0
            else:
                assert gap <= 2 * dens.tail_bound
        notes["exact_cases"] = exact


def test_criterion_9_entropy_matches_slope():
    with criterion(9, "spectral radius of the shift graph equals beta", 30):
        tol = Fraction(1, 10**9)
        b2 = multinacci(2)
        sq = make_beta([-1, 0, -1, 0, 1])
        for beta, alpha in ((b2, 1 - b2.gen / 2), (sq, 2 - sq.gen**2)):
            lo, hi = spectral_radius(subshift_graph(kneading_pair(SystemParams(beta, alpha))))
            blo, bhi = beta.value_interval(64)
            assert blo - tol < lo and hi < bhi + tol
            assert hi - lo < tol
