from fractions import Fraction

import pytest

from ibeta.dynamics import SystemParams
from ibeta.errors import NotSoficInput
from ibeta.kneading import (
    KneadingPair,
    ShiftTag,
    admissible,
    classify_shift,
    entropy,
    full_shift_pair,
    kneading_pair,
    language,
    spectral_radius,
    subshift_graph,
)
from ibeta.words import EventuallyPeriodicWord, Truncated

W = EventuallyPeriodicWord.parse


def test_symmetric_golden_is_sft(golden):
    pair = kneading_pair(SystemParams(golden, 1 - golden.gen / 2))
    assert (str(pair.upper), str(pair.lower)) == ("(100)", "(011)")
    assert classify_shift(pair).tag is ShiftTag.SFT


def test_sqrt_golden_is_sofic(sqrt_golden):
    pair = kneading_pair(SystemParams(sqrt_golden, 2 - sqrt_golden.gen**2))
    assert (str(pair.upper), str(pair.lower)) == ("(1001)", "01(10)")
    assert classify_shift(pair).tag is ShiftTag.SOFIC_NOT_SFT


def test_truncated_pair_is_unknown():
    pair = KneadingPair(Truncated((1, 0, 1)), W("(01)"))
    cls = classify_shift(pair)
    assert cls.tag is ShiftTag.UNKNOWN and cls.cap == 3
    with pytest.raises(NotSoficInput):
        admissible(W("(0)"), pair)


def test_admissibility_sides(golden):
    pair = kneading_pair(SystemParams(golden, golden.zero))
    # the kneading words themselves sit on the boundary
    assert admissible(pair.upper, pair, "plus")
    assert admissible(pair.lower, pair, "minus")
    assert (str(pair.upper), str(pair.lower)) == ("1(0)", "(01)")
    # (10) has the suffix (01) equal to the lower word: only minus allows it
    assert not admissible(W("(10)"), pair, "plus")
    assert admissible(W("(10)"), pair, "minus")
    assert not admissible(pair.upper, pair, "minus")
    assert not admissible(W("(110)"), pair, "minus")
    # the right fixed point is coded by (1)
    assert admissible(W("(1)"), pair, "plus")
    assert not admissible((0, 1, 1), pair)
    assert admissible((1, 0, 0), pair)


def test_full_shift():
    pair = full_shift_pair()
    graph = subshift_graph(pair)
    assert graph.adjacency == [[2]]
    assert language(pair, 6) == graph.labels(6)
    lo, hi = entropy(graph)
    assert lo <= Fraction(693147180559946, 10**15) and Fraction(693147180559945, 10**15) <= hi
    assert hi - lo < Fraction(1, 10**12)


@pytest.mark.parametrize("which", ["sft", "sofic"])
def test_graph_language_matches_bruteforce(which, golden, sqrt_golden):
    if which == "sft":
        params = SystemParams(golden, 1 - golden.gen / 2)
    else:
        params = SystemParams(sqrt_golden, 2 - sqrt_golden.gen**2)
    pair = kneading_pair(params)
    graph = subshift_graph(pair)
    for n in range(1, 9):
        assert language(pair, n) == graph.labels(n)


def test_spectral_radius_brackets_beta(golden, sqrt_golden):
    for beta, alpha in ((golden, 1 - golden.gen / 2), (sqrt_golden, 2 - sqrt_golden.gen**2)):
        lo, hi = spectral_radius(subshift_graph(kneading_pair(SystemParams(beta, alpha))))
        assert hi - lo < Fraction(1, 10**12)
        blo, bhi = beta.isolate
        assert lo - Fraction(1, 10**12) <= bhi and blo <= hi + Fraction(1, 10**12)
