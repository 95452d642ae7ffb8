"""Uniform Lorenz maps and the search for nearby finite-type parameters.

``U+`` and ``U-`` act on [0, 1] by ``x -> beta*x`` below ``q`` and
``x -> beta*x + 1 - beta`` above it, taking the upper branch at ``q`` for
``U+`` and the lower one for ``U-``. The affine map
``h(x) = (beta - 1)*x + alpha`` conjugates ``T+-`` on its full interval to
``U+-`` with ``q = 1 + (alpha - 1)/beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .algebraic import AlgebraicNumber, FieldElement
from .dynamics import DEFAULT_CAP, Side, SystemParams, orbit
from .errors import NotFound, OutOfDomain
from .kneading import ShiftTag, classify_shift, kneading_pair
from .polynomial import multinacci_poly
from .words import EventuallyPeriodicWord, Truncated, Word

DEFAULT_PERIOD_CAP = 64
DEFAULT_PREFIX_LEN = 48


@dataclass(frozen=True)
class LorenzParams:
    beta: AlgebraicNumber
    q: FieldElement
    left: FieldElement = field(init=False, compare=False)
    right: FieldElement = field(init=False, compare=False)

    def __post_init__(self):
        if isinstance(self.q, (int, Fraction)):
            object.__setattr__(self, "q", self.beta.rational(self.q))
        b = self.beta.gen
        object.__setattr__(self, "left", 1 - 1 / b)
        object.__setattr__(self, "right", 1 / b)
        if not self.left <= self.q <= self.right:
            raise OutOfDomain("q must satisfy 1 - 1/beta <= q <= 1/beta")

    @property
    def branch_constants(self):
        b = self.beta.gen
        return self.beta.zero, 1 - b, b * self.q

    def contains(self, x: FieldElement) -> bool:
        return x.sign() >= 0 and x <= 1

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        return self.beta.rational(value)


def to_lorenz(params: SystemParams) -> LorenzParams:
    return LorenzParams(params.beta, 1 + (params.alpha - 1) / params.beta.gen)


def from_lorenz(lp: LorenzParams) -> SystemParams:
    return SystemParams(lp.beta, lp.beta.gen * (lp.q - 1) + 1)


def conjugacy(params: SystemParams, x: FieldElement) -> FieldElement:
    """``h(x) = (beta - 1)(x + alpha/(beta - 1))``."""
    return (params.beta.gen - 1) * x + params.alpha


def lorenz_step(lp: LorenzParams, side, x: FieldElement) -> FieldElement:
    b = lp.beta.gen
    x = lp.element(x)
    if not lp.contains(x):
        raise OutOfDomain(f"{x} lies outside [0, 1]")
    s = (x - lp.q).sign()
    if s < 0 or (s == 0 and Side.of(side) is Side.MINUS):
        return b * x
    return b * x + 1 - b


def lorenz_kneading(lp: LorenzParams, side, cap: int = DEFAULT_CAP) -> Word:
    """Expansion of ``q`` under ``U+`` or ``U-``."""
    rec = orbit(lp, side, lp.q, cap)
    if rec.periodic:
        return rec.word()
    return Truncated(tuple(rec.digits))


def lorenz_expand(lp: LorenzParams, side, x, cap: int = DEFAULT_CAP) -> Word:
    rec = orbit(lp, side, lp.element(x), cap)
    if rec.periodic:
        return rec.word()
    return Truncated(tuple(rec.digits))


def periodic_point(beta: AlgebraicNumber, block) -> FieldElement:
    """Fixed point of ``S_{b_j} o ... o S_{b_1}`` with ``S_0 = beta*x`` and ``S_1 = beta*x + 1 - beta``."""
    b = beta.gen
    j = len(block)
    c = beta.zero
    for digit in block:
        c = b * c + (1 - b) * digit
    return c / (1 - b**j)


def _candidates(lp: LorenzParams, side: Side, eps: Fraction, period_cap: int, prefix_len: int, cap: int):
    """Verified periodic parameters on the requested side of ``q`` within ``eps``, shortest block first."""
    rec = orbit(lp, side, lp.q, max(prefix_len, period_cap))
    prefix = tuple(rec.digits)
    if len(prefix) < period_cap:
        # orbit closed early: unroll the word to the needed length
        word = rec.word()
        prefix = word.prefix(max(prefix_len, period_cap))
    below = side is Side.MINUS
    for j in range(1, period_cap + 1):
        block = prefix[:j]
        x = periodic_point(lp.beta, block)
        if below:
            if not (x < lp.q and lp.q - x < eps):
                continue
        elif not (x > lp.q and x - lp.q < eps):
            continue
        if not (lp.left < x < lp.right):
            continue
        cand = LorenzParams(lp.beta, x)
        word = lorenz_kneading(cand, side, cap)
        if isinstance(word, EventuallyPeriodicWord) and word == EventuallyPeriodicWord((), block):
            yield cand


def search_periodic_parameter(
    lp: LorenzParams,
    side,
    epsilon,
    period_cap: int = DEFAULT_PERIOD_CAP,
    prefix_len: int = DEFAULT_PREFIX_LEN,
    cap: int = DEFAULT_CAP,
) -> LorenzParams:
    """Nearest-by-period parameter with purely periodic kneading word.

    Closes the observed kneading prefix of ``q`` at each length up to
    ``period_cap``, solves exactly for the parameter coded by that block and
    accepts the first whose own kneading word is the repeated block. The
    minus side approaches ``q`` from below and the plus side from above.
    """
    side = Side.of(side)
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if not (lp.left < lp.q < lp.right):
        raise OutOfDomain("q must lie strictly inside (1 - 1/beta, 1/beta)")
    own = lorenz_kneading(lp, side, cap)
    if isinstance(own, EventuallyPeriodicWord) and own.is_periodic:
        return lp
    for cand in _candidates(lp, side, eps, period_cap, prefix_len, cap):
        return cand
    raise NotFound(f"no periodic parameter within {eps} using blocks up to length {period_cap}")


def multinacci_order(beta: AlgebraicNumber) -> int | None:
    """``m`` when beta is the multinacci number of order ``m``."""
    m = beta.degree
    if m >= 2 and list(beta.coeffs) == multinacci_poly(m):
        return m
    return None


def _is_sft(params: SystemParams, cap: int) -> bool:
    return classify_shift(kneading_pair(params, cap)).tag is ShiftTag.SFT


def search_sft_alpha(
    beta: AlgebraicNumber,
    alpha,
    epsilon,
    period_cap: int = DEFAULT_PERIOD_CAP,
    prefix_len: int = DEFAULT_PREFIX_LEN,
    cap: int = DEFAULT_CAP,
) -> FieldElement:
    """An ``alpha'`` within ``epsilon`` of ``alpha`` whose shift is of finite type.

    For multinacci beta one periodic kneading invariant forces the other,
    so the Lorenz search on one side suffices; each candidate is still
    re-classified exactly before it is returned.
    """
    if multinacci_order(beta) is None:
        raise OutOfDomain("search_sft_alpha needs a multinacci beta")
    params = SystemParams(beta, alpha)
    b = beta.gen
    if params.alpha.sign() <= 0 or params.alpha >= 2 - b:
        raise OutOfDomain("alpha must lie strictly inside (0, 2 - beta)")
    if _is_sft(params, cap):
        return params.alpha
    eps = Fraction(epsilon)
    # alpha = beta*(q - 1) + 1, so |d alpha| = beta |d q| < 2 |d q|
    eps_q = eps / 2
    lp = to_lorenz(params)
    for side in (Side.MINUS, Side.PLUS):
        for cand in _candidates(lp, side, eps_q, period_cap, prefix_len, cap):
            out = from_lorenz(cand)
            if out.alpha.sign() > 0 and out.alpha < 2 - b and _is_sft(out, cap):
                return out.alpha
    raise NotFound(f"no finite-type alpha within {eps} (period cap {period_cap})")


def candidate_stream(lp: LorenzParams, side, epsilon, period_cap=DEFAULT_PERIOD_CAP,
                     prefix_len=DEFAULT_PREFIX_LEN, cap=DEFAULT_CAP) -> Iterator[LorenzParams]:
    """All verified candidates, in the order the search would try them."""
    return _candidates(lp, Side.of(side), Fraction(epsilon), period_cap, prefix_len, cap)
