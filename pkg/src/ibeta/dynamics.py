"""Exact iteration of the intermediate beta-transformations.

For ``(beta, alpha)`` with ``0 <= alpha <= 2 - beta`` and ``p = (1 - alpha) / beta``
the maps ``T+`` and ``T-`` send ``x`` to ``beta*x + alpha`` below ``p`` and to
``beta*x + alpha - 1`` above it; they differ only at ``p`` itself, where
``T+`` takes the upper branch and ``T-`` the lower one.

Orbits are run on integer vectors: with ``D`` a common denominator of the
start point and the map constants, ``D * T^n(x)`` stays in Z[beta], so a
state is a tuple of ints and exact repeat detection is a dict lookup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .algebraic import AlgebraicNumber, FieldElement, Tag, classify, reduce_int
from .errors import IndexOutOfRange, OutOfDomain, PisotGuaranteeViolated
from .words import EventuallyPeriodicWord, word_from_digits

DEFAULT_CAP = 10**6
_FAST_BITS = 64


class Side(str, Enum):
    PLUS = "plus"
    MINUS = "minus"

    @classmethod
    def of(cls, value) -> "Side":
        if isinstance(value, Side):
            return value
        return {"+": cls.PLUS, "plus": cls.PLUS, "-": cls.MINUS, "minus": cls.MINUS}[
            str(value).lower()
        ]


@dataclass(frozen=True)
class SystemParams:
    """Parameters ``(beta, alpha)`` of ``T+-`` with derived ``p`` and the domain ends."""

    beta: AlgebraicNumber
    alpha: FieldElement
    p: FieldElement = field(init=False, compare=False)
    left: FieldElement = field(init=False, compare=False)
    right: FieldElement = field(init=False, compare=False)

    def __post_init__(self):
        beta, alpha = self.beta, self.alpha
        if isinstance(alpha, (int, Fraction)):
            alpha = beta.rational(alpha)
            object.__setattr__(self, "alpha", alpha)
        if alpha.beta != beta:
            raise ValueError("alpha must lie in Q(beta)")
        b = beta.gen
        if alpha.sign() < 0 or alpha > 2 - b:
            raise OutOfDomain("alpha must satisfy 0 <= alpha <= 2 - beta")
        object.__setattr__(self, "p", (1 - alpha) / b)
        object.__setattr__(self, "left", -alpha / (b - 1))
        object.__setattr__(self, "right", (1 - alpha) / (b - 1))

    # the map written as two affine branches: y -> beta*y + c0 (digit 0) or
    # beta*y + c1 (digit 1), with digit 0 iff beta*y + c0 lies below `cut`.
    @property
    def branch_constants(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return self.alpha, self.alpha - 1, self.beta.one

    def contains(self, x: FieldElement) -> bool:
        return self.left <= x <= self.right

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        return self.beta.rational(value)


@dataclass(frozen=True)
class EventuallyPeriodic:
    preperiod: int
    period: int


@dataclass(frozen=True)
class CapExceeded:
    cap: int


@dataclass
class OrbitRecord:
    """Exact forward orbit; ``vectors[i]`` is ``denom * states[i]`` over the power basis."""

    params: object
    side: Side
    start: FieldElement
    denom: int
    vectors: list
    digits: list
    status: EventuallyPeriodic | CapExceeded
    _states: list | None = field(default=None, repr=False)

    @property
    def states(self) -> list[FieldElement]:
        if self._states is None:
            beta = self.start.beta
            self._states = [FieldElement(beta, v, self.denom) for v in self.vectors]
        return self._states

    def state(self, i: int) -> FieldElement:
        if self._states is not None:
            return self._states[i]
        return FieldElement(self.start.beta, self.vectors[i], self.denom)

    @property
    def periodic(self) -> bool:
        return isinstance(self.status, EventuallyPeriodic)

    def word(self) -> EventuallyPeriodicWord:
        if not self.periodic:
            raise ValueError("orbit did not close")
        return word_from_digits(self.digits, self.status.preperiod, self.status.period)


def _lcm_den(*elements: FieldElement) -> int:
    out = 1
    for e in elements:
        out = out * e.den // gcd(out, e.den)
    return out


def _scaled(x: FieldElement, D: int) -> tuple[int, ...]:
    f = D // x.den
    return tuple(c * f for c in x.num)


class _Engine:
    """Integer-vector iteration of a two-branch affine map with slope beta."""

    def __init__(self, params, side: Side, start: FieldElement):
        c0, c1, cut = params.branch_constants
        beta = start.beta
        self.beta = beta
        self.side = Side.of(side)
        D = _lcm_den(start, c0, c1, cut)
        self.D = D
        self.c0 = _scaled(c0, D)
        self.jump = _scaled(c0 - c1, D)
        self.cut = _scaled(cut, D)
        self.y0 = _scaled(start, D)
        self.neg_coeffs = tuple(-a for a in beta.coeffs[:-1])

    def run(self, cap: int, detect: bool = True, record: bool = True):
        """Iterate up to ``cap`` times; stop at the first exact repeat when ``detect``."""
        beta = self.beta
        d = beta.degree
        neg = self.neg_coeffs
        c0, jump, cut = self.c0, self.jump, self.cut
        lo_t, hi_t = beta.table(_FAST_BITS)
        strict = self.side is Side.PLUS
        y = self.y0
        seen = {y: 0} if detect else None
        vectors = [y] if record else None
        digits = []
        for n in range(1, cap + 1):
            top = y[d - 1]
            if d == 1:
                z = [neg[0] * top + c0[0]]
            else:
                z = [neg[0] * top + c0[0]]
                for i in range(1, d):
                    z.append(y[i - 1] + neg[i] * top + c0[i])
            low = high = 0
            for i in range(d):
                c = z[i] - cut[i]
                if c > 0:
                    low += c * lo_t[i]
                    high += c * hi_t[i]
                elif c < 0:
                    low += c * hi_t[i]
                    high += c * lo_t[i]
            if low > 0:
                s = 1
            elif high < 0:
                s = -1
            else:
                s = beta.sign([z[i] - cut[i] for i in range(d)])
            if s < 0 or (s == 0 and not strict):
                digits.append(0)
                y = tuple(z)
            else:
                digits.append(1)
                y = tuple(z[i] - jump[i] for i in range(d))
            if record:
                vectors.append(y)
            if detect:
                prev = seen.get(y)
                if prev is not None:
                    return vectors, digits, EventuallyPeriodic(prev, n - prev)
                seen[y] = n
        return vectors, digits, CapExceeded(cap)


def _check_domain(params, x: FieldElement) -> None:
    if not params.contains(x):
        raise OutOfDomain(f"{x} lies outside the domain of the map")


def step(params: SystemParams, side, x) -> tuple[int, FieldElement]:
    """One application of ``T+`` or ``T-``: returns ``(digit, image)``."""
    x = params.element(x)
    _check_domain(params, x)
    c0, c1, cut = params.branch_constants
    z = params.beta.gen * x + c0
    s = (z - cut).sign()
    if s < 0 or (s == 0 and Side.of(side) is Side.MINUS):
        return 0, z
    return 1, z - c0 + c1


def orbit(params, side, x, cap: int = DEFAULT_CAP) -> OrbitRecord:
    """Forward orbit of ``x`` until the first exact repeat or ``cap`` steps."""
    if cap < 1:
        raise ValueError("cap must be a positive integer")
    x = params.element(x)
    _check_domain(params, x)
    side = Side.of(side)
    eng = _Engine(params, side, x)
    vectors, digits, status = eng.run(cap)
    return OrbitRecord(params, side, x, eng.D, vectors, digits, status)


def expand(params, side, x, length: int) -> tuple[int, ...]:
    """First ``length`` digits of the expansion of ``x``."""
    x = params.element(x)
    _check_domain(params, x)
    if length <= 0:
        return ()
    eng = _Engine(params, Side.of(side), x)
    _, digits, _ = eng.run(length, detect=False, record=False)
    return tuple(digits)


def project(params: SystemParams, word: EventuallyPeriodicWord) -> FieldElement:
    """The point ``alpha/(1-beta) + sum w_i beta**-i`` coded by an eventually periodic word."""
    beta = params.beta
    b = beta.gen
    inv = b.invert()
    total = params.alpha / (1 - b)
    power = beta.one
    for w in word.preperiod:
        power = power * inv
        if w:
            total = total + power
    tail = beta.zero
    pp = beta.one
    for w in word.period:
        pp = pp * inv
        if w:
            tail = tail + pp
    # pp is now beta**-n; the periodic block repeats with ratio beta**-n
    return total + power * tail / (1 - pp)


@dataclass(frozen=True)
class RhoVector:
    """Integers ``r_1..r_d`` with ``state = sum r_i beta**-i / shared_den``."""

    r: tuple[int, ...]
    shared_den: int

    def to_element(self, beta: AlgebraicNumber) -> FieldElement:
        d = beta.degree
        # beta**d * state has power-basis coefficients r_{d-j}
        power_form = [self.r[d - 1 - j] for j in range(d)]
        return FieldElement(beta, power_form, self.shared_den) / beta.gen**d

    @property
    def sup_norm(self) -> int:
        return max((abs(c) for c in self.r), default=0)


def _rho_matrix(beta: AlgebraicNumber) -> np.ndarray:
    """Integer matrix sending power-basis coordinates of ``w`` to ``(r_1..r_d)``."""
    d = beta.degree
    cols = []
    for j in range(d):
        e = [0] * (2 * d)
        e[j + d] = 1
        cols.append(reduce_int(e, beta.coeffs))
    # r_i is the coefficient of beta**(d-i) in beta**d * w
    mat = [[cols[j][d - i] for j in range(d)] for i in range(1, d + 1)]
    return np.array(mat, dtype=object)


def _rho_scale(record: OrbitRecord) -> tuple[int, int]:
    q = record.start.den
    alpha = getattr(record.params, "alpha", None)
    qhat = alpha.den if alpha is not None else 1
    shared = q * qhat
    return shared, shared // record.denom if shared % record.denom == 0 else 0


def rho_vector(record: OrbitRecord, n: int) -> RhoVector:
    """Integer coordinates of state ``n`` in the basis ``beta**-1..beta**-d``."""
    if n < 0 or n >= len(record.vectors):
        raise IndexOutOfRange(f"state {n} not recorded (have {len(record.vectors)})")
    beta = record.start.beta
    shared, factor = _rho_scale(record)
    if factor == 0:
        # the common denominator of the orbit does not divide q*qhat
        shared = record.denom
        factor = 1
    w = [c * factor for c in record.vectors[n]]
    mat = _rho_matrix(beta)
    r = tuple(int(sum(mat[i][j] * w[j] for j in range(beta.degree))) for i in range(beta.degree))
    return RhoVector(r, shared)


def rho_sup(record: OrbitRecord) -> int:
    """``max_n max_k |r_k^(n)|`` over every recorded state."""
    beta = record.start.beta
    _, factor = _rho_scale(record)
    factor = factor or 1
    mat = _rho_matrix(beta)
    vecs = record.vectors
    big = max((abs(c) for v in vecs for c in v), default=0) * factor
    mbig = max((abs(int(c)) for c in mat.flat), default=0)
    if big * mbig * beta.degree < 2**62:
        arr = np.array(vecs, dtype=np.int64) * factor
        r = arr @ mat.astype(np.int64).T
        return int(np.abs(r).max())
    arr = np.array(vecs, dtype=object) * factor
    r = arr.dot(mat.T)
    return int(max(abs(c) for c in r.flat))


def verify_rho_identity(params: SystemParams, x, n: int, side="plus") -> bool:
    """Check the integer-polynomial identity linking digits and the rho vector.

    With ``q x = sum p_i beta**i`` and ``qhat alpha = sum phat_j beta**j`` the
    polynomial

        z**(n+d) * (qhat sum p_i z**i - qhat q sum_{i<=n} w_i z**-i
                    + q (sum phat_j z**j)(sum_{i<=n} z**-i)) - sum r_i z**(d-i)

    must vanish at beta, i.e. be divisible by the defining polynomial.
    """
    x = params.element(x)
    beta = params.beta
    d = beta.degree
    rec = orbit(params, side, x, cap=max(n, 1))
    if n >= len(rec.vectors):
        # closed before n steps: unroll the cycle
        rec = _unrolled(params, side, x, n)
    digits = rec.digits[:n]
    rho = rho_vector(rec, n)
    q, qhat = x.den, params.alpha.den
    p, phat = x.num, params.alpha.num
    e = rho.shared_den // (q * qhat) if rho.shared_den % (q * qhat) == 0 else None
    if e is None:
        return False
    size = n + 2 * d + 1
    lhs = [0] * size
    for i, c in enumerate(p):
        lhs[n + d + i] += qhat * c * e
    for i, w in enumerate(digits, start=1):
        lhs[n + d - i] -= qhat * q * w * e
    for j, c in enumerate(phat):
        for i in range(1, n + 1):
            lhs[n + d + j - i] += q * c * e
    for i, r in enumerate(rho.r, start=1):
        lhs[d - i] -= r
    return not any(reduce_int(lhs, beta.coeffs))


def _unrolled(params, side, x, n) -> OrbitRecord:
    eng = _Engine(params, Side.of(side), x)
    vectors, digits, status = eng.run(n, detect=False)
    return OrbitRecord(params, Side.of(side), x, eng.D, vectors, digits, status)


@dataclass(frozen=True)
class PreperResult:
    status: EventuallyPeriodic | CapExceeded
    bound_trace: int

    @property
    def periodic(self) -> bool:
        return isinstance(self.status, EventuallyPeriodic)


_CLASS_CACHE: dict[tuple[int, ...], Tag] = {}


def _number_class(beta: AlgebraicNumber) -> Tag:
    tag = _CLASS_CACHE.get(beta.coeffs)
    if tag is None:
        tag = classify(beta).tag
        _CLASS_CACHE[beta.coeffs] = tag
    return tag


def preper_test(params: SystemParams, x, cap: int = DEFAULT_CAP, side="plus") -> PreperResult:
    """Decide eventual periodicity of ``x`` and report the sup-norm of its rho vectors.

    Over a certified Pisot base every point of Q(beta) is eventually
    periodic, so exhausting the cap there raises PisotGuaranteeViolated.
    """
    rec = orbit(params, side, x, cap)
    bound = rho_sup(rec)
    if not rec.periodic and _number_class(params.beta) is Tag.PISOT:
        raise PisotGuaranteeViolated(
            f"orbit of {rec.start} under beta={params.beta} alpha={params.alpha} "
            f"did not close within {cap} steps (rho sup-norm so far {bound})"
        )
    return PreperResult(rec.status, bound)
