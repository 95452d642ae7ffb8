"""Parry's invariant density for ``T+`` on [0, 1].

    h(x) = sum_{n >= 0} beta**-n * ([x < T^n(1)] - [x < T^n(0)])

When the orbits of 0 and 1 close up, the periodic part of the series is a
geometric sum and ``h`` is known exactly. Otherwise the series is cut after
``n = N`` and every value carries the tail bound ``beta**-N / (beta - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebraic import FieldElement
from .dynamics import Side, SystemParams, orbit
from .regions import NonTransitive, cyclic_pieces, transitivity, _merge


@dataclass
class DensityApprox:
    """Piecewise-constant ``h_N``: ``values[j]`` holds on ``[breakpoints[j], breakpoints[j+1])``."""

    params: SystemParams
    breakpoints: list[FieldElement]
    values: list[FieldElement]
    order: int
    tail_bound: Fraction

    @property
    def exact(self) -> bool:
        return self.tail_bound == 0

    def value_interval(self, j: int, width: Fraction = Fraction(1, 10**15)) -> tuple[Fraction, Fraction]:
        lo, hi = self.values[j].approximate(width)
        return lo - self.tail_bound, hi + self.tail_bound

    def cell_of(self, x: FieldElement) -> int:
        lo, hi = 0, len(self.values)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.breakpoints[mid] <= x:
                lo = mid
            else:
                hi = mid
        return lo

    def integral(self, u, v) -> FieldElement:
        """Exact integral of ``h_N`` over ``[u, v]`` intersected with [0, 1]."""
        beta = self.params.beta
        total = beta.zero
        for j, val in enumerate(self.values):
            a, b = self.breakpoints[j], self.breakpoints[j + 1]
            lo = a if a > u else u
            hi = b if b < v else v
            if lo < hi:
                total = total + val * (hi - lo)
        return total

    def total_mass(self) -> FieldElement:
        return self.integral(self.params.beta.zero, self.params.beta.one)

    def normalised(self) -> list[FieldElement]:
        mass = self.total_mass()
        return [v / mass for v in self.values]

    def support(self) -> list[tuple[FieldElement, FieldElement]]:
        """Closure of the cells where ``h_N`` is certifiably positive (exact case only)."""
        cells = [
            (self.breakpoints[j], self.breakpoints[j + 1])
            for j, v in enumerate(self.values)
            if v.sign() > 0
        ]
        return _merge(cells)


def _weights(params: SystemParams, x, N: int):
    """``(points, weights, closed)`` so the orbit's part of ``h`` is ``sum w [t < point]``."""
    beta = params.beta
    inv = 1 / beta.gen
    rec = orbit(params, Side.PLUS, x, N)
    if rec.periodic:
        k, n = rec.status.preperiod, rec.status.period
        factor = 1 / (1 - inv**n)
        pts, ws = [], []
        w = beta.one
        for i in range(k + n):
            pts.append(rec.state(i))
            ws.append(w if i < k else w * factor)
            w = w * inv
        return pts, ws, True
    pts, ws = [], []
    w = beta.one
    for i in range(N + 1):
        pts.append(rec.state(i))
        ws.append(w)
        w = w * inv
    return pts, ws, False


def _tail(params: SystemParams, N: int) -> Fraction:
    lo = params.beta.isolate[0]
    return (1 / lo) ** N / (lo - 1)


def parry_density(params: SystemParams, N: int) -> DensityApprox:
    """Exact when both orbits close within ``N`` steps, truncated after ``n = N`` otherwise."""
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    beta = params.beta
    p1, w1, c1 = _weights(params, beta.one, N)
    p0, w0, c0 = _weights(params, beta.zero, N)
    closed = c1 and c0
    weight: dict[FieldElement, FieldElement] = {}
    for pts, ws, sign in ((p1, w1, 1), (p0, w0, -1)):
        for t, w in zip(pts, ws):
            weight[t] = weight.get(t, beta.zero) + (w if sign > 0 else -w)
    cuts = set(weight) | {beta.zero, beta.one}
    bps = sorted(cuts)
    # a cell [t_j, t_{j+1}) sees every point >= t_{j+1}
    values = []
    acc = beta.zero
    for t in reversed(bps[1:]):
        acc = acc + weight.get(t, beta.zero)
        values.append(acc)
    values.reverse()
    return DensityApprox(params, bps, values, N, Fraction(0) if closed else _tail(params, N))


def support_components(params: SystemParams, *, allow_experimental: bool = False):
    """Closed intervals carrying the invariant measure.

    All of [0, 1] in the transitive case and at the single parameter of a
    degenerate region; otherwise the union of the closures of the pieces
    ``T^i([alpha, beta + alpha - 1])`` the map cycles through.
    """
    beta = params.beta
    verdict = transitivity(params, allow_experimental=allow_experimental)
    if not isinstance(verdict, NonTransitive):
        return [(beta.zero, beta.one)]
    desc = verdict.region
    if desc.singleton and params.alpha == desc.lo:
        return [(beta.zero, beta.one)]
    pieces = cyclic_pieces(params, desc.n)
    return _merge([iv for piece in pieces for iv in piece])


def support_pieces(params: SystemParams, *, allow_experimental: bool = False):
    """The cyclically permuted pieces separately; a piece may wrap through 0 = 1."""
    verdict = transitivity(params, allow_experimental=allow_experimental)
    beta = params.beta
    if not isinstance(verdict, NonTransitive):
        return [[(beta.zero, beta.one)]]
    desc = verdict.region
    if desc.singleton and params.alpha == desc.lo:
        return [[(beta.zero, beta.one)]]
    return cyclic_pieces(params, desc.n)


def preimage(params: SystemParams, lo, hi):
    """``T^-1([lo, hi])`` inside [0, 1] as at most two closed intervals."""
    beta = params.beta
    b, a, p = beta.gen, params.alpha, params.p
    out = []
    for shift, (left, right) in ((a, (beta.zero, p)), (a - 1, (p, beta.one))):
        u, v = (lo - shift) / b, (hi - shift) / b
        u = u if u > left else left
        v = v if v < right else right
        if u < v:
            out.append((u, v))
    return out


def check_invariance(params: SystemParams, N: int, cells: int) -> Fraction:
    """Largest ``|nu_N(T^-1 A) - nu_N(A)|`` over ``cells`` equal pieces ``A`` of [0, 1].

    Returned as a rational upper bound; it is exactly 0 when the density is
    exact and the measure invariant.
    """
    if cells < 2:
        raise ValueError("need at least two cells")
    dens = parry_density(params, N)
    beta = params.beta
    worst = Fraction(0)
    for j in range(cells):
        lo, hi = beta.rational(Fraction(j, cells)), beta.rational(Fraction(j + 1, cells))
        back = beta.zero
        for u, v in preimage(params, lo, hi):
            back = back + dens.integral(u, v)
        diff = back - dens.integral(lo, hi)
        if diff.sign() == 0:
            continue
        bound = max(abs(e) for e in diff.approximate(Fraction(1, 10**30)))
        worst = max(worst, bound)
    return worst
