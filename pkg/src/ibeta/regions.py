"""Parameter regions where the map fails to be transitive, and renormalisation.

For coprime ``1 <= k < n`` and ``beta <= 2**(1/n)`` the interval
``I_{n,k}(beta)`` collects the ``alpha`` for which ``T`` cycles through ``n``
disjoint pieces with rotation number ``k/n``. Points of these intervals
correspond to parameters ``(beta**n, a)`` through an affine renormalisation,
computed here in Q(beta**(1/n)) built from ``P(z**n)``.

The closed form is standard for ``k = 1``. For ``k >= 2`` the terms ``W_j``
carry an exponent factor ``m`` that is not pinned down by the formula
itself. The default is the quotient ``m = n // k`` (so ``n = m*k + s``): it
is the only value for which the renormalising conjugacy checks out on every
coprime pair with ``n <= 9``. ``exponent=`` overrides it, and every result
that depends on it is still flagged experimental.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .algebraic import AlgebraicNumber, FieldElement, make_beta
from .dynamics import Side, SystemParams, step
from .errors import BetaOutOfRange, ExperimentalRegionHit, NotCoprime, OutOfRegion
from .polynomial import compose_power
from .sampling import random_in


def combinatorics(n: int, k: int) -> tuple[int, list[int], list[int], list[int]]:
    """``s = n mod k`` and, for ``j = 1..s``, ``jk = V_j s + r_j`` with ``V_j = h_1 + ... + h_j``."""
    s = n % k
    V = [j * k // s for j in range(1, s + 1)] if s else []
    r = [j * k % s for j in range(1, s + 1)] if s else []
    h = [V[i] - (V[i - 1] if i else 0) for i in range(s)]
    return s, V, r, h


def w_terms(b, n: int, k: int, exponent: int | None = None) -> list:
    """``W_1..W_s`` for slope ``b`` (any ring element supporting ``**``)."""
    m = n // k if exponent is None else exponent
    s, V, _, h = combinatorics(n, k)
    if not s:
        return []
    Vs = V[-1]
    out = [sum(b ** ((Vs - i) * m + s - 1) for i in range(1, V[0] + 1))]
    for j in range(2, s + 1):
        out.append(sum(b ** ((Vs - V[j - 2] - i) * m + s - j) for i in range(1, h[j - 1] + 1)))
    return out


def endpoints(b, n: int, k: int, exponent: int | None = None):
    """Exact ``(lo, hi)`` of ``I_{n,k}(b)``; ``b`` may be a Fraction or a field element."""
    g = sum(b**i for i in range(n))
    den = b * g
    if k == 1:
        return 1 / den, (-(b ** (n + 1)) + b**n + 2 * b - 1) / den
    w = sum(w_terms(b, n, k, exponent))
    return (1 + b * (w - 1)) / den, (b * w - b ** (n + 1) + b**n + b - 1) / den


@dataclass(frozen=True)
class RegionDescriptor:
    n: int
    k: int
    s: int
    V: tuple[int, ...]
    r: tuple[int, ...]
    h: tuple[int, ...]
    W: tuple
    lo: FieldElement
    hi: FieldElement
    experimental: bool

    def contains(self, alpha) -> bool:
        return self.lo <= alpha <= self.hi

    @property
    def singleton(self) -> bool:
        return self.lo == self.hi


def _check_pair(n: int, k: int) -> None:
    if not (1 <= k < n) or gcd(n, k) != 1:
        raise NotCoprime(f"need coprime 1 <= k < n, got n={n}, k={k}")


def _below_root_two(beta: AlgebraicNumber, n: int) -> bool:
    return beta.gen**n <= 2


def interval_Ink(n: int, k: int, beta: AlgebraicNumber, exponent: int | None = None) -> RegionDescriptor:
    _check_pair(n, k)
    if not _below_root_two(beta, n):
        raise BetaOutOfRange(f"beta exceeds 2**(1/{n})")
    b = beta.gen
    s, V, r, h = combinatorics(n, k)
    lo, hi = endpoints(b, n, k, exponent)
    return RegionDescriptor(
        n, k, s, tuple(V), tuple(r), tuple(h), tuple(w_terms(b, n, k, exponent)), lo, hi, k >= 2
    )


@dataclass(frozen=True)
class Transitive:
    experimental: bool = False

    transitive = True


@dataclass(frozen=True)
class NonTransitive:
    region: RegionDescriptor

    transitive = False

    @property
    def experimental(self) -> bool:
        return self.region.experimental


def admissible_pairs(beta: AlgebraicNumber, n_max: int | None = None):
    """All coprime ``(n, k)`` with ``n >= 2``, ``beta**n <= 2`` and ``n <= n_max``."""
    n = 2
    while _below_root_two(beta, n) and (n_max is None or n <= n_max):
        for k in range(1, n):
            if gcd(n, k) == 1:
                yield n, k
        n += 1


def transitivity(
    params: SystemParams,
    n_max: int | None = None,
    *,
    allow_experimental: bool = False,
    exponent: int | None = None,
):
    """``NonTransitive`` with the first region containing alpha, else ``Transitive``.

    A hit found only through a ``k >= 2`` region raises ExperimentalRegionHit
    (carrying the result) unless ``allow_experimental`` is set.
    """
    if n_max is not None and n_max < 2:
        raise ValueError("n_max must be at least 2")
    experimental_hit = None
    consulted = False
    for n, k in admissible_pairs(params.beta, n_max):
        desc = interval_Ink(n, k, params.beta, exponent)
        consulted |= desc.experimental
        if desc.contains(params.alpha):
            if not desc.experimental:
                return NonTransitive(desc)
            if experimental_hit is None:
                experimental_hit = NonTransitive(desc)
    if experimental_hit is not None:
        if not allow_experimental:
            raise ExperimentalRegionHit(
                f"alpha lies in the experimental region I_{{{experimental_hit.region.n},"
                f"{experimental_hit.region.k}}}",
                result=experimental_hit,
            )
        return experimental_hit
    return Transitive(consulted)


@lru_cache(maxsize=64)
def root_field(coeffs: tuple[int, ...], n: int) -> AlgebraicNumber:
    """Q(beta**(1/n)) from the defining polynomial of beta."""
    return make_beta(compose_power(list(coeffs), n))


def nth_root(beta: AlgebraicNumber, n: int) -> AlgebraicNumber:
    return root_field(tuple(beta.coeffs), n)


def embed(x: FieldElement, root: AlgebraicNumber, n: int) -> FieldElement:
    """Image of ``x`` in Q(beta**(1/n)), where beta is sent to the n-th power of the root."""
    vec = [0] * root.degree
    for i, c in enumerate(x.num):
        vec[i * n] = c
    return FieldElement(root, vec, x.den)


def descend(y: FieldElement, beta: AlgebraicNumber, n: int) -> FieldElement | None:
    """Inverse of :func:`embed`; ``None`` if ``y`` is not in the image."""
    if any(c for i, c in enumerate(y.num) if i % n):
        return None
    return FieldElement(beta, [y.num[i * n] for i in range(beta.degree)], y.den)


def alpha_nk(beta: AlgebraicNumber, alpha, n: int, k: int, exponent: int | None = None) -> FieldElement:
    """The parameter in ``I_{n,k}(beta**(1/n))`` matching ``(beta, alpha)``.

    The result lives in Q(beta**(1/n)); membership in the target interval
    is checked exactly.
    """
    _check_pair(n, k)
    params = SystemParams(beta, alpha)
    root = nth_root(beta, n)
    g = root.gen
    a = embed(params.alpha, root, n)
    big = g**n
    tail = 1 if k == 1 else sum(w_terms(g, n, k, exponent))
    out = ((1 - a) * (1 - 1 / g) - tail) * (1 - g) / (big - 1)
    desc = interval_Ink(n, k, root, exponent)
    if not desc.contains(out):
        raise OutOfRegion(f"alpha_{n},{k} = {out} falls outside I_{n},{k}")
    return out


def renorm_down(
    params: SystemParams,
    n: int,
    k: int,
    *,
    allow_experimental: bool = False,
    exponent: int | None = None,
) -> FieldElement:
    """The ``a`` in ``[0, 2 - beta**n]`` for ``(beta, alpha)`` in ``I_{n,k}(beta)``.

    The result is an element of Q(beta); use :func:`descend` to move it
    into Q(beta**n) when the field of ``beta**n`` is wanted.
    """
    _check_pair(n, k)
    if k >= 2 and not allow_experimental:
        raise ExperimentalRegionHit(f"renormalisation for k={k} uses the experimental formula")
    b = params.beta.gen
    tail = 1 if k == 1 else sum(w_terms(b, n, k, exponent))
    num = -params.alpha * (b**n - 1) + (b - 1) * tail
    return 1 - num / ((b - 1) * (1 - 1 / b))


Interval = tuple  # closed (lo, hi) pair of field elements


def _merge(intervals: list[Interval]) -> list[Interval]:
    out: list[list] = []
    for lo, hi in sorted(intervals, key=lambda iv: (float(iv[0]), float(iv[1]))):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return [tuple(iv) for iv in out]


def image_closure(params: SystemParams, intervals: list[Interval]) -> list[Interval]:
    """Closure of the image of a union of closed intervals inside [0, 1]."""
    b, a, p = params.beta.gen, params.alpha, params.p
    out = []
    for lo, hi in intervals:
        if hi < p:
            out.append((b * lo + a, b * hi + a))
        elif lo >= p:
            out.append((b * lo + a - 1, b * hi + a - 1))
        else:
            out.append((b * lo + a, params.beta.one))
            out.append((params.beta.zero, b * hi + a - 1))
    return _merge(out)


def _renorm_piece(params: SystemParams) -> Interval:
    """``[alpha, beta + alpha - 1]``, the piece returned to after ``n`` steps."""
    return params.alpha, params.beta.gen + params.alpha - 1


def cyclic_pieces(params: SystemParams, n: int) -> list[list[Interval]]:
    """Closures of ``T^i(K)`` for ``i = 1..n`` with ``K = [alpha, beta + alpha - 1]``."""
    cur = [_renorm_piece(params)]
    out = []
    for _ in range(n):
        cur = image_closure(params, cur)
        out.append(cur)
    return out


def _disjoint(a: list[Interval], b: list[Interval]) -> bool:
    return all(x[1] < y[0] or y[1] < x[0] for x in a for y in b)


def pieces_disjoint(params: SystemParams, n: int) -> bool:
    pieces = cyclic_pieces(params, n)
    return all(_disjoint(pieces[i], pieces[j]) for i in range(n) for j in range(i + 1, n))


def verify_conjugacy(
    beta: AlgebraicNumber,
    alpha,
    n: int,
    k: int,
    sample_count: int = 20,
    seed: int = 0,
    exponent: int | None = None,
) -> bool:
    """Check ``Phi(T(x)) = T_small^n(Phi(x))`` exactly on sample points of [0, 1].

    ``Phi(x) = (beta**(1/n) - 1) x + alpha_{n,k}``. Both sides are computed
    in Q(beta**(1/n)), for both the plus and the minus map. For parameters
    strictly inside the interval the ``n`` pieces the small map cycles
    through are also checked to have disjoint closures.
    """
    params = SystemParams(beta, alpha)
    a = alpha_nk(beta, params.alpha, n, k, exponent)
    root = nth_root(beta, n)
    g = root.gen
    small = SystemParams(root, a)
    rng = random.Random(seed)
    one = beta.one
    xs = [beta.zero, one, params.p] if params.p <= 1 else [beta.zero, one]
    while len(xs) < sample_count:
        xs.append(random_in(rng, beta, beta.zero, one))
    xs = xs[:sample_count]

    def phi(x):
        return (g - 1) * embed(x, root, n) + a

    for side in (Side.PLUS, Side.MINUS):
        for x in xs:
            _, tx = step(params, side, x)
            y = phi(x)
            for _ in range(n):
                _, y = step(small, side, y)
            if y != phi(tx):
                return False
    desc = interval_Ink(n, k, root, exponent)
    if desc.lo < a < desc.hi:
        return pieces_disjoint(small, n)
    return True


def region_plot_rows(n_max: int, samples: int, exponent: int | None = None):
    """Rows ``(n, k, beta, lo, hi)`` over rational sample slopes ``1 + i/samples``.

    Only slopes with ``beta**n <= 2`` are emitted for each ``n``.
    """
    rows = []
    for n in range(2, n_max + 1):
        for k in range(1, n):
            if gcd(n, k) != 1:
                continue
            for i in range(1, samples + 1):
                b = 1 + Fraction(i, samples)
                if b**n > 2:
                    break
                lo, hi = endpoints(b, n, k, exponent)
                rows.append((n, k, b, lo, hi))
    return rows
