"""Exact arithmetic in Q(beta) for a real algebraic integer beta in (1, 2).

``AlgebraicNumber`` pins down beta by its monic integer polynomial and a
dyadic isolating interval that shrinks on demand. ``FieldElement`` is an
element of Q(beta) held as an integer vector over the power basis plus a
positive common denominator, always in lowest terms.

Signs are decided by integer fixed-point interval evaluation on the
isolating interval, doubling the working precision until the enclosure
excludes zero. Past the refinement floor a polynomial gcd settles exact
vanishing.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import mpmath

from . import polynomial as poly
from .errors import (
    CertificationFailure,
    MultipleRootsInRange,
    NonInvertible,
    NoRootInRange,
    NotSquareFree,
    RefinementCapExceeded,
)

REFINE_FLOOR_BITS = 4096
_START_BITS = 64


class AlgebraicNumber:
    """The unique root in (1, 2) of a monic, square-free integer polynomial.

    The isolating interval is ``[L / 2**e, (L + 1) / 2**e]``. Only
    :meth:`refine` mutates it, under a lock, and it only ever shrinks.
    """

    def __init__(self, coeffs: Sequence[int], *, refine_floor: int = REFINE_FLOOR_BITS):
        coeffs = poly.trim([int(c) for c in coeffs])
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        if not poly.is_square_free(coeffs):
            raise NotSquareFree(f"{poly.format_poly(coeffs)} is not square-free")
        self.coeffs = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.refine_floor = refine_floor
        self._lock = threading.Lock()
        self._tables: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}

        # the isolating polynomial has the integer roots 1 and 2 divided out
        iso = list(coeffs)
        for r in (1, 2):
            if poly.evaluate(iso, r) == 0:
                iso, _ = poly.divmod_poly(iso, [-r, 1])
        self._iso = [int(c) for c in iso]
        n_roots = 0
        if len(self._iso) > 1:
            n_roots = poly.count_roots(self._iso, 1, 2)
        if n_roots == 0:
            raise NoRootInRange(f"{poly.format_poly(coeffs)} has no root in (1, 2)")
        if n_roots > 1:
            raise MultipleRootsInRange(
                f"{poly.format_poly(coeffs)} has {n_roots} roots in (1, 2)"
            )
        self._L, self._e = 1, 0
        self._sign_lo = self._iso_sign(1, 0)
        self.refine(20)
        while self._L <= self._e_one() or self._L + 1 >= 2 * self._e_one():
            self._bisect()

    def _e_one(self) -> int:
        return 1 << self._e

    def _iso_sign(self, num: int, e: int) -> int:
        d = len(self._iso) - 1
        acc = 0
        for i, c in enumerate(self._iso):
            acc += c * num**i << (e * (d - i))
        return (acc > 0) - (acc < 0)

    def _bisect(self) -> None:
        L, e = 2 * self._L, self._e + 1
        s = self._iso_sign(L + 1, e)
        if s == self._sign_lo:
            L += 1
        self._L, self._e = L, e

    def refine(self, bits: int) -> None:
        """Shrink the isolating interval to width at most ``2**-bits``."""
        if self._e >= bits:
            return
        with self._lock:
            while self._e < bits:
                self._bisect()

    @property
    def isolate(self) -> tuple[Fraction, Fraction]:
        den = 1 << self._e
        return Fraction(self._L, den), Fraction(self._L + 1, den)

    def table(self, bits: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Floor/ceil of ``lo**i * 2**bits`` and ``hi**i * 2**bits`` for i < degree."""
        tab = self._tables.get(bits)
        if tab is not None:
            return tab
        self.refine(bits + 8)
        with self._lock:
            L, e = self._L, self._e
        H = L + 1
        lo, hi = [], []
        for i in range(self.degree):
            shift = e * i - bits
            if shift <= 0:
                lo.append(L**i << -shift)
                hi.append(H**i << -shift)
            else:
                lo.append(L**i >> shift)
                hi.append(-((-(H**i)) >> shift))
        tab = (tuple(lo), tuple(hi))
        self._tables[bits] = tab
        return tab

    def enclose_vector(self, vec: Sequence[int], bits: int) -> tuple[int, int]:
        """Integer bounds ``(a, b)`` with ``a <= 2**bits * sum(vec[i] beta**i) <= b``."""
        lo_t, hi_t = self.table(bits)
        low = high = 0
        for c, a, b in zip(vec, lo_t, hi_t):
            if c > 0:
                low += c * a
                high += c * b
            elif c < 0:
                low += c * b
                high += c * a
        return low, high

    def sign(self, vec: Sequence[int]) -> int:
        """Exact sign of ``sum(vec[i] * beta**i)`` for an integer vector.

        Precision doubles until the enclosure excludes zero. The floor is
        ``refine_floor`` bits beyond the size of the largest coefficient,
        after which a gcd with the defining polynomial decides vanishing.
        """
        if not any(vec):
            return 0
        bits = _START_BITS
        limit = self.refine_floor + max(abs(c).bit_length() for c in vec)
        limit = -(-limit // 64) * 64
        while True:
            low, high = self.enclose_vector(vec, bits)
            if low > 0:
                return 1
            if high < 0:
                return -1
            if bits >= limit:
                break
            bits = min(2 * bits, limit)
        g = poly.gcd_poly(list(vec), list(self.coeffs))
        if poly.degree(g) > 0:
            lo, hi = self.isolate
            seq = poly.sturm_sequence(g)
            if poly.evaluate(g, lo) != 0 and poly.count_roots(g, lo, hi, seq) == 1:
                return 0
        raise RefinementCapExceeded(
            f"sign undecided at 2^-{limit} for a vector of {len(vec)} coefficients"
        )

    # construction helpers -------------------------------------------------

    def element(self, num: Sequence[int | Fraction], den: int = 1) -> "FieldElement":
        return FieldElement.from_vector(self, num, den)

    def rational(self, value) -> "FieldElement":
        value = Fraction(value)
        return FieldElement(self, [value.numerator], value.denominator)

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self.rational(-self.coeffs[0])
        return FieldElement(self, [0, 1], 1)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, [1], 1)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, [0], 1)

    def from_poly(self, coeffs: Sequence, den: int = 1) -> "FieldElement":
        """Element ``sum(coeffs[i] beta**i) / den`` for a rational polynomial of any degree."""
        coeffs = list(coeffs)
        cden = 1
        for c in coeffs:
            q = Fraction(c).denominator
            cden = cden * q // gcd(cden, q)
        ints = [int(Fraction(c) * cden) for c in coeffs]
        return FieldElement(self, reduce_int(ints, self.coeffs), den * cden)

    def value_interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        return self.gen.approximate(Fraction(1, 1 << bits))

    def __eq__(self, other):
        return isinstance(other, AlgebraicNumber) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(("AlgebraicNumber", self.coeffs))

    def __repr__(self):
        return f"AlgebraicNumber({poly.format_poly(self.coeffs)})"

    def __float__(self):
        lo, hi = self.isolate
        return float((lo + hi) / 2)

    def __reduce__(self):
        return (AlgebraicNumber, (self.coeffs,), {"refine_floor": self.refine_floor})

    def __setstate__(self, state):
        self.refine_floor = state["refine_floor"]


def make_beta(coeffs: Sequence[int]) -> AlgebraicNumber:
    """Validate a monic integer polynomial and isolate its root in (1, 2)."""
    return AlgebraicNumber(coeffs)


def reduce_int(vec: Sequence[int], modulus: Sequence[int]) -> list[int]:
    """Reduce an integer polynomial modulo a monic integer polynomial."""
    d = len(modulus) - 1
    vec = list(vec)
    for k in range(len(vec) - 1, d - 1, -1):
        c = vec[k]
        if c:
            base = k - d
            for i in range(d):
                vec[base + i] -= c * modulus[i]
    vec = vec[:d]
    return vec + [0] * (d - len(vec))


class FieldElement:
    """``(num[0] + num[1] beta + ... + num[d-1] beta**(d-1)) / den`` in lowest terms."""

    __slots__ = ("beta", "num", "den", "_hash")

    def __init__(self, beta: AlgebraicNumber, num: Sequence[int], den: int = 1):
        d = beta.degree
        num = [int(c) for c in num]
        if len(num) > d:
            num = reduce_int(num, beta.coeffs)
        num = num + [0] * (d - len(num))
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = [-c for c in num], -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        if not any(num):
            den = 1
        self.beta = beta
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def from_vector(cls, beta, num, den=1):
        num = [Fraction(c) for c in num]
        cden = 1
        for c in num:
            cden = cden * c.denominator // gcd(cden, c.denominator)
        return cls(beta, [int(c * cden) for c in num], int(den) * cden)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.beta.coeffs != self.beta.coeffs:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.beta.rational(other)
        return NotImplemented

    # arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.den, other.den
        return FieldElement(
            self.beta, [x * b + y * a for x, y in zip(self.num, other.num)], a * b
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.beta, [-c for c in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FieldElement(
                self.beta, [c * other.numerator for c in self.num], self.den * other.denominator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [0] * (2 * len(self.num) - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.beta, reduce_int(prod, self.beta.coeffs), self.den * other.den)

    __rmul__ = __mul__

    def invert(self) -> "FieldElement":
        if not any(self.num):
            raise NonInvertible("zero is not invertible")
        g, s, _ = poly.ext_gcd(list(self.num), list(self.beta.coeffs))
        if poly.degree(g) > 0:
            raise NonInvertible(
                f"numerator shares the factor {g} with the defining polynomial"
            )
        return self.beta.from_poly([c * self.den for c in s])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result, base = self.beta.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order -------------------------------------------------------------

    def sign(self) -> int:
        return self.beta.sign(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.beta.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (
            self.num == other.num
            and self.den == other.den
            and self.beta.coeffs == other.beta.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.beta.coeffs))
        return self._hash

    def __lt__(self, other):
        return compare(self, self._coerce(other)) < 0

    def __le__(self, other):
        return compare(self, self._coerce(other)) <= 0

    def __gt__(self, other):
        return compare(self, self._coerce(other)) > 0

    def __ge__(self, other):
        return compare(self, self._coerce(other)) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return any(self.num)

    # numerics ----------------------------------------------------------

    def approximate(self, width: Fraction) -> tuple[Fraction, Fraction]:
        return approximate(self, width)

    def __float__(self):
        lo, hi = approximate(self, Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def to_string(self) -> str:
        """CLI syntax: ``"3/7"`` for rationals, else ``"[p0,p1,...]/q"``."""
        if self.is_rational():
            r = self.as_rational()
            return str(r)
        body = "[" + ",".join(str(c) for c in self.num) + "]"
        return body if self.den == 1 else f"{body}/{self.den}"

    def __repr__(self):
        return f"FieldElement({self.to_string()})"

    __str__ = to_string


def field_arith(op: str, x: FieldElement, y=None) -> FieldElement:
    """Dispatch ``add``, ``sub``, ``mul``, ``invert``, ``neg`` or ``scale``.

    ``scale`` multiplies ``x`` by the rational ``y``.
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "invert":
        return x.invert()
    if op == "neg":
        return -x
    if op == "scale":
        return x * Fraction(y)
    raise ValueError(f"unknown field operation {op!r}")


def compare(x: FieldElement, y: FieldElement) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    if x.beta.coeffs != y.beta.coeffs:
        raise ValueError("elements of different fields")
    a, b = x.den, y.den
    diff = [p * b - q * a for p, q in zip(x.num, y.num)]
    return x.beta.sign(diff)


def approximate(x: FieldElement, width) -> tuple[Fraction, Fraction]:
    """Rational interval of width at most ``width`` containing ``x``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if not any(x.num):
        return Fraction(0), Fraction(0)
    if x.is_rational():
        r = x.as_rational()
        return r, r
    bits = _START_BITS
    while True:
        low, high = x.beta.enclose_vector(x.num, bits)
        scale = x.den << bits
        if Fraction(high - low, scale) <= width:
            return Fraction(low, scale), Fraction(high, scale)
        bits *= 2


def to_decimal(x: FieldElement | Fraction, digits: int = 12) -> tuple[str, str]:
    """Round-half-even decimal string ``d`` and a certified bound on ``|x - d|``.

    The bound is rounded up to two significant digits, e.g. ``"5.1e-13"``;
    it is ``"0"`` when ``d`` is exactly ``x``.
    """
    if isinstance(x, FieldElement):
        lo, hi = approximate(x, Fraction(1, 10 ** (digits + 6)))
    else:
        lo = hi = Fraction(x)
    text = format_decimal((lo + hi) / 2, digits)
    d = Fraction(text)
    return text, format_bound(max(abs(d - lo), abs(hi - d)))


def format_bound(err: Fraction) -> str:
    """Upper bound on a nonnegative rational in two-digit scientific notation."""
    if err == 0:
        return "0"
    e = len(str(err.numerator)) - len(str(err.denominator))
    while Fraction(10) ** e > err:
        e -= 1
    while Fraction(10) ** (e + 1) <= err:
        e += 1
    mant = err / Fraction(10) ** (e - 1)
    m = -(-mant.numerator // mant.denominator)
    if m >= 100:
        m, e = 10, e + 1
    return f"{m // 10}.{m % 10}e{e}"


def format_decimal(value: Fraction, digits: int, strip: bool = False) -> str:
    value = Fraction(value)
    scaled = value * 10**digits
    n = round(scaled)  # Fraction.__round__ rounds half to even
    sign = "-" if n < 0 else ""
    n = abs(n)
    s = str(n).rjust(digits + 1, "0")
    out = f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"
    if strip and "." in out:
        out = out.rstrip("0").rstrip(".")
    return out


# classification ----------------------------------------------------------


class Tag(str, Enum):
    PISOT = "Pisot"
    SALEM = "Salem"
    PERRON_ONLY = "PerronOnly"
    OTHER = "Other"


@dataclass(frozen=True)
class NumberClass:
    tag: Tag
    conjugate_bounds: tuple[tuple[Fraction, Fraction], ...]
    unit_circle: tuple[bool, ...] = ()
    diagnostic: str | None = None


def _sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << (2 * bits)
    num = x.numerator * scale
    den = x.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    r = isqrt(num * den)
    lo = Fraction(r, den << bits)
    hi = Fraction(r + 1, den << bits)
    return lo, hi


def _scaled_eval(coeffs: Sequence[int], a: int, b: int, k: int) -> tuple[int, int]:
    d = len(coeffs) - 1
    re, im = 0, 0
    for i in range(d, -1, -1):
        re, im = re * a - im * b, re * b + im * a
        re += coeffs[i] << (k * (d - i))
    return re, im


@dataclass
class _Disk:
    a: int
    b: int
    k: int
    r: Fraction  # certified radius upper bound

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        s = 1 << self.k
        return Fraction(self.a, s), Fraction(self.b, s)


def _root_disks(coeffs: Sequence[int], bits: int) -> list[_Disk] | None:
    d = len(coeffs) - 1
    with mpmath.workprec(bits + 32):
        try:
            roots = mpmath.polyroots(
                list(reversed(coeffs)), maxsteps=50 + 4 * bits, extraprec=bits
            )
        except mpmath.libmp.libhyper.NoConvergence:
            return None
        k = bits
        approx = []
        for z in roots:
            z = mpmath.mpc(z)
            approx.append(
                (int(mpmath.nint(z.real * 2**k)), int(mpmath.nint(z.imag * 2**k)))
            )
    deriv = poly.derivative(list(coeffs))
    disks = []
    for a, b in approx:
        pr, pi = _scaled_eval(coeffs, a, b, k)
        dr, di = _scaled_eval(deriv, a, b, k)
        den = dr * dr + di * di
        if den == 0:
            return None
        # |P/P'|^2 = (|p|^2 / |d|^2) / 4**k
        r2 = Fraction(d * d * (pr * pr + pi * pi), den << (2 * k))
        disks.append(_Disk(a, b, k, _sqrt_bounds(r2, bits + 8)[1]))
    return disks


def _disjoint(d1: _Disk, r1: Fraction, d2: _Disk, r2: Fraction) -> bool:
    x1, y1 = d1.center
    x2, y2 = d2.center
    dist2 = (x1 - x2) ** 2 + (y1 - y2) ** 2
    return dist2 > (r1 + r2) ** 2


def _modulus_bounds(disk: _Disk, bits: int) -> tuple[Fraction, Fraction]:
    x, y = disk.center
    lo, hi = _sqrt_bounds(x * x + y * y, bits)
    return max(lo - disk.r, Fraction(0)), hi + disk.r


def _is_reciprocal(coeffs: Sequence[int]) -> bool:
    rev = list(reversed(coeffs))
    return list(coeffs) == rev or list(coeffs) == [-c for c in rev]


def _unit_certified(i: int, disks: list[_Disk], bits: int) -> bool:
    disk = disks[i]
    x, y = disk.center
    mlo, mhi = _sqrt_bounds(x * x + y * y, bits)
    u, v = mlo - disk.r, mhi + disk.r
    if u <= 0:
        return False
    spread = max(abs(1 / u - u), abs(1 / v - v))
    big = disk.r + spread
    return all(j == i or _disjoint(disk, big, other, other.r) for j, other in enumerate(disks))


def classify(beta: AlgebraicNumber, *, max_bits: int = 1024) -> NumberClass:
    """Certified Pisot / Salem / Perron classification from root enclosures."""
    coeffs = list(beta.coeffs)
    d = beta.degree
    if d == 1:
        return NumberClass(Tag.PISOT, ())
    neg = [c if i % 2 == 0 else -c for i, c in enumerate(coeffs)]
    minus_beta_is_root = beta.from_poly(neg).sign() == 0
    reciprocal = _is_reciprocal(coeffs)
    bits = 64
    last = None
    while bits <= max_bits:
        disks = _root_disks(coeffs, bits)
        if disks is None or not all(
            _disjoint(disks[i], disks[i].r, disks[j], disks[j].r)
            for i in range(d)
            for j in range(i + 1, d)
        ):
            bits *= 2
            continue
        beta.refine(bits + 16)
        lo, hi = beta.isolate
        home = None
        for i, disk in enumerate(disks):
            x, y = disk.center
            r2 = disk.r * disk.r
            if (x - lo) ** 2 + y * y <= r2 and (x - hi) ** 2 + y * y <= r2:
                home = i
                break
        if home is None:
            bits *= 2
            continue
        others = [i for i in range(d) if i != home]
        bounds = tuple(_modulus_bounds(disks[i], bits) for i in others)
        units = tuple(
            reciprocal and b[0] <= 1 <= b[1] and _unit_certified(i, disks, bits)
            for i, b in zip(others, bounds)
        )
        below_one = [b[1] < 1 for b in bounds]
        above_one = [b[0] > 1 for b in bounds]
        below_beta = [b[1] < lo for b in bounds]
        ambiguous_one = [
            not (lt or gt or u) for lt, gt, u in zip(below_one, above_one, units)
        ]
        last = (bounds, units, ambiguous_one, below_beta)
        if all(below_one):
            return NumberClass(Tag.PISOT, bounds, units)
        if all(b or u for b, u in zip(below_one, units)) and any(units):
            return NumberClass(Tag.SALEM, bounds, units)
        if not any(ambiguous_one):
            if all(below_beta):
                return NumberClass(Tag.PERRON_ONLY, bounds, units)
            if minus_beta_is_root:
                return NumberClass(
                    Tag.OTHER, bounds, units, "-beta is a conjugate (modulus equals beta)"
                )
        bits *= 2
    if last is None:
        raise CertificationFailure("root enclosures could not be separated")
    bounds, units, ambiguous_one, below_beta = last
    if any(ambiguous_one):
        diag = "CertificationFailure: a conjugate modulus was not separated from 1"
    else:
        diag = "a conjugate modulus was not certified below beta"
    return NumberClass(Tag.OTHER, bounds, units, diag)
