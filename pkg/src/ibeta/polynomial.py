"""Dense univariate polynomials with integer or rational coefficients.

Polynomials are plain lists, constant term first. Functions here never
mutate their arguments. Rational work uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Sequence

Poly = list


def trim(a: Sequence) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    a = trim(a)
    return len(a) - 1 if a else -1


def evaluate(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a: Sequence) -> list:
    return [i * a[i] for i in range(1, len(a))]


def add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return trim(out)


def scale(a: Sequence, c) -> list:
    return trim([c * x for x in a])


def divmod_poly(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Quotient and remainder over the rationals (exact for monic integer ``b``)."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    monic_int = lead == 1 and all(isinstance(c, int) for c in b)
    rem = list(a) if monic_int else [Fraction(c) for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], trim(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        if not monic_int:
            c = c / lead
        quot[k - db] = c
        for i in range(db + 1):
            rem[k - db + i] -= c * b[i]
    return trim(quot), trim(rem[:db])


def rem(a: Sequence, b: Sequence) -> list:
    return divmod_poly(a, b)[1]


def monic(a: Sequence) -> list:
    a = trim(a)
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def gcd_poly(a: Sequence, b: Sequence) -> list:
    """Monic gcd over the rationals; ``[]`` when both inputs vanish."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a) if a else []


def ext_gcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = [Fraction(c) for c in trim(a)], [Fraction(c) for c in trim(b)]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return scale(r0, 1 / lead), scale(s0, 1 / lead), scale(t0, 1 / lead)


def is_square_free(a: Sequence) -> bool:
    return degree(gcd_poly(a, derivative(a))) == 0


def primitive(a: Sequence) -> list:
    """Scale a rational polynomial to a primitive integer polynomial with positive lead."""
    a = trim(a)
    if not a:
        return []
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def sturm_sequence(a: Sequence) -> list[list]:
    seq = [primitive(a), primitive(derivative(a))]
    while True:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in primitive(r)])
    return seq


def sign_variations(seq: Sequence[Sequence], x) -> int:
    count = 0
    last = 0
    for s in seq:
        v = evaluate(s, x)
        if v == 0:
            continue
        sign = 1 if v > 0 else -1
        if last and sign != last:
            count += 1
        last = sign
    return count


def count_roots(a: Sequence, lo, hi, seq=None) -> int:
    """Distinct real roots of square-free ``a`` in ``(lo, hi]``; ``a(lo) != 0`` required."""
    seq = seq if seq is not None else sturm_sequence(a)
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def compose_power(a: Sequence, n: int) -> list:
    """Coefficients of ``a(z**n)``."""
    out = [0] * ((len(a) - 1) * n + 1)
    for i, c in enumerate(a):
        out[i * n] = c
    return out


def multinacci_poly(m: int) -> list[int]:
    """``z**m - z**(m-1) - ... - 1`` (golden mean for ``m == 2``)."""
    if m < 2:
        raise ValueError("multinacci order must be at least 2")
    return [-1] * m + [1]


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*z(?:\s*\^?\s*(\d+))?)?")


def parse_poly(text: str) -> list[int]:
    """Parse ``"z^2-z-1"``, ``"z4-z2-1"`` or a JSON-style ``"[-1,-1,1]"``.

    The bracket form lists coefficients constant term first.
    """
    s = text.strip().replace(" ", "").replace("**", "^").replace("x", "z")
    if s.startswith("["):
        body = s.strip("[]")
        return trim([int(t) for t in body.split(",") if t])
    coeffs: dict[int, int] = {}
    pos = 0
    if not s:
        raise ValueError("empty polynomial")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, digits, zpart, exp = m.groups()
        if not digits and not zpart:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if zpart else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    top = max(coeffs)
    return trim([coeffs.get(i, 0) for i in range(top + 1)])


def format_poly(a: Sequence, var: str = "z") -> str:
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + (f"^{i}" if i > 1 else "")
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out
