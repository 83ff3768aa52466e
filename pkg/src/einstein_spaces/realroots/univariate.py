"""Dense univariate integer polynomials (ascending coefficients).

Everything here works on plain Python ints so sign evaluations at rationals
are exact: p(a/b) * b^d = sum c_i a^i b^(d-i).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ..polycore import MultiPoly


def strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def from_rationals(coeffs: Sequence) -> list[int]:
    """Scale rational coefficients by a positive factor to coprime integers."""
    coeffs = [Fraction(c) for c in coeffs]
    coeffs = strip(list(coeffs))
    if not coeffs:
        return []
    m = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * m) for c in coeffs]
    g = gcd(*ints)
    return [x // g for x in ints]


def from_multipoly(p: MultiPoly, var: str | None = None) -> tuple[list[int], str]:
    if p.is_parametric:
        raise TypeError("parametric polynomial: specialize n first")
    var = var or p.univariate_variable() or p.variables[0]
    return from_rationals(p.to_dense(var)), var


def to_multipoly(c: Sequence[int], var: str) -> MultiPoly:
    return MultiPoly.from_univariate(list(c), var)


def degree(c) -> int:
    return len(c) - 1


def primitive(c: list[int]) -> list[int]:
    """Divide by the positive content (sign kept)."""
    if not c:
        return c
    g = gcd(*c)
    return [x // g for x in c] if g > 1 else list(c)


def derivative(c: list[int]) -> list[int]:
    return [i * c[i] for i in range(1, len(c))]


def divmod_q(a: list, b: list) -> tuple[list[Fraction], list[Fraction]]:
    """Exact quotient and remainder over Q."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = [Fraction(x) for x in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(rem) - 1 < db:
        return [], strip(rem)
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1 - db, -1, -1):
        q = rem[i + db] / lb
        quot[i] = q
        if q:
            for j, bc in enumerate(b):
                rem[i + j] -= q * bc
    return strip(quot), strip(rem[:db])


def rem_positive(a: list[int], b: list[int]) -> list[int]:
    """Remainder of a by b scaled by a positive rational to coprime integers."""
    _, r = divmod_q(a, b)
    if not r:
        return []
    m = lcm(*(x.denominator for x in r))
    ints = [int(x * m) for x in r]
    return primitive(ints)


def gcd_poly(a: list[int], b: list[int]) -> list[int]:
    a, b = strip(list(a)), strip(list(b))
    while b:
        a, b = b, rem_positive(a, b)
    if not a:
        return []
    a = primitive(a)
    return a if a[-1] > 0 else [-x for x in a]


def exact_quotient(a: list[int], b: list[int]) -> list[int]:
    q, r = divmod_q(a, b)
    if r:
        raise ValueError("inexact polynomial division")
    return from_rationals(q) if q else []


def squarefree(c: list[int]) -> list[int]:
    """Squarefree part, primitive with positive leading coefficient."""
    c = strip(list(c))
    if len(c) <= 1:
        return primitive(c) if c else c
    g = gcd_poly(c, derivative(c))
    s = exact_quotient(c, g) if len(g) > 1 else primitive(c)
    return s if s[-1] > 0 else [-x for x in s]


def squarefree_decomposition(c: list[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm: [(factor, multiplicity)], factors coprime and squarefree."""
    c = strip(list(c))
    out: list[tuple[list[int], int]] = []
    if len(c) <= 1:
        return out
    d = derivative(c)
    a = gcd_poly(c, d)
    bq = divmod_q(c, a)[0]
    cq = divmod_q(d, a)[0]
    dq = _sub(cq, _deriv_q(bq))
    i = 1
    while len(bq) > 1:
        y = gcd_poly(from_rationals(bq), from_rationals(dq)) if dq else from_rationals(bq)
        if len(y) > 1:
            out.append((_normalize(y), i))
        bq = divmod_q(bq, y)[0]
        cq = divmod_q(dq, y)[0] if dq else []
        dq = _sub(cq, _deriv_q(bq))
        i += 1
    return out


def _deriv_q(c):
    return [i * c[i] for i in range(1, len(c))]


def _sub(a, b):
    n = max(len(a), len(b))
    return strip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _normalize(c):
    return c if c[-1] > 0 else [-x for x in c]


def eval_sign(c: Sequence[int], x: Fraction) -> int:
    """Sign of p(x) for rational x, exactly (homogenized integer Horner)."""
    if not c:
        return 0
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    acc = c[-1]
    bp = b
    for i in range(len(c) - 2, -1, -1):
        acc = acc * a + c[i] * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def evaluate(c: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for ci in reversed(c):
        acc = acc * x + ci
    return acc


def sign_at_infinity(c: Sequence[int], positive: bool = True) -> int:
    if not c:
        return 0
    s = (c[-1] > 0) - (c[-1] < 0)
    if not positive and (len(c) - 1) % 2:
        s = -s
    return s


def cauchy_bound(c: Sequence[int]) -> Fraction:
    """1 + max |c_i / c_d|: every real (complex) root has modulus below it."""
    c = strip(list(c))
    if len(c) <= 1:
        return Fraction(1)
    lc = abs(c[-1])
    return 1 + max(Fraction(abs(x), lc) for x in c[:-1])


def to_fraction_list(c: Sequence[int]) -> list[Fraction]:
    return [Fraction(x) for x in c]
