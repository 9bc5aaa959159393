"""Exact univariate polynomial arithmetic on plain coefficient lists.

A polynomial is a list of ints (or Fractions), ascending degree, with no
trailing zero coefficient; [] is the zero polynomial.  Everything here is
exact: no floats enter unless the caller evaluates at a float point.
"""

from fractions import Fraction


def normalize(p):
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return list(p[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return normalize(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return normalize(out)


def scale(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def pow_(a, k):
    out = [1]
    b = list(a)
    while k:
        if k & 1:
            out = mul(out, b)
        k >>= 1
        if k:
            b = mul(b, b)
    return out


def shift(a, k):
    """Multiply by x**k."""
    if not a:
        return []
    return [0] * k + list(a)


def reciprocal(a, degree=None):
    """Coefficient reversal: x**n * a(1/x) with n = degree (default deg a)."""
    a = normalize(a)
    n = len(a) - 1 if a else 0
    if degree is None:
        degree = n
    if degree < n:
        raise ValueError("degree below actual degree")
    out = [0] * (degree + 1)
    for i, c in enumerate(a):
        out[degree - i] = c
    return normalize(out)


def divexact(a, b):
    """Exact polynomial division; raises if the remainder is nonzero."""
    a = normalize(a)
    b = normalize(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [0] * (max(len(a) - len(b) + 1, 0))
    r = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1]
        if c == 0:
            continue
        if c % lead != 0 and not isinstance(c, Fraction):
            c = Fraction(c, lead)
        else:
            c = c // lead if not isinstance(c, Fraction) else c / lead
        q[i] = c
        for j, cb in enumerate(b):
            r[i + j] -= c * cb
    if normalize(r):
        raise ValueError("inexact polynomial division")
    return normalize(q)


def evaluate(a, x):
    """Horner evaluation; exact for int/Fraction x, float/complex otherwise."""
    out = 0 * x
    for c in reversed(a):
        out = out * x + c
    return out


def derivative(a):
    return normalize([i * c for i, c in enumerate(a)][1:])


def to_decimal_strings(a):
    """JSON-safe exact form: array of decimal integer strings."""
    return [str(int(c)) for c in a]


def from_decimal_strings(strs):
    return normalize([int(s) for s in strs])
