"""Numeric check of the one-variable Morsification polynomial.

This is the only floating-point step in the package.  Roots of the derivative
are isolated exactly with a Sturm sequence over the rationals and refined by
bisection; floats appear only in the reported locations and values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import List, Sequence, Tuple

from .errors import BadParameters, RootFindingFailure

TOL = 1e-9
Poly = List[Fraction]  # coefficients, lowest degree first


@dataclass(frozen=True)
class CriticalDatum:
    location: float
    value: float
    double_root: bool  # the critical point is a double root of the polynomial itself


def _trim(p: Poly) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _mul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _deriv(p: Poly) -> Poly:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _divmod(p: Poly, q: Poly):
    p, q = _trim(p), _trim(q)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    r = list(p)
    while len(r) >= len(q) and r:
        c = r[-1] / q[-1]
        k = len(r) - len(q)
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = _trim(r)
    return _trim(quot), r


def _gcd(p: Poly, q: Poly) -> Poly:
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _divmod(p, q)[1]
    return [c / p[-1] for c in p]


def _sturm(p: Poly) -> List[Poly]:
    seq = [p, _deriv(p)]
    while True:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            return seq
        seq.append([-c for c in r])


def _sign_changes(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [v for v in (_eval(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def morsification_poly(n: int) -> Poly:
    """``prod (x+j)^2`` for odd ``n``; ``(x+(n+2)/2) prod (x+j)^2`` for even ``n``."""
    if not 1 <= n <= 12:
        raise BadParameters("need 1 <= n <= 12")
    p: Poly = [Fraction(1)]
    for j in range(1, (n + 1) // 2 + 1 if n % 2 else n // 2 + 1):
        p = _mul(p, [Fraction(j), Fraction(1)])
        p = _mul(p, [Fraction(j), Fraction(1)])
    if n % 2 == 0:
        p = _mul(p, [Fraction(n + 2, 2), Fraction(1)])
    return p


def _isolate(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> List[Fraction]:
    seq = _sturm(p)
    roots: List[Fraction] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        count = _sign_changes(seq, a) - _sign_changes(seq, b)
        if count == 0:
            continue
        if count == 1 and b - a < width:
            roots.append((a + b) / 2)
            continue
        m = (a + b) / 2
        if _eval(p, m) == 0:
            roots.append(m)
            eps = width / 4
            stack.append((a, m - eps))
            stack.append((m + eps, b))
            continue
        stack.append((a, m))
        stack.append((m, b))
    return sorted(roots)


def morsification_data(n: int) -> List[CriticalDatum]:
    """Critical points in decreasing order of location (label ``j`` is the ``j``-th)."""
    return list(_critical_points(n))


@lru_cache(maxsize=None)
def _critical_points(n: int) -> Tuple[CriticalDatum, ...]:
    f = morsification_poly(n)
    df = _deriv(f)
    sq = _divmod(df, _gcd(df, _deriv(df)))[0] if len(df) > 2 else df
    bound = Fraction(int(sum(abs(c) for c in sq[:-1]) / abs(sq[-1])) + 2)
    roots = _isolate(sq, -bound, bound, Fraction(1, 10 ** 14))
    scale = max(1.0, max(abs(float(c)) for c in df))
    out = []
    for r in sorted(roots, reverse=True):
        if abs(float(_eval(df, r))) / scale > TOL:
            raise RootFindingFailure(f"derivative residual too large at {float(r)}")
        val = float(_eval(f, r))
        out.append(CriticalDatum(float(r), val, abs(val) < TOL))
    if len(out) != n:
        raise RootFindingFailure(f"expected {n} critical points, found {len(out)}")
    return tuple(out)


def values_ok(data: Sequence[CriticalDatum]) -> bool:
    """Every critical value is 0 or strictly positive (within tolerance)."""
    return all(abs(c.value) < TOL or c.value > TOL for c in data)


def parity_matches(data: Sequence[CriticalDatum]) -> bool:
    """Odd labels carry value 0 and even labels positive values."""
    return all((abs(c.value) < TOL) == (j % 2 == 1) for j, c in enumerate(data, start=1))


def orbit_count(n: int, d: int) -> int:
    """Off-diagonal critical tuples of the d-fold sum, counted modulo permutation."""
    pts = [c.location for c in morsification_data(n)]
    orbits = {tuple(sorted(t)) for t in permutations(range(len(pts)), d)}
    return len(orbits)
