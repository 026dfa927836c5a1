"""Sturm-chain root counting over the exact scalar field.

Counts distinct real roots, on the whole line or on a closed interval.
The chain is built from the square-free part, so multiplicities never
skew the count.  Roots landing exactly on an interval endpoint are
handled by dividing the linear factor out and counting the endpoint
separately, which keeps everything exact with no epsilon shrinking.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ZeroPolynomial
from .poly import Poly, square_free_part
from .scalar import ONE, Scalar, scal

POS_INF = "+inf"
NEG_INF = "-inf"


class SturmChain:
    """The negated-remainder sequence of a square-free polynomial."""

    __slots__ = ("polys",)

    def __init__(self, p: Poly):
        chain = [p, p.derivative()]
        while not chain[-1].is_zero() and chain[-1].degree > 0:
            rem = chain[-2] % chain[-1]
            if rem.is_zero():
                break
            chain.append(-rem)
        self.polys = [q for q in chain if not q.is_zero()]

    def variations_at(self, x) -> int:
        signs = []
        for q in self.polys:
            if x == POS_INF:
                s = q.lead().sign()
            elif x == NEG_INF:
                s = q.lead().sign() * (-1 if q.degree % 2 else 1)
            else:
                s = q(x).sign()
            if s != 0:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, a, b) -> int:
        """Distinct roots in (a, b]; endpoints may be +-inf markers."""
        return self.variations_at(a) - self.variations_at(b)


def cauchy_bound(p: Poly) -> Scalar:
    """B with every real root of p inside (-B, B)."""
    li = p.lead().inverse()
    acc = scal(0)
    for c in p.coeffs[:-1]:
        acc = acc + abs(c * li)
    return acc + 1


def sturm_root_count(p: Poly, interval: tuple | None = None) -> int:
    """Number of distinct real roots of p, whole-line or in closed [a, b].

    Raises ZeroPolynomial for p = 0.  A nonzero constant has no roots.
    """
    if p.is_zero():
        raise ZeroPolynomial("root counting on the zero polynomial")
    if p.degree == 0:
        return 0
    sf = square_free_part(p)
    if interval is None:
        return SturmChain(sf).count(NEG_INF, POS_INF)
    a, b = scal(interval[0]), scal(interval[1])
    if b < a:
        raise ValueError("interval endpoints out of order")
    extra = 0
    for end in (a, b):
        if sf.degree >= 1 and sf(end).sign() == 0:
            # sf is square-free, so the factor is simple; divide it out
            sf = sf.divmod(Poly([-end, ONE]))[0]
            extra += 1
    if a == b:
        return extra
    if sf.degree == 0:
        return extra
    return SturmChain(sf).count(a, b) + extra


def isolate_root(p: Poly, region: tuple | None = None) -> tuple:
    """Exact rational interval (lo, hi) isolating one real root of p.

    ``region`` limits the search to a closed interval; None means the whole
    line.  Intended for witness reporting, so it targets some root, not a
    specific one.  Requires at least one root in the region.
    """
    sf = square_free_part(p)
    chain = SturmChain(sf)
    if region is None:
        bound = cauchy_bound(sf)
        lo, hi = -bound, bound
    else:
        lo, hi = scal(region[0]), scal(region[1])
        for end in (lo, hi):
            if sf(end).sign() == 0:
                return (end, end)
    if chain.count(lo, hi) < 1:
        raise ValueError("no root to isolate in the region")
    while chain.count(lo, hi) > 1:
        mid = (lo + hi) / 2
        if sf(mid).sign() == 0:
            return (mid, mid)
        if chain.count(lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return (lo, hi)
