"""Polynomial Chinese remainder interpolation at curvilinear centers.

Given residues modulo (x - c_i)^{e_i} at pairwise distinct centers, there
is exactly one polynomial of degree < sum(e_i) matching all of them; with
all orders equal to 1 this is Lagrange interpolation.
"""

from __future__ import annotations

from ..errors import DuplicateCenter
from .poly import Poly
from .scalar import ONE, RatLike, Scalar, scal
from .series import Series, poly_to_series


def _coerce_value(value, center: Scalar, order: int) -> Series:
    if isinstance(value, Series):
        if value.order != order or not (value.center == center):
            raise ValueError("residue series does not match its (center, order)")
        return value
    if isinstance(value, (list, tuple)):
        return Series(center, order, value)
    return Series.constant(scal(value), center, order)


def crt_combine(residues) -> Poly:
    """Unique polynomial p with deg p < sum(e_i), p = value_i mod (x-c_i)^{e_i}.

    ``residues`` is a list of (center, order, value) with value a Series at
    that center and order, or anything coercible to one.
    """
    if not residues:
        return Poly()
    items: list[tuple[Scalar, int, Series]] = []
    for center, order, value in residues:
        c = scal(center)
        items.append((c, order, _coerce_value(value, c, order)))
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i][0] == items[j][0]:
                raise DuplicateCenter(f"center {items[i][0]} listed twice")
    out = Poly()
    for i, (c, e, val) in enumerate(items):
        m_i = Poly.const(1)
        for j, (cj, ej, _) in enumerate(items):
            if j != i:
                m_i = m_i * (Poly([-cj, ONE]) ** ej)
        # correct the residue so that m_i * lift matches val mod (x-c)^e
        s = val * poly_to_series(m_i, c, e).invert()
        out = out + m_i * s.to_poly()
    return out
