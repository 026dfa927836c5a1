"""Exact real scalars living in towers of quadratic extensions of Q.

A tower is a chain Q = F_0 < F_1 < ... < F_k where each level adjoins the
square root of a nonnegative element of an earlier level.  Radicands are
verified to be non-squares before a level is created, so every step is a
genuine degree-2 extension.  That gives two properties everything else
leans on:

* zero testing is structural (an element is zero iff its canonical
  representation is the rational zero), and
* the sign of a nonzero element can be decided by refining rational
  interval enclosures until zero is excluded.

Scalars are immutable and canonically stored at the shallowest level that
can represent them, so pure rationals stay plain ``Fraction`` wrappers no
matter which tower they came from.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

from ..errors import IncompatibleTowers, NegativeRadicand

RatLike = Union[int, str, Fraction, "Scalar"]

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


class Tower:
    """One level of a quadratic extension chain.

    ``parent`` is the previous level (None for Q) and ``radicand`` is the
    adjoined element, stored at its own minimal depth but always lying in
    an ancestor of ``parent``.  Instances are interned, so chains that were
    built independently from equal radicands compare by identity.
    """

    __slots__ = ("parent", "radicand", "depth")
    _intern: dict = {}

    def __init__(self, parent: Tower | None, radicand: Scalar):
        self.parent = parent
        self.radicand = radicand
        self.depth = 1 if parent is None else parent.depth + 1

    @staticmethod
    def extend(parent: Tower | None, radicand: Scalar) -> Tower:
        key = (id(parent), radicand._key())
        hit = Tower._intern.get(key)
        if hit is None:
            hit = Tower(parent, radicand)
            Tower._intern[key] = hit
        return hit

    def chain(self) -> list[Tower]:
        out: list[Tower] = []
        t: Tower | None = self
        while t is not None:
            out.append(t)
            t = t.parent
        out.reverse()
        return out

    def __repr__(self):
        return f"Tower(depth={self.depth}, sqrt({self.radicand!s}))"


def _depth(t: Tower | None) -> int:
    return 0 if t is None else t.depth


def _is_ancestor(a: Tower | None, b: Tower | None) -> bool:
    """True when chain ``a`` is a prefix of chain ``b`` (None is always one)."""
    if a is None:
        return True
    while b is not None:
        if b is a:
            return True
        b = b.parent
    return False


class Scalar:
    """An exact real number in a quadratic extension tower.

    Rational scalars have ``tower is None`` and carry a ``Fraction``.
    Deeper scalars carry a pair (a, b) over the parent chain meaning
    a + b*sqrt(radicand), with b nonzero; construction demotes b == 0
    to the parent level so representations are unique per chain.
    """

    __slots__ = ("tower", "a", "b", "_sign")

    def __init__(self, tower, a, b):
        # internal: use scal() / _rat() / _ext() instead
        self.tower = tower
        self.a = a
        self.b = b
        self._sign = None

    @staticmethod
    def _rat(f: Fraction) -> Scalar:
        s = Scalar(None, f, None)
        return s

    @staticmethod
    def _ext(tower: Tower, a: Scalar, b: Scalar) -> Scalar:
        if b.is_zero():
            return a
        return Scalar(tower, a, b)

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return self.tower is None and self.a == 0

    def is_rational(self) -> bool:
        return self.tower is None

    def as_fraction(self) -> Fraction:
        if self.tower is not None:
            raise ValueError("scalar is not rational")
        return self.a

    def _key(self):
        if self.tower is None:
            return (self.a.numerator, self.a.denominator)
        return (self.a._key(), self.b._key(), self.tower.depth)

    # -- alignment across towers ----------------------------------------

    def _parts_over(self, tower: Tower) -> tuple[Scalar, Scalar]:
        """View self as (a, b) over ``tower``, which must contain self."""
        if self.tower is tower:
            return self.a, self.b
        return self, _zero_scalar()

    def _combine(self, other: Scalar, op) -> Scalar:
        x, y = self, other
        tx, ty = x.tower, y.tower
        if tx is ty:
            return op(x, y, tx)
        if _is_ancestor(tx, ty):
            return op(x, y, ty)
        if _is_ancestor(ty, tx):
            return op(x, y, tx)
        merged, embed = _merge_chains(tx, ty)
        return embed(x)._combine(embed(y), op)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = scal(other)
        def add(x, y, t):
            if t is None:
                return Scalar._rat(x.a + y.a)
            xa, xb = x._parts_over(t)
            ya, yb = y._parts_over(t)
            return Scalar._ext(t, xa + ya, xb + yb)
        return self._combine(other, add)

    __radd__ = __add__

    def __neg__(self):
        if self.tower is None:
            return Scalar._rat(-self.a)
        return Scalar(self.tower, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-scal(other))

    def __rsub__(self, other):
        return scal(other) + (-self)

    def __mul__(self, other):
        other = scal(other)
        def mul(x, y, t):
            if t is None:
                return Scalar._rat(x.a * y.a)
            xa, xb = x._parts_over(t)
            ya, yb = y._parts_over(t)
            if xb.is_zero():
                return Scalar._ext(t, xa * ya, xa * yb)
            if yb.is_zero():
                return Scalar._ext(t, xa * ya, xb * ya)
            r = t.radicand
            return Scalar._ext(t, xa * ya + xb * yb * r, xa * yb + xb * ya)
        return self._combine(other, mul)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("scalar inverse of zero")
        if self.tower is None:
            return Scalar._rat(1 / self.a)
        a, b, r = self.a, self.b, self.tower.radicand
        # (a + b*sqrt(r))^-1 = (a - b*sqrt(r)) / (a^2 - b^2 r); the norm is
        # nonzero because r is a certified non-square of the parent level
        norm = a * a - b * b * r
        ninv = norm.inverse()
        return Scalar._ext(self.tower, a * ninv, -b * ninv)

    def __truediv__(self, other):
        other = scal(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return scal(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = _one_scalar()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = scal(other)
        if self.tower is other.tower:
            if self.tower is None:
                return self.a == other.a
            return self.a == other.a and self.b == other.b
        return (self - other).is_zero()

    __hash__ = None  # equal values can differ structurally across chains

    def sign(self) -> int:
        if self._sign is None:
            if self.is_zero():
                self._sign = 0
            else:
                bits = 16
                while True:
                    lo, hi = self.interval(bits)
                    if lo > 0:
                        self._sign = 1
                        break
                    if hi < 0:
                        self._sign = -1
                        break
                    bits *= 2
        return self._sign

    def __lt__(self, other):
        return (self - scal(other)).sign() < 0

    def __le__(self, other):
        return (self - scal(other)).sign() <= 0

    def __gt__(self, other):
        return (self - scal(other)).sign() > 0

    def __ge__(self, other):
        return (self - scal(other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return not self.is_zero()

    # -- numeric enclosures ----------------------------------------------

    def interval(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure [lo, hi] with radicals resolved to ``bits``."""
        if self.tower is None:
            return (self.a, self.a)
        alo, ahi = self.a.interval(bits)
        blo, bhi = self.b.interval(bits)
        rlo, rhi = self.tower.radicand.interval(bits)
        if rlo < 0:
            rlo = _ZERO
        slo, shi = _sqrt_floor(rlo, bits), _sqrt_ceil(rhi, bits)
        cands = (blo * slo, blo * shi, bhi * slo, bhi * shi)
        return (alo + min(cands), ahi + max(cands))

    def __float__(self):
        lo, hi = self.interval(64)
        return float((lo + hi) * _HALF)

    # -- formatting ------------------------------------------------------

    def __str__(self):
        return scalar_to_str(self)

    def __repr__(self):
        return f"Scalar({scalar_to_str(self)})"


def _zero_scalar() -> Scalar:
    return Scalar._rat(_ZERO)


def _one_scalar() -> Scalar:
    return Scalar._rat(Fraction(1))


def scal(x: RatLike) -> Scalar:
    """Coerce an int, Fraction or string into a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._rat(Fraction(x))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


ZERO = _zero_scalar()
ONE = _one_scalar()


# -- chain merging -------------------------------------------------------

def _merge_chains(t1, t2):
    """Merge two incompatible chains into one that embeds both.

    Returns (merged_tower, embed) where embed re-expresses any scalar of
    either input chain over the merged chain.  Levels of t2 whose radicand
    becomes a square inside the partially merged chain are not duplicated;
    their generators map to the existing root.
    """
    images: dict[Tower, Scalar] = {}

    def embed(s: Scalar) -> Scalar:
        if s.tower is None:
            return s
        if s.tower in images:
            gen = images[s.tower]
            return embed(s.a) + embed(s.b) * gen
        return s

    merged = t1
    for level in (t2.chain() if t2 is not None else []):
        rad = embed(level.radicand)
        if not _is_ancestor(rad.tower, merged):
            raise IncompatibleTowers("cannot merge extension chains")
        root = try_sqrt(rad, merged)
        if root is None:
            merged = Tower.extend(merged, rad)
            root = Scalar._ext(merged, _zero_scalar(), _one_scalar())
        images[level] = root
    return merged, embed


# -- square detection and adjunction -------------------------------------

def try_sqrt(s: Scalar, chain: Tower | None = None) -> Scalar | None:
    """Exact square root of ``s`` inside ``chain``, or None.

    ``chain`` defaults to the scalar's own tower.  The search is complete:
    if s = t^2 for some t in the chain's field, a root is found.  The
    returned root is nonnegative.
    """
    if chain is None:
        chain = s.tower
    if not _is_ancestor(s.tower, chain):
        raise IncompatibleTowers("scalar does not live in the given chain")
    if s.sign() < 0:
        return None
    root = _try_sqrt_in(s, chain)
    if root is not None and root.sign() < 0:
        root = -root
    return root


def _try_sqrt_in(s: Scalar, chain: Tower | None) -> Scalar | None:
    if chain is None:
        f = s.a
        n, d = f.numerator, f.denominator
        if n < 0:
            return None
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Scalar._rat(Fraction(rn, rd))
        return None
    a, b = s._parts_over(chain) if s.tower is chain else (s, _zero_scalar())
    parent, r = chain.parent, chain.radicand
    if b.is_zero():
        u = _try_sqrt_in(a, parent)
        if u is not None:
            return u
        v = _try_sqrt_in(a / r, parent)
        if v is not None:
            gen = Scalar._ext(chain, _zero_scalar(), _one_scalar())
            return v * gen
        return None
    # t = u + v*sqrt(r) with 2uv = b forces u^2 to solve a quadratic whose
    # discriminant a^2 - b^2 r is a square exactly when s is one
    disc = a * a - b * b * r
    d_root = _try_sqrt_in(disc, parent) if disc.sign() >= 0 else None
    if d_root is None:
        return None
    for w in ((a + d_root) * _HALF, (a - d_root) * _HALF):
        if w.sign() < 0:
            continue
        u = _try_sqrt_in(w, parent)
        if u is None or u.is_zero():
            continue
        v = b / (u + u)
        cand = Scalar._ext(chain, u, v)
        if (cand * cand - s).is_zero():
            return cand
    return None


def scalar_sqrt_adjoin(s: RatLike) -> Scalar:
    """Nonnegative square root of ``s``, extending the tower only if needed.

    Raises NegativeRadicand for negative input.  When s is already a square
    in its own chain the existing root is returned and no level is added.
    """
    s = scal(s)
    if s.sign() < 0:
        raise NegativeRadicand(f"sqrt of negative scalar {s}")
    if s.is_zero():
        return _zero_scalar()
    root = try_sqrt(s)
    if root is not None:
        return root
    tower = Tower.extend(s.tower, s)
    return Scalar._ext(tower, _zero_scalar(), _one_scalar())


# -- rational sqrt enclosures -------------------------------------------

def _sqrt_floor(f: Fraction, bits: int) -> Fraction:
    n, d = f.numerator, f.denominator
    s = isqrt(n * d << (2 * bits))
    return Fraction(s, d << bits)


def _sqrt_ceil(f: Fraction, bits: int) -> Fraction:
    n, d = f.numerator, f.denominator
    s = isqrt(n * d << (2 * bits))
    return Fraction(s + 1, d << bits)


# -- serialization -------------------------------------------------------

def _frac_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _terms(s: Scalar) -> list[tuple[Fraction, list[Scalar]]]:
    """Expand into (rational coefficient, list of radicand scalars) terms."""
    if s.tower is None:
        return [(s.a, [])] if s.a != 0 else []
    out = []
    for coef, rads in _terms(s.a):
        out.append((coef, rads))
    for coef, rads in _terms(s.b):
        out.append((coef, rads + [s.tower.radicand]))
    return out


def scalar_to_str(s: Scalar) -> str:
    """Canonical text form: rationals as "n/d", deeper scalars as sums of
    rational multiples of products of sqrt(...) factors."""
    if s.tower is None:
        return _frac_str(s.a)
    parts = []
    for idx, (coef, rads) in enumerate(_terms(s)):
        body = "*".join(f"sqrt({scalar_to_str(r)})" for r in rads)
        mag = _frac_str(abs(coef))
        if body:
            piece = body if abs(coef) == 1 else f"{mag}*{body}"
        else:
            piece = mag
        if idx == 0:
            parts.append(piece if coef > 0 else f"-{piece}")
        else:
            parts.append(f" + {piece}" if coef > 0 else f" - {piece}")
    return "".join(parts) if parts else "0"


class _ScalarParser:
    """Recursive-descent parser for the scalar text form.

    Grammar:  expr := term (('+'|'-') term)*
              term := factor ('*' factor)*
              factor := rational | 'sqrt' '(' expr ')' | '-' factor
    Square roots are built through scalar_sqrt_adjoin, so parsing a file
    reconstructs the same canonical towers the writer used.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"bad scalar {self.text!r} at {self.pos}: {msg}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Scalar:
        v = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return v

    def expr(self) -> Scalar:
        v = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                v = v + self.term()
            elif c == "-":
                self.pos += 1
                v = v - self.term()
            else:
                return v

    def term(self) -> Scalar:
        v = self.factor()
        while self.peek() == "*":
            self.pos += 1
            v = v * self.factor()
        return v

    def factor(self) -> Scalar:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.factor()
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            if self.peek() != "(":
                self.error("expected ( after sqrt")
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected )")
            self.pos += 1
            return scalar_sqrt_adjoin(inner)
        return self.rational()

    def rational(self) -> Scalar:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        num = int(self.text[start:self.pos])
        den = 1
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                self.error("expected a denominator")
            den = int(self.text[start:self.pos])
        return Scalar._rat(Fraction(num, den))


def parse_scalar(text: str) -> Scalar:
    return _ScalarParser(text).parse()
