"""Certified automorphisms of the torus and sphere, as words of generators.

Three generator kinds:

* TorusTwist: translates one factor coordinate by a pole-free rational
  function of the other, (x, y) -> (x, y + p(x)/q(x)) for axis "y".
  Regularity on all real points needs q without real roots and
  deg p = deg q, so the translation stays finite over infinity.
* TorusMoebius: a pair of fractional-linear maps acting factorwise.
* SphereTwist: rotates two coordinates by an angle depending on the
  third, (x, y, z) -> (x, (y p - z q)/r, (y q + z p)/r) for fixed "x"
  and cyclically otherwise, where p^2 + q^2 = r^2 exactly and r has no
  root in [-1, 1].

certify_twist proves the conditions by Sturm counts and exact identity
checks and attaches a Certificate; AutWord composes certified
generators left-to-right.  Points move through exact coordinate
formulas (projective pairs on the torus, so nothing breaks over
infinity); jets move through their parameter series and come back in
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (DegreeMismatch, IdentityFails, MixedSurfaces,
                     NotCurvilinear, PreconditionFailed, RootInForbiddenRegion)
from .exactalg import (NEG_INF, ONE, POS_INF, ZERO, Poly, Scalar, Series,
                       SturmChain, cauchy_bound, isolate_root, parse_scalar,
                       scal, scalar_to_str, square_free_part, sturm_root_count)
from .surfaces import (SPHERE, TORUS, Jet, ProjPoint, SphereParam, SpherePoint,
                       TorusParam, TorusPoint, jet_from_sphere_param,
                       jet_from_torus_param, jet_parametrize)


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True, eq=True)
class Certificate:
    """Record of the exact checks a generator passed."""
    kind: str
    root_count: int
    variations: tuple[int, int]
    identity_checked: bool


@dataclass(frozen=True, eq=True)
class TorusTwist:
    axis: str            # coordinate being translated, "x" or "y"
    p: Poly
    q: Poly
    certificate: Certificate | None = None

    surface = TORUS

    @staticmethod
    def of(axis: str, p, q) -> TorusTwist:
        return TorusTwist(axis, _as_poly(p), _as_poly(q))

    def inverse(self) -> TorusTwist:
        return replace(self, p=-self.p)

    def __str__(self):
        o = "y" if self.axis == "x" else "x"
        return f"{self.axis} -> {self.axis} + ({self.p.str_in(o)})/({self.q.str_in(o)})"


@dataclass(frozen=True, eq=True)
class TorusMoebius:
    mx: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    my: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    certificate: Certificate | None = None

    surface = TORUS

    @staticmethod
    def of(mx, my) -> TorusMoebius:
        coerce = lambda m: tuple(tuple(scal(e) for e in row) for row in m)
        return TorusMoebius(coerce(mx), coerce(my))

    def inverse(self) -> TorusMoebius:
        adj = lambda m: ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
        return replace(self, mx=adj(self.mx), my=adj(self.my))

    def __str__(self):
        f = lambda m: f"(({m[0][0]}, {m[0][1]}), ({m[1][0]}, {m[1][1]}))"
        return f"moebius x: {f(self.mx)}, y: {f(self.my)}"


@dataclass(frozen=True, eq=True)
class SphereTwist:
    fixed: str           # invariant coordinate carrying the angle, "x", "y" or "z"
    p: Poly
    q: Poly
    r: Poly
    certificate: Certificate | None = None

    surface = SPHERE

    @staticmethod
    def of(fixed: str, p, q, r) -> SphereTwist:
        return SphereTwist(fixed, _as_poly(p), _as_poly(q), _as_poly(r))

    def inverse(self) -> SphereTwist:
        return replace(self, q=-self.q)

    def __str__(self):
        v = self.fixed
        return (f"rotate about {v} by angle with cos = p/r, sin = q/r, "
                f"p = {self.p.str_in(v)}, q = {self.q.str_in(v)}, r = {self.r.str_in(v)}")


def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    return Poly(p)


Generator = TorusTwist | TorusMoebius | SphereTwist


@dataclass(frozen=True, eq=True)
class AutWord:
    """Generators applied left-to-right; all certified, one surface."""
    surface: str
    generators: tuple[Generator, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.surface != self.surface:
                raise MixedSurfaces("word mixes torus and sphere generators")
            if g.certificate is None:
                raise PreconditionFailed("word contains an uncertified generator")

    def __len__(self):
        return len(self.generators)


def word_identity(surface: str) -> AutWord:
    return AutWord(surface, ())


def word_concat(*words: AutWord) -> AutWord:
    surfaces = {w.surface for w in words}
    if len(surfaces) != 1:
        raise MixedSurfaces("cannot concatenate words on different surfaces")
    gens: tuple[Generator, ...] = ()
    for w in words:
        gens = gens + w.generators
    return AutWord(surfaces.pop(), gens)


def word_of(surface: str, generators) -> AutWord:
    """Certify each generator and assemble the word."""
    return AutWord(surface, tuple(certify_twist(g) for g in generators))


def word_inverse(w: AutWord) -> AutWord:
    return AutWord(w.surface, tuple(g.inverse() for g in reversed(w.generators)))


# ---------------------------------------------------------------------------
# certification


def _root_free(pol: Poly, interval, kind: str) -> tuple[int, tuple[int, int]]:
    """Sturm-prove pol has no root in the region; return variation counts."""
    count = sturm_root_count(pol, interval)
    if count:
        if interval is None:
            b = cauchy_bound(pol)
            region = (-b, b)
        else:
            region = interval
        witness = isolate_root(square_free_part(pol), region)
        where = "the real line" if interval is None else "[-1, 1]"
        raise RootInForbiddenRegion(
            f"{kind} denominator has a root in {where}", witness=witness)
    chain = SturmChain(square_free_part(pol))
    if interval is None:
        lo, hi = NEG_INF, POS_INF
    else:
        lo, hi = interval
    return count, (chain.variations_at(lo), chain.variations_at(hi))


def certify_twist(g: Generator) -> Generator:
    """Prove the generator is a well-defined automorphism on real points.

    Root conditions are checked before shape conditions, so a candidate
    failing both reports the root.
    """
    if g.certificate is not None:
        return g
    if isinstance(g, TorusTwist):
        if g.axis not in ("x", "y"):
            raise PreconditionFailed("twist axis must be x or y")
        _, variations = _root_free(g.q, None, "twist")
        if g.p.degree != g.q.degree:
            raise DegreeMismatch(
                f"deg p = {g.p.degree} but deg q = {g.q.degree}")
        cert = Certificate("torus-twist", 0, variations, False)
        return replace(g, certificate=cert)
    if isinstance(g, SphereTwist):
        if g.fixed not in ("x", "y", "z"):
            raise PreconditionFailed("fixed coordinate must be x, y or z")
        qq = g.q * g.q
        four = Poly.const(4)
        if g.r * four == qq + four:
            # 4r = q^2 + 4 pins r >= 1 on all of R with no sign work;
            # every interpolated rotation lands here
            kind, variations = "sphere-twist-square", (0, 0)
        else:
            _, variations = _root_free(g.r, (scal(-1), scal(1)), "rotation")
            kind = "sphere-twist"
        if not (g.p * g.p + qq == g.r * g.r):
            raise IdentityFails("p^2 + q^2 differs from r^2")
        cert = Certificate(kind, 0, variations, True)
        return replace(g, certificate=cert)
    if isinstance(g, TorusMoebius):
        for m in (g.mx, g.my):
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det.is_zero():
                raise PreconditionFailed("moebius matrix is singular")
        cert = Certificate("moebius", 0, (0, 0), False)
        return replace(g, certificate=cert)
    raise PreconditionFailed(f"unknown generator {type(g).__name__}")


# ---------------------------------------------------------------------------
# action on points


def _hom_eval_point(pol: Poly, n: int, pt: ProjPoint) -> Scalar:
    """Degree-n homogenization of pol, at the canonical pair (u : v)."""
    if pt.is_infinite:
        return pol[n]
    return pol(pt.value)


def _twist_point_pair(tw, src: ProjPoint, moved: ProjPoint) -> ProjPoint:
    n = tw.q.degree
    ph = _hom_eval_point(tw.p, n, src)
    qh = _hom_eval_point(tw.q, n, src)
    return ProjPoint(moved.u * qh + ph * moved.v, moved.v * qh)


def _moebius_point(m, pt: ProjPoint) -> ProjPoint:
    return ProjPoint(m[0][0] * pt.u + m[0][1] * pt.v,
                     m[1][0] * pt.u + m[1][1] * pt.v)


_CYCLE = {"x": ("y", "z"), "y": ("z", "x"), "z": ("x", "y")}


def _sphere_twist_point(tw: SphereTwist, pt: SpherePoint) -> SpherePoint:
    coords = {"x": pt.x, "y": pt.y, "z": pt.z}
    t = coords[tw.fixed]
    pv, qv, rv = tw.p(t), tw.q(t), tw.r(t)
    a, b = _CYCLE[tw.fixed]
    u, v = coords[a], coords[b]
    coords[a] = (u * pv - v * qv) / rv
    coords[b] = (u * qv + v * pv) / rv
    return SpherePoint(coords["x"], coords["y"], coords["z"])


def apply_point(w: AutWord, pt: TorusPoint | SpherePoint):
    """Image of the point under the word; exact, total on real points."""
    if w.surface == TORUS:
        if not isinstance(pt, TorusPoint):
            raise MixedSurfaces("torus word applied to a non-torus point")
        for g in w.generators:
            if isinstance(g, TorusTwist):
                if g.axis == "y":
                    pt = TorusPoint(pt.x, _twist_point_pair(g, pt.x, pt.y))
                else:
                    pt = TorusPoint(_twist_point_pair(g, pt.y, pt.x), pt.y)
            else:
                pt = TorusPoint(_moebius_point(g.mx, pt.x),
                                _moebius_point(g.my, pt.y))
        return pt
    if not isinstance(pt, SpherePoint):
        raise MixedSurfaces("sphere word applied to a non-sphere point")
    for g in w.generators:
        pt = _sphere_twist_point(g, pt)
    return pt


# ---------------------------------------------------------------------------
# action on parameter series (shared by apply_jet and jacobian_at)


def _hom_eval_series(pol: Poly, n: int, chart: int, loc: Series) -> Series:
    if chart == 0:
        return pol(loc)
    rev = Poly([pol[n - k] for k in range(n + 1)])
    return rev(loc)


def _norm_factor(a: Series, b: Series) -> tuple[int, Series]:
    """Normalize a homogeneous pair to (chart, local series)."""
    if not b.value().is_zero():
        return 0, a * b.invert()
    if not a.value().is_zero():
        return 1, b * a.invert()
    raise NotCurvilinear("degenerate homogeneous pair along a jet")


def _scale(c: Scalar, s: Series) -> Series:
    return Series(s.center, s.order, [c * x for x in s.coeffs])


def _push_torus(w: AutWord, x: tuple[int, Series], y: tuple[int, Series]):
    one = Series.constant(1, ZERO, x[1].order)
    pair = lambda f: (f[1], one) if f[0] == 0 else (one, f[1])
    for g in w.generators:
        if isinstance(g, TorusTwist):
            src, moved = (x, y) if g.axis == "y" else (y, x)
            n = g.q.degree
            ph = _hom_eval_series(g.p, n, src[0], src[1])
            qh = _hom_eval_series(g.q, n, src[0], src[1])
            m0, m1 = pair(moved)
            moved = _norm_factor(m0 * qh + ph * m1, m1 * qh)
            x, y = (src, moved) if g.axis == "y" else (moved, src)
        else:
            for m, f in ((g.mx, "x"), (g.my, "y")):
                f0, f1 = pair(x if f == "x" else y)
                new = _norm_factor(_scale(m[0][0], f0) + _scale(m[0][1], f1),
                                   _scale(m[1][0], f0) + _scale(m[1][1], f1))
                if f == "x":
                    x = new
                else:
                    y = new
    return x, y


def _push_sphere(w: AutWord, coords: dict[str, Series]) -> dict[str, Series]:
    for g in w.generators:
        t = coords[g.fixed]
        pv, qv, rv = g.p(t), g.q(t), g.r(t)
        rinv = rv.invert()
        a, b = _CYCLE[g.fixed]
        u, v = coords[a], coords[b]
        coords = dict(coords)
        coords[a] = (u * pv - v * qv) * rinv
        coords[b] = (u * qv + v * pv) * rinv
    return coords


def apply_jet(w: AutWord, j: Jet) -> Jet:
    """Transport the jet, returning it in canonical graph form."""
    if j.surface != w.surface:
        raise MixedSurfaces("word and jet live on different surfaces")
    par = jet_parametrize(j)
    if j.surface == TORUS:
        x = _norm_factor(par.x0, par.x1)
        y = _norm_factor(par.y0, par.y1)
        x, y = _push_torus(w, x, y)
        one = Series.constant(1, ZERO, j.order)
        x0, x1 = (x[1], one) if x[0] == 0 else (one, x[1])
        y0, y1 = (y[1], one) if y[0] == 0 else (one, y[1])
        return jet_from_torus_param(TorusParam(x0, x1, y0, y1), j.order)
    out = _push_sphere(w, {"x": par.x, "y": par.y, "z": par.z})
    return jet_from_sphere_param(SphereParam(out["x"], out["y"], out["z"]), j.order)


# ---------------------------------------------------------------------------
# Jacobians


def jacobian_at(w: AutWord, pt: TorusPoint | SpherePoint):
    """Exact derivative matrix at the point, in local chart coordinates.

    Rows index output coordinates, columns input directions.  Computed by
    transporting first-order perturbations through the word, which is the
    chain rule without writing down any intermediate formula.
    """
    if w.surface == TORUS:
        cols = []
        for d in range(2):
            dirs = (ONE, ZERO) if d == 0 else (ZERO, ONE)
            fac = []
            for pp, a in zip((pt.x, pt.y), dirs):
                v0 = ZERO if pp.is_infinite else pp.value
                chart = 1 if pp.is_infinite else 0
                fac.append((chart, Series(ZERO, 2, [v0, a])))
            x, y = _push_torus(w, fac[0], fac[1])
            cols.append((x[1].coeffs[1], y[1].coeffs[1]))
        return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    cols = []
    for d in range(3):
        coords = {}
        for i, (name, c) in enumerate(zip("xyz", pt.coords())):
            a = ONE if i == d else ZERO
            coords[name] = Series(ZERO, 2, [c, a])
        out = _push_sphere(w, coords)
        cols.append(tuple(out[n].coeffs[1] for n in "xyz"))
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


# ---------------------------------------------------------------------------
# serialization


def _poly_json(p: Poly) -> list[str]:
    return [scalar_to_str(c) for c in p.coeffs]


def _poly_from_json(arr) -> Poly:
    return Poly([parse_scalar(c) for c in arr])


def _cert_json(c: Certificate) -> dict:
    return {"kind": c.kind, "root_count": c.root_count,
            "variations": list(c.variations), "identity": c.identity_checked}


def generator_to_json(g: Generator) -> dict:
    if isinstance(g, TorusTwist):
        d = {"type": "twist", "axis": g.axis,
             "p": _poly_json(g.p), "q": _poly_json(g.q)}
    elif isinstance(g, SphereTwist):
        d = {"type": "twist", "fixed": g.fixed, "p": _poly_json(g.p),
             "q": _poly_json(g.q), "r": _poly_json(g.r)}
    else:
        ser = lambda m: [[scalar_to_str(e) for e in row] for row in m]
        d = {"type": "moebius", "mx": ser(g.mx), "my": ser(g.my)}
    if g.certificate is not None:
        d["certificate"] = _cert_json(g.certificate)
    d["formula"] = str(g)
    return d


def generator_from_json(surface: str, d: dict) -> Generator:
    """Rebuild and re-certify; stored certificates are never trusted."""
    if d["type"] == "moebius":
        g = TorusMoebius.of([[parse_scalar(e) for e in row] for row in d["mx"]],
                            [[parse_scalar(e) for e in row] for row in d["my"]])
    elif surface == TORUS:
        g = TorusTwist(d["axis"], _poly_from_json(d["p"]), _poly_from_json(d["q"]))
    else:
        g = SphereTwist(d["fixed"], _poly_from_json(d["p"]),
                        _poly_from_json(d["q"]), _poly_from_json(d["r"]))
    return certify_twist(g)


def word_to_json(w: AutWord) -> dict:
    return {"surface": w.surface,
            "generators": [generator_to_json(g) for g in w.generators]}


def word_from_json(d: dict) -> AutWord:
    surface = d["surface"]
    if surface not in (TORUS, SPHERE):
        raise MixedSurfaces(f"unknown surface {surface!r}")
    return AutWord(surface,
                   tuple(generator_from_json(surface, g) for g in d["generators"]))
