import random
from fractions import Fraction

import pytest

from jetmove.exactalg import ONE, ZERO, Poly, Series, hensel_sqrt, poly_to_series, scal
from jetmove.surfaces import (Jet, ProjPoint, SphereParam, TorusPoint,
                              jet_from_sphere_param, sphere_point_stereo)


@pytest.fixture
def rng():
    return random.Random(97531)


def rand_fraction(rng, den_max=9, num_max=9) -> Fraction:
    return Fraction(rng.randint(-num_max, num_max), rng.randint(1, den_max))


def rand_poly(rng, max_deg=4, den_max=6) -> Poly:
    deg = rng.randint(0, max_deg)
    coeffs = [rand_fraction(rng, den_max) for _ in range(deg + 1)]
    return Poly(coeffs)


def rand_series(rng, center, order, den_max=6) -> Series:
    return Series(scal(center), order,
                  [rand_fraction(rng, den_max) for _ in range(order)])


def rand_torus_jet(rng, order, p_inf=0.15) -> Jet:
    """Random canonical torus jet, occasionally at infinity or vertical."""
    xinf = rng.random() < p_inf
    yinf = rng.random() < p_inf
    cx = ZERO if xinf else scal(rand_fraction(rng))
    cy = ZERO if yinf else scal(rand_fraction(rng))
    px = ProjPoint.infinity() if xinf else ProjPoint.affine(cx)
    py = ProjPoint.infinity() if yinf else ProjPoint.affine(cy)
    center = TorusPoint(px, py)
    tail = [scal(rand_fraction(rng)) for _ in range(order - 2)]
    if order >= 2 and rng.random() < 0.25:
        f = Series(cy, order, [cx, ZERO] + tail)
        return Jet.torus(center, order, f, transposed=True)
    coeffs = [cy] + ([scal(rand_fraction(rng))] + tail if order >= 2 else [])
    return Jet.torus(center, order, Series(cx, order, coeffs))


def rand_sphere_point(rng):
    return sphere_point_stereo(scal(rand_fraction(rng)), scal(rand_fraction(rng)))


def rand_sphere_jet(rng, order):
    """Random sphere jet from a rational ambient curve, radially normalized."""
    p = rand_sphere_point(rng)
    px, py, pz = p.coords()
    while True:
        q = [scal(rand_fraction(rng)) for _ in range(3)]
        dot = q[0] * px + q[1] * py + q[2] * pz
        tang = (q[0] - dot * px, q[1] - dot * py, q[2] - dot * pz)
        if not all(c.is_zero() for c in tang):
            break

    def coord(c0, c1):
        tail = [scal(rand_fraction(rng)) for _ in range(order - 2)]
        return Series(ZERO, order, ([c0, c1] + tail)[:order])

    ux, uy, uz = (coord(px, tang[0]), coord(py, tang[1]), coord(pz, tang[2]))
    sinv = hensel_sqrt(ux * ux + uy * uy + uz * uz, 1).invert()
    return jet_from_sphere_param(SphereParam(ux * sinv, uy * sinv, uz * sinv),
                                 order)


def tau_triple(rng, order):
    """Random admissible (f, g, h) with known half-angle series tau.

    f is the circle height over a rational equator abscissa; (g, h) is f
    rotated by the angle with tangent half-angle tau, so
    (1 - tau^2) f = (1 + tau^2) g and 2 tau f = (1 + tau^2) h hold exactly.
    """
    t = Fraction(0)
    while t == 0:
        t = rand_fraction(rng)
    den = 1 + t * t
    c, y = scal((1 - t * t) / den), scal(2 * t / den)
    u = poly_to_series(Poly([1, 0, -1]), c, order)
    f = hensel_sqrt(u, y)
    tau = Series(c, order,
                 [ZERO] + [scal(rand_fraction(rng)) for _ in range(order - 1)])
    one = Series.constant(1, c, order)
    inv = (one + tau * tau).invert()
    g = f * (one - tau * tau) * inv
    h = (tau + tau) * f * inv
    return f, g, h, tau


def solve_half_angle_brute(f, g, h):
    """Undetermined-coefficients reference for the half-angle series.

    Solves 2 a f = (1 + a^2) h coefficient by coefficient: with a_0 = 0
    the k-th residual coefficient is affine in a_k with slope 2 f(c), so
    each step is one exact division.  The companion congruence is then
    asserted rather than used, keeping this an independent check.
    """
    e, c = f.order, f.center
    one = Series.constant(1, c, e)
    coeffs = [ZERO] * e

    def residual(cs):
        a = Series(c, e, cs)
        return (a + a) * f - (one + a * a) * h

    for k in range(1, e):
        r0 = residual(coeffs).coeffs[k]
        bumped = list(coeffs)
        bumped[k] = ONE
        slope = residual(bumped).coeffs[k] - r0
        coeffs[k] = -r0 / slope
    a = Series(c, e, coeffs)
    aa = a * a
    assert (one - aa) * f == (one + aa) * g
    assert (a + a) * f == (one + aa) * h
    return a
