"""Generator certification, group structure, and the action on points and jets."""

from fractions import Fraction

import pytest

from conftest import rand_sphere_jet, rand_sphere_point, rand_torus_jet

from jetmove.automorphisms import (
    AutWord,
    SphereTwist,
    TorusMoebius,
    TorusTwist,
    apply_jet,
    apply_point,
    certify_twist,
    jacobian_at,
    word_concat,
    word_from_json,
    word_identity,
    word_inverse,
    word_of,
    word_to_json,
)
from jetmove.errors import (
    DegreeMismatch,
    IdentityFails,
    MixedSurfaces,
    PreconditionFailed,
    RootInForbiddenRegion,
)
from jetmove.exactalg import ONE, ZERO, Poly, Series, scal
from jetmove.surfaces import (
    Jet,
    ProjPoint,
    SPHERE,
    SpherePoint,
    TORUS,
    TorusPoint,
    sphere_point_stereo,
)


# ---------------------------------------------------------------------------
# certification


def test_certify_torus_twist():
    g = certify_twist(TorusTwist.of("y", [0, 0, 1], [1, 0, 1]))
    assert g.certificate is not None
    assert g.certificate.kind == "torus-twist"


def test_certify_rejects_denominator_root():
    # q = x^2 - 1 vanishes at +-1
    with pytest.raises(RootInForbiddenRegion) as exc:
        certify_twist(TorusTwist.of("x", [0, 0, 1], [-1, 0, 1]))
    lo, hi = exc.value.witness
    # the witness interval brackets an actual root of q
    q = Poly([-1, 0, 1])
    assert (q(lo) * q(hi)).sign() <= 0


def test_certify_reports_root_before_degree():
    # both conditions fail; the root is the error that surfaces
    with pytest.raises(RootInForbiddenRegion):
        certify_twist(TorusTwist.of("x", [1], [-1, 0, 1]))


def test_certify_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        certify_twist(TorusTwist.of("y", [0, 1], [1, 0, 1]))


def test_certify_rejects_bad_axis():
    with pytest.raises(PreconditionFailed):
        certify_twist(TorusTwist.of("z", [1], [1]))


def test_certify_sphere_twist():
    g = certify_twist(SphereTwist.of("z", [1, 0, -1], [0, 2], [1, 0, 1]))
    assert g.certificate.identity_checked


def test_certify_rejects_pythagorean_failure():
    with pytest.raises(IdentityFails):
        certify_twist(SphereTwist.of("z", [1], [1], [1]))


def test_certify_rejects_rotation_denominator_root():
    # r = 1 - 2z^2 vanishes inside [-1, 1]; shape is checked after roots
    with pytest.raises(RootInForbiddenRegion) as exc:
        certify_twist(SphereTwist.of("z", [1], [1], [1, 0, -2]))
    lo, hi = exc.value.witness
    assert scal(-1) <= lo and hi <= scal(1)


def test_certify_allows_root_outside_unit_interval():
    # r = 4 - z^2 has roots at +-2 only, harmless on [-1, 1]
    p = Poly([0, 0, 1]) * Poly([0, 0, 1]) - Poly([4, 0, -1]) * Poly([4, 0, -1])
    q2 = Poly([4, 0, -1]) * Poly([4, 0, -1]) - Poly([0, 0, 1]) * Poly([0, 0, 1])
    # build p, q with p^2 + q^2 = r^2 directly: scaled 3-4-5 family
    g = certify_twist(SphereTwist.of(
        "x", Poly([3]) * Poly([4, 0, -1]), Poly([4]) * Poly([4, 0, -1]),
        Poly([5]) * Poly([4, 0, -1])))
    assert g.certificate is not None
    del p, q2


def test_certify_rejects_singular_moebius():
    with pytest.raises(PreconditionFailed):
        certify_twist(TorusMoebius.of([[1, 2], [2, 4]], [[1, 0], [0, 1]]))


def test_inverse_keeps_certificate():
    g = certify_twist(SphereTwist.of("y", [1, 0, -1], [0, 2], [1, 0, 1]))
    assert g.inverse().certificate is not None


# ---------------------------------------------------------------------------
# words


def test_word_rejects_uncertified_generator():
    with pytest.raises(PreconditionFailed):
        AutWord(TORUS, (TorusTwist.of("x", [1], [1]),))


def test_word_rejects_mixed_surfaces():
    g1 = certify_twist(TorusTwist.of("x", [1], [2]))
    g2 = certify_twist(SphereTwist.of("z", [3], [4], [5]))
    with pytest.raises(MixedSurfaces):
        AutWord(TORUS, (g1, g2))
    with pytest.raises(MixedSurfaces):
        word_concat(word_of(TORUS, [g1]), word_of(SPHERE, [g2]))


def test_word_concat_and_len():
    w1 = word_of(TORUS, [TorusTwist.of("x", [1], [2])])
    w2 = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    assert len(word_concat(w1, w2)) == 2
    assert word_concat(w1, word_identity(TORUS)).generators == w1.generators


# ---------------------------------------------------------------------------
# action on points


def test_twist_moves_points():
    w = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    pt = apply_point(w, TorusPoint.affine(2, 1))
    # y + x^2/(1+x^2) at x = 2
    assert pt.x.value == scal(2)
    assert pt.y.value == ONE + scal(Fraction(4, 5))


def test_twist_at_infinity_uses_leading_coefficients():
    w = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    pt = apply_point(w, TorusPoint(ProjPoint.infinity(), ProjPoint.affine(5)))
    assert pt.x.is_infinite
    assert pt.y.value == scal(6)


def test_moebius_swaps_zero_and_infinity():
    w = word_of(TORUS, [TorusMoebius.of([[0, 1], [1, 0]], [[1, 0], [0, 1]])])
    pt = apply_point(w, TorusPoint(ProjPoint.infinity(), ProjPoint.affine(7)))
    assert pt.x.value == ZERO
    assert pt.y.value == scal(7)


def test_sphere_rotation_constant_angle():
    w = word_of(SPHERE, [SphereTwist.of("z", [3], [4], [5])])
    pt = apply_point(w, SpherePoint(ONE, ZERO, ZERO))
    assert pt.coords() == (scal(Fraction(3, 5)), scal(Fraction(4, 5)), ZERO)
    back = apply_point(word_inverse(w), pt)
    assert back.coords() == (ONE, ZERO, ZERO)


def test_sphere_rotation_angle_varies_with_height():
    w = word_of(SPHERE, [SphereTwist.of("z", [1, 0, -1], [0, 2], [1, 0, 1])])
    # on the equator z = 0 the angle is zero
    eq = apply_point(w, SpherePoint(ZERO, ONE, ZERO))
    assert eq.coords() == (ZERO, ONE, ZERO)
    p = sphere_point_stereo(ONE, ONE)
    q = apply_point(w, p)
    assert q.z == p.z
    assert q.x * q.x + q.y * q.y + q.z * q.z == ONE


def test_apply_point_rejects_wrong_surface():
    w = word_of(TORUS, [TorusTwist.of("x", [1], [2])])
    with pytest.raises(MixedSurfaces):
        apply_point(w, SpherePoint(ONE, ZERO, ZERO))


# ---------------------------------------------------------------------------
# action on jets


def test_moebius_transports_graph_jet():
    # x -> 1/x carries the line y = 1 + x through (2, 3) to the curve
    # y = 1 + 1/x through (1/2, 3); expanding at 1/2 gives 3 - 4s + 8s^2
    w = word_of(TORUS, [TorusMoebius.of([[0, 1], [1, 0]], [[1, 0], [0, 1]])])
    j = Jet.torus(TorusPoint.affine(2, 3), 3, Series(scal(2), 3, [3, 1, 0]))
    out = apply_jet(w, j)
    assert out.center == TorusPoint.affine(Fraction(1, 2), 3)
    assert list(out.f.coeffs) == [scal(3), scal(-4), scal(8)]
    assert not out.transposed


def test_twist_transports_graph_jet():
    # y -> y + 2x^2/(1+x^2); at x = 1 the value is 1 and the slope is 1
    w = word_of(TORUS, [TorusTwist.of("y", [0, 0, 2], [1, 0, 1])])
    j = Jet.torus(TorusPoint.affine(1, 1), 2, Series(ONE, 2, [1, 4]))
    out = apply_jet(w, j)
    assert out.center == TorusPoint.affine(1, 2)
    assert list(out.f.coeffs) == [scal(2), scal(5)]


def test_twist_constant_translation_on_jet():
    w = word_of(TORUS, [TorusTwist.of("y", [5], [2])])
    j = Jet.torus(TorusPoint.affine(1, 1), 2, Series(ONE, 2, [1, 4]))
    out = apply_jet(w, j)
    assert out.center == TorusPoint.affine(1, Fraction(7, 2))
    assert list(out.f.coeffs) == [scal(Fraction(7, 2)), scal(4)]


def test_word_inverse_round_trips_jets(rng):
    gens = [
        TorusTwist.of("y", [0, 0, 3], [1, 0, 1]),
        TorusMoebius.of([[1, 1], [0, 1]], [[2, 0], [0, 1]]),
        TorusTwist.of("x", [1, 0, -1], [2, 0, 1]),
    ]
    w = word_of(TORUS, gens)
    for _ in range(25):
        j = rand_torus_jet(rng, rng.randint(1, 4))
        assert apply_jet(word_inverse(w), apply_jet(w, j)) == j


def test_sphere_word_inverse_round_trips_jets(rng):
    w = word_of(SPHERE, [
        SphereTwist.of("z", [1, 0, -1], [0, 2], [1, 0, 1]),
        SphereTwist.of("x", [3], [4], [5]),
        SphereTwist.of("y", [0, 2], [-1, 0, 1], [1, 0, 1]),
    ])
    for _ in range(15):
        j = rand_sphere_jet(rng, rng.randint(1, 3))
        assert apply_jet(word_inverse(w), apply_jet(w, j)) == j


def test_concat_acts_by_composition(rng):
    w1 = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    w2 = word_of(TORUS, [TorusMoebius.of([[0, 1], [1, 0]], [[1, 1], [0, 1]])])
    both = word_concat(w1, w2)
    for _ in range(20):
        j = rand_torus_jet(rng, rng.randint(1, 4))
        assert apply_jet(both, j) == apply_jet(w2, apply_jet(w1, j))


def test_identity_word_fixes_jets(rng):
    for _ in range(10):
        j = rand_torus_jet(rng, rng.randint(1, 4))
        assert apply_jet(word_identity(TORUS), j) == j
    for _ in range(10):
        j = rand_sphere_jet(rng, rng.randint(1, 3))
        assert apply_jet(word_identity(SPHERE), j) == j


# ---------------------------------------------------------------------------
# jacobians


def test_jacobian_identity():
    m = jacobian_at(word_identity(TORUS), TorusPoint.affine(3, 4))
    assert m == ((ONE, ZERO), (ZERO, ONE))


def test_jacobian_torus_twist_is_shear():
    # y -> y + x^2/(1+x^2); d/dx at x = 2 is (2x(1+x^2) - x^2*2x)/(1+x^2)^2
    w = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    m = jacobian_at(w, TorusPoint.affine(2, 0))
    assert m == ((ONE, ZERO), (scal(Fraction(4, 25)), ONE))


def test_jacobian_sphere_constant_rotation():
    w = word_of(SPHERE, [SphereTwist.of("z", [3], [4], [5])])
    m = jacobian_at(w, SpherePoint(ONE, ZERO, ZERO))
    want = ((scal(Fraction(3, 5)), scal(Fraction(-4, 5)), ZERO),
            (scal(Fraction(4, 5)), scal(Fraction(3, 5)), ZERO),
            (ZERO, ZERO, ONE))
    assert m == want


def test_jacobian_sphere_varying_angle():
    # angle vanishes at the equator but its z-derivative does not
    w = word_of(SPHERE, [SphereTwist.of("z", [1, 0, -1], [0, 2], [1, 0, 1])])
    m = jacobian_at(w, SpherePoint(ONE, ZERO, ZERO))
    want = ((ONE, ZERO, ZERO), (ZERO, ONE, scal(2)), (ZERO, ZERO, ONE))
    assert m == want


def test_jacobian_composes_by_chain_rule():
    w1 = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    w2 = word_of(TORUS, [TorusTwist.of("x", [0, 0, -2], [1, 0, 2])])
    pt = TorusPoint.affine(Fraction(1, 2), Fraction(-3, 4))
    mid = apply_point(w1, pt)
    m1 = jacobian_at(w1, pt)
    m2 = jacobian_at(w2, mid)
    prod = tuple(
        tuple(sum((m2[i][k] * m1[k][j] for k in range(2)), ZERO)
              for j in range(2))
        for i in range(2))
    assert jacobian_at(word_concat(w1, w2), pt) == prod


# ---------------------------------------------------------------------------
# serialization


def test_word_json_round_trip():
    w = word_of(TORUS, [
        TorusTwist.of("y", [0, 0, 1], [1, 0, 1]),
        TorusMoebius.of([[0, 1], [1, 0]], [[1, 0], [0, 1]]),
    ])
    assert word_from_json(word_to_json(w)) == w


def test_sphere_word_json_round_trip():
    w = word_of(SPHERE, [SphereTwist.of("z", [1, 0, -1], [0, 2], [1, 0, 1])])
    d = word_to_json(w)
    assert d["generators"][0]["certificate"]["identity"]
    assert "formula" in d["generators"][0]
    assert word_from_json(d) == w


def test_json_load_recertifies():
    w = word_of(TORUS, [TorusTwist.of("y", [0, 0, 1], [1, 0, 1])])
    d = word_to_json(w)
    # tamper with the stored denominator; the forged certificate is ignored
    d["generators"][0]["q"] = ["-1", "0", "1"]
    with pytest.raises(RootInForbiddenRegion):
        word_from_json(d)


def test_json_rejects_unknown_surface():
    with pytest.raises(MixedSurfaces):
        word_from_json({"surface": "cylinder", "generators": []})
