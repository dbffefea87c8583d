from fractions import Fraction

import pytest

from torusgauge.cohomology import GroupCochain, coboundary, is_coboundary_of, is_cocycle
from torusgauge.forms import Form
from torusgauge.gerbes import associator_cochain
from torusgauge.magnetic import LineData, translation_section, two_cocycle
from torusgauge.polytrig import PolyTrig, U1Function
from torusgauge.scalar import Scalar
from tests_util import rational_vec2, rational_vec3


def linear_character(d, axis):
    """c(v) = exp(2*pi*i*v_axis*x_axis): a handy nontrivial 1-cochain."""

    def ev(args):
        (v,) = args
        alpha = tuple(1 if i == axis - 1 else 0 for i in range(d))
        return U1Function(PolyTrig.monomial(d, alpha, Scalar.exact(2 * v[axis - 1], 1)))

    return GroupCochain(1, d, ev)


def test_degree_zero_coboundary_definition(rnd):
    h = PolyTrig.cos_freq(2, (1, 0))
    b = GroupCochain(0, 2, lambda args: U1Function(h))
    db = coboundary(b)
    for _ in range(5):
        v = rational_vec2(rnd)
        got = db(v)
        want = U1Function(h).translate(v) / U1Function(h)
        assert got.equals(want)


def test_coboundary_of_constant_one_is_one(rnd):
    one = GroupCochain(1, 2, lambda args: U1Function.one(2))
    d_one = coboundary(one)
    for _ in range(5):
        assert d_one(rational_vec2(rnd), rational_vec2(rnd)).is_one()


def test_delta_squared_is_one(rnd):
    c = linear_character(2, 1)
    dd = coboundary(coboundary(c))
    for _ in range(8):
        args = tuple(rational_vec2(rnd) for _ in range(3))
        assert dd(*args).is_one()


def test_delta_squared_degree_zero(rnd):
    b = GroupCochain(0, 2, lambda args: U1Function(PolyTrig.sin_freq(2, (0, 1))))
    dd = coboundary(coboundary(b))
    for _ in range(5):
        assert dd(rational_vec2(rnd), rational_vec2(rnd)).is_one()


def test_normalization_preserved_by_delta(rnd):
    c = linear_character(2, 2)
    dc = coboundary(c)
    z = (Fraction(0), Fraction(0))
    v = rational_vec2(rnd)
    assert dc(z, v).is_one() and dc(v, z).is_one()


def test_magnetic_two_cocycle_is_cocycle(landau1, rnd):
    def ev(args):
        v, vp = args
        return two_cocycle(landau1, v, vp)

    c = GroupCochain(2, 2, ev)
    samples = [tuple(rational_vec2(rnd) for _ in range(3)) for _ in range(25)]
    assert is_cocycle(c, samples).passed


def test_associator_is_three_cocycle(gerbe_m2, rnd):
    samples = [tuple(rational_vec3(rnd) for _ in range(4)) for _ in range(15)]
    assert is_cocycle(associator_cochain(gerbe_m2), samples).passed


def test_broken_equivariance_fails(rnd):
    # c(v, v', v'') = exp(i x1 v1 v'1 v''1) is not a cocycle
    def ev(args):
        v, vp, vpp = args
        coeff = Scalar.exact(v[0] * vp[0] * vpp[0])
        return U1Function(PolyTrig.monomial(2, (1, 0), coeff))

    c = GroupCochain(3, 2, ev)
    samples = [
        ((1, 0), (1, 0), (1, 0), (1, 0)),
        (
            (Fraction(1, 2), Fraction(0)),
            (Fraction(1, 3), Fraction(0)),
            (1, 0),
            (1, 0),
        ),
    ]
    assert not is_cocycle(c, samples).passed


def test_constant_cochain_is_cocycle(rnd):
    one = GroupCochain(2, 2, lambda args: U1Function.one(2))
    samples = [tuple(rational_vec2(rnd) for _ in range(3)) for _ in range(5)]
    assert is_cocycle(one, samples).passed


# ---------------------------------------------------------------------------
# coboundary relations: equivariant trivialization obstruction at desk scale


def flat_line_with_connection(alpha):
    """Trivial bundle (all f_i = 1) with the closed connection alpha dx1."""
    A = Form.one_form(2, {1: PolyTrig.const(2, alpha)})
    return LineData(2, {}, A)


def test_obstruction_cocycle_of_trivial_bundle(rnd):
    # A = 2*pi dx1: the section cochain is a coboundary of exp(2*pi*i*x1)
    line = flat_line_with_connection(Scalar.exact(2, 1))

    def lam(args):
        (v,) = args
        return translation_section(line, v)

    c = GroupCochain(1, 2, lam)
    pair_samples = [
        (rational_vec2(rnd), rational_vec2(rnd)) for _ in range(10)
    ]
    assert is_cocycle(c, pair_samples).passed
    b = GroupCochain(
        0, 2, lambda args: U1Function(PolyTrig.monomial(2, (1, 0), Scalar.exact(2, 1)))
    )
    samples = [(rational_vec2(rnd),) for _ in range(10)]
    assert is_coboundary_of(c, b, samples).passed


def test_obstructed_cochain_is_not_that_coboundary(rnd):
    # A = pi dx1 is flat but not equivariantly trivial against the same witness
    line = flat_line_with_connection(Scalar.exact(1, 1))

    def lam(args):
        (v,) = args
        return translation_section(line, v)

    c = GroupCochain(1, 2, lam)
    b = GroupCochain(
        0, 2, lambda args: U1Function(PolyTrig.monomial(2, (1, 0), Scalar.exact(2, 1)))
    )
    samples = [((Fraction(1, 2), Fraction(0)),), ((Fraction(1, 3), Fraction(0)),)]
    assert not is_coboundary_of(c, b, samples).passed


def test_constructed_coboundary_matches(rnd):
    b = GroupCochain(0, 2, lambda args: U1Function(PolyTrig.cos_freq(2, (1, 1))))
    c = coboundary(b)
    samples = [(rational_vec2(rnd),) for _ in range(6)]
    assert is_coboundary_of(c, b, samples).passed


def test_degree_mismatch_rejected():
    b = GroupCochain(1, 2, lambda args: U1Function.one(2))
    c = GroupCochain(3, 2, lambda args: U1Function.one(2))
    with pytest.raises(ValueError):
        is_coboundary_of(c, b, [])


def test_wrong_arity_call():
    c = GroupCochain(2, 2, lambda args: U1Function.one(2))
    with pytest.raises(ValueError):
        c((1, 0))
