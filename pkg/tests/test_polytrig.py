import math
from fractions import Fraction

import pytest

from torusgauge.errors import (
    DimensionError,
    ExprSyntaxError,
    FrequencyError,
    NonRealExpressionError,
)
from torusgauge.expr import parse_expr, print_expr
from torusgauge.polytrig import (
    AffineMap,
    PolyTrig,
    U1Function,
    constant_mod,
    pullback_fn,
    translate,
)
from torusgauge.sampling import rand_polytrig, rng
from torusgauge.scalar import Scalar

# ---------------------------------------------------------------------------
# parsing


def test_parse_single_term_literal():
    f = parse_expr("2*pi*3*x1", 2)
    assert len(f.terms) == 1
    ((alpha, mode, freq, phase),) = f.terms
    assert alpha == (1, 0) and mode == 0
    assert f.terms[(alpha, mode, freq, phase)].pi == {1: Fraction(6)}


def test_parse_euler_expansion():
    # in the complex-exponential basis this is (1/2) x2 e^{+-2 pi i x1}
    f = parse_expr("x2*cos(2*pi*x1)", 2)
    assert len(f.terms) == 1
    g = parse_expr("x2*(exp2pii(x1) + exp2pii(-1*x1))", 2)
    assert g == f + f


def test_parse_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expr("exp是", 1)
    assert ei.value.position == 3


def test_parse_dimension_and_frequency_errors():
    with pytest.raises(DimensionError):
        parse_expr("x3", 2)
    with pytest.raises(FrequencyError):
        parse_expr("cos(pi*x1)", 1)  # frequency 1/2
    with pytest.raises(NonRealExpressionError):
        parse_expr("exp2pii(x1)", 1)


def test_parse_rational_and_decimal_numbers():
    assert parse_expr("1/3*x1", 1) == PolyTrig.monomial(1, (1,), Fraction(1, 3))
    assert parse_expr("0.5*x1", 1) == PolyTrig.monomial(1, (1,), Fraction(1, 2))


def test_roundtrip_on_random_canonical_forms():
    r = rng(101)
    for _ in range(40):
        f = rand_polytrig(r, 2, n_terms=3)
        assert parse_expr(print_expr(f), 2) == f
    for _ in range(20):
        f = rand_polytrig(r, 3, n_terms=2)
        assert parse_expr(print_expr(f), 3) == f


def test_roundtrip_negative_pi_powers():
    f = parse_expr("cos(2*pi*x1)", 1).antiderivative(1)
    assert parse_expr(print_expr(f), 1) == f


# ---------------------------------------------------------------------------
# arithmetic


def test_additive_inverse_and_products():
    x1 = PolyTrig.var(2, 1)
    assert (x1 + (-x1)).terms == {}
    assert (x1 * x1) == PolyTrig.monomial(2, (2, 0))
    e = parse_expr("exp2pii(x1)*exp2pii(-1*x1)", 2)
    assert e == PolyTrig.const(2, 1)


def test_ring_axioms_on_random_exact_triples():
    r = rng(7)
    for _ in range(25):
        a, b, c = (rand_polytrig(r, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a


def test_product_against_pointwise_values():
    r = rng(8)
    pts = [(0.3, 0.7), (1.25, -0.4)]
    for _ in range(10):
        a, b = rand_polytrig(r, 2), rand_polytrig(r, 2)
        ab = a * b
        for p in pts:
            assert math.isclose(
                ab.eval_float(p), a.eval_float(p) * b.eval_float(p), abs_tol=1e-9
            )


# ---------------------------------------------------------------------------
# partial derivatives (finite-difference oracle)


def test_partial_basic_examples():
    f = parse_expr("2*pi*5*x2*x1", 2)
    assert f.partial(1) == parse_expr("2*pi*5*x2", 2)
    g = parse_expr("cos(2*pi*x1)", 2)
    assert g.partial(1) == parse_expr("-2*pi*sin(2*pi*x1)", 2)
    assert parse_expr("x1", 2).partial(2).terms == {}


def test_partial_matches_finite_differences():
    r = rng(9)
    h = 1e-6
    for _ in range(10):
        f = rand_polytrig(r, 2)
        for axis in (1, 2):
            df = f.partial(axis)
            for p in [(0.37, 0.81), (-0.9, 0.13)]:
                q = list(p)
                q[axis - 1] += h
                m = list(p)
                m[axis - 1] -= h
                fd = (f.eval_float(q) - f.eval_float(m)) / (2 * h)
                assert math.isclose(df.eval_float(p), fd, abs_tol=5e-5, rel_tol=1e-4)


def test_mixed_partials_commute_exactly():
    r = rng(10)
    for _ in range(15):
        f = rand_polytrig(r, 3)
        for a, b in [(1, 2), (1, 3), (2, 3)]:
            assert f.partial(a).partial(b) == f.partial(b).partial(a)


# ---------------------------------------------------------------------------
# pullbacks


def test_translation_examples():
    f = PolyTrig.var(2, 1)
    assert translate(f, (-1, 0)) == f + PolyTrig.const(2, 1)
    g = parse_expr("cos(2*pi*x1)", 2)
    assert translate(g, (1, 0)) == g  # integer translation invariance


def test_line_parametrization_substitution():
    # x1 restricted to t -> x - v + t v in the 1d parameter
    f = PolyTrig.var(2, 1)
    v = (Fraction(1, 2), Fraction(1, 3))
    m = AffineMap([[v[0]], [v[1]]], [Scalar.exact(2) - Scalar.exact(v[0]), Scalar.zero()])
    out = pullback_fn(f, m)
    assert out == PolyTrig.monomial(1, (1,), Fraction(1, 2)) + PolyTrig.const(
        1, Fraction(3, 2)
    )


def test_pullback_functoriality_exact():
    r = rng(11)
    m1 = AffineMap([[1, 2], [0, 1]], [Fraction(1, 2), Fraction(-1)])
    m2 = AffineMap([[1, 0], [3, 1]], [Fraction(2), Fraction(1, 3)])
    for _ in range(10):
        f = rand_polytrig(r, 2, freq_step=1, n_terms=2, max_deg=2)
        lhs = pullback_fn(pullback_fn(f, m1), m2)
        rhs = pullback_fn(f, m1.compose(m2))
        assert lhs == rhs


def test_pullback_rejects_fractional_frequency():
    f = parse_expr("cos(2*pi*x1)", 1)
    m = AffineMap([[Fraction(1, 2)]], [0])
    with pytest.raises(FrequencyError):
        pullback_fn(f, m)


def test_identity_map_acts_trivially():
    r = rng(12)
    m = AffineMap.identity(2)
    for _ in range(5):
        f = rand_polytrig(r, 2)
        assert pullback_fn(f, m) == f


def test_noninteger_shift_of_trig_degrades_to_floats():
    g = parse_expr("sin(2*pi*x1)", 1)
    out = translate(g, (Fraction(1, 5),))
    assert not out.is_exact()
    # values still agree
    for x in (0.2, 0.9):
        assert math.isclose(
            out.eval_float((x,)),
            math.sin(2 * math.pi * (x - 0.2)),
            abs_tol=1e-12,
        )


# ---------------------------------------------------------------------------
# antiderivatives


def test_antiderivative_examples():
    one = PolyTrig.const(1, 1)
    assert one.antiderivative(1) == PolyTrig.var(1, 1)
    t = PolyTrig.var(1, 1)
    assert t.antiderivative(1) == PolyTrig.monomial(1, (2,), Fraction(1, 2))
    # real form of (e^{2 pi i t} - 1)/(2 pi i): both components
    c = parse_expr("cos(2*pi*x1)", 1).antiderivative(1)
    assert c == parse_expr("1/2*pi^-1*sin(2*pi*x1)", 1)
    s = parse_expr("sin(2*pi*x1)", 1).antiderivative(1)
    assert s == parse_expr("1/2*pi^-1 - 1/2*pi^-1*cos(2*pi*x1)", 1)


def test_antiderivative_then_partial_recovers_exactly():
    r = rng(13)
    for _ in range(20):
        f = rand_polytrig(r, 1, n_terms=3, max_deg=3)
        F = f.antiderivative(1)
        assert F.partial(1) == f
        assert F.substitute(1, {}, Fraction(0)).terms == {}


def test_antiderivative_quadrature_oracle():
    r = rng(14)
    for _ in range(8):
        f = rand_polytrig(r, 1, n_terms=2)
        F = f.antiderivative(1)
        # Simpson oracle for int_0^b f
        for b in (0.5, 1.0):
            n = 400
            h = b / n
            s = f.eval_float((0.0,)) + f.eval_float((b,))
            for i in range(1, n):
                s += f.eval_float((i * h,)) * (4 if i % 2 else 2)
            assert math.isclose(F.eval_float((b,)), s * h / 3, abs_tol=1e-8)


# ---------------------------------------------------------------------------
# constant_mod and U1 functions


def test_constant_mod_examples():
    r = constant_mod(parse_expr("4*pi", 2))
    assert r is not None and r.is_zero()
    # landau-type slack constant: 2*pi*N*j2*i1 with integers
    s = constant_mod(parse_expr("2*pi*3*2", 2))
    assert s is not None and s.is_zero()
    assert constant_mod(parse_expr("x1", 2)) is None


def test_u1_equality_mod_2pi():
    f = U1Function(parse_expr("2*pi*x1", 1))
    g = U1Function(parse_expr("2*pi*x1 + 4*pi", 1))
    h = U1Function(parse_expr("2*pi*x1 + pi", 1))
    assert f.equals(g)
    assert not f.equals(h)


def test_u1_periodicity():
    assert U1Function(parse_expr("2*pi*3*x1", 2)).is_periodic()
    assert U1Function(parse_expr("cos(2*pi*x2)", 2)).is_periodic()
    assert not U1Function(parse_expr("pi*x1", 2)).is_periodic()


def test_antiderivative_1d_contract():
    from torusgauge.polytrig import antiderivative_1d

    f = parse_expr("x1^2", 1)
    assert antiderivative_1d(f) == parse_expr("1/3*x1^3", 1)
    with pytest.raises(DimensionError):
        antiderivative_1d(parse_expr("x1", 2))


def test_affine_map_composition_associative():
    m1 = AffineMap([[1, 1], [0, 1]], [Fraction(1, 2), 0])
    m2 = AffineMap([[0, 1], [1, 0]], [1, Fraction(1, 3)])
    m3 = AffineMap([[2, 0], [0, 1]], [0, 0])
    f = parse_expr("x1*x2", 2)
    a = pullback_fn(f, m1.compose(m2).compose(m3))
    b = pullback_fn(f, m1.compose(m2.compose(m3)))
    assert a == b
