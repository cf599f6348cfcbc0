from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polygrowth.exceptions import ArityError, ConstantComponentError, ParseError
from polygrowth.polyring import (
    ZERO_DEGREE,
    MultiPoly,
    PolyMap,
    apply_linear_change,
    dehomogenize,
    homogenize,
    leading_form,
    parse_polynomial,
    parse_system,
    random_linear_change,
)


def z(i, n=2):
    return MultiPoly.variable(n, i)


def P(text, names=("z1", "z2")):
    return parse_polynomial(text, names)


# -- parsing ------------------------------------------------------------------


def test_parse_system_degrees():
    F = parse_system("vars: z1 z2\nF1 = z1\nF2 = z1*z2 - 1")
    assert F.n == 2
    assert F.degrees == (1, 2)
    assert F.components[1] == z(0) * z(1) - 1


def test_parse_squares():
    F = parse_system("vars: z1 z2\nF1 = z1^2\nF2 = z2^2")
    assert F.degrees == (2, 2)


def test_parse_constant_component():
    with pytest.raises(ConstantComponentError):
        parse_system("vars: z1 z2\nF1 = 3/2\nF2 = z2")


def test_parse_arity_mismatch():
    with pytest.raises(ArityError):
        parse_system("vars: z1 z2\nF1 = z1")


def test_parse_rationals_and_comments():
    F = parse_system("# header\nvars: x y  # two vars\nA = 3/4*x^2 - -2 # c\nB = (x + y)^2\n")
    assert F.components[0] == MultiPoly(2, {(2, 0): Fraction(3, 4), (0, 0): 2})
    assert F.components[1] == (z(0) + z(1)) ** 2


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("vars: z1 z2\nF1 = z1 +\nF2 = z2", 2, 10),
        ("vars: z1 z2\nF1 = z1\nF2 = z3", 3, 6),
        ("vars: z1 z2\nF1 = z1 z2\nF2 = z2", 2, 9),
        ("F1 = z1", 1, 1),
        ("vars: z1 z2\nF1 = (z1\nF2 = z2", 2, 9),
        ("vars: z1 z2\nF1 = 1/0*z1\nF2 = z2", 2, 8),
    ],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_system(text)
    assert info.value.line == line
    assert info.value.column == col


def test_parse_error_message_mentions_location():
    with pytest.raises(ParseError, match="line 2, column"):
        parse_system("vars: a b\nF = a ^ b\nG = b")


# -- arithmetic ---------------------------------------------------------------


def test_product_difference_of_squares():
    assert (z(0, 1) + 1) * (z(0, 1) - 1) == z(0, 1) ** 2 - 1


def test_evaluate():
    assert (z(0) * z(1) - 1).evaluate((2, 3)) == 5


def test_scalar_zero():
    p = P("z1^2 + 3*z2")
    assert p.scale(0).is_zero()
    assert (0 * p).is_zero()


def test_zero_degree_sentinel():
    zero = MultiPoly.zero(3)
    assert zero.total_degree() == ZERO_DEGREE
    assert zero.total_degree() < 0
    assert MultiPoly.constant(3, 5).total_degree() == 0


def test_arity_mismatch():
    with pytest.raises(ArityError):
        z(0, 2) + z(0, 3)
    with pytest.raises(ArityError):
        z(0, 2).evaluate((1,))


def test_no_zero_coefficients_stored():
    p = MultiPoly(2, {(1, 0): 1, (0, 1): 0, (0, 0): Fraction(0)})
    assert len(p) == 1
    assert (p - p).terms == {}


def test_substitute_composes():
    p = P("z1^2 - z2")
    q = p.substitute([P("z1 + z2"), P("2*z1")])
    assert q == P("z1^2 + 2*z1*z2 + z2^2 - 2*z1")


# -- homogenization -----------------------------------------------------------


@pytest.mark.parametrize(
    "text, d, expected",
    [
        ("z1*z2 - 1", 2, "Z1*Z2 - Z0^2"),
        ("z1", 1, "Z1"),
        ("z1^2 - z2", 2, "Z1^2 - Z0*Z2"),
    ],
)
def test_homogenize(text, d, expected):
    assert homogenize(P(text), d) == parse_polynomial(expected, ["Z0", "Z1", "Z2"])


def test_homogenize_rejects_low_degree():
    with pytest.raises(ValueError):
        homogenize(P("z1^2"), 1)


@pytest.mark.parametrize(
    "text, expected",
    [("z1*z2 - 1", "z1*z2"), ("z1^2 - z2", "z1^2"), ("z1*z2^2 + z2", "z1*z2^2")],
)
def test_leading_form(text, expected):
    assert leading_form(P(text)) == P(expected)


def test_leading_form_matches_homogenization_at_infinity():
    p = P("z1^3 - 2*z1*z2 + z2^3 + 7")
    at_infinity = homogenize(p).partial_evaluate(0, 0)
    assert at_infinity == leading_form(p)


def test_leading_form_zero():
    with pytest.raises(ValueError):
        leading_form(MultiPoly.zero(2))


# -- coordinate changes -------------------------------------------------------


def test_identity_change():
    F = parse_system("vars: z1 z2\nF1 = z1^2 + z2\nF2 = z1*z2")
    assert apply_linear_change(F, [[1, 0], [0, 1]]).components == F.components


def test_swap_change():
    F = parse_system("vars: z1 z2\nF1 = z1\nF2 = z2")
    G = apply_linear_change(F, [[0, 1], [1, 0]])
    assert G.components == (z(1), z(0))


def test_singular_change_rejected():
    F = parse_system("vars: z1 z2\nF1 = z1\nF2 = z2")
    with pytest.raises(ValueError):
        apply_linear_change(F, [[1, 2], [2, 4]])


@pytest.mark.parametrize("seed", range(5))
def test_random_change_preserves_degrees(seed):
    F = parse_system("vars: z1 z2\nF1 = z1\nF2 = z1*z2^2 + z2")
    G = random_linear_change(F, seed)
    assert G.degrees == F.degrees
    assert G.change is not None


# -- properties ---------------------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, arity=2, max_deg=3, max_terms=5):
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(arity))
        terms[exp] = draw(rationals)
    return MultiPoly(arity, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == MultiPoly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(0, 3))
def test_homogenize_roundtrip(p, extra):
    if p.is_zero():
        return
    d = p.total_degree() + extra
    H = homogenize(p, d)
    assert all(sum(e) == d for e, _ in H)
    assert dehomogenize(H) == p


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), st.tuples(rationals, rationals))
def test_evaluate_is_multiplicative(p, q, x):
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)


@settings(max_examples=100, deadline=None)
@given(polys(arity=3, max_deg=4, max_terms=6))
def test_print_parse_roundtrip(p):
    names = ["z1", "z2", "z3"]
    assert parse_polynomial(p.to_str(names), names) == p


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(), min_size=2, max_size=2))
def test_map_text_roundtrip(comps):
    if any(c.is_constant() for c in comps):
        return
    F = PolyMap(comps)
    assert parse_system(F.to_text()).components == F.components
