from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import homogeneous, polynomials, rationals
from mmm_calc.algebra import (
    GeneratorTable,
    GradedPolynomial,
    ParseError,
    RingPresentation,
    bernoulli,
    determinant,
    extend_ring,
    format_poly,
    nullspace,
    parse_poly,
    rank,
    rref,
    same_span,
    substitute,
    tensor,
)
from mmm_calc.characteristic import so_ring, su_ring
from mmm_calc.gysin import cp2_bundle, su2_plus_trivial, tangent_images


# -- Bernoulli numbers ---------------------------------------------------------------

@pytest.mark.parametrize("k, value", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (4, Fraction(-1, 30)),
                                      (6, Fraction(1, 42)), (12, Fraction(-691, 2730))])
def test_bernoulli_values(k, value):
    assert bernoulli(k) == value


def test_bernoulli_matches_sympy_on_even_indices():
    for k in range(0, 41, 2):
        b = sympy.bernoulli(k)
        assert bernoulli(k) == Fraction(int(b.p), int(b.q))


def test_even_bernoulli_never_vanish():
    assert all(bernoulli(2 * k) != 0 for k in range(21))
    assert all(bernoulli(k) == 0 for k in range(3, 40, 2))


# -- products and Koszul signs -----------------------------------------------------------

def test_product_examples():
    R = so_ring(4)
    p4 = R.gen("p4")
    assert p4 * p4 == GradedPolynomial(R.table, {(2, 0, 0): 1})
    one = R.one()
    assert (one + p4) * (one + p4) == one + p4.scale(2) + p4 * p4


def test_odd_generators_anticommute_and_square_to_zero():
    R = RingPresentation.free([("a", 3), ("b", 5), ("c", 2)])
    a, b, c = R.gen("a"), R.gen("b"), R.gen("c")
    assert a * b == -(b * a)
    assert (a * a).is_zero()
    assert a * c == c * a
    assert ((a + b) * (a + b)).is_zero()


def test_mismatched_tables_rejected():
    A = RingPresentation.free([("x", 2)])
    B = RingPresentation.free([("y", 2)])
    with pytest.raises((ValueError, TypeError)):
        A.gen("x") * B.gen("y")


MIXED = RingPresentation.free([("a", 1), ("b", 3), ("c", 2), ("d", 4)])


@given(homogeneous(MIXED, range(0, 9)), homogeneous(MIXED, range(0, 9)))
def test_graded_commutativity(x, y):
    sign = -1 if (x.degree() * y.degree()) % 2 else 1
    assert (x * y - (y * x).scale(sign)).is_zero()


@given(homogeneous(MIXED, range(0, 7)), homogeneous(MIXED, range(0, 7)), homogeneous(MIXED, range(0, 7)))
def test_associativity_with_signs(x, y, z):
    assert (x * y) * z == x * (y * z)


def test_even_product_matches_sympy():
    R = RingPresentation.free([("x", 2), ("y", 4)])
    x, y = R.gen("x"), R.gen("y")
    p = (x.scale(Fraction(1, 2)) + y * 3 - 1) ** 3 * (x * y - x)
    X, Y = sympy.symbols("x y")
    q = sympy.Poly(sympy.expand((X / 2 + 3 * Y - 1) ** 3 * (X * Y - X)), X, Y)
    ours = {m: c for m, c in p.terms.items()}
    theirs = {m: Fraction(int(c.p), int(c.q)) for m, c in q.terms()}
    assert ours == theirs


def test_homogeneous_component_is_identity_on_homogeneous():
    R = so_ring(4)
    p = R.gen("p8") * R.gen("chi") - R.gen("p8").scale(2) * R.gen("p4")
    assert p.component(12) == p
    assert p.component(8).is_zero()


# -- reduction --------------------------------------------------------------------------

def test_reduce_examples():
    R = so_ring(4)
    assert R.reduce(R.gen("chi") ** 2) == R.gen("p8")
    P = cp2_bundle()
    T = P.total
    assert T.reduce(T.gen("z") ** 3) == -(T.gen("c4") * T.gen("z")) - T.gen("c6")


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_reduce_su2_powers(m, l):
    P = su2_plus_trivial(m)
    T = P.total
    z, u = T.gen("z"), T.gen("u")
    expect = (u ** l * z ** m).scale((-1) ** l)
    assert T.reduce(z ** (m + 2 * l)) == expect


CP2_TOTAL = cp2_bundle().total
SO6 = so_ring(6)


@given(polynomials(CP2_TOTAL, 10))
def test_reduce_idempotent(p):
    r = CP2_TOTAL.reduce(p)
    assert CP2_TOTAL.reduce(r) == r
    assert all(CP2_TOTAL.is_normal(m) for m in r.terms)


@given(polynomials(SO6, 12), polynomials(SO6, 12))
def test_reduce_is_multiplicative(a, b):
    R = SO6
    assert R.reduce(a * b) == R.reduce(R.reduce(a) * R.reduce(b))


@given(polynomials(CP2_TOTAL, 8))
def test_reduce_preserves_degrees(p):
    r = CP2_TOTAL.reduce(p)
    for d in r.degrees():
        assert not p.component(d).is_zero()


def test_non_triangular_rule_rejected():
    table = GeneratorTable([("x", 2), ("y", 2)])
    x = GradedPolynomial.gen(table, "x")
    y = GradedPolynomial.gen(table, "y")
    with pytest.raises(ValueError):
        RingPresentation.from_relations(table, [x * y - x * x])


def test_ring_dimensions():
    assert [su_ring(3).dimension(d) for d in range(0, 25, 2)] == [1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3]
    R = so_ring(4)
    # Q[p4, p8] plus chi Q[p4, p8]
    assert [R.dimension(d) for d in (0, 4, 8, 12)] == [1, 2, 3, 4]


# -- linear algebra ------------------------------------------------------------------------

def test_nullspace_examples():
    assert nullspace([[1, 0], [0, 1]], 2) == []
    (v,) = nullspace([[1, 1], [2, 2]], 2)
    assert v[0] == -v[1] != 0


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=0, max_size=5).map(lambda rows: (rows, c)))


@given(matrices)
def test_nullspace_vectors_are_killed(data):
    rows, ncols = data
    ker = nullspace(rows, ncols)
    for v in ker:
        assert all(sum((a * b for a, b in zip(r, v)), Fraction(0)) == 0 for r in rows)
    assert len(ker) + rank(rows, ncols) == ncols


@given(matrices)
def test_rank_matches_sympy(data):
    rows, ncols = data
    if not rows:
        return
    M = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows])
    assert rank(rows, ncols) == M.rank()


@given(matrices)
def test_rref_spans_same_space(data):
    rows, ncols = data
    assert same_span(rows, rref(rows, ncols), ncols)


def test_determinant_matches_sympy():
    A = [[2, -1, 0, 3], [1, 1, 1, 1], [0, 5, -2, 1], [Fraction(1, 2), 0, 1, 4]]
    assert determinant(A) == Fraction(str(sympy.Matrix(A).det()))


# -- substitution, tensors, text --------------------------------------------------------

def test_substitute_identity_and_degree_check():
    R = so_ring(4)
    p = R.gen("p4") ** 2 + R.gen("chi")
    assert substitute(p, {n: R.gen(n) for n in R.table.names}, R) == p
    with pytest.raises(ValueError):
        substitute(p, {"p4": R.gen("p8"), "p8": R.gen("p8"), "chi": R.gen("chi")}, R)


def test_substitute_tangent_images_cp2():
    P = cp2_bundle()
    T = P.total
    imgs = tangent_images(P)
    z, c4 = T.gen("z"), T.gen("c4")
    assert imgs["chi"] == c4 + (z * z).scale(3)
    assert imgs["p4"] == (z * z).scale(3) - c4.scale(2)
    R = so_ring(4)
    assert substitute(R.gen("chi") * R.gen("p4"), imgs, T) == T.reduce(imgs["chi"] * imgs["p4"])


def test_tensor_ring_keeps_relations():
    A = so_ring(4)
    TR = tensor(A, A, suffixes=("_1", "_2"))
    R = TR.ring
    assert R.reduce(TR.left(A.gen("chi")) ** 2) == TR.left(A.gen("p8"))
    assert TR.right_names == ("p4_2", "p8_2", "chi_2")


def test_extend_ring_from_text():
    base = RingPresentation.free([("u", 4)])
    ring, lift = extend_ring(base, [("z", 2)], ["z^3 + u*z"])
    assert ring.reduce(ring.gen("z") ** 3) == -(ring.gen("u") * ring.gen("z"))
    assert lift(base.gen("u")) == ring.gen("u")


def test_text_round_trip_and_format():
    R = so_ring(4)
    p = R.parse("7/45*p8 - 1/45*p4^2 + 3/2")
    assert format_poly(p) == "7/45 * p8 - 1/45 * p4^2 + 3/2"
    assert R.parse(format_poly(p)) == p
    assert R.parse("(p4 - chi)^2") == R.reduce((R.gen("p4") - R.gen("chi")) ** 2)
    assert format_poly(R.zero()) == "0"


@given(polynomials(SO6, 12))
def test_text_round_trip_property(p):
    q = SO6.reduce(p)
    assert SO6.parse(format_poly(q)) == q


@pytest.mark.parametrize("bad", ["p4 +", "q4", "p4^", "(p4", "p4 ^ -1"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad, so_ring(4).table)
