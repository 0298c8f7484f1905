from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mmm_calc.algebra import bernoulli, substitute
from mmm_calc.symmetric import (
    L_CLASS,
    MultiplicativeSequence,
    PowerSeries,
    character_component,
    e,
    elementary_ring,
    expand,
    express_in_elementary,
    l_class_component,
    l_series,
    mult_seq_component,
    power_sum,
    root_ring,
    total_chern_series,
    verify_powerseries_lemma,
)


def sym_to_dict(expr, xs):
    poly = sympy.Poly(sympy.expand(expr), *xs)
    return {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}


def sympy_component(series_expr, d, m):
    """Degree-d part of prod_i f(x_i), expanded by sympy."""
    t = sympy.Symbol("t")
    xs = sympy.symbols(f"x1:{m + 1}")
    f = sympy.series(series_expr(t), t, 0, d + 1).removeO()
    prod = sympy.expand(sympy.prod([f.subs(t, x) for x in xs]))
    part = sum(term for term in sympy.Add.make_args(prod) if sympy.Poly(term, *xs).total_degree() == d)
    return sym_to_dict(part, xs)


# -- power sums ----------------------------------------------------------------------------

def test_power_sum_examples():
    E2, E3 = elementary_ring(2), elementary_ring(3)
    assert power_sum(1, 2) == E2.gen("e1")
    assert power_sum(2, 2) == E2.gen("e1") ** 2 - E2.gen("e2").scale(2)
    e1, e2, e3 = (E3.gen(f"e{i}") for i in (1, 2, 3))
    assert power_sum(3, 3) == e1 ** 3 - (e1 * e2).scale(3) + e3.scale(3)


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("d", range(1, 9))
def test_newton_round_trip(d, m):
    s = power_sum(d, m)
    roots = expand(s, m)
    xs = sympy.symbols(f"x1:{m + 1}")
    assert roots.terms == sym_to_dict(sum(x ** d for x in xs), xs)
    assert express_in_elementary(roots) == s


def test_express_in_elementary_examples():
    R = root_ring(2)
    x1, x2 = R.gen("x1"), R.gen("x2")
    E = elementary_ring(2)
    assert express_in_elementary(x1 * x2) == E.gen("e2")
    assert express_in_elementary(x1 * x1 + x2 * x2) == E.gen("e1") ** 2 - E.gen("e2").scale(2)
    assert express_in_elementary(x1 * x1 * x2 + x1 * x2 * x2) == E.gen("e1") * E.gen("e2")


def test_express_rejects_non_symmetric():
    R = root_ring(3)
    with pytest.raises(ValueError):
        express_in_elementary(R.gen("x1") ** 2 + R.gen("x2"))


def test_odd_weight_rejected():
    with pytest.raises(ValueError):
        elementary_ring(2, 1)


# -- multiplicative sequences --------------------------------------------------------------

def test_l_series_coefficients():
    f = l_series(6)
    assert list(f.coeffs[:4]) == [1, Fraction(1, 3), Fraction(-1, 45), Fraction(2, 945)]
    for k in range(7):
        assert f[k] == Fraction(2 ** (2 * k)) * bernoulli(2 * k) / factorial(2 * k)


def test_l_series_matches_sympy_expansion():
    t = sympy.Symbol("t")
    ser = sympy.series(sympy.sqrt(t) / sympy.tanh(sympy.sqrt(t)), t, 0, 9).removeO()
    for k in range(9):
        c = ser.coeff(t, k)
        assert l_series(8)[k] == Fraction(int(c.p), int(c.q))


def test_component_examples():
    E = elementary_ring(3)
    seq = MultiplicativeSequence(total_chern_series(6))
    assert mult_seq_component(seq, 0, 3) == E.one()
    assert mult_seq_component(seq, 2, 3) == E.gen("e2")
    assert mult_seq_component(L_CLASS, 1, 3) == E.gen("e1").scale(Fraction(1, 3))


def test_component_beyond_truncation_rejected():
    with pytest.raises(ValueError):
        mult_seq_component(MultiplicativeSequence(l_series(3)), 4, 2)


@pytest.mark.parametrize("d, m", [(1, 2), (2, 2), (3, 3), (4, 2), (4, 4)])
def test_l_components_match_sympy(d, m):
    ours = expand(l_class_component(d, m, None), m, 4)
    theirs = sympy_component(lambda t: sympy.sqrt(t) / sympy.tanh(sympy.sqrt(t)), d, m)
    assert ours.terms == theirs


def test_l_class_low_components():
    E = elementary_ring(3)
    e1, e2, e3 = (E.gen(f"e{i}") for i in (1, 2, 3))
    assert l_class_component(1, 3) == e1.scale(Fraction(1, 3))
    assert l_class_component(2, 3) == (e2.scale(7) - e1 * e1).scale(Fraction(1, 45))
    assert l_class_component(3, 3) == (e3.scale(62) - (e1 * e2).scale(13) + (e1 ** 3).scale(2)).scale(Fraction(1, 945))


@pytest.mark.parametrize("d", range(1, 11))
def test_e1_power_coefficient_is_series_coefficient(d):
    L = l_class_component(d, 2)
    c = L.coefficient((d, 0))
    assert c != 0
    assert c == l_series(12)[d]


def test_e1_power_coefficient_matches_doubled_series_value():
    # Literal form of the stated invariant: coefficient equals 2 * 2^{2d} B_{2d} / (2d)!.
    # The expansion above gives f_d itself, so this fails for every d.
    mismatched = [d for d in range(1, 11) if l_class_component(d, 2).coefficient((d, 0))
                  != 2 * Fraction(2 ** (2 * d)) * bernoulli(2 * d) / factorial(2 * d)]
    assert mismatched == []


def _split_union(seq, d, m1, m2):
    """F_d(x, y) computed in m1 + m2 variables versus sum_{i+j=d} F_i(x) F_j(y)."""
    m = m1 + m2
    R = root_ring(m, 4)
    lhs = expand(seq.component(d, m, 4), m, 4)
    left = {f"x{i}": R.gen(f"x{i}") for i in range(1, m1 + 1)}
    right = {f"x{i}": R.gen(f"x{m1 + i}") for i in range(1, m2 + 1)}
    rhs = R.zero()
    for i in range(d + 1):
        a = substitute(expand(seq.component(i, m1, 4), m1, 4), left, R)
        b = substitute(expand(seq.component(d - i, m2, 4), m2, 4), right, R)
        rhs = rhs + a * b
    return lhs, rhs


@pytest.mark.parametrize("d", range(0, 6))
@pytest.mark.parametrize("split", [(1, 1), (1, 2), (2, 2)])
def test_multiplicativity(d, split):
    lhs, rhs = _split_union(L_CLASS, d, *split)
    assert lhs == rhs


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.integers(0, 4), st.integers(1, 3))
def test_multiplicativity_random_series(coeffs, d, m1):
    seq = MultiplicativeSequence(PowerSeries([1] + [Fraction(c, 2) for c in coeffs] + [0, 0]))
    lhs, rhs = _split_union(seq, d, m1, 1)
    assert lhs == rhs


@pytest.mark.parametrize("d, m", [(d, m) for m in range(2, 6) for d in range(1, m + 1)])
def test_stability_under_dropping_a_variable(d, m):
    E_small = elementary_ring(m - 1)
    images = {f"e{i}": E_small.gen(f"e{i}") for i in range(1, m)}
    images[f"e{m}"] = E_small.zero()
    assert substitute(l_class_component(d, m), images, E_small) == l_class_component(d, m - 1)


# -- characters --------------------------------------------------------------------------

def test_character_examples():
    assert character_component("chern", 1, 3) == e(1, 3, 2)
    E2 = elementary_ring(2)
    assert character_component("pontrjagin", 2, 2, normalized=False) == E2.gen("e1") ** 2 - E2.gen("e2").scale(2)
    assert character_component("pontrjagin", 1, 3) == e(1, 3, 4)
    assert character_component("chern", 3, 2) == power_sum(3, 2, 2).scale(Fraction(1, 6))
    with pytest.raises(ValueError):
        character_component("todd", 1, 2)


# -- power-series lemma ---------------------------------------------------------------------

@pytest.mark.parametrize("d, m", [(2, 3), (3, 3), (2, 4), (4, 3)])
def test_powerseries_lemma_l_series(d, m):
    assert verify_powerseries_lemma(L_CLASS, d, m)


def test_powerseries_lemma_needs_nonzero_coefficients():
    with pytest.raises(ValueError):
        verify_powerseries_lemma(MultiplicativeSequence(total_chern_series(6)), 3, 3)


def test_powerseries_lemma_needs_three_variables():
    with pytest.raises(ValueError):
        verify_powerseries_lemma(L_CLASS, 2, 2)
