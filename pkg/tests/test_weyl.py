from math import comb

import pytest
import sympy
from hypothesis import given

from conftest import homogeneous
from mmm_calc.characteristic import SubspaceSpec, full_basis, l_class, so_ring, su_ring
from mmm_calc.gysin import cp2_bundle, kappa_table
from mmm_calc.weyl import (
    PERMUTATIONS,
    antidiagonal_ones,
    binomial_matrix,
    bso4_to_torus,
    bsu3_to_torus,
    chi_p4_images,
    decompose,
    image_dimension,
    image_dimension_free,
    kernel_via_weyl,
    phi_average,
    phi_v_formula,
    pont_intersection,
    sd_outside_span_restricted,
    sd_outside_span_torus,
    torus,
    transfer_identity,
    v_element,
)

T = torus()
X1, X2 = sympy.symbols("x1 x2")
X3 = -X1 - X2


def to_sympy(p):
    out = sympy.Integer(0)
    for (a, b), c in p.terms.items():
        out += sympy.Rational(c.numerator, c.denominator) * X1 ** a * X2 ** b
    return sympy.expand(out)


def sympy_z(i):
    xs = [X1, X2, X3]
    xi = xs[i - 1]
    return sympy.expand(sympy.prod([xj - xi for j, xj in enumerate(xs) if j != i - 1]))


# -- torus model -----------------------------------------------------------------------

@pytest.mark.parametrize("i", [1, 2, 3])
def test_z_basis_matches_sympy(i):
    assert to_sympy(T.z(i)) == sympy_z(i)


def test_permutations_permute_z_basis():
    zs = [T.z(i) for i in (1, 2, 3)]
    for s in PERMUTATIONS:
        images = [T.act(s, z) for z in zs]
        assert sorted(map(str, images)) == sorted(map(str, zs))


@pytest.mark.parametrize("degree", range(0, 25, 2))
def test_invariant_dimension_matches_averaging_rank(degree):
    avgs = [phi_average(b) for b in T.ring.basis(degree)]
    M = sympy.Matrix([[a.coefficient(m) for m in sorted({m for b in avgs for m in b.terms})] for a in avgs]) \
        if any(not a.is_zero() for a in avgs) else sympy.zeros(1, 1)
    assert M.rank() == T.invariant_dimension(degree)


def test_phi_examples():
    q = T.elementary(2) * T.elementary(3)
    assert phi_average(q) == q.scale(6)
    assert phi_average(T.z(1)) == T.s(1).scale(2)
    assert phi_average(T.ring.zero()).is_zero()


@given(homogeneous(T.ring, range(2, 13, 2)))
def test_phi_is_invariant_and_idempotent_up_to_six(p):
    avg = phi_average(p)
    assert T.is_invariant(avg)
    assert phi_average(avg) == avg.scale(6)


def test_chi_p4_images():
    chi, p4 = chi_p4_images()
    assert chi == T.z(1)
    assert p4 == T.z(1).scale(2) + T.z(2) + T.z(3)
    assert to_sympy(chi) == sympy.expand((X2 - X1) * (X3 - X1))


def test_chi_squared_and_p8_agree_in_torus():
    R = so_ring(4)
    assert bso4_to_torus(R.gen("chi") ** 2) == bso4_to_torus(R.gen("p8"))
    assert bso4_to_torus(R.gen("p8")) == T.z(1) ** 2


def test_bsu3_images_are_invariant():
    R = su_ring(3)
    for y in (R.gen("c4"), R.gen("c6"), R.gen("c4") * R.gen("c6")):
        assert T.is_invariant(bsu3_to_torus(y))
    assert to_sympy(bsu3_to_torus(R.gen("c6"))) == sympy.expand(X1 * X2 * X3)


# -- binomial matrix ---------------------------------------------------------------------

def test_binomial_matrix_examples():
    assert binomial_matrix(1) == ([[1, 1], [1, 0]], -1)
    assert binomial_matrix(2) == ([[1, 1, 1], [2, 1, 0], [1, 0, 0]], -1)
    with pytest.raises(ValueError):
        binomial_matrix(0)


@pytest.mark.parametrize("d", range(1, 9))
def test_binomial_determinant_unimodular(d):
    C, det = binomial_matrix(d)
    assert abs(det) == 1
    assert det == sympy.Matrix(C).det()
    assert antidiagonal_ones(d)


# -- averaging the v-elements -----------------------------------------------------------

@pytest.mark.parametrize("d", range(1, 6))
def test_phi_v_matches_formula(d):
    for k in range(d + 1):
        assert phi_average(v_element(k, d)) == phi_v_formula(k, d)


@pytest.mark.parametrize("d", range(2, 8))
def test_image_dimension_bounded_by_invariants(d):
    assert image_dimension(d) == T.invariant_dimension(4 * d)


@pytest.mark.parametrize("d", range(2, 8))
def test_image_dimension_free_model(d):
    assert image_dimension_free(d) == d


@pytest.mark.parametrize("d, expected", [(2, 2), (3, 3)])
def test_image_dimension_stated_values(d, expected):
    # stated rank of Phi on span{v_{k,d}}; the torus model gives 1 and 2 here
    assert image_dimension(d) == expected


@pytest.mark.parametrize("d", range(2, 7))
def test_sd_outside_span_in_torus(d):
    assert sd_outside_span_torus(d)


@pytest.mark.parametrize("d", range(2, 8))
def test_sd_outside_span_with_s1_killed(d):
    assert sd_outside_span_restricted(d)


# -- kernel via averaging -----------------------------------------------------------------

def test_decompose_reconstructs():
    R = so_ring(4)
    for d in range(1, 5):
        for b in full_basis(4, 4 * d + 4):
            a, F = decompose(b, d)
            assert R.reduce(l_class(d + 1, 4).scale(a) + R.gen("chi") * F) == R.reduce(b)


def test_kernel_via_weyl_contains_stated_classes():
    R = so_ring(4)
    K = kernel_via_weyl(1)
    assert K.contains(l_class(2, 4))
    assert K.contains((R.gen("p4") - R.gen("chi")) ** 2)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_kernel_via_weyl_equals_gysin_kernel(d):
    gysin = kappa_table(cp2_bundle(), 4, 4 * d + 4, "full").kernel()
    assert kernel_via_weyl(d).same_as(gysin)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_kernel_via_weyl_is_two_dimensional(d):
    assert kernel_via_weyl(d).dimension == 2


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_pont_part_is_span_of_l(d):
    P = pont_intersection(kernel_via_weyl(d))
    assert P.same_as(SubspaceSpec(4, 4 * d + 4, [l_class(d + 1, 4)]))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_transfer_identity_on_basis(d):
    for b in full_basis(4, 4 * d + 4):
        assert transfer_identity(b, d)


def test_kernel_dimension_counts():
    assert [kernel_via_weyl(d).dimension for d in range(1, 5)] == [2, 3, 3, 4]
