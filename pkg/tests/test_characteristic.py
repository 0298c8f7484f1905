import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import homogeneous
from mmm_calc.algebra import substitute
from mmm_calc.characteristic import (
    SubspaceSpec,
    admissible_splits,
    closed_form_kernel,
    full_basis,
    kernel_intersection,
    l_class,
    ph_class,
    pont_basis,
    pont_element,
    pont_part,
    pont_ring,
    restriction_ring,
    so_ring,
    su_ring,
    tilde_restriction,
    whitney_restriction,
)
from mmm_calc.symmetric import _elementary_in_roots, root_ring


def partitions(d, max_part):
    if d == 0:
        return 1
    return sum(partitions(d - k, k) for k in range(1, min(d, max_part) + 1))


# -- presentations ----------------------------------------------------------------------

def test_so_ring_presentations():
    R = so_ring(4)
    assert R.table.names == ("p4", "p8", "chi")
    assert R.reduce(R.gen("chi") ** 2) == R.gen("p8")
    assert so_ring(7).table.names == ("p4", "p8", "p12")
    assert so_ring(7).is_free


def test_su_ring_has_no_c2():
    assert su_ring(3).table.names == ("c4", "c6")
    assert su_ring(4).table.degrees == (4, 6, 8)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 9])
@pytest.mark.parametrize("d", range(0, 7))
def test_pont_dimension_is_partition_count(n, d):
    assert len(pont_basis(n, 4 * d)) == partitions(d, n // 2)


def test_pont_basis_examples():
    R = so_ring(4)
    p4, p8 = R.gen("p4"), R.gen("p8")
    assert set(pont_basis(4, 8)) == {p4 * p4, p8}
    assert set(pont_basis(4, 12)) == {p4 ** 3, p4 * p8}
    assert pont_basis(2, 8) == [so_ring(2).gen("p4") ** 2]
    with pytest.raises(ValueError):
        pont_basis(4, 6)


def test_full_basis_counts():
    # H^{4k}(BSO(4)) = Pont^{4k} + chi Pont^{4k-4}
    for k in range(1, 6):
        assert len(full_basis(4, 4 * k)) == partitions(k, 2) + partitions(k - 1, 2)


def test_subspace_rejects_dependent_basis():
    R = so_ring(4)
    with pytest.raises(ValueError):
        SubspaceSpec(4, 8, [R.gen("p8"), R.gen("p8").scale(2)])


# -- Whitney restriction --------------------------------------------------------------------

def _root_oracle(n1, n2, x, img):
    """Evaluate both x and its image on Pontrjagin roots split into blocks of size m1, m2."""
    m1, m2 = n1 // 2, n2 // 2
    m = (n1 + n2) // 2
    R = root_ring(m, 4)
    es = _elementary_in_roots(m, 4)
    x_roots = substitute(x, {f"p{4 * i}": es[i] for i in range(1, m + 1)} | (
        {"chi": R.zero()} if "chi" in x.table else {}), R, check=False)
    left = _elementary_in_roots(m1, 4)
    right = _elementary_in_roots(m2, 4)
    lift_l = {f"x{i}": R.gen(f"x{i}") for i in range(1, m1 + 1)}
    lift_r = {f"x{i}": R.gen(f"x{m1 + i}") for i in range(1, m2 + 1)}
    images = {}
    for i in range(1, m1 + 1):
        images[f"p{4 * i}_1"] = substitute(left[i], lift_l, R)
    for i in range(1, m2 + 1):
        images[f"p{4 * i}_2"] = substitute(right[i], lift_r, R) if m2 else R.zero()
    img_roots = substitute(img, images, R)
    return x_roots, img_roots


@pytest.mark.parametrize("n1, n2", [(2, 2), (2, 4), (4, 4), (2, 5), (4, 3), (6, 3)])
def test_whitney_restriction_matches_root_partition(n1, n2):
    n = n1 + n2
    for D in (4, 8, 12, 16):
        for b in pont_basis(n, D):
            img = whitney_restriction(n1, n2, b, truncate=False)
            lhs, rhs = _root_oracle(n1, n2, b, img)
            assert lhs == rhs


def test_whitney_examples():
    T = restriction_ring(2, 2)
    R = T.ring
    x = so_ring(4).gen("p4")
    assert whitney_restriction(2, 2, x, truncate=False) == R.gen("p4_1") + R.gen("p4_2")
    assert whitney_restriction(2, 2, so_ring(4).one(), truncate=False) == R.one()
    assert whitney_restriction(2, 2, ph_class(2, 4)).is_zero()


@pytest.mark.parametrize("n1, n2", [(2, 4), (4, 4), (2, 5)])
@given(data=st.data())
def test_whitney_is_multiplicative(n1, n2, data):
    R = so_ring(n1 + n2)
    x = data.draw(homogeneous(R, [4, 8, 12]))
    y = data.draw(homogeneous(R, [4, 8]))
    if "chi" in R.table:
        x, y = _drop_chi(x, R), _drop_chi(y, R)
    T = restriction_ring(n1, n2).ring
    lhs = whitney_restriction(n1, n2, R.reduce(x * y), truncate=False)
    rhs = T.reduce(whitney_restriction(n1, n2, x, truncate=False) * whitney_restriction(n1, n2, y, truncate=False))
    assert lhs == rhs


@pytest.mark.parametrize("n1, n2", [(2, 5), (4, 3), (2, 7)])
def test_l_class_is_grouplike(n1, n2):
    n = n1 + n2
    T = restriction_ring(n1, n2)
    for d in range(1, 5):
        lhs = whitney_restriction(n1, n2, l_class(d, n), truncate=False)
        rhs = T.ring.zero()
        for i in range(d + 1):
            a = T.left(_pont(l_class(i, n1), n1)) if i else T.ring.one()
            b = T.right(_pont(l_class(d - i, n2), n2)) if d - i else T.ring.one()
            rhs = rhs + a * b
        assert lhs == T.ring.reduce(rhs)


def _pont(x, n):
    return pont_part(x, n)


def _drop_chi(x, R):
    return substitute(x, {**{g: R.gen(g) for g in R.table.names}, "chi": R.zero()}, R, check=False)


def test_split_parts_must_be_positive():
    T = restriction_ring(3, 4).ring
    assert whitney_restriction(3, 4, so_ring(7).gen("p4"), truncate=False) == T.gen("p4_1") + T.gen("p4_2")
    with pytest.raises(ValueError):
        whitney_restriction(0, 6, so_ring(6).gen("p4"))


# -- tilde restriction --------------------------------------------------------------------

def test_tilde_kills_l_classes():
    for n in (7, 9):
        for n1, n2 in admissible_splits(n):
            for d in range(1, 6):
                assert tilde_restriction(n1, n2, l_class(d, n)).is_zero()


def test_tilde_p4_survives_untruncated():
    x = so_ring(7).gen("p4")
    img = tilde_restriction(2, 5, x, truncate=False)
    T = restriction_ring(2, 5).ring
    assert img == T.gen("p4_1")
    assert tilde_restriction(2, 5, so_ring(7).zero()).is_zero()


def test_tilde_requires_odd_right_factor():
    with pytest.raises(ValueError):
        tilde_restriction(4, 4, so_ring(8).gen("p4"))


# -- kernels ---------------------------------------------------------------------------

def test_kernel_examples():
    R4 = so_ring(4)
    K = kernel_intersection(4, 8)
    assert K.dimension == 1
    assert K.contains(R4.gen("p4") ** 2 - R4.gen("p8").scale(2))
    assert kernel_intersection(6, 12).same_as(SubspaceSpec(6, 12, [ph_class(3, 6)]))
    K7 = kernel_intersection(7, 8)
    assert K7.dimension == 2
    assert K7.same_as(SubspaceSpec(7, 8, [ph_class(2, 7), l_class(2, 7)]))


def test_closed_form_examples():
    R4 = so_ring(4)
    assert closed_form_kernel(4, 8).same_as(SubspaceSpec(4, 8, [R4.gen("p4") ** 2 - R4.gen("p8").scale(2)]))
    assert closed_form_kernel(7, 12).dimension == 2
    assert closed_form_kernel(6, 4).dimension == 0


@pytest.mark.parametrize("n", [4, 6, 8, 7, 9])
@pytest.mark.parametrize("D", range(4, 25, 4))
def test_kernel_equals_closed_form(n, D):
    assert kernel_intersection(n, D).same_as(closed_form_kernel(n, D))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_small_dimensions_rejected(n):
    with pytest.raises(ValueError):
        kernel_intersection(n, 8)


def test_kernel_degree_must_be_multiple_of_four():
    with pytest.raises(ValueError):
        kernel_intersection(6, 10)


def test_pont_element_round_trip():
    from mmm_calc.symmetric import power_sum
    x = pont_element(power_sum(2, 2), 4)
    R = so_ring(4)
    assert x == R.gen("p4") ** 2 - R.gen("p8").scale(2)
    assert pont_ring(4).table.names == ("p4", "p8")
