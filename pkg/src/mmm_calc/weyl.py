"""Weyl averaging for the SU(3) torus: an independent route to the CP^2 kernel.

H*(BT) is modelled by Q[x1, x2] (degree 2 each) with x3 = -x1 - x2.  The
Weyl group S_3 permutes (x1, x2, x3).  The composite BT -> BSO(4) sends
chi to z1 = (x2 - x1)(x3 - x1) and p4 to z1 + s1, where s_i = z1^i + z2^i
+ z3^i.  Averaging over S_3 realizes the transfer BT -> BSU(3).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from .algebra import GradedPolynomial, RingPresentation, determinant, nullspace, rank, rref, substitute
from .characteristic import SubspaceSpec, combine, coordinates, full_basis, l_class, pont_basis, so_ring
from .gysin import cp2_bundle, kappa

PERMUTATIONS = tuple(permutations(range(3)))


class TorusModel:
    """Q[x1, x2] with the S_3 action through x3 = -x1 - x2."""

    def __init__(self):
        self.ring = RingPresentation.free([("x1", 2), ("x2", 2)], name="H*(BT)")
        x1, x2 = self.ring.gen("x1"), self.ring.gen("x2")
        self.x = (x1, x2, -x1 - x2)

    def act(self, sigma, p: GradedPolynomial) -> GradedPolynomial:
        """sigma^*: x_i -> x_{sigma(i)}."""
        return substitute(p, {"x1": self.x[sigma[0]], "x2": self.x[sigma[1]]}, self.ring)

    def is_invariant(self, p: GradedPolynomial) -> bool:
        return all(self.act(s, p) == p for s in PERMUTATIONS)

    def z(self, i: int) -> GradedPolynomial:
        """z_i = prod_{j != i} (x_j - x_i), i = 1, 2, 3."""
        xi = self.x[i - 1]
        a, b = (self.x[j] for j in range(3) if j != i - 1)
        return (a - xi) * (b - xi)

    def s(self, i: int) -> GradedPolynomial:
        if i == 0:
            return self.ring.const(3)
        return self.z(1) ** i + self.z(2) ** i + self.z(3) ** i

    def invariant_dimension(self, degree: int) -> int:
        """Partitions of degree/2 into parts 2 and 3."""
        if degree % 2:
            return 0
        k = degree // 2
        return sum(1 for b in range(k // 3 + 1) if (k - 3 * b) % 2 == 0)

    def elementary(self, i: int) -> GradedPolynomial:
        x1, x2, x3 = self.x
        return {0: self.ring.one(), 1: x1 + x2 + x3, 2: x1 * x2 + x1 * x3 + x2 * x3, 3: x1 * x2 * x3}[i]


@lru_cache(maxsize=None)
def torus() -> TorusModel:
    return TorusModel()


def phi_average(p: GradedPolynomial) -> GradedPolynomial:
    """sum over S_3 of sigma^* p; the result is checked to be invariant."""
    T = torus()
    out = T.ring.zero()
    for s in PERMUTATIONS:
        out = out + T.act(s, p)
    if not T.is_invariant(out):
        raise ArithmeticError("average is not invariant")
    return out


def chi_p4_images() -> tuple[GradedPolynomial, GradedPolynomial]:
    """Images of chi and p4 under BT -> BSO(4), from the tangent roots x2 - x1, x3 - x1."""
    T = torus()
    x1, x2, x3 = T.x
    w1, w2 = x2 - x1, x3 - x1
    return w1 * w2, w1 * w1 + w2 * w2


def bso4_to_torus(y: GradedPolynomial) -> GradedPolynomial:
    """(h g)^*: H*(BSO(4)) -> H*(BT)."""
    T = torus()
    chi, p4 = chi_p4_images()
    return substitute(y, {"p4": p4, "p8": chi * chi, "chi": chi}, T.ring)


def bsu3_to_torus(y: GradedPolynomial) -> GradedPolynomial:
    """f^*: c4 -> e2(x), c6 -> e3(x)."""
    T = torus()
    return substitute(y, {"c4": T.elementary(2), "c6": T.elementary(3)}, T.ring)


def binomial_matrix(d: int) -> tuple[list[list[int]], Fraction]:
    """C with c_{jk} = binom(d - k, j), 0 <= j, k <= d, and its determinant."""
    if d < 1:
        raise ValueError("need d >= 1")
    C = [[comb(d - k, j) for k in range(d + 1)] for j in range(d + 1)]
    det = determinant(C)
    if abs(det) != 1:
        raise ArithmeticError(f"binomial matrix has determinant {det}")
    return C, det


def antidiagonal_ones(d: int) -> bool:
    C, _ = binomial_matrix(d)
    return all(C[j][d - j] == 1 for j in range(d + 1)) and all(
        C[j][k] == 0 for j in range(d + 1) for k in range(d + 1) if j + k > d)


def v_element(k: int, d: int, T: TorusModel | None = None) -> GradedPolynomial:
    """v_{k,d} = z1^k (z1 + s1)^{d-k} in the torus model."""
    T = T or torus()
    z1 = T.z(1)
    return z1 ** k * (z1 + T.s(1)) ** (d - k)


def phi_v_formula(k: int, d: int) -> GradedPolynomial:
    """2 sum_j binom(d-k, j) s1^j s_{d-j}."""
    T = torus()
    acc = T.ring.zero()
    for j in range(d - k + 1):
        acc = acc + (T.s(1) ** j * T.s(d - j)).scale(2 * comb(d - k, j))
    return acc


def _rank_of(polys: list[GradedPolynomial]) -> int:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return 0
    monos = sorted({m for p in polys for m in p.terms})
    rows = [[p.coefficient(m) for m in monos] for p in polys]
    return rank(rows, len(monos))


def image_dimension(d: int) -> int:
    """rank of Phi on span{v_{k,d}} inside the torus model."""
    if d < 2:
        raise ValueError("need d >= 2")
    return _rank_of([phi_average(v_element(k, d)) for k in range(d + 1)])


# free model Q[z1, z2, z3] with S_3 permuting the z_i

@lru_cache(maxsize=None)
def _free_z() -> RingPresentation:
    return RingPresentation.free([("z1", 4), ("z2", 4), ("z3", 4)], name="Q[z1,z2,z3]")


def _free_phi(p: GradedPolynomial) -> GradedPolynomial:
    R = _free_z()
    z = [R.gen(f"z{i}") for i in (1, 2, 3)]
    out = R.zero()
    for s in PERMUTATIONS:
        out = out + substitute(p, {f"z{i + 1}": z[s[i]] for i in range(3)}, R)
    return out


def image_dimension_free(d: int) -> int:
    """The same rank computed with z1, z2, z3 treated as independent variables."""
    if d < 2:
        raise ValueError("need d >= 2")
    R = _free_z()
    z1, z2, z3 = (R.gen(f"z{i}") for i in (1, 2, 3))
    s1 = z1 + z2 + z3
    return _rank_of([_free_phi(z1 ** k * (z1 + s1) ** (d - k)) for k in range(d + 1)])


def sd_outside_span_torus(d: int) -> bool:
    """s_d is not a combination of s_j s1^{d-j}, 0 <= j < d, in the torus model."""
    T = torus()
    span = [T.s(j) * T.s(1) ** (d - j) for j in range(d)]
    return _rank_of(span + [T.s(d)]) > _rank_of(span)


def sd_outside_span_restricted(d: int) -> bool:
    """The same question in Q[z1, z2, z3] restricted to z1 + z2 + z3 = 0."""
    R = RingPresentation.free([("z1", 4), ("z2", 4)])
    z1, z2 = R.gen("z1"), R.gen("z2")
    z3 = -z1 - z2
    s = [R.const(3)] + [z1 ** i + z2 ** i + z3 ** i for i in range(1, d + 1)]
    span = [s[j] * s[1] ** (d - j) for j in range(d)]
    return _rank_of(span + [s[d]]) > _rank_of(span)


# -- kernel through the averaging operator ---------------------------------------------

def decompose(x: GradedPolynomial, d: int) -> tuple[Fraction, GradedPolynomial]:
    """x = a L_{4d+4} + chi F with F in H^{4d}(BSO(4)); returns (a, F)."""
    R = so_ring(4)
    x = R.reduce(x)
    L = l_class(d + 1, 4)
    top = (d + 1, 0, 0)
    a = x.coefficient(top) / L.coefficient(top)
    rest = R.reduce(x - L.scale(a))
    chi = R.gen("chi")
    F = R.zero()
    for mono, c in rest.terms.items():
        p4e, p8e, chie = mono
        if chie:
            F = F + GradedPolynomial(R.table, {(p4e, p8e, 0): c})
        else:
            if p8e == 0:
                raise ArithmeticError("decomposition left a pure p4 power")
            # p8 = chi^2, so p8^k p4^j = chi * (chi p8^{k-1} p4^j)
            F = F + GradedPolynomial(R.table, {(p4e, p8e - 1, 1): c})
    if R.reduce(L.scale(a) + chi * F) != x:
        raise ArithmeticError("decomposition does not reproduce x")
    return a, F


def weyl_image(x: GradedPolynomial, d: int) -> GradedPolynomial:
    """Phi((hg)^* F) for x = a L + chi F."""
    _, F = decompose(x, d)
    return phi_average(bso4_to_torus(F))


def kernel_via_weyl(d: int) -> SubspaceSpec:
    """Kernel of x -> Phi(F(z1, z1 + s1)) on H^{4d+4}(BSO(4))."""
    if d < 1:
        raise ValueError("need d >= 1")
    degree = 4 * d + 4
    basis = full_basis(4, degree)
    T = torus()
    target = T.ring.basis(4 * d)
    cols = [coordinates(weyl_image(b, d), target) for b in basis]
    matrix = [[cols[j][i] for j in range(len(basis))] for i in range(len(target))]
    ker = rref(nullspace(matrix, len(basis)), len(basis))
    table = so_ring(4).table
    return SubspaceSpec(4, degree, [combine(v, basis, table) for v in ker], label="ker via Weyl")


def transfer_identity(x: GradedPolynomial, d: int) -> bool:
    """2 f^*(kappa(x)) = Phi((hg)^* F): the exact matrix relation between both routes."""
    P = cp2_bundle()
    lhs = bsu3_to_torus(kappa(P, x)).scale(2)
    return lhs == weyl_image(x, d)


def pont_intersection(space: SubspaceSpec) -> SubspaceSpec:
    """space intersected with the Pontrjagin classes."""
    basis = space.ambient
    pont = {next(iter(b.terms)) for b in pont_basis(space.n, space.degree)}
    non_pont = [i for i, b in enumerate(basis) if next(iter(b.terms)) not in pont]
    M = space.matrix()
    if not M:
        return SubspaceSpec(space.n, space.degree, [], label="pont part")
    # combinations sum_i c_i v_i whose non-Pont coordinates vanish
    rows = [[M[i][j] for i in range(len(M))] for j in non_pont]
    coeffs = nullspace(rows, len(M)) if rows else nullspace([], len(M))
    vecs = [[sum((c[i] * M[i][k] for i in range(len(M))), Fraction(0)) for k in range(len(basis))] for c in coeffs]
    vecs = rref(vecs, len(basis))
    table = so_ring(space.n).table
    return SubspaceSpec(space.n, space.degree, [combine(v, basis, table) for v in vecs], label="pont part")
