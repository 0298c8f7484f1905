"""Projective bundles, vertical tangent classes and the Gysin pushforward.

For a complex bundle V of rank r = m + 1 over X, the cohomology of P(V)
is H*(X)[z] / (sum_i c_{2i}(V) z^{r-i}) with {1, z, ..., z^m} a free
basis.  The Gysin map is the coefficient of z^m in the normal form.  The
vertical tangent bundle satisfies T + C = q*V (x) L*, so its Chern roots
are v_i + z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .algebra import (
    GradedPolynomial,
    RingPresentation,
    extend_ring,
    nullspace,
    rank,
    rref,
    substitute,
    tensor,
)
from .characteristic import (
    SubspaceSpec,
    combine,
    coordinates,
    full_basis,
    pont_basis,
    pont_names,
    pont_ring,
    so_ring,
    su_ring,
    whitney_restriction,
    restriction_ring,
)
from .symmetric import MultiplicativeSequence, character_component, elementary_ring


# -- bundles -----------------------------------------------------------------

@dataclass(frozen=True)
class BundleSpec:
    """Complex bundle of the given rank over ``base``; ``chern`` lists c2, c4, ... (missing ones are 0)."""

    base: RingPresentation
    rank: int
    chern: tuple[GradedPolynomial, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("bundle rank must be at least 1")
        chern = tuple(self.chern)
        if len(chern) > self.rank:
            raise ValueError(f"{len(chern)} Chern classes given for a rank-{self.rank} bundle")
        out = []
        for i, c in enumerate(chern, start=1):
            if isinstance(c, (int, Fraction)):
                if c != 0:
                    raise ValueError(f"c{2 * i} must have degree {2 * i}")
                c = self.base.zero()
            if c.table != self.base.table:
                raise ValueError(f"c{2 * i} is not an element of the base ring")
            if not c.is_zero() and c.degrees() != {2 * i}:
                raise ValueError(f"c{2 * i} has degree {sorted(c.degrees())}, expected {2 * i}")
            out.append(self.base.reduce(c))
        out += [self.base.zero()] * (self.rank - len(out))
        object.__setattr__(self, "chern", tuple(out))

    def c(self, i: int) -> GradedPolynomial:
        """c_{2i}(V); c_0 = 1."""
        if i == 0:
            return self.base.one()
        if i > self.rank:
            return self.base.zero()
        return self.chern[i - 1]


class ProjectiveBundle:
    """The projectivization q: P(V) -> X with its class z = c_2(L*)."""

    def __init__(self, spec: BundleSpec, z_name: str | None = None):
        if z_name is None:
            z_name = "z" if "z" not in spec.base.table else "zeta"
        self.spec = spec
        self.base = spec.base
        self.m = spec.rank - 1
        self.z_name = z_name
        r = spec.rank
        table = spec.base.table.extend([(z_name, 2)])
        z = GradedPolynomial.gen(table, z_name)
        extra = 1

        def lift(p):
            return GradedPolynomial(table, {mono + (0,) * extra: c for mono, c in p.terms.items()})

        self._lift_raw = lift
        relation = GradedPolynomial.zero(table)
        for i in range(r + 1):
            relation = relation + lift(spec.c(i)) * z ** (r - i)
        self.relation = relation
        name = f"P({spec.name or 'V'})"
        self.total, _ = extend_ring(spec.base, [(z_name, 2)], [relation], name=name)
        self.z = self.total.gen(z_name)

    def __repr__(self) -> str:
        return f"ProjectiveBundle({self.spec.name or 'V'}, fibre CP^{self.m})"

    @property
    def fibre_dimension(self) -> int:
        return 2 * self.m

    @property
    def euler_number(self) -> int:
        return self.m + 1

    def pullback(self, y: GradedPolynomial) -> GradedPolynomial:
        if y.table != self.base.table:
            raise ValueError("pullback needs an element of the base ring")
        return self.total.reduce(self._lift_raw(y))

    def components(self, x: GradedPolynomial) -> list[GradedPolynomial]:
        """Base coefficients (a_0, ..., a_m) with x = sum a_i z^i."""
        if x.table != self.total.table:
            raise ValueError("element is not in the total ring of this bundle")
        x = self.total.reduce(x)
        k = len(self.base.table)
        parts: list[dict] = [{} for _ in range(self.m + 1)]
        for mono, c in x.terms.items():
            parts[mono[k]][mono[:k]] = c
        return [GradedPolynomial(self.base.table, p) for p in parts]

    def gysin(self, x: GradedPolynomial) -> GradedPolynomial:
        """q_!: the z^m coordinate of the normal form."""
        return self.components(x)[self.m]

    def transfer(self, x: GradedPolynomial) -> GradedPolynomial:
        """f_!(chi(T_v) x)."""
        _, euler = real_classes(vertical_tangent(self))
        return self.gysin(self.total.reduce(euler * x))


def projectivize(spec: BundleSpec, z_name: str | None = None) -> ProjectiveBundle:
    return ProjectiveBundle(spec, z_name)


POINT = RingPresentation.free([], name="pt")


def trivial_bundle(m: int) -> ProjectiveBundle:
    """CP^m over a point."""
    return ProjectiveBundle(BundleSpec(POINT, m + 1, (), name=f"C^{m + 1}"))


def cp2_bundle() -> ProjectiveBundle:
    """Universal CP^2-bundle: the projectivized rank-3 bundle over BSU(3)."""
    base = su_ring(3)
    return ProjectiveBundle(BundleSpec(base, 3, (base.zero(), base.gen("c4"), base.gen("c6")), name="E3"))


def universal_cpm_bundle(m: int) -> ProjectiveBundle:
    base = su_ring(m + 1)
    chern = [base.zero()] + [base.gen(f"c{2 * i}") for i in range(2, m + 2)]
    return ProjectiveBundle(BundleSpec(base, m + 1, tuple(chern), name=f"E{m + 1}"))


def u_ring() -> RingPresentation:
    return RingPresentation.free([("u", 4)], name="BSU(2)")


def su2_plus_trivial(m: int) -> ProjectiveBundle:
    """P(V + C^{m-1}) over BSU(2), V universal with c4 = u: a CP^m-bundle."""
    if m < 1:
        raise ValueError("need m >= 1")
    base = u_ring()
    return ProjectiveBundle(BundleSpec(base, m + 1, (base.zero(), base.gen("u")), name=f"V+C^{m - 1}"))


# -- vertical tangent ------------------------------------------------------------

@dataclass(frozen=True)
class VerticalTangentData:
    bundle: ProjectiveBundle
    chern: tuple[GradedPolynomial, ...]  # c_0 .. c_{2m} of T_v

    @property
    def rank(self) -> int:
        return len(self.chern) - 1

    def c(self, j: int) -> GradedPolynomial:
        if j > self.rank:
            return self.bundle.total.zero()
        return self.chern[j]


def vertical_tangent(P: ProjectiveBundle) -> VerticalTangentData:
    """Chern classes e_j(v_1 + z, ..., v_r + z), j <= m, reduced in the total ring."""
    r = P.spec.rank
    R = P.total
    z = P.z
    base_c = [P.pullback(P.spec.c(i)) for i in range(r + 1)]

    def e(j: int) -> GradedPolynomial:
        acc = R.zero()
        for i in range(j + 1):
            k = comb(r - i, j - i)
            if k and not base_c[i].is_zero():
                acc = acc + base_c[i] * z ** (j - i) * k
        return R.reduce(acc)

    if not e(r).is_zero():
        raise ArithmeticError("top Chern class of q*V (x) L* does not vanish: inconsistent relation")
    return VerticalTangentData(P, tuple(e(j) for j in range(r)))


def pontrjagin_from_chern(chern: Sequence[GradedPolynomial], ring: RingPresentation) -> list[GradedPolynomial]:
    """p_{4k} = e_k(w_1^2, ...) = (-1)^k sum_{i+j=2k} (-1)^j c_{2i} c_{2j}; returns p_0 .. p_{4r}."""
    r = len(chern) - 1

    def c(i):
        return chern[i] if 0 <= i <= r else ring.zero()

    out = []
    for k in range(r + 1):
        acc = ring.zero()
        for i in range(0, 2 * k + 1):
            j = 2 * k - i
            if i > r or j > r:
                continue
            term = c(i) * c(j)
            acc = acc + term if j % 2 == 0 else acc - term
        out.append(ring.reduce(acc if k % 2 == 0 else -acc))
    return out


def real_classes(T: VerticalTangentData) -> tuple[list[GradedPolynomial], GradedPolynomial]:
    """([p4, ..., p_{4m}], euler) of the underlying oriented real bundle."""
    R = T.bundle.total
    if T.rank == 0:
        return [], R.one()
    pont = pontrjagin_from_chern(T.chern, R)[1:]
    return pont, T.chern[-1]


def tangent_images(P: ProjectiveBundle) -> dict[str, GradedPolynomial]:
    """Images of the generators of H*(BSO(2m)) under the vertical tangent classifying map."""
    pont, euler = real_classes(vertical_tangent(P))
    images = dict(zip(pont_names(P.fibre_dimension), pont))
    if P.m > 0:
        images["chi"] = euler
    return images


def evaluate(P: ProjectiveBundle, c: GradedPolynomial) -> GradedPolynomial:
    """c(T_v) in H*(P(V)).

    ``c`` may be an element of H*(BSO(2m)), or a symmetric polynomial in
    the elementary basis of m Pontrjagin roots (weight 4) or Chern roots
    (weight 2).
    """
    m = P.m
    n = 2 * m
    if m == 0:
        # zero bundle: only the constant term survives
        return P.total.const(c.constant_term())
    if c.table == so_ring(n).table:
        return substitute(c, tangent_images(P), P.total)
    if c.table == elementary_ring(m, 4).table:
        pont, _ = real_classes(vertical_tangent(P))
        return substitute(c, {f"e{i}": pont[i - 1] for i in range(1, m + 1)}, P.total)
    if c.table == elementary_ring(m, 2).table:
        T = vertical_tangent(P)
        return substitute(c, {f"e{i}": T.chern[i] for i in range(1, m + 1)}, P.total)
    raise ValueError(f"cannot evaluate a class over {c.table!r} on a CP^{m}-bundle")


def kappa(P: ProjectiveBundle, c: GradedPolynomial) -> GradedPolynomial:
    """kappa_E(c) = q_!(c(T_v)); components of degree below 2m push to 0."""
    return P.gysin(evaluate(P, c))


def kappa_sequence(P: ProjectiveBundle, seq: MultiplicativeSequence, max_index: int) -> GradedPolynomial:
    """Pushforward of the total class sum_{d <= max_index} F_d(T_v) (Pontrjagin roots)."""
    acc = P.base.zero()
    for d in range(max_index + 1):
        acc = acc + kappa(P, seq.component(d, P.m, 4))
    return acc


# -- kappa tables -------------------------------------------------------------------

@dataclass
class KappaTable:
    """Matrix of kappa from a basis of H^degree(BSO(n)) to a monomial basis of the base."""

    n: int
    degree: int
    domain: str
    domain_basis: list[GradedPolynomial]
    target_basis: list[GradedPolynomial]
    matrix: list[list[Fraction]]  # rows: target monomials, columns: domain basis
    label: str = ""

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_basis), len(self.domain_basis)

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.matrix]

    def apply(self, x: GradedPolynomial) -> list[Fraction]:
        """Image coordinates of a class in the span of the domain basis."""
        v = coordinates(x, self.domain_basis)
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.matrix]

    def image(self, x: GradedPolynomial, table) -> GradedPolynomial:
        return combine(self.apply(x), self.target_basis, table)

    def rank(self) -> int:
        return rank(self.matrix, len(self.domain_basis)) if self.matrix else 0

    def kernel_vectors(self) -> list[list[Fraction]]:
        k = len(self.domain_basis)
        if not k:
            return []
        ker = nullspace(self.matrix, k) if self.matrix else nullspace([], k)
        return rref(ker, k)

    def kernel(self) -> SubspaceSpec:
        table = so_ring(self.n).table
        basis = [combine(v, self.domain_basis, table) for v in self.kernel_vectors()]
        return SubspaceSpec(self.n, self.degree, basis, label=f"ker kappa ({self.domain})")


def domain_basis(n: int, degree: int, domain: str) -> list[GradedPolynomial]:
    if domain == "pont":
        return pont_basis(n, degree) if degree % 4 == 0 else []
    if domain == "full":
        return full_basis(n, degree)
    raise ValueError(f"unknown domain {domain!r} (expected 'pont' or 'full')")


def kappa_table(P: ProjectiveBundle, n: int, degree: int, domain: str = "pont") -> KappaTable:
    if n != P.fibre_dimension:
        raise ValueError(f"fibre dimension {n} does not match the CP^{P.m}-bundle (real dimension {P.fibre_dimension})")
    if degree <= n:
        return KappaTable(n, degree, domain, [], [], [], label=repr(P))
    dom = domain_basis(n, degree, domain)
    target = P.base.basis(degree - n)
    cols = [coordinates(kappa(P, b), target) for b in dom]
    matrix = [[cols[j][i] for j in range(len(dom))] for i in range(len(target))]
    return KappaTable(n, degree, domain, dom, target, matrix, label=repr(P))


# -- CP^m pushforward of the Chern character -----------------------------------------

def chern_character(P: ProjectiveBundle, d: int) -> GradedPolynomial:
    """ch_{2d}(T_v) in H*(P(V))."""
    m = P.m
    if m == 0:
        return P.total.zero()
    return evaluate(P, character_component("chern", d, m, normalized=True))


def ch_pushforward(m: int, K: int) -> list[Fraction]:
    """a_0..a_K with q_!(ch(T_v P(V + C^{m-1}))) = sum a_p u^p over BSU(2)."""
    if m < 2:
        raise ValueError("need m >= 2")
    P = su2_plus_trivial(m)
    out = []
    for p in range(K + 1):
        img = P.gysin(chern_character(P, m + 2 * p))
        out.append(img.coefficient((p,)))
    return out


def ch_series_product(m: int, K: int) -> list[Fraction]:
    """Coefficients of (2 cos(sqrt u) + m - 1) * sum_l (-1)^l u^l / (m+2l)!."""
    ch_v = [Fraction(2 * (-1) ** k, factorial(2 * k)) for k in range(K + 1)]
    ch_v[0] += m - 1
    lin = [Fraction((-1) ** l, factorial(m + 2 * l)) for l in range(K + 1)]
    return [sum((ch_v[k] * lin[p - k] for k in range(p + 1)), Fraction(0)) for p in range(K + 1)]


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def ch_printed_formula(m: int, p: int, double: bool) -> Fraction:
    """(-1)^p ((m-1)/(m+2p)! + sum_{k+l=p} 2/(F(m+2k) (2l)!)) with F = ! or !!."""
    F = double_factorial if double else factorial
    s = Fraction(m - 1, factorial(m + 2 * p))
    s += sum((Fraction(2, F(m + 2 * k) * factorial(2 * (p - k))) for k in range(p + 1)), Fraction(0))
    return s if p % 2 == 0 else -s


# -- sphere bundles, transfer ------------------------------------------------------

def sphere_bundle_gysin(m: int, x: GradedPolynomial) -> GradedPolynomial:
    """f_! for the universal S^{2m}-bundle BSO(2m) -> BSO(2m+1): x1 chi + x2 -> 2 x1."""
    R = so_ring(2 * m)
    if x.table != R.table:
        raise ValueError(f"element is not over H*(BSO({2 * m}))")
    x = R.reduce(x)
    target = so_ring(2 * m + 1)
    k = len(target.table)
    out = {}
    for mono, c in x.terms.items():
        if mono[k] == 1:
            out[mono[:k]] = 2 * c
    return GradedPolynomial(target.table, out)


def transfer(P: ProjectiveBundle, x: GradedPolynomial) -> GradedPolynomial:
    return P.transfer(x)


# -- products -------------------------------------------------------------------------

class ProductBundle:
    """f1 x f2: P(V1) x P(V2) -> X1 x X2."""

    def __init__(self, P1: ProjectiveBundle, P2: ProjectiveBundle):
        self.P1, self.P2 = P1, P2
        self.total_t = tensor(P1.total, P2.total, suffixes=("_1", "_2"))
        self.base_t = tensor(P1.base, P2.base, suffixes=("_1", "_2"))
        self.total = self.total_t.ring
        self.base = self.base_t.ring
        self._k1 = len(P1.base.table)
        self._k2 = len(P2.base.table)

    @property
    def fibre_dimension(self) -> int:
        return self.P1.fibre_dimension + self.P2.fibre_dimension

    def cross_total(self, x1: GradedPolynomial, x2: GradedPolynomial) -> GradedPolynomial:
        return self.total.reduce(self.total_t.left(x1) * self.total_t.right(x2))

    def cross_base(self, y1: GradedPolynomial, y2: GradedPolynomial) -> GradedPolynomial:
        return self.base.reduce(self.base_t.left(y1) * self.base_t.right(y2))

    def pullback(self, y: GradedPolynomial) -> GradedPolynomial:
        k1 = self._k1
        return self.total.reduce(GradedPolynomial(
            self.total.table, {mono[:k1] + (0,) + mono[k1:] + (0,): c for mono, c in y.terms.items()}))

    def gysin(self, x: GradedPolynomial) -> GradedPolynomial:
        """Coefficient of z_1^{m1} z_2^{m2}."""
        x = self.total.reduce(x)
        k1, k2 = self._k1, self._k2
        m1, m2 = self.P1.m, self.P2.m
        out = {}
        for mono, c in x.terms.items():
            if mono[k1] == m1 and mono[k1 + 1 + k2] == m2:
                key = mono[:k1] + mono[k1 + 1:k1 + 1 + k2]
                out[key] = out.get(key, 0) + c
        return GradedPolynomial(self.base.table, out)

    def tangent_pontrjagin(self) -> list[GradedPolynomial]:
        """p_0 .. p_{4(m1+m2)} of T_v(P1) + T_v(P2)."""
        p1, _ = real_classes(vertical_tangent(self.P1))
        p2, _ = real_classes(vertical_tangent(self.P2))
        R = self.total
        a = [R.one()] + [self.total_t.left(p) for p in p1]
        b = [R.one()] + [self.total_t.right(p) for p in p2]
        out = []
        for k in range(len(a) + len(b) - 1):
            acc = R.zero()
            for i in range(k + 1):
                if i < len(a) and k - i < len(b):
                    acc = acc + a[i] * b[k - i]
            out.append(R.reduce(acc))
        return out


def product_kappa_direct(P1: ProjectiveBundle, P2: ProjectiveBundle, x: GradedPolynomial) -> GradedPolynomial:
    """kappa of a Pontrjagin class on the product bundle, from the tangent classes of the product."""
    prod = ProductBundle(P1, P2)
    n = prod.fibre_dimension
    pont = prod.tangent_pontrjagin()
    if x.table == so_ring(n).table:
        from .characteristic import pont_part
        x = pont_part(x, n)
    images = {name: pont[k] for k, name in enumerate(pont_names(n), start=1)}
    return prod.gysin(substitute(x, images, prod.total))


def product_kappa(P1: ProjectiveBundle, P2: ProjectiveBundle, x: GradedPolynomial) -> GradedPolynomial:
    """(kappa_1 (x) kappa_2)(r(x)) with the product sign (-1)^{n2 |a|} on a (x) b."""
    n1, n2 = P1.fibre_dimension, P2.fibre_dimension
    prod = ProductBundle(P1, P2)
    img = whitney_restriction(n1, n2, x, truncate=False)
    T = restriction_ring(n1, n2)
    split = len(T.left_names)
    R = T.ring
    left_table, right_table = pont_ring(n1).table, pont_ring(n2).table
    acc = prod.base.zero()
    for mono, c in img.terms.items():
        a = GradedPolynomial(left_table, {mono[:split]: 1})
        b = GradedPolynomial(right_table, {mono[split:]: 1})
        ka = kappa(P1, _as_so(a, n1))
        kb = kappa(P2, _as_so(b, n2))
        if ka.is_zero() or kb.is_zero():
            continue
        sign = -1 if (n2 * R.table.degree_of(mono[:split] + (0,) * (len(mono) - split))) % 2 else 1
        acc = acc + prod.cross_base(ka, kb).scale(sign * c)
    return acc


def _as_so(p: GradedPolynomial, n: int) -> GradedPolynomial:
    ring = so_ring(n)
    extra = len(ring.table) - len(p.table)
    return GradedPolynomial(ring.table, {mono + (0,) * extra: c for mono, c in p.terms.items()})


# -- the composite bundle over CP^1 x CP^r ---------------------------------------------

@dataclass
class HolomorphicComposite:
    r: int
    m: int
    proj: ProjectiveBundle  # CP^1 x CP^r -> CP^r
    q: ProjectiveBundle  # P(W + C^{m-1}) -> CP^1 x CP^r
    u: GradedPolynomial = field(repr=False)

    def u_power(self, l: int) -> GradedPolynomial:
        return self.proj.total.power(self.u, l)


def holomorphic_composite(r: int, m: int) -> HolomorphicComposite:
    """Bundles for the composite over CP^1 x CP^r.

    The rank-2 bundle W has c4 = u = x^2 + z x; its c2 is dropped since
    only c4 enters the pushforward formula over BSU(2).
    """
    if m < 2:
        raise ValueError("need m >= 2")
    cpr = RingPresentation.from_relations(
        RingPresentation.free([("x", 2)]).table,
        [GradedPolynomial.gen(RingPresentation.free([("x", 2)]).table, "x") ** (r + 1)],
        name=f"CP^{r}",
    )
    proj = ProjectiveBundle(BundleSpec(cpr, 2, (), name="C^2"), z_name="z")
    B = proj.total
    x, z = B.gen("x"), B.gen("z")
    u = B.reduce(x * x + z * x)
    q = ProjectiveBundle(BundleSpec(B, m + 1, (B.zero(), u), name=f"W+C^{m - 1}"), z_name="w")
    return HolomorphicComposite(r, m, proj, q, u)


def composite_pushforward_holomorphic(r: int, m: int, K: int) -> list[Fraction]:
    """Coefficients of x^{2l-1}, l = 0..K, in proj_! q_!(ch(T^{proj o q}))."""
    if 2 * K - 1 > r:
        raise ValueError(f"truncation too small: CP^{r} cannot hold x^{2 * K - 1}")
    H = holomorphic_composite(r, m)
    total = H.q.total.zero()
    proj_tangent = vertical_tangent(H.proj)
    # ch(T^{proj o q}) = ch(T^q) + q^* ch(T^proj); T^proj is a line bundle with c2 = 2z
    for d in range(m, m + 2 * K + 2):
        total = total + chern_character(H.q, d)
    ch_proj = H.proj.total.zero()
    for d in range(0, 2):
        ch_proj = ch_proj + (proj_tangent.c(1) ** d).scale(Fraction(1, factorial(d)))
    total = total + H.q.pullback(H.proj.total.reduce(ch_proj))
    pushed = H.proj.gysin(H.q.gysin(total))
    return [pushed.coefficient((2 * l - 1,)) if l else Fraction(0) for l in range(K + 1)]
