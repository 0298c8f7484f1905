"""Named verification suites.

Each suite runs a fixed family of exact checks with its own default
parameters and returns a :class:`SuiteReport`.  Reports are ordered by
check id, so output does not depend on execution order.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable

from . import weyl
from .algebra import GradedPolynomial, RingPresentation, enumerate_monomials, format_poly, format_rational, substitute
from .characteristic import (
    SubspaceSpec,
    closed_form_kernel,
    kernel_intersection,
    l_class,
    pont_basis,
    so_ring,
    su_ring,
)
from .gysin import (
    ProjectiveBundle,
    ch_printed_formula,
    ch_pushforward,
    ch_series_product,
    composite_pushforward_holomorphic,
    cp2_bundle,
    holomorphic_composite,
    kappa,
    kappa_sequence,
    kappa_table,
    product_kappa,
    product_kappa_direct,
    su2_plus_trivial,
    trivial_bundle,
)
from .loops import LoopAlgebra, loop_kappa, trg_closed_formula, trg_injectivity_check
from .symmetric import L_CLASS

DEFAULT_TRUNC = 5
SEED = 20240611


def truncation(default: int = DEFAULT_TRUNC) -> int:
    """Series truncation, overridable through MMM_TRUNC."""
    raw = os.environ.get("MMM_TRUNC")
    if raw is None or raw == "":
        return default
    try:
        k = int(raw)
    except ValueError:
        raise ValueError(f"MMM_TRUNC must be an integer, got {raw!r}") from None
    if k < 1:
        raise ValueError("MMM_TRUNC must be positive")
    return k


@dataclass
class Check:
    id: str
    claim: str
    passed: bool
    witness: Any = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, id: str, claim: str, passed: bool, witness: Any = None) -> Check:
        c = Check(id, claim, bool(passed), witness)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def ordered(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: _natural_key(c.id))


def _natural_key(s: str):
    out = []
    num = ""
    for ch in s:
        if ch.isdigit():
            num += ch
            continue
        if num:
            out.append((0, int(num), ""))
            num = ""
        out.append((1, 0, ch))
    if num:
        out.append((0, int(num), ""))
    return out


def _span_text(space: SubspaceSpec) -> list[str]:
    return [format_poly(b) for b in space.basis]


# -- suites -------------------------------------------------------------------------

def suite_lclass() -> SuiteReport:
    rep = SuiteReport("lclass")
    R4, R8 = so_ring(4), so_ring(8)
    L4 = l_class(1, 4)
    p4, p8 = R4.gen("p4"), R4.gen("p8")
    rep.add("lclass.L4", "L_4 = p4/3", L4 == p4.scale(Fraction(1, 3)), format_poly(L4))
    L8 = l_class(2, 4)
    rep.add("lclass.L8", "L_8 = (7 p8 - p4^2)/45", L8 == (p8.scale(7) - p4 * p4).scale(Fraction(1, 45)), format_poly(L8))
    L12 = l_class(3, 8)
    rep.add("lclass.L12", "L_12 has the classical coefficients 62, -13, 2 over 945",
            L12 == (R8.gen("p12").scale(62) - (R8.gen("p4") * R8.gen("p8")).scale(13)
                    + R8.gen("p4") ** 3 * 2).scale(Fraction(1, 945)), format_poly(L12))
    sig2 = kappa(trivial_bundle(2), L4)
    rep.add("lclass.sig.CP2", "<L_4, [CP^2]> = 1", sig2 == trivial_bundle(2).base.one(),
            format_poly(sig2))
    sig4 = kappa(trivial_bundle(4), l_class(2, 8))
    rep.add("lclass.sig.CP4", "<L_8, [CP^4]> = 1", sig4 == trivial_bundle(4).base.one(), format_poly(sig4))
    return rep


def suite_prop52(K: int | None = None, ms=(2, 3, 4, 5)) -> SuiteReport:
    K = truncation() if K is None else K
    rep = SuiteReport("prop52")
    factorial_ok = double_ok = True
    for m in ms:
        a = ch_pushforward(m, K)
        wit = [format_rational(x) for x in a]
        rep.add(f"prop52.m{m}.nonzero", "all a_p are nonzero", all(x != 0 for x in a), wit)
        rep.add(f"prop52.m{m}.a0", "a_0 = (m+1)/m!", a[0] == Fraction(m + 1, factorial(m)), wit[0])
        series = ch_series_product(m, K)
        rep.add(f"prop52.m{m}.series", "pipeline equals (2 cos sqrt(u) + m - 1) sum (-1)^l u^l/(m+2l)!",
                a == series, [format_rational(x) for x in series])
        factorial_ok &= all(ch_printed_formula(m, p, False) == a[p] for p in range(K + 1))
        double_ok &= all(ch_printed_formula(m, p, True) == a[p] for p in range(K + 1))
    which = "(m+2k)!" if factorial_ok and not double_ok else "(m+2k)!!" if double_ok and not factorial_ok else "both" if factorial_ok else "neither"
    rep.add("prop52.printed-form", "exactly one printed closed form matches the pipeline",
            factorial_ok != double_ok, {"matching form": which})
    rep.notes.append(f"printed closed form matching the pipeline: {which}")
    return rep


def _pont_kernel(d: int) -> SubspaceSpec:
    return kappa_table(cp2_bundle(), 4, 4 * d + 4, "pont").kernel()


def _full_kernel(d: int) -> SubspaceSpec:
    return kappa_table(cp2_bundle(), 4, 4 * d + 4, "full").kernel()


def suite_thm18(ds=(1, 2, 3, 4)) -> SuiteReport:
    rep = SuiteReport("thm18")
    R = so_ring(4)
    for d in ds:
        D = 4 * d + 4
        ker = _pont_kernel(d)
        L = SubspaceSpec(4, D, [l_class(d + 1, 4)])
        rep.add(f"thm18.pont.d{d}", "ker kappa on Pont is span{L}", ker.dimension == 1 and ker.same_as(L), _span_text(ker))
    for d in ds:
        ker = _full_kernel(d)
        w = R.reduce((R.gen("p4") - R.gen("chi")) ** (d + 1))
        ok = ker.dimension == 2 and ker.contains(w)
        rep.add(f"thm18.full.d{d}", "full kernel is 2-dimensional and contains (p4 - chi)^(d+1)", ok,
                {"dimension": ker.dimension, "contains (p4-chi)^(d+1)": ker.contains(w), "basis": _span_text(ker)})
    return rep


def suite_weyl_compare(ds=(1, 2, 3, 4), max_binomial: int = 8) -> SuiteReport:
    rep = SuiteReport("weyl-compare")
    for d in ds:
        a, b = weyl.kernel_via_weyl(d), _full_kernel(d)
        rep.add(f"weyl.kernel.d{d}", "Weyl-averaging kernel equals the Gysin full kernel", a.same_as(b),
                {"weyl": _span_text(a), "gysin": _span_text(b)})
    for d in range(1, max_binomial + 1):
        _, det = weyl.binomial_matrix(d)
        rep.add(f"weyl.binomial.d{d}", "binomial matrix has determinant +-1", abs(det) == 1, format_rational(det))
    for d in range(2, 7):
        t, r = weyl.sd_outside_span_torus(d), weyl.sd_outside_span_restricted(d)
        if t != r:
            rep.notes.append(f"s_{d} non-membership: torus model says {t}, z-space with s1 = 0 says {r}")
    return rep


def suite_lemma31(max_degree: int = 24) -> SuiteReport:
    rep = SuiteReport("lemma31")
    for n in (4, 6, 8, 7, 9):
        for D in range(4, max_degree + 1, 4):
            a, b = kernel_intersection(n, D), closed_form_kernel(n, D)
            rep.add(f"lemma31.n{n}.deg{D}", "brute-force kernel equals the closed form", a.same_as(b),
                    {"kernel": _span_text(a), "dimension": a.dimension})
    return rep


def _loop_tables(ds=(1, 2, 3, 4)):
    P = cp2_bundle()
    base = su_ring(3)
    for d in ds:
        T = kappa_table(P, 4, 4 * d + 4, "pont")
        yield d, loop_kappa(T, base, 4)


def suite_transgression(max_inj: int = 24, max_closed: int = 20) -> SuiteReport:
    rep = SuiteReport("transgression")
    src = su_ring(3)
    L = LoopAlgebra(src)
    rep.add("trg.injective", f"trg is injective on Q[c4,c6] in degrees <= {max_inj}", trg_injectivity_check(L, max_inj))
    bad = []
    count = 0
    for D in range(1, max_closed + 1):
        for mono in enumerate_monomials(src.table, D):
            count += 1
            if L.trg(GradedPolynomial(src.table, {mono: 1})) != trg_closed_formula(L, mono):
                bad.append(mono)
    rep.add("trg.closed-formula", f"product rule equals the monomial formula in degrees <= {max_closed}", not bad,
            {"monomials": count, "mismatches": [list(m) for m in bad]})
    for d, T in _loop_tables():
        ker = T.kernel()
        Lsp = SubspaceSpec(5, T.degree, [l_class(d + 1, 5)])
        rep.add(f"trg.loop-kernel.d{d}", "loop kappa kernel is span{L}", ker.same_as(Lsp), _span_text(ker))
    return rep


def suite_vanishing(max_k: int = 6, max_degree: int = 24) -> SuiteReport:
    rep = SuiteReport("vanishing")
    P = cp2_bundle()
    for k in range(2, max_k + 1):
        v = kappa(P, l_class(k, 4))
        rep.add(f"vanish.kappaL.k{k}", "kappa(L_4k) = 0 on the CP^2 bundle", v.is_zero(), format_poly(v))
    top = max_degree // 4 + 1
    total = kappa_sequence(P, L_CLASS, top).truncate(max_degree)
    rep.add("vanish.total-L", f"pushforward of the total L-class is 1 through degree {max_degree}",
            total == P.base.one(), format_poly(total))
    for d, T in _loop_tables():
        Lcol = T.apply(l_class(d + 1, 5))
        rep.add(f"vanish.loop-Lcolumn.d{d}", "L-component column of the odd-fibre kappa table is zero",
                all(x == 0 for x in Lcol), [format_rational(x) for x in Lcol])
    return rep


def suite_holo(r: int = 20, m: int = 2, max_l: int = 6, K: int | None = None) -> SuiteReport:
    K = truncation() if K is None else K
    rep = SuiteReport("holo")
    H = holomorphic_composite(r, m)
    B = H.proj.base
    x = B.gen("x")
    for l in range(1, max_l + 1):
        img = H.proj.gysin(H.u_power(l))
        expect = B.reduce(x ** (2 * l - 1) * l)
        rep.add(f"holo.proj.l{l}", "proj_!(u^l) = l x^(2l-1)", img == expect, format_poly(img))
    coeffs = composite_pushforward_holomorphic(r, m, K)
    a = ch_pushforward(m, K)
    for l in range(1, K + 1):
        ok = coeffs[l] == l * a[l] and coeffs[l] != 0
        rep.add(f"holo.composite.l{l}", "coefficient of x^(2l-1) equals l a_l and is nonzero", ok,
                {"coefficient": format_rational(coeffs[l]), "l*a_l": format_rational(l * a[l])})
    return rep


# -- Gysin axioms on random inputs ----------------------------------------------------------

def random_element(ring: RingPresentation, degree: int, rng: random.Random) -> GradedPolynomial:
    """Random homogeneous element with small rational coefficients."""
    acc = ring.zero()
    for b in ring.basis(degree):
        num = rng.randint(-5, 5)
        if num:
            acc = acc + b.scale(Fraction(num, rng.randint(1, 4)))
    return acc


def _random_degree(ring: RingPresentation, lo: int, hi: int, rng: random.Random) -> int:
    choices = [D for D in range(lo, hi + 1) if ring.basis(D)]
    return rng.choice(choices)


def axiom_linearity(P: ProjectiveBundle, rng: random.Random) -> bool:
    D = _random_degree(P.total, 0, 16, rng)
    x, y = random_element(P.total, D, rng), random_element(P.total, D, rng)
    a, b = Fraction(rng.randint(-7, 7), rng.randint(1, 5)), Fraction(rng.randint(-7, 7), rng.randint(1, 5))
    return P.gysin(x.scale(a) + y.scale(b)) == P.gysin(x).scale(a) + P.gysin(y).scale(b)


def axiom_projection(P: ProjectiveBundle, rng: random.Random) -> bool:
    """q_!(q^* y) = 0 and q_!(q^* y x) = y q_!(x)."""
    Dy = _random_degree(P.base, 0, 12, rng)
    Dx = _random_degree(P.total, 0, 12, rng)
    y = random_element(P.base, Dy, rng)
    x = random_element(P.total, Dx, rng)
    if not P.gysin(P.pullback(y)).is_zero():
        return False
    return P.gysin(P.total.reduce(P.pullback(y) * x)) == P.base.reduce(y * P.gysin(x))


def _naturality_map():
    """Classifying map BSU(2) -> BSU(3) of V + C, lifted to P(V + C) -> P(E3)."""
    src, dst = cp2_bundle(), su2_plus_trivial(2)
    u = dst.base.gen("u")
    base_images = {"c4": u, "c6": dst.base.zero()}
    total_images = {"c4": dst.total.gen("u"), "c6": dst.total.zero(), src.z_name: dst.z}
    return src, dst, base_images, total_images


def axiom_naturality(rng: random.Random) -> bool:
    src, dst, bmap, tmap = _naturality_map()
    D = _random_degree(src.total, 0, 16, rng)
    x = random_element(src.total, D, rng)
    lhs = substitute(src.gysin(x), bmap, dst.base)
    rhs = dst.gysin(substitute(x, tmap, dst.total))
    return lhs == rhs


def axiom_transitivity(H, rng: random.Random) -> bool:
    """(proj o q)_! = proj_! q_!, against one-step extraction of the z w^m coordinate."""
    T = H.q.total
    D = _random_degree(T, 2 * H.m + 2, 2 * H.m + 14, rng)
    x = T.reduce(random_element(T, D, rng))
    m = H.m
    k = len(H.proj.base.table)
    direct = {}
    for mono, c in x.terms.items():
        if mono[k] == 1 and mono[k + 1] == m:
            direct[mono[:k]] = c
    return H.proj.gysin(H.q.gysin(x)) == GradedPolynomial(H.proj.base.table, direct)


def axiom_product(P1: ProjectiveBundle, P2: ProjectiveBundle, rng: random.Random) -> bool:
    n = P1.fibre_dimension + P2.fibre_dimension
    R = so_ring(n)
    start = -(-n // 4) * 4
    D = rng.choice([D for D in range(start, start + 17, 4) if pont_basis(n, D)])
    acc = R.zero()
    for b in pont_basis(n, D):
        acc = acc + b.scale(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return product_kappa(P1, P2, acc) == product_kappa_direct(P1, P2, acc)


def suite_gysin_axioms(samples: int = 100, seed: int = SEED) -> SuiteReport:
    rep = SuiteReport("gysin-axioms")
    P = cp2_bundle()
    Q = su2_plus_trivial(2)
    H = holomorphic_composite(12, 2)
    pairs = [(cp2_bundle(), trivial_bundle(1)), (su2_plus_trivial(2), trivial_bundle(1)), (trivial_bundle(1), su2_plus_trivial(1))]
    axioms: list[tuple[str, str, Callable[[random.Random, int], bool]]] = [
        ("linearity", "q_! is linear", lambda g, i: axiom_linearity(P if i % 2 else Q, g)),
        ("transitivity", "pushforward along a composite is the composite of pushforwards", lambda g, i: axiom_transitivity(H, g)),
        ("naturality", "pushforward commutes with pullback along BSU(2) -> BSU(3)", lambda g, i: axiom_naturality(g)),
        ("pushpull", "q_! q^* = 0 and the projection formula", lambda g, i: axiom_projection(P if i % 2 else Q, g)),
        ("product", "kappa of a product is the signed tensor product of kappas",
         lambda g, i: axiom_product(*pairs[i % len(pairs)], g)),
    ]
    for k, (name, claim, fn) in enumerate(axioms):
        rng = random.Random(seed + k)
        fails = [i for i in range(samples) if not fn(rng, i)]
        rep.add(f"axiom.{name}", f"{claim} ({samples} random inputs)", not fails, {"samples": samples, "failures": fails})
    return rep


SUITES: dict[str, Callable[[], SuiteReport]] = {
    "lclass": suite_lclass,
    "prop52": suite_prop52,
    "thm18": suite_thm18,
    "weyl-compare": suite_weyl_compare,
    "lemma31": suite_lemma31,
    "transgression": suite_transgression,
    "gysin-axioms": suite_gysin_axioms,
    "vanishing": suite_vanishing,
    "holo": suite_holo,
}


def run_suite(name: str) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn()
