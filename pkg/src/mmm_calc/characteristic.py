"""Cohomology of BSO(n), BSU(n), BU(n) and the Whitney restriction maps.

Pontrjagin classes are named ``p4, p8, ...`` (the subscript is the
degree).  For even ``n = 2m`` the Euler class ``chi`` of degree ``n`` is
placed last with the rewrite rule ``chi^2 -> p{4m}``.

The restriction maps act on the shifted Pontrjagin ring: a class of
degree ``D`` survives in a factor of fibre dimension ``n_a`` only when
``D >= n_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    GeneratorTable,
    GradedPolynomial,
    RingPresentation,
    TensorRing,
    nullspace,
    order_key,
    rank,
    rref,
    same_span,
    substitute,
    tensor,
)
from .symmetric import elementary_ring, l_class_component, power_sum


def _check_dim(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"fibre dimension must be a positive integer, got {n!r}")


def pont_names(n: int) -> tuple[str, ...]:
    return tuple(f"p{4 * i}" for i in range(1, n // 2 + 1))


@lru_cache(maxsize=None)
def so_ring(n: int) -> RingPresentation:
    """H*(BSO(n); Q)."""
    _check_dim(n)
    gens = [(name, 4 * (i + 1)) for i, name in enumerate(pont_names(n))]
    if n % 2:
        return RingPresentation.free(gens, name=f"BSO({n})")
    m = n // 2
    table = GeneratorTable(gens + [("chi", n)])
    chi = GradedPolynomial.gen(table, "chi")
    top = GradedPolynomial.gen(table, f"p{4 * m}")
    return RingPresentation.from_relations(table, [chi * chi - top], name=f"BSO({n})")


@lru_cache(maxsize=None)
def pont_ring(n: int) -> RingPresentation:
    """The Pontrjagin subring Q[p4, ..., p{4m}], m = n // 2."""
    _check_dim(n)
    return RingPresentation.free([(name, 4 * (i + 1)) for i, name in enumerate(pont_names(n))], name=f"Pont({n})")


@lru_cache(maxsize=None)
def su_ring(n: int) -> RingPresentation:
    """H*(BSU(n)) = Q[c4, c6, ..., c{2n}]."""
    if n < 1:
        raise ValueError("rank must be positive")
    return RingPresentation.free([(f"c{2 * i}", 2 * i) for i in range(2, n + 1)], name=f"BSU({n})")


@lru_cache(maxsize=None)
def bu_ring(n: int) -> RingPresentation:
    """H*(BU(n)) = Q[c2, ..., c{2n}]."""
    if n < 1:
        raise ValueError("rank must be positive")
    return RingPresentation.free([(f"c{2 * i}", 2 * i) for i in range(1, n + 1)], name=f"BU({n})")


def pont_element(p: GradedPolynomial, n: int) -> GradedPolynomial:
    """Elementary-basis polynomial (weight 4, m = n//2 variables) -> Pont(n) over so_ring(n)."""
    ring = so_ring(n)
    m = n // 2
    if p.table != elementary_ring(m, 4).table:
        raise ValueError(f"expected a symmetric polynomial in {m} Pontrjagin roots")
    extra = len(ring.table) - m
    return GradedPolynomial(ring.table, {mono + (0,) * extra: c for mono, c in p.terms.items()})


def pont_part(x: GradedPolynomial, n: int) -> GradedPolynomial:
    """View a chi-free element of so_ring(n) in the free Pontrjagin ring."""
    ring = so_ring(n)
    if x.table != ring.table:
        raise ValueError(f"element is not over H*(BSO({n}))")
    m = n // 2
    out = {}
    for mono, c in x.terms.items():
        if any(mono[m:]):
            raise ValueError("element involves the Euler class; expected a Pontrjagin class")
        out[mono[:m]] = c
    return GradedPolynomial(pont_ring(n).table, out)


def l_class(d: int, n: int) -> GradedPolynomial:
    """Hirzebruch L_{4d} in H*(BSO(n))."""
    return pont_element(l_class_component(d, n // 2), n)


def ph_class(d: int, n: int) -> GradedPolynomial:
    """Pontrjagin character of degree 4d, as the bare power sum s_d."""
    return pont_element(power_sum(d, n // 2, 4), n)


# -- bases ------------------------------------------------------------------

def pont_basis(n: int, degree: int) -> list[GradedPolynomial]:
    """Monomials in p4..p{4m} of the given degree (descending order)."""
    if degree % 4:
        raise ValueError("Pontrjagin classes live in degrees divisible by 4")
    ring = so_ring(n)
    m = n // 2
    return [b for b in ring.basis(degree) if not any(next(iter(b.terms))[m:])]


def full_basis(n: int, degree: int) -> list[GradedPolynomial]:
    """Normal-form monomial basis of H^degree(BSO(n)): Pont monomials, then chi times Pont monomials."""
    ring = so_ring(n)
    if n % 2:
        return pont_basis(n, degree) if degree % 4 == 0 else []
    pont = pont_basis(n, degree) if degree % 4 == 0 else []
    rest = degree - n
    chi = ring.gen("chi")
    with_chi = [b * chi for b in pont_basis(n, rest)] if rest >= 0 and rest % 4 == 0 else []
    return pont + with_chi


def coordinates(p: GradedPolynomial, basis: list[GradedPolynomial]) -> list[Fraction]:
    """Coordinates of ``p`` in a basis of distinct monomials."""
    index = {}
    for i, b in enumerate(basis):
        if len(b.terms) != 1:
            raise ValueError("coordinates() needs a monomial basis")
        (mono, c), = b.terms.items()
        index[mono] = (i, c)
    out = [Fraction(0)] * len(basis)
    for mono, c in p.terms.items():
        if mono not in index:
            raise ValueError(f"{p} is not in the span of the basis")
        i, bc = index[mono]
        out[i] = c / bc
    return out


def combine(vec, basis: list[GradedPolynomial], table: GeneratorTable) -> GradedPolynomial:
    acc = GradedPolynomial.zero(table)
    for c, b in zip(vec, basis):
        if c:
            acc = acc + b.scale(c)
    return acc


# -- subspaces ----------------------------------------------------------------

@dataclass
class SubspaceSpec:
    """A subspace of H^degree(BSO(n)) given by a basis of classes."""

    n: int
    degree: int
    basis: list[GradedPolynomial]
    ambient: list[GradedPolynomial] = field(default_factory=list)
    label: str = ""

    def __post_init__(self):
        if not self.ambient:
            self.ambient = full_basis(self.n, self.degree) if self.degree > 0 else []
        if self.basis and rank(self.matrix(), len(self.ambient)) != len(self.basis):
            raise ValueError("subspace basis is linearly dependent")

    def _coords(self, p: GradedPolynomial) -> list[Fraction]:
        ring = so_ring(self.n)
        if p.table == ring.table:
            p = ring.reduce(p)
        return coordinates(p, self.ambient)

    def matrix(self) -> list[list[Fraction]]:
        return [self._coords(b) for b in self.basis]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def canonical(self) -> list[list[Fraction]]:
        return rref(self.matrix(), len(self.ambient))

    def same_as(self, other: "SubspaceSpec") -> bool:
        if (self.n, self.degree) != (other.n, other.degree):
            return False
        return same_span(self.matrix(), other.matrix(), len(self.ambient))

    def contains(self, p: GradedPolynomial) -> bool:
        if p.is_zero():
            return True
        v = self._coords(p)
        k = len(self.ambient)
        return rank(self.matrix() + [v], k) == len(self.basis)


# -- Whitney restriction ---------------------------------------------------------

@lru_cache(maxsize=None)
def restriction_ring(n1: int, n2: int) -> TensorRing:
    """Pont(n1) (x) Pont(n2) with generator names p4_1, ..., p4_2, ..."""
    return tensor(pont_ring(n1), pont_ring(n2), suffixes=("_1", "_2"))


def _check_split(n1: int, n2: int, n: int | None = None) -> None:
    if n1 < 1 or n2 < 1:
        raise ValueError(f"invalid split ({n1}, {n2}): both parts must be positive")
    if n is not None and n1 + n2 != n:
        raise ValueError(f"split ({n1}, {n2}) does not add up to {n}")


def _factor_degrees(mono, split: int, table: GeneratorTable) -> tuple[int, int]:
    degs = table.degrees
    left = sum(e * d for e, d in zip(mono[:split], degs[:split]))
    right = sum(e * d for e, d in zip(mono[split:], degs[split:]))
    return left, right


def whitney_restriction(n1: int, n2: int, x: GradedPolynomial, truncate: bool = True) -> GradedPolynomial:
    """Image of a Pontrjagin class of BSO(n1+n2) in Pont(n1) (x) Pont(n2).

    Uses p_{4k} -> sum_{i+j=k} p_{4i} (x) p_{4j}.  With ``truncate`` the
    terms whose left factor has degree < n1 or right factor degree < n2
    are dropped (the shifted range of both factors).
    """
    _check_split(n1, n2)
    n = n1 + n2
    if x.table == so_ring(n).table:
        x = pont_part(x, n)
    elif x.table != pont_ring(n).table:
        raise ValueError(f"element is not a Pontrjagin class of BSO({n})")
    T = restriction_ring(n1, n2)
    R = T.ring
    left = [R.one()] + [R.gen(g) for g in T.left_names]
    right = [R.one()] + [R.gen(g) for g in T.right_names]
    images = {}
    for k, name in enumerate(pont_names(n), start=1):
        acc = R.zero()
        for i in range(0, k + 1):
            j = k - i
            if i < len(left) and j < len(right):
                acc = acc + left[i] * right[j]
        images[name] = acc
    out = substitute(x, images, R)
    if not truncate:
        return out
    split = len(T.left_names)
    keep = {}
    for mono, c in out.terms.items():
        dl, dr = _factor_degrees(mono, split, R.table)
        if dl >= n1 and dr >= n2:
            keep[mono] = c
    return GradedPolynomial(R.table, keep)


def _l_in_factor(n2: int, degree: int) -> GradedPolynomial | None:
    if degree % 4 or degree == 0:
        return None
    L = l_class_component(degree // 4, n2 // 2)
    return None if L.is_zero() else L.retable(pont_ring(n2).table)


def tilde_restriction(n1: int, n2: int, x: GradedPolynomial, truncate: bool = True) -> GradedPolynomial:
    """Whitney restriction followed by the quotient of the right factor by L(n2).

    The quotient is realized as a normal form: in each right-hand degree
    the leading monomial of L is eliminated.  L only has positive-degree
    components, so without truncation ``1`` in the right factor survives.
    """
    _check_split(n1, n2)
    if n2 % 2 == 0:
        raise ValueError("tilde restriction needs an odd second factor")
    img = whitney_restriction(n1, n2, x, truncate)
    T = restriction_ring(n1, n2)
    R = T.ring
    split = len(T.left_names)
    right_table = pont_ring(n2).table
    groups: dict[tuple, dict] = {}
    for mono, c in img.terms.items():
        _, dr = _factor_degrees(mono, split, R.table)
        groups.setdefault((mono[:split], dr), {})[mono[split:]] = c
    out: dict = {}
    for (lmono, dr), right_terms in groups.items():
        v = GradedPolynomial(right_table, right_terms)
        L = _l_in_factor(n2, dr)
        if L is not None:
            lead = max(L.terms, key=lambda m: order_key(m, right_table))
            coeff = v.coefficient(lead)
            if coeff:
                v = v - L.scale(coeff / L.terms[lead])
        for rmono, c in v.terms.items():
            out[lmono + rmono] = c
    return GradedPolynomial(R.table, out)


# -- Lemma on kernels of restrictions ----------------------------------------------

def admissible_splits(n: int) -> list[tuple[int, int]]:
    """Splits (2 m1, n - 2 m1) with 0 < m1 < n // 2."""
    return [(2 * m1, n - 2 * m1) for m1 in range(1, n // 2)]


def _check_kernel_args(n: int, degree: int) -> None:
    _check_dim(n)
    if n % 2 == 0 and n < 4:
        raise ValueError("even fibre dimension must be at least 4 (no admissible splits)")
    if n % 2 and n < 7:
        raise ValueError("odd fibre dimension must be at least 7")
    if degree % 4:
        raise ValueError("degree must be divisible by 4")


def restriction_matrix(n: int, degree: int) -> list[list[Fraction]]:
    """Stacked matrix of all admissible (tilde) restrictions on pont_basis(n, degree)."""
    basis = pont_basis(n, degree)
    rows: dict[tuple, list[Fraction]] = {}
    for n1, n2 in admissible_splits(n):
        for col, b in enumerate(basis):
            img = tilde_restriction(n1, n2, b) if n % 2 else whitney_restriction(n1, n2, b)
            for mono, c in img.terms.items():
                row = rows.setdefault((n1, mono), [Fraction(0)] * len(basis))
                row[col] += c
    return [rows[k] for k in sorted(rows)]


def kernel_intersection(n: int, degree: int) -> SubspaceSpec:
    """Intersection of the kernels of all admissible restrictions, by brute force."""
    _check_kernel_args(n, degree)
    basis = pont_basis(n, degree)
    if degree < n or not basis:
        return SubspaceSpec(n, degree, [], label="kernel")
    rows = restriction_matrix(n, degree)
    ker = nullspace(rows, len(basis))
    table = so_ring(n).table
    vecs = rref(ker, len(basis))
    return SubspaceSpec(n, degree, [combine(v, basis, table) for v in vecs], label="kernel")


def closed_form_kernel(n: int, degree: int) -> SubspaceSpec:
    """Predicted kernel: ph_{4d} for even n, ph_{4d} and L_{4d} for odd n."""
    _check_kernel_args(n, degree)
    if degree < n or degree == 0:
        return SubspaceSpec(n, degree, [], label="closed form")
    d = degree // 4
    gens = [ph_class(d, n)]
    if n % 2:
        gens.append(l_class(d, n))
    return SubspaceSpec(n, degree, gens, label="closed form")
