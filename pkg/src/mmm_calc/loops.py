"""Free graded-commutative algebras, transgression and the loop construction.

For a free algebra on generators x_i, the loop algebra is free on
y_i (same name and degree) and t_i = trg(x_i) of degree |x_i| - 1, named
``{x}_t{level}``.  The transgression is determined by its values on the
generators and the rule

    trg(a b) = (-1)^{|a|} y(a) trg(b) + trg(a) y(b).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import (
    GeneratorTable,
    GradedPolynomial,
    RingPresentation,
    enumerate_monomials,
    nullspace,
    rank,
    substitute,
)
from .characteristic import coordinates, pont_basis, pont_names, so_ring
from .gysin import KappaTable


class LoopAlgebra:
    """The doubled free algebra modelling H*(LX) for H*(X) free."""

    def __init__(self, source: RingPresentation, level: int = 1):
        if not source.is_free:
            raise ValueError("the loop model needs a free graded-commutative source")
        self.source = source
        self.level = level
        gens = [(g.name, g.degree) for g in source.table]
        t_gens = [(self.t_name(g.name), g.degree - 1) for g in source.table]
        for name, deg in t_gens:
            if deg < 0:
                raise ValueError(f"generator {name} would have negative degree")
        self.target = RingPresentation.free(gens + t_gens, name=f"L^{level}({source.name or 'X'})")
        k = len(gens)
        self._k = k
        self._cache: dict = {}

    def t_name(self, name: str) -> str:
        return f"{name}_t{self.level}"

    def __repr__(self) -> str:
        return f"LoopAlgebra({self.source.name or ''}, level={self.level})"

    def eta(self, p: GradedPolynomial) -> GradedPolynomial:
        """eta^*: x_i -> y_i."""
        if p.table != self.source.table:
            raise ValueError("element is not in the source algebra")
        pad = (0,) * self._k
        return GradedPolynomial(self.target.table, {m + pad: c for m, c in p.terms.items()})

    def t(self, name: str) -> GradedPolynomial:
        return self.target.gen(self.t_name(name))

    def y(self, name: str) -> GradedPolynomial:
        return self.target.gen(name)

    def _trg_mono(self, mono) -> GradedPolynomial:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        table = self.source.table
        support = [i for i, e in enumerate(mono) if e]
        if not support:
            out = self.target.zero()
        else:
            i = support[0]
            first = [0] * len(mono)
            first[i] = 1
            rest = list(mono)
            rest[i] -= 1
            first, rest = tuple(first), tuple(rest)
            g = table.gens[i]
            a = GradedPolynomial(table, {first: 1})
            b = GradedPolynomial(table, {rest: 1})
            # a * b equals the monomial with sign +1: a is the first factor in canonical order
            t_a = self.t(g.name)
            term1 = self.eta(a) * self._trg_mono(rest)
            if g.degree % 2:
                term1 = -term1
            out = term1 + t_a * self.eta(b)
        self._cache[mono] = out
        return out

    def trg(self, p: GradedPolynomial) -> GradedPolynomial:
        if p.table != self.source.table:
            raise ValueError("element is not in the source algebra")
        acc = self.target.zero()
        for mono, c in p.terms.items():
            img = self._trg_mono(mono)
            if not img.is_zero():
                acc = acc + img.scale(c)
        return acc


def trg(L: LoopAlgebra, p: GradedPolynomial) -> GradedPolynomial:
    return L.trg(p)


def trg_closed_formula(L: LoopAlgebra, mono) -> GradedPolynomial:
    """sum_i m_i y_1^{m_1} ... y_i^{m_i - 1} t_i ... y_n^{m_n} (even generators only)."""
    table = L.source.table
    if any(g.odd for g in table):
        raise ValueError("closed formula holds for even generators only")
    acc = L.target.zero()
    for i, e in enumerate(mono):
        if not e:
            continue
        rest = list(mono)
        rest[i] -= 1
        y_part = L.eta(GradedPolynomial(table, {tuple(rest): 1}))
        acc = acc + (y_part * L.t(table.gens[i].name)).scale(e)
    return acc


def trg_matrix(L: LoopAlgebra, degree: int) -> tuple[list, list, list[list[Fraction]]]:
    """(source monomials, target monomials, matrix) of trg in one degree."""
    src = enumerate_monomials(L.source.table, degree)
    tgt = enumerate_monomials(L.target.table, degree - 1)
    index = {m: i for i, m in enumerate(tgt)}
    matrix = [[Fraction(0)] * len(src) for _ in tgt]
    for j, mono in enumerate(src):
        for tm, c in L._trg_mono(mono).terms.items():
            matrix[index[tm]][j] = c
    return src, tgt, matrix


def trg_injectivity_check(L: LoopAlgebra, max_degree: int, require_even: bool = True) -> bool:
    """Trivial kernel of trg on every positive degree up to ``max_degree``."""
    table = L.source.table
    for g in table:
        if g.degree == 0:
            raise ValueError(f"source generator {g.name} has degree 0")
        if require_even and g.odd:
            raise ValueError(f"source generator {g.name} has odd degree")
    for d in range(1, max_degree + 1):
        src, _, matrix = trg_matrix(L, d)
        if not src:
            continue
        if rank(matrix, len(src)) != len(src):
            return False
    return True


# -- iterated loops ------------------------------------------------------------

@dataclass
class LoopChain:
    """X, LX, L^2 X, ... as successive loop algebras."""

    source: RingPresentation
    depth: int
    levels: list[LoopAlgebra] = field(default_factory=list)

    def __post_init__(self):
        if not 1 <= self.depth:
            raise ValueError("loop depth must be positive")
        low = [g.name for g in self.source.table if g.degree <= self.depth]
        if low:
            raise ValueError(f"degree obstruction: generators {low} have degree <= {self.depth}")
        ring = self.source
        for level in range(1, self.depth + 1):
            L = LoopAlgebra(ring, level)
            self.levels.append(L)
            ring = L.target

    @property
    def target(self) -> RingPresentation:
        return self.levels[-1].target

    def lift(self, p: GradedPolynomial, level: int) -> GradedPolynomial:
        """Include an element of level ``level``'s source into the next one via eta."""
        return self.levels[level].eta(p)


def iterate_trg(chain: LoopChain, r: int, p: GradedPolynomial) -> GradedPolynomial:
    """trg^r: H*(X) -> H^{*-r}(L^r X)."""
    if not 1 <= r <= chain.depth:
        raise ValueError(f"iteration count must be in 1..{chain.depth}")
    out = p
    for level in range(r):
        out = chain.levels[level].trg(out)
    return out


# -- loop construction on kappa tables -----------------------------------------------

def restrict_pont(x: GradedPolynomial, n_from: int, n_to: int) -> GradedPolynomial:
    """Pont(n_from) -> Pont(n_to) for n_to <= n_from: p_{4k} -> p_{4k} or 0."""
    src = so_ring(n_from)
    dst = so_ring(n_to)
    if x.table != src.table:
        raise ValueError(f"element is not over H*(BSO({n_from}))")
    keep = set(pont_names(n_to))
    images = {}
    for name in src.table.names:
        if name == "chi":
            if not x.variables() & {"chi"}:
                images[name] = dst.zero()
                continue
            raise ValueError("only Pontrjagin classes restrict along BSO(n) -> BSO(n+1)")
        images[name] = dst.gen(name) if name in keep else dst.zero()
    return substitute(x, images, dst)


def loop_kappa(T: KappaTable, base: RingPresentation, n: int) -> KappaTable:
    """kappa of the loop construction: Pont(n+1) -> Pont(n) -> H*(X) -> H*(LX)."""
    if not base.is_free:
        raise ValueError("loop construction needs a base with free cohomology")
    if T.n != n:
        raise ValueError("table fibre dimension does not match n")
    L = LoopAlgebra(base, 1)
    D = T.degree
    target = L.target.basis(D - n - 1) if D - n - 1 > 0 else []
    if not T.domain_basis:
        return KappaTable(n + 1, D, "pont", [], target, [], label=f"loop({T.label})")
    domain = pont_basis(n + 1, D)
    cols = []
    for b in domain:
        img = T.image(restrict_pont(b, n + 1, n), base.table)
        cols.append(coordinates(L.trg(img), target))
    matrix = [[cols[j][i] for j in range(len(domain))] for i in range(len(target))]
    return KappaTable(n + 1, D, "pont", domain, target, matrix, label=f"loop({T.label})")


# -- Lambda-extension -------------------------------------------------------------------

def lambda_extend(phi: Mapping[str, GradedPolynomial], w: GradedPolynomial, target: RingPresentation) -> GradedPolynomial:
    """The algebra map Lambda V -> A determined by a degree-preserving map on generators."""
    return substitute(w, phi, target)


def free_dimension(degrees: list[int], d: int) -> int:
    if d < 0:
        return 0
    if not degrees:
        return 1 if d == 0 else 0
    table = GeneratorTable([(f"g{i}", k) for i, k in enumerate(degrees)])
    return len(enumerate_monomials(table, d))


def quotient_dimensions(V: RingPresentation, W: list[GradedPolynomial], max_degree: int) -> list[tuple[int, int, int]]:
    """(degree, dim Lambda(V/W), dim Lambda(V)/(W)) for 0 <= degree <= max_degree.

    ``W`` is a list of linearly independent homogeneous linear forms in
    the generators of the free algebra ``V``.
    """
    if not V.is_free:
        raise ValueError("V must present a free algebra")
    for w in W:
        if any(sum(m) != 1 for m in w.terms):
            raise ValueError("W must consist of linear combinations of generators")
        if not w.is_homogeneous():
            raise ValueError("W must be homogeneous")
    by_degree: dict[int, int] = {}
    for g in V.table:
        by_degree[g.degree] = by_degree.get(g.degree, 0) + 1
    for w in W:
        by_degree[w.degree()] -= 1
    quotient_degrees = [k for k, c in by_degree.items() for _ in range(c)]
    out = []
    for d in range(max_degree + 1):
        lhs = free_dimension(quotient_degrees, d)
        monos = enumerate_monomials(V.table, d)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for w in W:
            for mono in enumerate_monomials(V.table, d - w.degree()):
                prod = w * GradedPolynomial(V.table, {mono: 1})
                row = [Fraction(0)] * len(monos)
                for pm, c in prod.terms.items():
                    row[index[pm]] = c
                rows.append(row)
        ideal = rank(rows, len(monos)) if rows else 0
        out.append((d, lhs, len(monos) - ideal))
    return out
