"""Finitely presented graded rings with triangular rewrite systems.

Every ring used here is a free graded-commutative algebra modulo at most one
relation per "quotient generator", of the form ``g^k = (lower terms)``.
Putting the quotient generators last in the generator table makes each
relation head the leading monomial under :func:`order_key`, so plain
rewriting terminates with unique normal forms; no Groebner completion is
needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Callable

from .poly import (
    Generator,
    GeneratorTable,
    GradedPolynomial,
    Monomial,
    _koszul_product,
    order_key,
)


@dataclass(frozen=True)
class RewriteRule:
    """``table.gens[generator] ** power  ->  replacement``."""

    generator: int
    power: int
    replacement: GradedPolynomial

    def head(self, n: int) -> Monomial:
        mono = [0] * n
        mono[self.generator] = self.power
        return tuple(mono)


def rule_from_relation(rel: GradedPolynomial) -> RewriteRule:
    """Orient a homogeneous relation ``rel = 0`` into a rewrite rule.

    The head is the leading monomial; it must be a pure power of an
    even-degree generator.
    """
    if rel.is_zero():
        raise ValueError("zero relation")
    if not rel.is_homogeneous():
        raise ValueError(f"relation {rel} is not homogeneous")
    table = rel.table
    head, lc = max(rel.terms.items(), key=lambda t: order_key(t[0], table))
    support = [i for i, e in enumerate(head) if e]
    if len(support) != 1:
        raise ValueError(f"relation {rel}: leading monomial is not a pure power")
    g = support[0]
    if table.gens[g].odd:
        raise ValueError(f"relation {rel}: head generator must have even degree")
    rest = GradedPolynomial(table, {m: c for m, c in rel.terms.items() if m != head})
    return RewriteRule(g, head[g], rest.scale(-1 / lc))


class RingPresentation:
    """Generators, degrees and a triangular rewrite system."""

    def __init__(self, table: GeneratorTable, rules: Iterable[RewriteRule] = (), name: str | None = None):
        self.table = table
        self.rules = tuple(rules)
        self.name = name
        self._nf: dict[Monomial, dict[Monomial, Fraction]] = {}
        n = len(table)
        seen = set()
        for r in self.rules:
            if r.generator in seen:
                raise ValueError("two rules share a head generator")
            seen.add(r.generator)
            if r.power < 1:
                raise ValueError("rule power must be positive")
            if table.gens[r.generator].odd:
                raise ValueError("rule head must be an even generator")
            if r.replacement.table != table:
                raise ValueError("rule replacement over a different table")
            head = r.head(n)
            hdeg = table.degree_of(head)
            hkey = order_key(head, table)
            for m in r.replacement.terms:
                if table.degree_of(m) != hdeg:
                    raise ValueError("rule replacement is not homogeneous of the head degree")
                if not order_key(m, table) < hkey:
                    raise ValueError("rule is not triangular: replacement exceeds head")

    @classmethod
    def free(cls, gens: Iterable[Generator | tuple[str, int]], name: str | None = None) -> "RingPresentation":
        return cls(GeneratorTable(gens), (), name)

    @classmethod
    def from_relations(cls, table: GeneratorTable, relations: Iterable[GradedPolynomial], name: str | None = None):
        return cls(table, [rule_from_relation(r) for r in relations], name)

    def __repr__(self) -> str:
        rels = "; ".join(f"{self.table.names[r.generator]}^{r.power} -> {r.replacement}" for r in self.rules)
        return f"RingPresentation({self.name or ''} {self.table!r} [{rels}])"

    @property
    def is_free(self) -> bool:
        return not self.rules

    # -- elements ---------------------------------------------------------
    def gen(self, name: str) -> GradedPolynomial:
        return GradedPolynomial.gen(self.table, name)

    def one(self) -> GradedPolynomial:
        return GradedPolynomial.const(self.table, 1)

    def zero(self) -> GradedPolynomial:
        return GradedPolynomial.zero(self.table)

    def const(self, c) -> GradedPolynomial:
        return GradedPolynomial.const(self.table, c)

    def parse(self, text: str, names: Mapping[str, GradedPolynomial] | None = None) -> GradedPolynomial:
        from .textio import parse_poly

        return self.reduce(parse_poly(text, self.table, names))

    # -- normal forms -----------------------------------------------------
    def is_normal(self, mono: Monomial) -> bool:
        return all(mono[r.generator] < r.power for r in self.rules)

    def _normal_form(self, mono: Monomial) -> dict[Monomial, Fraction]:
        hit = self._nf.get(mono)
        if hit is not None:
            return hit
        for r in self.rules:
            if mono[r.generator] >= r.power:
                break
        else:
            out = {mono: Fraction(1)}
            self._nf[mono] = out
            return out
        rest = list(mono)
        rest[r.generator] -= r.power
        rest = tuple(rest)
        odd = self.table.odd_positions
        acc: dict[Monomial, Fraction] = {}
        for rm, rc in r.replacement.terms.items():
            sign, prod = _koszul_product(rest, rm, odd)
            if not sign:
                continue
            for nm, nc in self._normal_form(prod).items():
                acc[nm] = acc.get(nm, 0) + sign * rc * nc
        out = {m: c for m, c in acc.items() if c}
        self._nf[mono] = out
        return out

    def reduce(self, p: GradedPolynomial) -> GradedPolynomial:
        """Unique normal form of ``p`` modulo the relations (degree-preserving)."""
        if p.table != self.table:
            raise ValueError("polynomial is not over this ring's generators")
        if not self.rules:
            return p
        acc: dict[Monomial, Fraction] = {}
        for m, c in p.terms.items():
            for nm, nc in self._normal_form(m).items():
                acc[nm] = acc.get(nm, 0) + c * nc
        return GradedPolynomial(self.table, acc)

    def mul(self, a: GradedPolynomial, b: GradedPolynomial) -> GradedPolynomial:
        return self.reduce(a * b)

    def power(self, a: GradedPolynomial, k: int) -> GradedPolynomial:
        out = self.one()
        for _ in range(k):
            out = self.reduce(out * a)
        return out

    # -- bases ------------------------------------------------------------
    def monomials(self, degree: int) -> list[Monomial]:
        """Normal monomials of the given degree, descending monomial order."""
        return [m for m in enumerate_monomials(self.table, degree) if self.is_normal(m)]

    def basis(self, degree: int) -> list[GradedPolynomial]:
        return [GradedPolynomial.monomial(self.table, m) for m in self.monomials(degree)]

    def dimension(self, degree: int) -> int:
        return len(self.monomials(degree))


def enumerate_monomials(table: GeneratorTable, degree: int) -> list[Monomial]:
    """All monomials of exactly ``degree`` (odd exponents at most 1)."""
    if degree < 0:
        return []
    gens = table.gens
    for g in gens:
        if g.degree == 0:
            raise ValueError(f"generator {g.name} has degree 0; graded pieces are infinite")
    out: list[Monomial] = []
    n = len(gens)

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        g = gens[i]
        top = left // g.degree
        if g.odd:
            top = min(top, 1)
        for e in range(top, -1, -1):
            acc.append(e)
            rec(i + 1, left - e * g.degree, acc)
            acc.pop()

    rec(0, degree, [])
    out.sort(key=lambda m: order_key(m, table), reverse=True)
    return out


def substitute(
    p: GradedPolynomial,
    images: Mapping[str, GradedPolynomial],
    target: RingPresentation,
    check: bool = True,
) -> GradedPolynomial:
    """Apply the graded ring map determined by ``images`` and reduce in ``target``."""
    table = p.table
    imgs: list[GradedPolynomial] = []
    for g in table:
        if g.name not in images:
            raise KeyError(f"no image given for generator {g.name!r}")
        img = images[g.name]
        if isinstance(img, (int, Fraction)):
            img = target.const(img)
        if img.table != target.table:
            raise ValueError(f"image of {g.name} is not over the target ring")
        if check and not img.is_zero():
            ds = img.degrees()
            if ds != {g.degree}:
                raise ValueError(f"image of {g.name} has degree {sorted(ds)}, expected {g.degree}")
        imgs.append(target.reduce(img))

    powers: dict[tuple[int, int], GradedPolynomial] = {}

    def power(i: int, e: int) -> GradedPolynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = target.one() if e == 0 else target.reduce(power(i, e - 1) * imgs[i])
        return powers[key]

    acc = target.zero()
    for mono, c in p.terms.items():
        term = target.const(c)
        for i, e in enumerate(mono):
            if e:
                term = target.reduce(term * power(i, e))
                if term.is_zero():
                    break
        acc = acc + term
    return acc


def embed(p: GradedPolynomial, target: RingPresentation) -> GradedPolynomial:
    """Include ``p`` into a ring whose generators contain p's by name."""
    return substitute(p, {n: target.gen(n) for n in p.table.names}, target, check=False)


class TensorRing(NamedTuple):
    ring: RingPresentation
    left: Callable[[GradedPolynomial], GradedPolynomial]
    right: Callable[[GradedPolynomial], GradedPolynomial]
    left_names: tuple[str, ...]
    right_names: tuple[str, ...]


def tensor(a: RingPresentation, b: RingPresentation, suffixes: tuple[str, str] | None = None) -> TensorRing:
    """Tensor product on the disjoint union of generator tables.

    Generator names get ``suffixes`` appended (always if given, otherwise
    only when the two tables share a name).
    """
    clash = set(a.table.names) & set(b.table.names)
    if suffixes is None and clash:
        suffixes = ("_1", "_2")
    sa, sb = suffixes or ("", "")
    ga = [Generator(g.name + sa, g.degree) for g in a.table]
    gb = [Generator(g.name + sb, g.degree) for g in b.table]
    table = GeneratorTable(ga + gb)
    na, nb = len(ga), len(gb)

    def lift_a(p: GradedPolynomial) -> GradedPolynomial:
        return GradedPolynomial(table, {m + (0,) * nb: c for m, c in p.terms.items()})

    def lift_b(p: GradedPolynomial) -> GradedPolynomial:
        return GradedPolynomial(table, {(0,) * na + m: c for m, c in p.terms.items()})

    rules = [RewriteRule(r.generator, r.power, lift_a(r.replacement)) for r in a.rules]
    rules += [RewriteRule(r.generator + na, r.power, lift_b(r.replacement)) for r in b.rules]
    ring = RingPresentation(table, rules, name=f"{a.name or 'A'}(x){b.name or 'B'}")

    def left(p: GradedPolynomial) -> GradedPolynomial:
        if p.table != a.table:
            raise ValueError("left factor element over the wrong ring")
        return ring.reduce(lift_a(p))

    def right(p: GradedPolynomial) -> GradedPolynomial:
        if p.table != b.table:
            raise ValueError("right factor element over the wrong ring")
        return ring.reduce(lift_b(p))

    return TensorRing(ring, left, right, tuple(g.name for g in ga), tuple(g.name for g in gb))


def extend_ring(base: RingPresentation, gens: Iterable[Generator | tuple[str, int]],
                relations: Iterable[str | GradedPolynomial] = (), name: str | None = None):
    """Adjoin generators (placed last) and relations given as text.

    Returns the new ring and the inclusion of ``base``.
    """
    table = base.table.extend(gens)
    extra = len(table) - len(base.table)

    def lift(p: GradedPolynomial) -> GradedPolynomial:
        return GradedPolynomial(table, {m + (0,) * extra: c for m, c in p.terms.items()})

    from .textio import parse_poly

    rules = [RewriteRule(r.generator, r.power, lift(r.replacement)) for r in base.rules]
    rules += [rule_from_relation(parse_poly(t, table) if isinstance(t, str) else t) for t in relations]
    return RingPresentation(table, rules, name), lift
