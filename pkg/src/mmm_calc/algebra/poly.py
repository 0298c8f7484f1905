"""Graded-commutative polynomials with exact rational coefficients.

A polynomial lives over a :class:`GeneratorTable`.  Monomials are exponent
tuples indexed by generator position; odd-degree generators carry exponent
0 or 1 and are multiplied with Koszul signs.  Stored monomials are always
in the canonical order ``g_0^a_0 g_1^a_1 ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class GeneratorTable:
    """Ordered, immutable list of named generators with degrees."""

    __slots__ = ("gens", "_index", "_odd")

    def __init__(self, gens: Iterable[Generator | tuple[str, int]]):
        gs = tuple(g if isinstance(g, Generator) else Generator(*g) for g in gens)
        names = [g.name for g in gs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in gs:
            if g.degree < 0:
                raise ValueError(f"generator {g.name} has negative degree")
        self.gens = gs
        self._index = {g.name: i for i, g in enumerate(gs)}
        self._odd = tuple(i for i, g in enumerate(gs) if g.odd)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.gens)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GeneratorTable) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.gens)
        return f"GeneratorTable({inner})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.gens)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.gens)

    @property
    def odd_positions(self) -> tuple[int, ...]:
        return self._odd

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def degree_of(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.gens))

    def unit(self) -> Monomial:
        return (0,) * len(self.gens)

    def extend(self, gens: Iterable[Generator | tuple[str, int]]) -> "GeneratorTable":
        return GeneratorTable(self.gens + tuple(gens))


def order_key(mono: Monomial, table: GeneratorTable):
    """Degree-lexicographic key; later generators weigh more.

    Rings place their quotient generator (chi, z, ...) last, so every
    relation head is the largest monomial of its relation.
    """
    return (table.degree_of(mono), mono[::-1])


def _koszul_product(a: Monomial, b: Monomial, odd: tuple[int, ...]):
    """Return (sign, a*b) for canonical monomials, or (0, None) if it vanishes."""
    sign = 1
    if odd:
        swaps = 0
        seen_b = 0
        # count pairs (i in a, j in b) with i > j among odd generators
        for i in odd:
            ai, bi = a[i], b[i]
            if ai and bi:
                return 0, None
            if ai:
                swaps += seen_b
            if bi:
                seen_b += 1
        if swaps % 2:
            sign = -1
    return sign, tuple(x + y for x, y in zip(a, b))


class GradedPolynomial:
    """Immutable exact-rational polynomial over a :class:`GeneratorTable`."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: Mapping[Monomial, Scalar] | None = None):
        self.table = table
        clean: dict[Monomial, Fraction] = {}
        if terms:
            n = len(table)
            odd = table.odd_positions
            for mono, c in terms.items():
                if c == 0:
                    continue
                if len(mono) != n:
                    raise ValueError("monomial length does not match generator table")
                if any(mono[i] > 1 for i in odd):
                    continue
                clean[tuple(mono)] = Fraction(c)
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, table: GeneratorTable) -> "GradedPolynomial":
        return cls(table)

    @classmethod
    def const(cls, table: GeneratorTable, c: Scalar) -> "GradedPolynomial":
        return cls(table, {table.unit(): c})

    @classmethod
    def gen(cls, table: GeneratorTable, name: str) -> "GradedPolynomial":
        mono = [0] * len(table)
        mono[table.index(name)] = 1
        return cls(table, {tuple(mono): 1})

    @classmethod
    def monomial(cls, table: GeneratorTable, mono: Monomial, c: Scalar = 1) -> "GradedPolynomial":
        return cls(table, {tuple(mono): c})

    # -- inspection -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(self.table.unit())

    def degrees(self) -> set[int]:
        return {self.table.degree_of(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("degree() needs a nonzero homogeneous polynomial")
        return ds.pop()

    def component(self, d: int) -> "GradedPolynomial":
        deg = self.table.degree_of
        return GradedPolynomial(self.table, {m: c for m, c in self.terms.items() if deg(m) == d})

    def truncate(self, max_degree: int) -> "GradedPolynomial":
        deg = self.table.degree_of
        return GradedPolynomial(self.table, {m: c for m, c in self.terms.items() if deg(m) <= max_degree})

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending monomial order (deterministic output order)."""
        return sorted(self.terms.items(), key=lambda t: order_key(t[0], self.table), reverse=True)

    def variables(self) -> set[str]:
        names = self.table.names
        return {names[i] for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            if other.table != self.table:
                raise ValueError("polynomials over different generator tables")
            return other
        if isinstance(other, (int, Fraction)):
            return GradedPolynomial.const(self.table, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return GradedPolynomial(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "GradedPolynomial":
        c = Fraction(c)
        if c == 0:
            return GradedPolynomial(self.table)
        return GradedPolynomial(self.table, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        odd = self.table.odd_positions
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                sign, mono = _koszul_product(ma, mb, odd)
                if not sign:
                    continue
                v = ca * cb if sign > 0 else -ca * cb
                out[mono] = out.get(mono, 0) + v
        return GradedPolynomial(self.table, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = GradedPolynomial.const(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.const(self.table, other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .textio import format_poly

        return f"GradedPolynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        from .textio import format_poly

        return format_poly(self)

    # -- structure maps ---------------------------------------------------
    def map_monomials(self, fn, target: GeneratorTable) -> "GradedPolynomial":
        """Apply ``fn(mono) -> GradedPolynomial`` (over ``target``) linearly."""
        acc: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for mm, cc in fn(m).terms.items():
                acc[mm] = acc.get(mm, 0) + c * cc
        return GradedPolynomial(target, acc)

    def retable(self, table: GeneratorTable) -> "GradedPolynomial":
        """Reinterpret over a table with identical shape (renaming only)."""
        if len(table) != len(self.table) or table.degrees != self.table.degrees:
            raise ValueError("retable needs a table with matching degrees")
        return GradedPolynomial(table, self.terms)


def koszul_sign(a: Monomial, b: Monomial, table: GeneratorTable) -> int:
    """Sign of the canonical product a*b (0 if it vanishes)."""
    return _koszul_product(a, b, table.odd_positions)[0]
