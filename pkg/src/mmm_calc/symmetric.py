"""Symmetric polynomials, Newton power sums and multiplicative sequences.

Symmetric polynomials are kept in the elementary basis: a polynomial over
generators ``e1..em`` with ``deg e_i = weight * i``.  ``weight`` is 4 for
Pontrjagin roots (``e_i`` plays ``p_{4i}``) and 2 for Chern roots
(``e_i`` plays ``c_{2i}``).  Root variables ``x1..xm`` have degree
``weight``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebra import (
    GeneratorTable,
    GradedPolynomial,
    RingPresentation,
    bernoulli,
    nullspace,
    substitute,
)


@lru_cache(maxsize=None)
def elementary_ring(m: int, weight: int = 4) -> RingPresentation:
    if m < 0:
        raise ValueError("variable count must be non-negative")
    if weight <= 0 or weight % 2:
        raise ValueError("root weight must be a positive even number")
    return RingPresentation.free([(f"e{i}", weight * i) for i in range(1, m + 1)], name=f"Sym[{m}]")


@lru_cache(maxsize=None)
def root_ring(m: int, weight: int = 4) -> RingPresentation:
    return RingPresentation.free([(f"x{i}", weight) for i in range(1, m + 1)], name=f"Q[x1..x{m}]")


def e(i: int, m: int, weight: int = 4) -> GradedPolynomial:
    ring = elementary_ring(m, weight)
    if i == 0:
        return ring.one()
    if i > m:
        return ring.zero()
    return ring.gen(f"e{i}")


# -- expansion into roots ---------------------------------------------------

@lru_cache(maxsize=None)
def _elementary_in_roots(m: int, weight: int) -> tuple[GradedPolynomial, ...]:
    """(e_0, ..., e_m) as polynomials in x1..xm, from prod (1 + x_i)."""
    R = root_ring(m, weight)
    es = [R.one()] + [R.zero()] * m
    for i in range(1, m + 1):
        x = R.gen(f"x{i}")
        for k in range(i, 0, -1):
            es[k] = es[k] + es[k - 1] * x
    return tuple(es)


def expand(p: GradedPolynomial, m: int, weight: int = 4) -> GradedPolynomial:
    """Elementary-basis polynomial -> polynomial in the root variables."""
    R = root_ring(m, weight)
    es = _elementary_in_roots(m, weight)
    return substitute(p, {f"e{i}": es[i] for i in range(1, m + 1)}, R)


def _permute(p: GradedPolynomial, perm: Sequence[int]) -> GradedPolynomial:
    """Substitute x_{i} -> x_{perm[i]} (0-based positions)."""
    out = {}
    for mono, c in p.terms.items():
        new = [0] * len(mono)
        for i, ex in enumerate(mono):
            new[perm[i]] = ex
        out[tuple(new)] = c
    return GradedPolynomial(p.table, out)


def is_symmetric(p: GradedPolynomial) -> bool:
    """Invariance under the generators (1 2) and (1 2 ... m) of S_m."""
    m = len(p.table)
    if m <= 1:
        return True
    swap = [1, 0] + list(range(2, m))
    cycle = [(i + 1) % m for i in range(m)]
    return _permute(p, swap) == p and _permute(p, cycle) == p


def express_in_elementary(p: GradedPolynomial, weight: int | None = None) -> GradedPolynomial:
    """Rewrite a symmetric polynomial in x1..xm in the elementary basis.

    Classical algorithm: repeatedly strip the lex-leading term
    ``c x^a`` (a_1 >= a_2 >= ...) with ``c * prod e_i^(a_i - a_{i+1})``.
    """
    m = len(p.table)
    if weight is None:
        degs = set(p.table.degrees)
        weight = degs.pop() if degs else 4
    if p.table != root_ring(m, weight).table:
        raise ValueError("expected a polynomial in the root variables x1..xm")
    if not is_symmetric(p):
        raise ValueError("polynomial is not symmetric")
    E = elementary_ring(m, weight)
    es = _elementary_in_roots(m, weight)
    out = {}
    rest = p
    while not rest.is_zero():
        lead = max(rest.terms)
        c = rest.terms[lead]
        expo = tuple(lead[i] - (lead[i + 1] if i + 1 < m else 0) for i in range(m))
        if any(x < 0 for x in expo):
            raise ValueError("polynomial is not symmetric")
        out[expo] = out.get(expo, 0) + c
        term = GradedPolynomial.const(rest.table, c)
        for i, k in enumerate(expo):
            if k:
                term = term * es[i + 1] ** k
        rest = rest - term
    return GradedPolynomial(E.table, out)


# -- power sums ---------------------------------------------------------------

def power_sum(d: int, m: int, weight: int = 4) -> GradedPolynomial:
    """Newton power sum s_d = x_1^d + ... + x_m^d in the elementary basis."""
    if m < 1:
        raise ValueError("need at least one variable")
    return _power_sums(m, weight, d)[d]


@lru_cache(maxsize=None)
def _power_sums(m: int, weight: int, d: int) -> tuple[GradedPolynomial, ...]:
    E = elementary_ring(m, weight)
    s = [E.const(m)]
    for k in range(1, d + 1):
        # s_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i s_{k-i} + (-1)^{k-1} k e_k
        acc = E.zero()
        for i in range(1, min(k - 1, m) + 1):
            term = e(i, m, weight) * s[k - i]
            acc = acc + term if i % 2 else acc - term
        if k <= m:
            term = e(k, m, weight).scale(k)
            acc = acc + term if k % 2 else acc - term
        s.append(acc)
    return tuple(s)


# -- power series and multiplicative sequences --------------------------------

@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def log(self) -> "PowerSeries":
        """Logarithm of a series with constant term 1."""
        f = self.coeffs
        if f[0] != 1:
            raise ValueError("log needs constant term 1")
        K = len(f) - 1
        g = [Fraction(0)] * (K + 1)
        for k in range(1, K + 1):
            # k g_k = k f_k - sum_{j=1}^{k-1} j g_j f_{k-j}
            s = k * f[k] - sum((j * g[j] * f[k - j] for j in range(1, k)), Fraction(0))
            g[k] = s / k
        return PowerSeries(tuple(g))


def l_series(K: int = 12) -> PowerSeries:
    """sqrt(x)/tanh(sqrt(x)) = sum_k 2^{2k} B_{2k} / (2k)! x^k."""
    return PowerSeries(tuple(Fraction(2 ** (2 * k)) * bernoulli(2 * k) / factorial(2 * k) for k in range(K + 1)))


def total_chern_series(K: int = 12) -> PowerSeries:
    """1 + x: its multiplicative sequence picks out the e_d."""
    return PowerSeries((Fraction(1), Fraction(1)) + (Fraction(0),) * (K - 1))


@dataclass(frozen=True)
class MultiplicativeSequence:
    """Components F_d of prod_i f(x_i), kept in the elementary basis."""

    series: PowerSeries
    name: str = "F"
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def component(self, d: int, m: int, weight: int = 4) -> GradedPolynomial:
        return mult_seq_component(self, d, m, weight)


def mult_seq_component(seq: MultiplicativeSequence, d: int, m: int, weight: int = 4) -> GradedPolynomial:
    """F_d in m variables.

    Uses prod f(x_i) = exp(sum_k g_k s_k) with g = log f, so everything
    stays in the elementary basis.
    """
    if d > seq.series.truncation:
        raise ValueError(f"degree {d} exceeds series truncation {seq.series.truncation}")
    if d < 0:
        raise ValueError("negative degree")
    key = (d, m, weight)
    hit = seq._cache.get(key)
    if hit is not None:
        return hit
    E = elementary_ring(m, weight)
    if d == 0 or m == 0:
        out = E.one() if d == 0 else E.zero()
        seq._cache[key] = out
        return out
    g = seq.series.log()
    top = weight * d
    G = E.zero()
    for k in range(1, d + 1):
        if g[k]:
            G = G + power_sum(k, m, weight).scale(g[k])
    total = E.one()
    term = E.one()
    for j in range(1, d + 1):
        term = (term * G).truncate(top).scale(Fraction(1, j))
        total = total + term
    out = total.component(top)
    seq._cache[key] = out
    return out


L_CLASS = MultiplicativeSequence(l_series(12), "L")


def l_class_component(d: int, m: int, K: int | None = None) -> GradedPolynomial:
    """Hirzebruch L_{4d} in m Pontrjagin-root variables (e_i = p_{4i})."""
    seq = L_CLASS if K is None or K <= 12 else MultiplicativeSequence(l_series(K), "L")
    if d > seq.series.truncation:
        seq = MultiplicativeSequence(l_series(d), "L")
    return seq.component(d, m, 4)


def character_component(kind: str, d: int, m: int, normalized: bool = True) -> GradedPolynomial:
    """Chern character ch_{2d} (Chern roots) or Pontrjagin character ph_{4d}.

    ``normalized=False`` gives the bare power sum s_d.
    """
    if kind == "chern":
        weight, scale = 2, Fraction(1, factorial(d))
    elif kind == "pontrjagin":
        weight, scale = 4, Fraction(2, factorial(2 * d))
    else:
        raise ValueError(f"unknown character kind {kind!r}")
    s = power_sum(d, m, weight)
    return s.scale(scale) if normalized else s


def verify_powerseries_lemma(seq: MultiplicativeSequence, d: int, m: int) -> bool:
    """Symmetric h = sum_i a_i x_m^i F_{d-i}(x_1..x_{m-1}) forces a_i = a_0 f_i.

    Solves the symmetry constraints on (a_0..a_d) exactly and checks that
    the solution space is the line spanned by (f_0, ..., f_d).
    """
    if m < 3:
        raise ValueError("the lemma needs m >= 3 variables")
    f = seq.series
    bad = [k for k in range(d + 1) if f[k] == 0]
    if bad:
        raise ValueError(f"series coefficient f_{bad[0]} vanishes")
    R = root_ring(m, 2)
    lift = {f"x{i}": R.gen(f"x{i}") for i in range(1, m)}
    xm = R.gen(f"x{m}")
    pieces = []
    for i in range(d + 1):
        Fi = expand(seq.component(d - i, m - 1, 2), m - 1, 2)
        pieces.append(substitute(Fi, lift, R) * xm ** i)
    swap = [1, 0] + list(range(2, m))
    last_swap = list(range(m - 2)) + [m - 1, m - 2]
    cycle = [(i + 1) % m for i in range(m)]
    rows_by_mono: dict = {}
    for perm in (swap, last_swap, cycle):
        for col, piece in enumerate(pieces):
            diff = piece - _permute(piece, perm)
            for mono, c in diff.terms.items():
                key = (tuple(perm), mono)
                if key not in rows_by_mono:
                    rows_by_mono[key] = [Fraction(0)] * (d + 1)
                rows_by_mono[key][col] += c
    rows = list(rows_by_mono.values())
    ker = nullspace(rows, d + 1) if rows else [[Fraction(int(i == j)) for j in range(d + 1)] for i in range(d + 1)]
    if len(ker) != 1:
        return False
    v = ker[0]
    return all(v[k] * f[0] == v[0] * f[k] for k in range(d + 1))


def rename(p: GradedPolynomial, prefix: str, step: int) -> GradedPolynomial:
    """Render e_i as ``{prefix}{step*i}`` (p4, p8, ... or c2, c4, ...)."""
    table = GeneratorTable([(f"{prefix}{step * (i + 1)}", g.degree) for i, g in enumerate(p.table.gens)])
    return p.retable(table)
