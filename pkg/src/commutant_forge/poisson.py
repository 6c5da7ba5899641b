"""Lie-Poisson brackets, degree-stratified commutants, closure and Casimirs.

The commutant solver builds, degree by degree, the exact linear system a
homogeneous polynomial must satisfy to Poisson-commute with every constraint,
takes its kernel and removes the subspace generated by products of lower
strata.  Closure and Casimir discovery reduce to the same exact linear
algebra, so every reported identity is re-checkable by substitution.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .liealgebra import LieAlgebra, Subalgebra
from .linalg import Echelon, SparseVec, express, kernel, rank
from .polynomials import (
    Exponents,
    Polynomial,
    default_names,
    grlex_key,
    monomials_of_degree,
    monomials_up_to_degree,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_SEED = 104729  # fixed so Jacobian sample points are reproducible


def lie_poisson_bracket(algebra: LieAlgebra, p: Polynomial, q: Polynomial) -> Polynomial:
    """{p, q} on the dual space: sum C_jk^l x_l dp/dx_j dq/dx_k."""
    n = algebra.dim
    if p.nvars != n or q.nvars != n:
        raise ValueError("polynomial dimension does not match the algebra")
    dp = [p.derivative(j) for j in range(n)]
    dq = [q.derivative(j) for j in range(n)]
    result = Polynomial.zero(n)
    for (j, k), comp in algebra._table.items():
        cross = dp[j] * dq[k] - dp[k] * dq[j]
        if cross.is_zero:
            continue
        linear = Polynomial(n, {tuple(1 if i == l else 0 for i in range(n)): c for l, c in comp.items()})
        result = result + linear * cross
    return result


# -- coefficient-vector plumbing -------------------------------------------


class MonomialIndex:
    """Bijection between monomials and column indices in canonical order."""

    def __init__(self, monomials: Iterable[Exponents]):
        ordered = sorted(set(monomials), key=grlex_key, reverse=True)
        self.monomials: list[Exponents] = ordered
        self.index: dict[Exponents, int] = {m: i for i, m in enumerate(ordered)}

    def __len__(self) -> int:
        return len(self.monomials)

    def to_vec(self, poly: Polynomial) -> SparseVec:
        vec: SparseVec = {}
        for e, c in poly.terms.items():
            try:
                vec[self.index[e]] = c
            except KeyError:
                raise ValueError(f"monomial {e} outside index") from None
        return vec

    def to_poly(self, vec: SparseVec, nvars: int) -> Polynomial:
        return Polynomial(nvars, {self.monomials[i]: c for i, c in vec.items()})


def _index_for(polys: Iterable[Polynomial]) -> MonomialIndex:
    mons: set[Exponents] = set()
    for p in polys:
        mons.update(p.terms)
    return MonomialIndex(mons)


# -- commutant solving -------------------------------------------------------


@dataclass
class CommutantResult:
    """Degree strata of the polynomial commutant of a set of constraints."""

    algebra: LieAlgebra
    label: str
    max_degree: int
    strata: dict[int, list[Polynomial]]
    product_basis: dict[int, list[Polynomial]]  # canonical span of discarded products

    @property
    def discarded_products(self) -> list[Polynomial]:
        out: list[Polynomial] = []
        for h in sorted(self.product_basis):
            out.extend(self.product_basis[h])
        return out

    def generators(self) -> list[Polynomial]:
        out: list[Polynomial] = []
        for h in sorted(self.strata):
            out.extend(self.strata[h])
        return out

    def stratum_dims(self) -> dict[int, int]:
        return {h: len(polys) for h, polys in sorted(self.strata.items())}

    def solution_space_contains(self, poly: Polynomial) -> bool:
        """Membership of a homogeneous polynomial in stratum + product span."""
        if poly.is_zero:
            return True
        if not poly.is_homogeneous():
            return all(self.solution_space_contains(part) for part in poly.homogeneous_components().values())
        h = poly.degree()
        if h not in self.strata and h not in self.product_basis:
            return False
        pool = self.strata.get(h, []) + self.product_basis.get(h, [])
        idx = _index_for(pool + [poly])
        span = Echelon(idx.to_vec(p) for p in pool)
        return span.contains(idx.to_vec(poly))

    def to_json_dict(self) -> dict:
        names = default_names(self.algebra.dim)
        return {
            "algebra": self.algebra.name,
            "subalgebra": self.label,
            "max_degree": self.max_degree,
            "strata": {str(h): [p.format(names) for p in polys] for h, polys in sorted(self.strata.items())},
            "discarded_products": {
                str(h): [p.format(names) for p in polys] for h, polys in sorted(self.product_basis.items()) if polys
            },
        }


def _constraints_of(source: Subalgebra | Sequence[Polynomial]) -> tuple[list[Polynomial], str]:
    if isinstance(source, Subalgebra):
        return source.dual_forms(), source.label
    polys = list(source)
    if not polys:
        raise ValueError("no constraints given")
    return polys, ""


def commuting_space_at_degree(algebra: LieAlgebra, constraints: Sequence[Polynomial], degree: int) -> list[Polynomial]:
    """Canonical basis of homogeneous degree-h solutions of {p, g} = 0 for all g."""
    n = algebra.dim
    cols = monomials_of_degree(n, degree)
    col_index = {m: i for i, m in enumerate(cols)}
    rows: dict[tuple[int, Exponents], SparseVec] = {}
    for gi, g in enumerate(constraints):
        for ci, mono in enumerate(cols):
            bracket = lie_poisson_bracket(algebra, Polynomial.monomial(mono), g)
            for e, c in bracket.terms.items():
                rows.setdefault((gi, e), {})[ci] = c
    basis = kernel(list(rows.values()), len(cols))
    return [Polynomial(n, {cols[i]: c for i, c in vec.items()}) for vec in basis]


def _degree_products(strata: Mapping[int, list[Polynomial]], degree: int, nvars: int) -> list[Polynomial]:
    """All products of lower-stratum representatives with total degree `degree`."""
    pool: list[tuple[int, Polynomial]] = []
    for h in sorted(strata):
        if h < degree:
            pool.extend((h, p) for p in strata[h])
    out: list[Polynomial] = []

    def rec(start: int, remaining: int, acc: Polynomial) -> None:
        for i in range(start, len(pool)):
            h, p = pool[i]
            if h > remaining:
                continue
            prod = acc * p
            if h == remaining:
                out.append(prod)
            else:
                rec(i, remaining - h, prod)

    rec(0, degree, Polynomial.one(nvars))
    return out


def solve_commutant(
    algebra: LieAlgebra,
    constraints: Subalgebra | Sequence[Polynomial],
    max_degree: int,
) -> CommutantResult:
    """Degree-stratified commutant of a subalgebra (or polynomial constraints)."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    polys, label = _constraints_of(constraints)
    strata: dict[int, list[Polynomial]] = {}
    product_basis: dict[int, list[Polynomial]] = {}
    for h in range(1, max_degree + 1):
        solutions = commuting_space_at_degree(algebra, polys, h)
        products = _degree_products(strata, h, algebra.dim)
        idx = _index_for(solutions + products)
        prod_span = Echelon(idx.to_vec(p) for p in products)
        product_basis[h] = [idx.to_poly(row, algebra.dim) for row in prod_span.basis()]
        fresh = Echelon()
        for sol in solutions:
            fresh.add(prod_span.reduce(idx.to_vec(sol)))
        strata[h] = [idx.to_poly(row, algebra.dim) for row in fresh.basis()]
    result = CommutantResult(algebra, label, max_degree, strata, product_basis)
    # Direct re-check, independent of the kernel computation.
    for h, polys_h in result.strata.items():
        for p in polys_h:
            for g in polys:
                if not lie_poisson_bracket(algebra, p, g).is_zero:
                    raise AssertionError(f"stratum {h} element fails to commute with a constraint")
    return result


# -- closure into a finitely generated Poisson algebra -----------------------


def generator_monomials(ngens: int, max_degree: int, min_degree: int = 1) -> list[Exponents]:
    """Exponent tuples over the generators, ascending (degree, tuple) order."""
    mons = monomials_up_to_degree(ngens, max_degree, min_degree)
    return sorted(mons, key=grlex_key)


def expand_generator_monomial(generators: Sequence[Polynomial], exps: Exponents) -> Polynomial:
    out = Polynomial.one(generators[0].nvars)
    for g, e in zip(generators, exps):
        for _ in range(e):
            out = out * g
    return out


@dataclass
class BracketTable:
    """Pairwise Poisson brackets expressed in monomials of the generators."""

    algebra: LieAlgebra
    names: list[str]
    generators: list[Polynomial]
    expression_degree: int
    entries: dict[tuple[int, int], Polynomial]  # i < j, polynomial in generator symbols
    remainders: dict[tuple[int, int], Polynomial]  # inexpressible residues, x-coordinates

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def entry(self, i: int, j: int) -> Polynomial:
        """Expression of {A_i, A_j} (1-based indices, antisymmetric)."""
        if i == j:
            return Polynomial.zero(self.ngens)
        if i < j:
            return self.entries.get((i, j), Polynomial.zero(self.ngens))
        return -self.entries.get((j, i), Polynomial.zero(self.ngens))

    def remainder(self, i: int, j: int) -> Polynomial:
        key = (i, j) if i < j else (j, i)
        rem = self.remainders.get(key, Polynomial.zero(self.algebra.dim))
        return rem if i < j else -rem

    @property
    def is_closed(self) -> bool:
        return all(r.is_zero for r in self.remainders.values())

    @property
    def is_abelian(self) -> bool:
        return self.is_closed and all(e.is_zero for e in self.entries.values())

    def expand(self, poly_in_generators: Polynomial) -> Polynomial:
        """Substitute the generator polynomials into a symbol polynomial."""
        return poly_in_generators.substitute(self.generators)

    def nonzero_entries(self) -> list[tuple[tuple[int, int], Polynomial]]:
        return [(key, val) for key, val in sorted(self.entries.items()) if not val.is_zero]

    def to_json_dict(self) -> dict:
        xnames = default_names(self.algebra.dim)
        entries = []
        for (i, j) in sorted(self.entries):
            expr = self.entries[(i, j)]
            rem = self.remainders.get((i, j), Polynomial.zero(self.algebra.dim))
            terms = [
                (Polynomial(self.ngens, {e: c})).format(self.names)
                for e, c in expr.sorted_terms()
            ]
            entries.append(
                {
                    "lhs": [i, j],
                    "expr": terms,
                    "remainder": "" if rem.is_zero else rem.format(xnames),
                }
            )
        return {
            "algebra": self.algebra.name,
            "generators": [
                {"name": name, "poly": g.format(xnames)} for name, g in zip(self.names, self.generators)
            ],
            "expression_degree": self.expression_degree,
            "entries": entries,
        }


def close_algebra(
    algebra: LieAlgebra,
    generators: Sequence[tuple[str, Polynomial]] | Sequence[Polynomial],
    expression_degree: int = 2,
) -> BracketTable:
    """Compute all pairwise brackets and express them in generator monomials.

    Whatever cannot be written with generator-degree <= expression_degree is
    reported as a remainder; non-closure is data, not an error.
    """
    if expression_degree < 1:
        raise ValueError("expression_degree must be >= 1")
    named: list[tuple[str, Polynomial]] = []
    for idx, g in enumerate(generators):
        if isinstance(g, tuple):
            named.append(g)
        else:
            named.append((f"A{idx + 1}", g))
    names = [n for n, _ in named]
    gens = [p for _, p in named]
    if len(set(names)) != len(names):
        raise ValueError("duplicate generator names")
    for p in gens:
        if p.is_zero:
            raise ValueError("zero generator")
    m = len(gens)
    entries: dict[tuple[int, int], Polynomial] = {}
    remainders: dict[tuple[int, int], Polynomial] = {}
    if m:
        symbol_monomials = generator_monomials(m, expression_degree)
        expansions = [expand_generator_monomial(gens, e) for e in symbol_monomials]
        brackets: dict[tuple[int, int], Polynomial] = {}
        for i in range(m):
            for j in range(i + 1, m):
                brackets[(i + 1, j + 1)] = lie_poisson_bracket(algebra, gens[i], gens[j])
        idx = _index_for(expansions + list(brackets.values()))
        expansion_vecs = [idx.to_vec(p) for p in expansions]
        for key, b in brackets.items():
            coeffs, residue = express(expansion_vecs, idx.to_vec(b))
            expr = Polynomial(m, {e: c for e, c in zip(symbol_monomials, coeffs) if c})
            rem = idx.to_poly(residue, algebra.dim)
            expressed = expr.substitute(gens) if not expr.is_zero else Polynomial.zero(algebra.dim)
            if not (expressed + rem == b):
                raise AssertionError("bracket expression failed re-expansion check")
            entries[key] = expr
            remainders[key] = rem
    table = BracketTable(algebra, names, gens, expression_degree, entries, remainders)
    return table


# -- Casimir discovery -------------------------------------------------------


@dataclass
class CasimirSet:
    """Canonical basis of formal Casimirs of a closed bracket table."""

    table: BracketTable
    degree: int
    casimirs: list[Polynomial]  # polynomials in the generator symbols
    independent_count: int

    def expanded(self) -> list[Polynomial]:
        return [self.table.expand(k) for k in self.casimirs]

    def contains(self, candidate: Polynomial) -> bool:
        """Membership of a generator-symbol polynomial in the Casimir span."""
        pool = self.casimirs + [candidate]
        idx = _index_for(pool)
        span = Echelon(idx.to_vec(k) for k in self.casimirs)
        return span.contains(idx.to_vec(candidate))

    def to_json_dict(self) -> dict:
        xnames = default_names(self.table.algebra.dim)
        return {
            "degree": self.degree,
            "casimirs": [k.format(self.table.names) for k in self.casimirs],
            "expanded": [k.format(xnames) for k in self.expanded()],
            "independent_count": self.independent_count,
        }


def formal_poisson_bracket(table: BracketTable, p: Polynomial, q: Polynomial) -> Polynomial:
    """Bracket of two generator-symbol polynomials using the table relations."""
    m = table.ngens
    if p.nvars != m or q.nvars != m:
        raise ValueError("polynomials must live in the generator symbols")
    dp = [p.derivative(i) for i in range(m)]
    dq = [q.derivative(i) for i in range(m)]
    out = Polynomial.zero(m)
    for (i, j), expr in table.entries.items():
        if expr.is_zero:
            continue
        cross = dp[i - 1] * dq[j - 1] - dp[j - 1] * dq[i - 1]
        if not cross.is_zero:
            out = out + expr * cross
    return out


def find_casimirs(table: BracketTable, degree: int, seed: int = DEFAULT_SEED) -> CasimirSet:
    """Formal central elements of generator-degree <= degree.

    Vanishing of {K, A_j} is imposed through the table relations; every
    solution is then re-verified in the ambient coordinates by substitution.
    The independence count is the Jacobian rank with respect to the
    generator symbols at seeded random rational points.
    """
    if not table.is_closed:
        raise ValueError("bracket table has remainders; close the algebra first")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    m = table.ngens
    candidates = generator_monomials(m, degree)
    rows: dict[tuple[int, Exponents], SparseVec] = {}
    for ci, mono in enumerate(candidates):
        k_poly = Polynomial.monomial(mono)
        for j in range(1, m + 1):
            a_j = Polynomial.variable(j - 1, m)
            br = formal_poisson_bracket(table, k_poly, a_j)
            for e, c in br.terms.items():
                rows.setdefault((j, e), {})[ci] = c
    basis = kernel(list(rows.values()), len(candidates))
    casimirs = [Polynomial(m, {candidates[i]: c for i, c in vec.items()}) for vec in basis]
    for k in casimirs:
        expanded = table.expand(k)
        for g in table.generators:
            if not lie_poisson_bracket(table.algebra, expanded, g).is_zero:
                raise AssertionError("formal Casimir fails the substitution oracle")
    count = functional_independence(casimirs, seed=seed) if casimirs else 0
    return CasimirSet(table, degree, casimirs, count)


# -- functional independence --------------------------------------------------


def _random_point(rng: random.Random, n: int) -> list[Fraction]:
    """Small odd integers with random signs: generic yet human-checkable."""
    return [Fraction(rng.choice((-1, 1)) * (2 * rng.randrange(1, 50) + 1)) for _ in range(n)]


def jacobian_rank_at(polys: Sequence[Polynomial], point: Sequence[Fraction]) -> int:
    rows: list[SparseVec] = []
    for p in polys:
        row: SparseVec = {}
        for j in range(p.nvars):
            v = p.derivative(j).evaluate(point)
            if v:
                row[j] = v
        rows.append(row)
    return rank(rows)


def functional_independence(polys: Sequence[Polynomial], seed: int = DEFAULT_SEED, max_tries: int = 12) -> int:
    """Generic Jacobian rank, confirmed by two consecutive sample points."""
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    n = polys[0].nvars
    rng = random.Random(seed)
    ranks = [jacobian_rank_at(polys, _random_point(rng, n)) for _ in range(2)]
    while ranks[-1] != ranks[-2] and len(ranks) < max_tries:
        ranks.append(jacobian_rank_at(polys, _random_point(rng, n)))
    return max(ranks)


def independence_bound(sub: Subalgebra, seed: int = DEFAULT_SEED) -> int:
    """dim g - rank of the structure matrix at a generic point.

    Row per subalgebra generator, column per basis element, entry the linear
    form given by the bracket, evaluated at a seeded random point.
    """
    algebra = sub.algebra
    n = algebra.dim
    rng = random.Random(seed)

    def rank_at(point: Sequence[Fraction]) -> int:
        rows: list[SparseVec] = []
        for g in sub.generators:
            row: SparseVec = {}
            for k in range(n):
                ek = [_ONE if i == k else _ZERO for i in range(n)]
                br = algebra.bracket(g, ek)
                val = sum((c * point[l] for l, c in enumerate(br)), _ZERO)
                if val:
                    row[k] = val
            rows.append(row)
        return rank(rows)

    ranks = [rank_at(_random_point(rng, n)) for _ in range(2)]
    while ranks[-1] != ranks[-2] and len(ranks) < 12:
        ranks.append(rank_at(_random_point(rng, n)))
    return n - max(ranks)


# -- algebraic Hamiltonians ---------------------------------------------------


def quadratic_casimirs(algebra: LieAlgebra) -> list[Polynomial]:
    """Canonical basis of degree-2 invariants of the whole algebra."""
    constraints = [Polynomial.variable(i, algebra.dim) for i in range(algebra.dim)]
    return commuting_space_at_degree(algebra, constraints, 2)


@dataclass
class HamiltonianSpec:
    """Coefficients of a Hamiltonian built from one subalgebra's coordinates.

    quadratic maps (a, b) generator-index pairs (1-based, a <= b) to the
    coefficient of the product of the corresponding dual coordinates;
    linear maps a -> coefficient; casimir holds the invariant coefficients.
    """

    subalgebra: Subalgebra
    quadratic: Mapping[tuple[int, int], object] = field(default_factory=dict)
    linear: Mapping[int, object] = field(default_factory=dict)
    casimir: Sequence[object] = (0, 0)


def build_hamiltonian(spec: HamiltonianSpec) -> Polynomial:
    sub = spec.subalgebra
    forms = sub.dual_forms()
    s = len(forms)
    n = sub.algebra.dim
    h = Polynomial.zero(n)
    for (a, b), coeff in spec.quadratic.items():
        if not (1 <= a <= s and 1 <= b <= s):
            raise ValueError(f"quadratic coefficient ({a}, {b}) references a coordinate outside the subalgebra")
        c = Fraction(coeff)
        if c:
            h = h + forms[a - 1] * forms[b - 1] * c
    for a, coeff in spec.linear.items():
        if not 1 <= a <= s:
            raise ValueError(f"linear coefficient {a} references a coordinate outside the subalgebra")
        c = Fraction(coeff)
        if c:
            h = h + forms[a - 1] * c
    invariants = quadratic_casimirs(sub.algebra)
    if len(spec.casimir) > len(invariants):
        raise ValueError("more Casimir coefficients than quadratic invariants")
    for gamma, inv in zip(spec.casimir, invariants):
        c = Fraction(gamma)
        if c:
            h = h + inv * c
    return h


def commutes_with_all(algebra: LieAlgebra, h: Polynomial, polys: Iterable[Polynomial]) -> bool:
    return all(lie_poisson_bracket(algebra, h, p).is_zero for p in polys)
