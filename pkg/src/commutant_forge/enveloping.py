"""Noncommutative computation in the universal enveloping algebra.

Elements are kept in the normal-ordered basis X1^{i1}...Xn^{in} with
X1 < X2 < ... < Xn; multiplication rewrites out-of-order generator pairs via
X_k X_j = X_j X_k + [X_k, X_j].  The symmetrization map ships in two forms:
the literal permutation-average reference and a memoized recursive version
that must agree with it term by term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .liealgebra import LieAlgebra, Subalgebra
from .linalg import SparseVec, express
from .poisson import CommutantResult, MonomialIndex, generator_monomials, _index_for
from .polynomials import Exponents, Polynomial, default_names, grlex_key, parse_polynomial

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PBWElement:
    """Exact rational combination of normal-ordered monomials in U(g)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, object] | None = None):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps}")
                c = Fraction(coeff)
                if c:
                    acc = clean.get(exps, _ZERO) + c
                    if acc:
                        clean[exps] = acc
                    else:
                        clean.pop(exps, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PBWElement is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "PBWElement":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "PBWElement":
        return cls(nvars, {(0,) * nvars: _ONE})

    @classmethod
    def generator(cls, index: int, nvars: int) -> "PBWElement":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): _ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Filtration degree: maximal total exponent (-1 for zero)."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __add__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ValueError("dimension mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e, _ZERO) + c
            if acc:
                terms[e] = acc
            else:
                terms.pop(e, None)
        out = PBWElement(self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    def __neg__(self):
        out = PBWElement(self.nvars)
        object.__setattr__(out, "terms", {e: -c for e, c in self.terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "PBWElement":
        c = Fraction(c)
        if not c:
            return PBWElement.zero(self.nvars)
        out = PBWElement(self.nvars)
        object.__setattr__(out, "terms", {e: v * c for e, v in self.terms.items()})
        return out

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda it: grlex_key(it[0]), reverse=True)

    def leading_part(self) -> "PBWElement":
        d = self.degree()
        return PBWElement(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def symbol(self) -> Polynomial:
        """Commutative polynomial with the same coefficients."""
        return Polynomial(self.nvars, dict(self.terms))

    def format(self, names: Sequence[str] | None = None) -> str:
        return self.symbol().format(names or default_names(self.nvars, "X"))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PBWElement({self.nvars}, {self.format()!r})"


def pbw_from_polynomial(p: Polynomial) -> PBWElement:
    """Reinterpret commutative monomials as already normal-ordered ones."""
    return PBWElement(p.nvars, dict(p.terms))


def parse_pbw(text: str, names: Sequence[str]) -> PBWElement:
    return pbw_from_polynomial(parse_polynomial(text, names))


class EnvelopingAlgebra:
    """U(g) with memoized normal-ordering over a fixed structure table."""

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self.n = algebra.dim
        self._mono_gen: dict[tuple[Exponents, int], dict[Exponents, Fraction]] = {}
        self._sym_cache: dict[Exponents, PBWElement] = {}

    # -- normal ordering ----------------------------------------------------

    def _multiply_mono_gen(self, exps: Exponents, k: int) -> dict[Exponents, Fraction]:
        """Normal form of X^exps * X_{k+1} as a term dict."""
        cached = self._mono_gen.get((exps, k))
        if cached is not None:
            return cached
        j = -1
        for idx in range(self.n - 1, k, -1):
            if exps[idx]:
                j = idx
                break
        if j < 0:
            lifted = list(exps)
            lifted[k] += 1
            result = {tuple(lifted): _ONE}
        else:
            shrunk = list(exps)
            shrunk[j] -= 1
            base = tuple(shrunk)
            result: dict[Exponents, Fraction] = {}
            # X^base X_j X_k = (X^base X_k) X_j + X^base [X_j, X_k]
            for mid, c1 in self._multiply_mono_gen(base, k).items():
                for out, c2 in self._multiply_mono_gen(mid, j).items():
                    acc = result.get(out, _ZERO) + c1 * c2
                    if acc:
                        result[out] = acc
                    else:
                        result.pop(out, None)
            for l, cl in self.algebra.structure(j, k).items():
                for out, c2 in self._multiply_mono_gen(base, l).items():
                    acc = result.get(out, _ZERO) + cl * c2
                    if acc:
                        result[out] = acc
                    else:
                        result.pop(out, None)
        self._mono_gen[(exps, k)] = result
        return result

    def multiply(self, a: PBWElement, b: PBWElement) -> PBWElement:
        if a.nvars != self.n or b.nvars != self.n:
            raise ValueError("dimension mismatch")
        total: dict[Exponents, Fraction] = {}
        for eb, cb in b.terms.items():
            word = [i for i in range(self.n) for _ in range(eb[i])]
            for ea, ca in a.terms.items():
                cur: dict[Exponents, Fraction] = {ea: ca * cb}
                for gen in word:
                    nxt: dict[Exponents, Fraction] = {}
                    for e, c in cur.items():
                        for out, c2 in self._multiply_mono_gen(e, gen).items():
                            acc = nxt.get(out, _ZERO) + c * c2
                            if acc:
                                nxt[out] = acc
                            else:
                                nxt.pop(out, None)
                    cur = nxt
                for e, c in cur.items():
                    acc = total.get(e, _ZERO) + c
                    if acc:
                        total[e] = acc
                    else:
                        total.pop(e, None)
        out = PBWElement(self.n)
        object.__setattr__(out, "terms", total)
        return out

    def commutator(self, a: PBWElement, b: PBWElement) -> PBWElement:
        return self.multiply(a, b) - self.multiply(b, a)

    def anticommutator(self, a: PBWElement, b: PBWElement) -> PBWElement:
        return self.multiply(a, b) + self.multiply(b, a)

    def generator(self, index: int) -> PBWElement:
        return PBWElement.generator(index, self.n)

    def from_vector(self, vec: Sequence) -> PBWElement:
        terms = {}
        for i, c in enumerate(vec):
            c = Fraction(c)
            if c:
                exps = [0] * self.n
                exps[i] = 1
                terms[tuple(exps)] = c
        return PBWElement(self.n, terms)

    def power(self, a: PBWElement, k: int) -> PBWElement:
        out = PBWElement.one(self.n)
        for _ in range(k):
            out = self.multiply(out, a)
        return out

    # -- symmetrization ------------------------------------------------------

    def symmetrize_reference(self, p: Polynomial) -> PBWElement:
        """Literal permutation average: the anti-optimization oracle."""
        if p.nvars != self.n:
            raise ValueError("dimension mismatch")
        total = PBWElement.zero(self.n)
        for exps, coeff in p.terms.items():
            word = [i for i in range(self.n) for _ in range(exps[i])]
            if not word:
                total = total + PBWElement(self.n, {exps: coeff})
                continue
            acc = PBWElement.zero(self.n)
            for perm in itertools.permutations(word):
                prod = PBWElement.one(self.n)
                for gen in perm:
                    prod = self.multiply(prod, self.generator(gen))
                acc = acc + prod
            total = total + acc.scale(Fraction(coeff, _factorial(len(word))))
        return total

    def _symmetrize_monomial(self, exps: Exponents) -> PBWElement:
        cached = self._sym_cache.get(exps)
        if cached is not None:
            return cached
        deg = sum(exps)
        if deg == 0:
            result = PBWElement.one(self.n)
        elif deg == 1:
            result = PBWElement(self.n, {exps: _ONE})
        else:
            # Group the permutation average by first letter.
            acc = PBWElement.zero(self.n)
            for i in range(self.n):
                if not exps[i]:
                    continue
                rest = list(exps)
                rest[i] -= 1
                partial = self.multiply(self.generator(i), self._symmetrize_monomial(tuple(rest)))
                acc = acc + partial.scale(Fraction(exps[i], deg))
            result = acc
        self._sym_cache[exps] = result
        return result

    def symmetrize(self, p: Polynomial) -> PBWElement:
        """Symmetrization via memoized recursion; oracle-equivalent."""
        if p.nvars != self.n:
            raise ValueError("dimension mismatch")
        total = PBWElement.zero(self.n)
        for exps, coeff in p.terms.items():
            total = total + self._symmetrize_monomial(exps).scale(coeff)
        return total

    # -- commutant verification ----------------------------------------------

    def verify_commutant(
        self,
        constraints: Subalgebra | Sequence[PBWElement],
        elements: Sequence[PBWElement],
    ) -> "QuantumCommutantReport":
        if isinstance(constraints, Subalgebra):
            cons = [self.from_vector(g) for g in constraints.generators]
        else:
            cons = list(constraints)
        failures: list[tuple[int, int, PBWElement]] = []
        for ei, element in enumerate(elements):
            for ci, con in enumerate(cons):
                residual = self.commutator(con, element)
                if not residual.is_zero:
                    failures.append((ci, ei, residual))
        return QuantumCommutantReport(len(cons), len(elements), failures)

    def symmetrized_strata_check(
        self,
        constraints: Subalgebra | Sequence[PBWElement],
        result: CommutantResult,
    ) -> "QuantumCommutantReport":
        """Check that the symmetrized classical strata commute in U(g) too."""
        elements = [self.symmetrize(p) for p in result.generators()]
        return self.verify_commutant(constraints, elements)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


@dataclass
class QuantumCommutantReport:
    nconstraints: int
    nelements: int
    failures: list[tuple[int, int, PBWElement]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"all {self.nelements} elements commute with all {self.nconstraints} constraints"
        lines = [
            f"constraint {ci + 1} vs element {ei + 1}: residual {res.format()}"
            for ci, ei, res in self.failures
        ]
        return "; ".join(lines)


@dataclass
class QuantumBracketTable:
    """Pairwise commutators expressed in normal products of the generators."""

    env: EnvelopingAlgebra
    names: list[str]
    generators: list[PBWElement]
    expression_degree: int
    entries: dict[tuple[int, int], Polynomial]  # symbol polynomial over generators
    remainders: dict[tuple[int, int], PBWElement]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def entry(self, i: int, j: int) -> Polynomial:
        if i == j:
            return Polynomial.zero(self.ngens)
        if i < j:
            return self.entries.get((i, j), Polynomial.zero(self.ngens))
        return -self.entries.get((j, i), Polynomial.zero(self.ngens))

    @property
    def is_closed(self) -> bool:
        return all(r.is_zero for r in self.remainders.values())

    @property
    def is_abelian(self) -> bool:
        return self.is_closed and all(e.is_zero for e in self.entries.values())

    def leading_entry(self, i: int, j: int) -> Polynomial:
        """Terms of maximal generator-degree: the classical-limit symbol."""
        e = self.entry(i, j)
        if e.is_zero:
            return e
        d = e.degree()
        return e.homogeneous_part(d)

    def lower_order_entry(self, i: int, j: int) -> Polynomial:
        e = self.entry(i, j)
        if e.is_zero:
            return e
        return e - self.leading_entry(i, j)

    def expand(self, symbol_poly: Polynomial) -> PBWElement:
        """Evaluate a generator-symbol polynomial as an ordered product."""
        out = PBWElement.zero(self.env.n)
        for exps, coeff in symbol_poly.terms.items():
            prod = PBWElement.one(self.env.n)
            for gi, e in enumerate(exps):
                for _ in range(e):
                    prod = self.env.multiply(prod, self.generators[gi])
            out = out + prod.scale(coeff)
        return out

    def to_json_dict(self) -> dict:
        xnames = default_names(self.env.n, "X")
        entries = []
        for (i, j) in sorted(self.entries):
            expr = self.entries[(i, j)]
            lead = self.leading_entry(i, j)
            lower = expr - lead
            rem = self.remainders.get((i, j), PBWElement.zero(self.env.n))
            fmt = lambda poly: [
                Polynomial(self.ngens, {e: c}).format(self.names) for e, c in poly.sorted_terms()
            ]
            entries.append(
                {
                    "lhs": [i, j],
                    "expr": fmt(lead),
                    "lower_order_terms": fmt(lower),
                    "remainder": "" if rem.is_zero else rem.format(xnames),
                }
            )
        return {
            "algebra": self.env.algebra.name,
            "generators": [
                {"name": n, "element": g.format(xnames)} for n, g in zip(self.names, self.generators)
            ],
            "expression_degree": self.expression_degree,
            "entries": entries,
        }


def close_quantum_algebra(
    env: EnvelopingAlgebra,
    generators: Sequence[tuple[str, PBWElement]] | Sequence[PBWElement],
    expression_degree: int = 2,
) -> QuantumBracketTable:
    """Express all pairwise commutators in normal-ordered generator products.

    The expression basis is every product A_1^{a1}...A_m^{am} (ascending
    generator order) of generator-degree <= expression_degree, the unit
    included, so quantum lower-order terms land in the same table.
    """
    if expression_degree < 1:
        raise ValueError("expression_degree must be >= 1")
    named: list[tuple[str, PBWElement]] = []
    for idx, g in enumerate(generators):
        if isinstance(g, tuple):
            named.append(g)
        else:
            named.append((f"A{idx + 1}", g))
    names = [n for n, _ in named]
    gens = [g for _, g in named]
    if len(set(names)) != len(names):
        raise ValueError("duplicate generator names")
    m = len(gens)
    entries: dict[tuple[int, int], Polynomial] = {}
    remainders: dict[tuple[int, int], PBWElement] = {}
    if m:
        symbol_monomials = generator_monomials(m, expression_degree, min_degree=0)
        expansions = []
        for exps in symbol_monomials:
            prod = PBWElement.one(env.n)
            for gi, e in enumerate(exps):
                for _ in range(e):
                    prod = env.multiply(prod, gens[gi])
            expansions.append(prod)
        commutators: dict[tuple[int, int], PBWElement] = {}
        for i in range(m):
            for j in range(i + 1, m):
                commutators[(i + 1, j + 1)] = env.commutator(gens[i], gens[j])
        idx = _index_for([e.symbol() for e in expansions] + [c.symbol() for c in commutators.values()])
        expansion_vecs = [idx.to_vec(e.symbol()) for e in expansions]
        for key, com in commutators.items():
            coeffs, residue = express(expansion_vecs, idx.to_vec(com.symbol()))
            expr = Polynomial(m, {e: c for e, c in zip(symbol_monomials, coeffs) if c})
            rem = pbw_from_polynomial(idx.to_poly(residue, env.n))
            entries[key] = expr
            remainders[key] = rem
    table = QuantumBracketTable(env, names, gens, expression_degree, entries, remainders)
    # Exact noncommutative re-expansion check for every entry.
    for (i, j), expr in table.entries.items():
        recomposed = table.expand(expr) + table.remainders[(i, j)]
        if not (recomposed == env.commutator(gens[i - 1], gens[j - 1])):
            raise AssertionError("quantum table entry failed re-expansion")
    return table
