"""Finite-dimensional Lie algebras given by exact structure constants.

Algebras are validated (antisymmetry by construction, Jacobi by direct
evaluation over all basis triples) and immutable afterwards.  The built-in
2D conformal algebra ships as a structure-constant JSON file; the subalgebra
catalog covers every reduction chain the regression suite exercises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .linalg import Echelon, invert, vec_axpy
from .polynomials import Polynomial, parse_polynomial

_ZERO = Fraction(0)
_ONE = Fraction(1)

Vector = tuple[Fraction, ...]


def as_vector(values: Sequence, n: int) -> Vector:
    if len(values) != n:
        raise ValueError(f"vector has length {len(values)}, expected {n}")
    return tuple(Fraction(v) for v in values)


def basis_vector(index: int, n: int) -> Vector:
    return tuple(_ONE if i == index else _ZERO for i in range(n))


@dataclass
class ValidationReport:
    antisymmetry_ok: bool
    jacobi_failures: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and not self.jacobi_failures

    def summary(self) -> str:
        if self.ok:
            return "valid: antisymmetry and Jacobi hold exactly"
        parts = []
        if not self.antisymmetry_ok:
            parts.append("antisymmetry violated")
        for j, k, l in self.jacobi_failures:
            parts.append(f"Jacobi fails on triple (X{j + 1}, X{k + 1}, X{l + 1})")
        return "; ".join(parts)


class LieAlgebra:
    """Lie algebra over Q with basis X1..Xn and sparse structure constants.

    `brackets[(j, k)]` for j < k maps l -> coefficient of X_{l+1} in
    [X_{j+1}, X_{k+1}]; the antisymmetric completion is implicit.
    """

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                 names: Sequence[str] | None = None, name: str = "",
                 check_jacobi: bool = True):
        self.dim = dim
        self.name = name
        self.names = tuple(names) if names else tuple(f"X{i + 1}" for i in range(dim))
        if len(self.names) != dim:
            raise ValueError("names length does not match dimension")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (j, k), comp in brackets.items():
            if not (0 <= j < k < dim):
                raise ValueError(f"bracket key ({j}, {k}) must satisfy 0 <= j < k < dim")
            entry = {int(l): Fraction(c) for l, c in comp.items() if Fraction(c)}
            if entry:
                if any(not 0 <= l < dim for l in entry):
                    raise ValueError("structure constant target index out of range")
                table[(j, k)] = entry
        self._table = table
        if check_jacobi:
            report = self.validate()
            if not report.ok:
                raise ValueError(f"invalid structure constants: {report.summary()}")

    # -- structure constants ------------------------------------------------

    def structure(self, j: int, k: int) -> dict[int, Fraction]:
        """Components of [X_{j+1}, X_{k+1}] (any j, k)."""
        if j == k:
            return {}
        if j < k:
            return dict(self._table.get((j, k), {}))
        return {l: -c for l, c in self._table.get((k, j), {}).items()}

    def bracket_basis(self, j: int, k: int) -> Vector:
        comp = self.structure(j, k)
        return tuple(comp.get(l, _ZERO) for l in range(self.dim))

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        """Bilinear extension of the structure constants to vectors."""
        u = as_vector(u, self.dim)
        v = as_vector(v, self.dim)
        out = [_ZERO] * self.dim
        for (j, k), comp in self._table.items():
            coeff = u[j] * v[k] - u[k] * v[j]
            if coeff:
                for l, c in comp.items():
                    out[l] += coeff * c
        return tuple(out)

    def validate(self) -> ValidationReport:
        failures = []
        n = self.dim
        for j in range(n):
            ej = basis_vector(j, n)
            for k in range(j + 1, n):
                ek = basis_vector(k, n)
                for l in range(k + 1, n):
                    el = basis_vector(l, n)
                    total = [
                        a + b + c
                        for a, b, c in zip(
                            self.bracket(self.bracket(ej, ek), el),
                            self.bracket(self.bracket(ek, el), ej),
                            self.bracket(self.bracket(el, ej), ek),
                        )
                    ]
                    if any(total):
                        failures.append((j, k, l))
        return ValidationReport(antisymmetry_ok=True, jacobi_failures=failures)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        brackets = []
        for (j, k) in sorted(self._table):
            terms = [[l + 1, str(c)] for l, c in sorted(self._table[(j, k)].items())]
            brackets.append({"i": j + 1, "j": k + 1, "terms": terms})
        return {"name": self.name, "dim": self.dim, "names": list(self.names), "brackets": brackets}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LieAlgebra":
        dim = int(data["dim"])
        brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        for entry in data.get("brackets", ()):
            j, k = int(entry["i"]) - 1, int(entry["j"]) - 1
            brackets[(j, k)] = {int(l) - 1: Fraction(c) for l, c in entry.get("terms", ())}
        return cls(dim, brackets, names=data.get("names"), name=data.get("name", ""))

    @classmethod
    def from_json_file(cls, path) -> "LieAlgebra":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or 'anonymous'}, dim={self.dim})"


@lru_cache(maxsize=1)
def conformal_2d() -> LieAlgebra:
    """The 6-dimensional conformal algebra of the Euclidean plane."""
    text = resources.files("commutant_forge.data").joinpath("c2.json").read_text("utf-8")
    return LieAlgebra.from_json_dict(json.loads(text))


class Subalgebra:
    """Ordered generator list spanning a Lie subalgebra; validated on build."""

    def __init__(self, algebra: LieAlgebra, generators: Sequence[Sequence], label: str = ""):
        self.algebra = algebra
        self.label = label
        self.generators: tuple[Vector, ...] = tuple(as_vector(g, algebra.dim) for g in generators)
        span = Echelon()
        for g in self.generators:
            vec = {i: c for i, c in enumerate(g) if c}
            if not span.add(vec):
                raise ValueError(f"subalgebra {label or '?'}: generators are linearly dependent")
        for a in range(len(self.generators)):
            for b in range(a + 1, len(self.generators)):
                br = algebra.bracket(self.generators[a], self.generators[b])
                residue = span.reduce({i: c for i, c in enumerate(br) if c})
                if residue:
                    raise ValueError(
                        f"subalgebra {label or '?'}: bracket of generators {a + 1}, {b + 1} "
                        "leaves the span (not closed)"
                    )
        self._span = span

    @property
    def dim(self) -> int:
        return len(self.generators)

    def contains(self, vector: Sequence) -> bool:
        v = as_vector(vector, self.algebra.dim)
        return self._span.contains({i: c for i, c in enumerate(v) if c})

    def span_basis(self) -> list[Vector]:
        return [tuple(row.get(i, _ZERO) for i in range(self.algebra.dim)) for row in self._span.basis()]

    def dual_forms(self) -> list[Polynomial]:
        """Linear coordinate forms sum_i g_i x_i, one per generator."""
        return [Polynomial.linear_form(g) for g in self.generators]

    def is_abelian(self) -> bool:
        return all(
            not any(self.algebra.bracket(self.generators[a], self.generators[b]))
            for a in range(self.dim)
            for b in range(a + 1, self.dim)
        )

    def describe(self) -> str:
        names = self.algebra.names
        forms = []
        for g in self.generators:
            poly = Polynomial.linear_form(g)
            forms.append(poly.format(names))
        return f"{self.label or 'subalgebra'} = span{{{', '.join(forms)}}}"

    def __repr__(self) -> str:
        return f"Subalgebra({self.label!r}, dim={self.dim})"


class BasisChange:
    """Invertible change of basis B_i = sum_j M[i][j] X_j."""

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix = [[Fraction(v) for v in row] for row in matrix]
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("basis change matrix must be square")
        self.inverse_matrix = invert(self.matrix)  # raises on singular input

    def apply(self, algebra: LieAlgebra) -> LieAlgebra:
        n = algebra.dim
        if len(self.matrix) != n:
            raise ValueError("matrix size does not match algebra dimension")
        inv = self.inverse_matrix
        brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        for a in range(n):
            for b in range(a + 1, n):
                w = algebra.bracket(self.matrix[a], self.matrix[b])
                comp: dict[int, Fraction] = {}
                for l, wl in enumerate(w):
                    if wl:
                        for c in range(n):
                            coeff = wl * inv[l][c]
                            if coeff:
                                comp[c] = comp.get(c, _ZERO) + coeff
                comp = {c: v for c, v in comp.items() if v}
                if comp:
                    brackets[(a, b)] = comp
        return LieAlgebra(n, brackets, names=[f"B{i + 1}" for i in range(n)],
                          name=f"{algebra.name}'" if algebra.name else "")

    def inverse(self) -> "BasisChange":
        return BasisChange(self.inverse_matrix)


def centralizer(sub: Subalgebra) -> Subalgebra:
    """Full linear centralizer {X in g : [X, a] = 0} as a subalgebra."""
    algebra = sub.algebra
    n = algebra.dim
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for gi, g in enumerate(sub.generators):
        for k in range(n):
            br = algebra.bracket(basis_vector(k, n), g)
            for l, c in enumerate(br):
                if c:
                    rows.setdefault((gi, l), {})[k] = c
    from .linalg import kernel  # local import keeps module load order simple

    basis = kernel(list(rows.values()), n)
    gens = [tuple(v.get(i, _ZERO) for i in range(n)) for v in basis]
    return Subalgebra(algebra, gens, label=f"z({sub.label})" if sub.label else "centralizer")


# -- catalog of c(2) subalgebras -------------------------------------------

_CATALOG_SPEC: list[tuple[str, list[str]]] = [
    ("a1", ["X1"]),
    ("a2", ["X2"]),
    ("a3", ["X3"]),
    ("a4", ["X4"]),
    ("a5", ["X5"]),
    ("a6", ["X6"]),
    ("a_12", ["X1", "X2"]),
    ("a_34", ["X3", "X4"]),
    ("a_56", ["X5", "X6"]),
    ("a_14", ["X1", "X4"]),
    ("a_24", ["X2", "X4"]),
    ("a_45", ["X4", "X5"]),
    ("a_46", ["X4", "X6"]),
    ("a_123", ["X1", "X2", "X3"]),
    ("a_563", ["X5", "X6", "X3"]),
    ("a_145", ["X1", "X4", "X5"]),
    ("a_246", ["X2", "X4", "X6"]),
    ("a_124", ["X1", "X2", "X4"]),
    ("a_564", ["X5", "X6", "X4"]),
    ("a_su2", ["X3", "1/2*X2 + 1/2*X6", "1/2*X1 + 1/2*X5"]),
    ("n33", ["X3 - X4", "X1", "X2"]),
    ("borel", ["X3", "X4", "X5", "X6"]),
    ("full", ["X1", "X2", "X3", "X4", "X5", "X6"]),
]


def parse_generator(text: str, algebra: LieAlgebra) -> Vector:
    """Parse a linear combination of basis generators, e.g. '1/2*X2 + 1/2*X6'."""
    poly = parse_polynomial(text, algebra.names)
    if poly.is_zero:
        raise ValueError("zero generator")
    if poly.degree() != 1 or not poly.is_homogeneous():
        raise ValueError(f"generator {text!r} is not a linear combination of basis elements")
    vec = [_ZERO] * algebra.dim
    for exps, coeff in poly.terms.items():
        vec[exps.index(1)] = coeff
    return tuple(vec)


@lru_cache(maxsize=1)
def catalog() -> dict[str, Subalgebra]:
    """Named subalgebras of c(2) used by the CLI and the regression suite."""
    algebra = conformal_2d()
    out: dict[str, Subalgebra] = {}
    for label, gen_texts in _CATALOG_SPEC:
        gens = [parse_generator(t, algebra) for t in gen_texts]
        out[label] = Subalgebra(algebra, gens, label=label)
    return out


def catalog_labels() -> list[str]:
    return [label for label, _ in _CATALOG_SPEC]


def conformal_basis_change() -> BasisChange:
    """The transport from the conformal basis to so(3,1) conventions."""
    return BasisChange(
        [
            [0, 0, -2, 0, 0, 0],
            [0, 0, 0, -2, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, -1],
            [0, 0, 0, 0, 1, 0],
        ]
    )
