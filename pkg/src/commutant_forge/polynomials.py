"""Sparse multivariate polynomials with exact rational coefficients.

Terms are keyed by exponent tuples and ordered graded-lexicographically with
x1 > x2 > ... > xn.  That order is total, so every polynomial has a unique
canonical term sequence and all downstream echelon computations are
byte-stable.  Coefficients are `fractions.Fraction` throughout; nothing in
this module ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    """Sort key for graded lex order; larger key = larger monomial."""
    return (sum(exps), exps)


def monomials_of_degree(nvars: int, degree: int) -> list[Exponents]:
    """All exponent tuples of total degree `degree`, largest first."""
    out: list[Exponents] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == nvars - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, pos + 1)

    if degree < 0:
        return []
    rec([], degree, 0)
    out.sort(key=grlex_key, reverse=True)
    return out


def monomials_up_to_degree(nvars: int, degree: int, min_degree: int = 0) -> list[Exponents]:
    out: list[Exponents] = []
    for d in range(min_degree, degree + 1):
        out.extend(monomials_of_degree(nvars, d))
    out.sort(key=grlex_key, reverse=True)
    return out


def default_names(nvars: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(nvars))


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class Polynomial:
    """Immutable sparse polynomial in `nvars` commuting variables over Q.

    Zero coefficients are never stored, so equal polynomials always have
    identical term mappings.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, object] | None = None):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} has wrong length (expected {nvars})")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = _as_fraction(coeff)
                if c:
                    acc = clean.get(exps, _ZERO) + c
                    if acc:
                        clean[exps] = acc
                    else:
                        clean.pop(exps, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        """The variable x_{index+1} (0-based index)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): _ONE})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        return cls(len(exps), {exps: _as_fraction(coeff)})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "Polynomial":
        """Sum c_i * x_{i+1} from a coefficient vector."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _as_fraction(c)
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = c
        return cls(n, terms)

    # -- predicates / views ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        split: dict[int, dict[Exponents, Fraction]] = {}
        for e, c in self.terms.items():
            split.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.nvars, t) for d, t in sorted(split.items())}

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def leading_monomial(self) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    # -- arithmetic --------------------------------------------------------

    def _check_dim(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e, _ZERO) + c
            if acc:
                terms[e] = acc
            else:
                terms.pop(e, None)
        out = Polynomial(self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial(self.nvars)
        object.__setattr__(out, "terms", {e: -c for e, c in self.terms.items()})
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = _as_fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            out = Polynomial(self.nvars)
            object.__setattr__(out, "terms", {e: v * c for e, v in self.terms.items()})
            return out
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(e, _ZERO) + c1 * c2
                if acc:
                    terms[e] = acc
                else:
                    terms.pop(e, None)
        out = Polynomial(self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # mutable-looking container semantics; not hashable

    # -- calculus / evaluation ---------------------------------------------

    def derivative(self, index: int) -> "Polynomial":
        terms: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            new = list(e)
            new[index] = k - 1
            terms[tuple(new)] = c * k
        return Polynomial(self.nvars, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        vals = [_as_fraction(v) for v in point]
        total = _ZERO
        for e, c in self.terms.items():
            prod = c
            for v, k in zip(vals, e):
                if k:
                    prod *= v**k
            total += prod
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_{i+1} by images[i]; images must share one ambient space."""
        if len(images) != self.nvars:
            raise ValueError("need one image polynomial per variable")
        if not images:
            raise ValueError("cannot substitute in 0 variables")
        m = images[0].nvars
        for img in images:
            if img.nvars != m:
                raise ValueError("image polynomials live in different spaces")
        powers: list[dict[int, Polynomial]] = [dict() for _ in range(self.nvars)]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        result = Polynomial.zero(m)
        for e, c in self.terms.items():
            prod = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    prod = prod * power(i, k)
            result = result + prod
        return result

    # -- printing / parsing --------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = default_names(self.nvars)
        pieces: list[str] = []
        for e, c in self.sorted_terms():
            factors = [f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.format()!r})"


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_FACTOR_RE = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9_]*)(\^(?P<exp>\d+))?$")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse the text format emitted by Polynomial.format.

    Grammar: terms separated by + / -, each term a '*'-joined list of an
    optional rational coefficient (`p/q` or integer) and `name^k` factors.
    """
    nvars = len(names)
    index = {name: i for i, name in enumerate(names)}
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial text")
    if compact == "0":
        return Polynomial.zero(nvars)
    chunks = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(chunks) != compact:
        raise ValueError(f"cannot tokenize polynomial text: {text!r}")
    terms: dict[Exponents, Fraction] = {}
    for chunk in chunks:
        sign = _ONE
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -_ONE
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * nvars
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {chunk!r}")
            if _RATIONAL_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR_RE.match(factor)
            if not m or m.group("name") not in index:
                raise ValueError(f"unknown factor {factor!r} (variables: {', '.join(names)})")
            exps[index[m.group("name")]] += int(m.group("exp") or 1)
        key = tuple(exps)
        acc = terms.get(key, _ZERO) + coeff
        if acc:
            terms[key] = acc
        else:
            terms.pop(key, None)
    return Polynomial(nvars, terms)
