"""Realizations of the conformal algebra on the plane.

Two target models: first-order differential operators in (x, y), and phase
space polynomials in (x, y, px, py) obtained by the momentum substitution.
The phase-space bracket is normalized so that {p_q, q} = +1, which makes the
momentum substitution a genuine Poisson homomorphism for the Lie-Poisson
bracket used everywhere else (with the opposite normalization it would be an
anti-homomorphism, and none of the realized tables would close with the
published signs).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .polynomials import Polynomial, default_names, grlex_key, parse_polynomial

_ZERO = Fraction(0)
_ONE = Fraction(1)

PHASE_NAMES = ("x", "y", "px", "py")
DIFFOP_NAMES = ("x", "y", "Dx", "Dy")

Key = tuple[int, int, int, int]  # (x power, y power, Dx power, Dy power)


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


class DiffOp:
    """Differential operator sum c * x^a y^b Dx^c Dy^d, coefficients left."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, object] | None = None):
        clean: dict[Key, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple(int(v) for v in key)
                if len(key) != 4 or any(v < 0 for v in key):
                    raise ValueError(f"bad operator key {key}")
                c = Fraction(coeff)
                if c:
                    acc = clean.get(key, _ZERO) + c
                    if acc:
                        clean[key] = acc
                    else:
                        clean.pop(key, None)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    @classmethod
    def zero(cls) -> "DiffOp":
        return cls()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k, _ZERO) + c
            if acc:
                terms[k] = acc
            else:
                terms.pop(k, None)
        out = DiffOp()
        object.__setattr__(out, "terms", terms)
        return out

    def __neg__(self):
        out = DiffOp()
        object.__setattr__(out, "terms", {k: -c for k, c in self.terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        c = Fraction(c)
        if not c:
            return DiffOp()
        out = DiffOp()
        object.__setattr__(out, "terms", {k: v * c for k, v in self.terms.items()})
        return out

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Operator product, expanded by the two-variable Leibniz rule."""
        terms: dict[Key, Fraction] = {}
        for (a1, b1, c1, d1), v1 in self.terms.items():
            for (a2, b2, c2, d2), v2 in other.terms.items():
                for k in range(min(c1, a2) + 1):
                    fx = comb(c1, k) * _falling(a2, k)
                    for l in range(min(d1, b2) + 1):
                        fy = comb(d1, l) * _falling(b2, l)
                        coeff = v1 * v2 * fx * fy
                        if not coeff:
                            continue
                        key = (a1 + a2 - k, b1 + b2 - l, c1 + c2 - k, d1 + d2 - l)
                        acc = terms.get(key, _ZERO) + coeff
                        if acc:
                            terms[key] = acc
                        else:
                            terms.pop(key, None)
        out = DiffOp()
        object.__setattr__(out, "terms", terms)
        return out

    def commutator(self, other: "DiffOp") -> "DiffOp":
        return self.compose(other) - other.compose(self)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def format(self) -> str:
        return Polynomial(4, dict(self.terms)).format(DIFFOP_NAMES)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"DiffOp({self.format()!r})"


def parse_diffop(text: str) -> DiffOp:
    return DiffOp(dict(parse_polynomial(text, DIFFOP_NAMES).terms))


_DIFFOP_TABLE = (
    "Dx",
    "Dy",
    "y*Dx - x*Dy",
    "x*Dx + y*Dy",
    "x^2*Dx - y^2*Dx + 2*x*y*Dy",
    "2*x*y*Dx + y^2*Dy - x^2*Dy",
)


def realize_diffop(j: int) -> DiffOp:
    """First-order operator realizing the j-th conformal generator (1-based)."""
    if not 1 <= j <= 6:
        raise ValueError(f"generator index {j} out of range 1..6")
    return parse_diffop(_DIFFOP_TABLE[j - 1])


def diffop_commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.commutator(b)


# -- phase space --------------------------------------------------------------

_PHASE_TABLE = (
    "px",
    "py",
    "y*px - x*py",
    "x*px + y*py",
    "x^2*px - y^2*px + 2*x*y*py",
    "2*x*y*px + y^2*py - x^2*py",
)


def phase_poly(text: str) -> Polynomial:
    return parse_polynomial(text, PHASE_NAMES)


def phase_images() -> list[Polynomial]:
    """Momentum-space image of each dual coordinate x1..x6."""
    return [phase_poly(t) for t in _PHASE_TABLE]


def realize_classical(p: Polynomial) -> Polynomial:
    """Substitute the momentum realization into a dual-space polynomial."""
    if p.nvars != 6:
        raise ValueError("expected a polynomial in the 6 dual coordinates")
    return p.substitute(phase_images())


def canonical_poisson(f: Polynomial, g: Polynomial) -> Polynomial:
    """Phase-space bracket with {p_q, q} = 1 (see module docstring)."""
    if f.nvars != 4 or g.nvars != 4:
        raise ValueError("phase-space polynomials have 4 variables (x, y, px, py)")
    out = Polynomial.zero(4)
    for q, pq in ((0, 2), (1, 3)):
        out = out + f.derivative(pq) * g.derivative(q) - f.derivative(q) * g.derivative(pq)
    return out
