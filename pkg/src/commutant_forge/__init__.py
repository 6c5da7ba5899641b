"""Exact symbolic engine for commutants of conformal-algebra reduction chains.

The package computes polynomial commutants of Lie subalgebras in the
symmetric and universal enveloping algebras of the 2D conformal algebra,
closes the resulting quadratic Poisson/commutator algebras, finds their
Casimir invariants and verifies the bundled catalog of known results.
"""

from .liealgebra import (
    BasisChange,
    LieAlgebra,
    Subalgebra,
    catalog,
    catalog_labels,
    centralizer,
    conformal_2d,
    conformal_basis_change,
)
from .polynomials import Polynomial, parse_polynomial
from .poisson import (
    BracketTable,
    CasimirSet,
    CommutantResult,
    HamiltonianSpec,
    build_hamiltonian,
    close_algebra,
    find_casimirs,
    functional_independence,
    independence_bound,
    lie_poisson_bracket,
    quadratic_casimirs,
    solve_commutant,
)

__version__ = "0.1.0"

__all__ = [
    "BasisChange",
    "BracketTable",
    "CasimirSet",
    "CommutantResult",
    "HamiltonianSpec",
    "LieAlgebra",
    "Polynomial",
    "Subalgebra",
    "build_hamiltonian",
    "catalog",
    "catalog_labels",
    "centralizer",
    "close_algebra",
    "conformal_2d",
    "conformal_basis_change",
    "find_casimirs",
    "functional_independence",
    "independence_bound",
    "lie_poisson_bracket",
    "parse_polynomial",
    "quadratic_casimirs",
    "solve_commutant",
]
