import random
from fractions import Fraction

import pytest

from commutant_forge.linalg import Echelon, express, invert, kernel, rank, rref


def dense(rows):
    return [{j: Fraction(v) for j, v in enumerate(row) if v} for row in rows]


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert kernel(dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3) == []

    def test_zero_matrix_kernel_is_everything(self):
        basis = kernel([{}, {}], 3)
        assert len(basis) == 3
        assert basis == [{0: 1}, {1: 1}, {2: 1}]

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(7)
        rows = dense([[rng.randrange(-4, 5) for _ in range(6)] for _ in range(4)])
        basis = kernel(rows, 6)
        assert len(basis) == 6 - rank(rows)
        for v in basis:
            for row in rows:
                assert sum(row.get(j, 0) * c for j, c in v.items()) == 0

    def test_kernel_is_canonical_rref(self):
        rows = dense([[1, 2, 3, 4]])
        basis = kernel(rows, 4)
        pivots = [min(v) for v in basis]
        assert pivots == sorted(pivots)
        for v in basis:
            assert v[min(v)] == 1
        for i, v in enumerate(basis):
            for w in basis[:i] + basis[i + 1 :]:
                assert min(v) not in w  # zeros above and below pivots


class TestRank:
    def test_identity(self):
        assert rank(dense([[1, 0], [0, 1]])) == 2

    def test_zero(self):
        assert rank([{}, {}]) == 0

    def test_dependent_rows(self):
        assert rank(dense([[1, 2], [2, 4], [3, 6]])) == 1


class TestRref:
    def test_unique_reduced_form(self):
        rows_a = dense([[2, 4, 0], [1, 2, 1]])
        rows_b = dense([[1, 2, 1], [4, 8, 2], [2, 4, 0]])
        assert rref(rows_a)[0] == rref(rows_b)[0]

    def test_leading_ones(self):
        reduced, pivots = rref(dense([[0, 3, 6], [2, 0, 4]]))
        for p, row in zip(pivots, reduced):
            assert row[p] == 1


class TestExpress:
    def test_exact_combination(self):
        v1, v2 = {0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1)}
        coeffs, residue = express([v1, v2], {0: Fraction(2), 1: Fraction(5)})
        assert coeffs == [2, 3]
        assert residue == {}

    def test_remainder_outside_span(self):
        coeffs, residue = express([{0: Fraction(1)}], {0: Fraction(4), 1: Fraction(1)})
        assert coeffs == [4]
        assert residue == {1: 1}

    def test_dependent_vectors_get_zero_coefficient(self):
        v = {0: Fraction(1)}
        coeffs, residue = express([v, dict(v)], {0: Fraction(3)})
        assert coeffs == [3, 0]
        assert residue == {}

    def test_reconstruction_identity(self):
        rng = random.Random(3)
        vecs = [
            {j: Fraction(rng.randrange(-3, 4)) for j in range(5) if rng.random() < 0.7}
            for _ in range(4)
        ]
        vecs = [{j: c for j, c in v.items() if c} for v in vecs]
        target = {j: Fraction(rng.randrange(-5, 6)) for j in range(5)}
        coeffs, residue = express(vecs, target)
        recombined = dict(residue)
        for c, v in zip(coeffs, vecs):
            for j, val in v.items():
                recombined[j] = recombined.get(j, Fraction(0)) + c * val
        recombined = {j: c for j, c in recombined.items() if c}
        target = {j: c for j, c in target.items() if c}
        assert recombined == target


class TestEchelon:
    def test_membership(self):
        span = Echelon(dense([[1, 1, 0], [0, 1, 1]]))
        assert span.contains({0: Fraction(1), 2: Fraction(-1)})
        assert not span.contains({2: Fraction(1)})

    def test_dim_tracks_independent_additions(self):
        span = Echelon()
        assert span.add({0: Fraction(2)})
        assert not span.add({0: Fraction(5)})
        assert span.dim == 1


class TestInvert:
    def test_inverse_round_trip(self):
        m = [[1, 2], [3, 5]]
        inv = invert(m)
        prod = [
            [sum(Fraction(m[i][k]) * inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        assert prod == [[1, 0], [0, 1]]

    def test_singular_raises(self):
        with pytest.raises(ValueError):
            invert([[1, 2], [2, 4]])
