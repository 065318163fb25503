"""Tests for general position, normalization and the parameter space."""

import itertools
import random
from fractions import Fraction

import pytest

from gfermat.arrangement import (
    Arrangement,
    Hyperplane,
    StandardParameter,
    arrangement_of,
    is_general_position,
    is_standard_parameter,
    normalize,
    random_parameter,
)
from gfermat.errors import NotInGeneralPosition
from gfermat.exactfield import ExactMatrix, projective_normalize
from tests.conftest import rand_fraction, rand_invertible

E1 = (1, 0, 0)
E2 = (0, 1, 0)
E3 = (0, 0, 1)
ONES = (1, 1, 1)


def F(*values):
    return tuple(Fraction(v) for v in values)


class TestGeneralPosition:
    def test_canonical_frame(self):
        assert is_general_position([F(*E1), F(*E2), F(*E3), F(*ONES)], 2)

    def test_repeated_projective_point(self):
        assert not is_general_position(
            [F(*E1), F(*E2), F(*E3), F(2, 0, 0)], 2
        )

    def test_dependent_triple(self):
        assert not is_general_position(
            [F(*E1), F(*E2), F(*E3), F(1, 1, 0)], 2
        )

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            is_general_position([F(1, 0), F(0, 1), F(1, 1, 1), F(1, 2)], 1)
        with pytest.raises(ValueError):
            is_general_position([F(1, 0), F(0, 0), F(1, 1)], 1)
        with pytest.raises(ValueError):
            is_general_position([F(*E1), F(*E2)], 2)

    def test_d2_matches_explicit_conditions(self):
        """Agreement with the explicit determinant conditions for lines.

        The candidate duals are e_1, e_2, e_3, (1,1,1) and rows
        (delta_i, mu_i, 1); the explicit conditions are delta_i != mu_i,
        delta_i mu_j != delta_j mu_i, the two families of 3x3 determinants,
        plus both coordinate tuples avoiding {0, 1} and repetitions.
        """
        rng = random.Random(99)
        agree = 0
        for _ in range(200):
            m = rng.randint(1, 3)
            rows = [
                (rand_fraction(rng, 4), rand_fraction(rng, 4)) for _ in range(m)
            ]
            duals = [F(*E1), F(*E2), F(*E3), F(*ONES)] + [
                (a, b, Fraction(1)) for a, b in rows
            ]
            deltas = [r[0] for r in rows]
            mus = [r[1] for r in rows]
            explicit = all(x not in (0, 1) for x in deltas + mus)
            explicit &= all(
                deltas[i] != deltas[j] and mus[i] != mus[j]
                for i in range(m) for j in range(i + 1, m)
            )
            explicit &= all(deltas[i] != mus[i] for i in range(m))
            explicit &= all(
                deltas[i] * mus[j] != deltas[j] * mus[i]
                for i in range(m) for j in range(m) if i != j
            )
            for i in range(m):
                for j in range(i + 1, m):
                    det = ExactMatrix.from_rows([
                        [1, 1, 1],
                        [deltas[i], mus[i], 1],
                        [deltas[j], mus[j], 1],
                    ]).det()
                    explicit &= det != 0
            for i, j, l in itertools.combinations(range(m), 3):
                det = ExactMatrix.from_rows([
                    [deltas[i], mus[i], 1],
                    [deltas[j], mus[j], 1],
                    [deltas[l], mus[l], 1],
                ]).det()
                explicit &= det != 0
            assert is_general_position(duals, 2) == explicit
            agree += 1
        assert agree == 200


class TestNormalize:
    def test_identity_on_canonical_arrangement(self):
        par = StandardParameter(2, 4, ((Fraction(2), Fraction(3)),))
        transform, again = normalize(arrangement_of(par))
        assert again == par
        assert transform.entries == ExactMatrix.identity(3).entries

    def test_d1_reads_off_fourth_point(self):
        arr = Arrangement(1, (
            Hyperplane(F(1, 0)), Hyperplane(F(0, 1)),
            Hyperplane(F(1, 1)), Hyperplane(F(2, 1)),
        ))
        _, par = normalize(arr)
        assert par == StandardParameter(1, 3, ((Fraction(2),),))

    def test_kummer_lines_from_raw_branch_values(self):
        """The six lines built directly from branch data normalize to the
        hand-computed cross-ratio table."""
        a = [Fraction(v) for v in (0, 1, 2, 3, 4, 5)]

        def lam(top, tangent):
            return ((top - a[3]) * (a[2] - tangent)) / ((top - tangent) * (a[2] - a[3]))

        duals = [
            F(*E1), F(*E2), F(*E3), F(*ONES),
            (lam(a[0], a[4]), lam(a[1], a[4]), Fraction(1)),
            (lam(a[0], a[5]), lam(a[1], a[5]), Fraction(1)),
        ]
        arr = Arrangement(2, tuple(Hyperplane(q) for q in duals))
        _, par = normalize(arr)
        assert par.columns == (
            (Fraction(3, 2), Fraction(9, 5)),
            (Fraction(4, 3), Fraction(3, 2)),
        )

    def test_pgl_invariance(self):
        """normalize(T' . arrangement_of(p)) recovers p exactly."""
        rng = random.Random(7)
        cases = [(1, 3), (1, 5), (2, 4), (2, 6), (3, 5)]
        done = 0
        while done < 100:
            d, n = cases[done % len(cases)]
            par = random_parameter(d, n, rng)
            transform = rand_invertible(rng, d + 1)
            moved = Arrangement(d, tuple(
                Hyperplane(transform.matvec(q))
                for q in arrangement_of(par).duals
            ))
            _, recovered = normalize(moved)
            assert recovered == par
            done += 1

    def test_recorded_transform_recovers_canonical_duals(self, rng):
        for _ in range(25):
            d, n = rng.choice([(1, 4), (2, 5), (3, 5)])
            par = random_parameter(d, n, rng)
            transform = rand_invertible(rng, d + 1)
            moved = Arrangement(d, tuple(
                Hyperplane(transform.matvec(q))
                for q in arrangement_of(par).duals
            ))
            t, recovered = normalize(moved)
            canonical = arrangement_of(recovered).duals
            for q, target in zip(moved.duals, canonical):
                assert projective_normalize(t.matvec(q)) == target

    def test_not_in_general_position_raises(self):
        arr = Arrangement(1, (
            Hyperplane(F(1, 0)), Hyperplane(F(0, 1)),
            Hyperplane(F(1, 1)), Hyperplane(F(1, 1)),
        ))
        with pytest.raises(NotInGeneralPosition):
            normalize(arr)


class TestStandardParameter:
    def test_membership_examples(self):
        assert is_standard_parameter(StandardParameter(1, 3, ((Fraction(2),),)))
        assert not is_standard_parameter(StandardParameter(1, 3, ((Fraction(1),),)))
        assert not is_standard_parameter(
            StandardParameter(2, 5, ((Fraction(1), Fraction(1)), (Fraction(2), Fraction(5))))
        )

    def test_arrangement_of_assembles_duals(self):
        par = StandardParameter(2, 4, ((Fraction(2), Fraction(3)),))
        duals = arrangement_of(par).duals
        expected = (F(*E1), F(*E2), F(*E3), F(*ONES), F(2, 3, 1))
        assert duals == tuple(projective_normalize(q) for q in expected)

    def test_single_point_space(self):
        par = StandardParameter(2, 3, ())
        assert is_standard_parameter(par)
        assert arrangement_of(par).duals == (F(*E1), F(*E2), F(*E3), F(*ONES))

    def test_dimension_validation(self):
        with pytest.raises(ValueError):
            StandardParameter(2, 4, ())
        with pytest.raises(ValueError):
            StandardParameter(2, 4, ((Fraction(1),),))

    def test_json_round_trip(self, rng):
        par = random_parameter(2, 5, rng)
        assert StandardParameter.from_json(par.to_json()) == par

    def test_columns_round_trip(self, rng):
        par = random_parameter(3, 6, rng)
        assert StandardParameter.from_columns(par.d, par.n, par.columns) == par
