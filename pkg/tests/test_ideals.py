"""
Unit tests for the ideals module.

This module tests monomial ideals, the Stanley–Reisner correspondence,
symbolic powers, contractions and the Betti-number oracle.
"""

import unittest

from hypothesis import given, settings

from tests.strategies import proper_complexes

PATH3_FACETS = ((1, 3), (2,))


class TestMonomialIdeal(unittest.TestCase):
    """Test cases for MonomialIdeal validation and predicates."""

    def test_generated_by_minimalizes(self) -> None:
        """
        Test that redundant generators are dropped and the rest sorted.
        """
        from symreg.ideals import MonomialIdeal

        ideal = MonomialIdeal.generated_by(2, [(1, 1), (1, 0), (0, 2)])
        assert ideal.generators == ((1, 0), (0, 2))

    def test_non_minimal_generators_rejected(self) -> None:
        """
        Test that the constructor insists on a minimal generating set.
        """
        from symreg.ideals import InvalidIdealError, MonomialIdeal

        with self.assertRaises(InvalidIdealError):
            MonomialIdeal(2, ((1, 0), (1, 1)))

    def test_wrong_length_and_negative_exponent(self) -> None:
        """
        Test exponent vector validation.
        """
        from symreg.ideals import InvalidIdealError, MonomialIdeal

        with self.assertRaises(InvalidIdealError):
            MonomialIdeal(2, ((1, 0, 0),))
        with self.assertRaises(InvalidIdealError):
            MonomialIdeal(2, ((-1, 0),))

    def test_zero_and_unit(self) -> None:
        """
        Test the zero and unit ideals and their rejection by d(I).
        """
        from symreg.ideals import InvalidIdealError, MonomialIdeal, max_gen_degree

        zero = MonomialIdeal(2, ())
        unit = MonomialIdeal(2, ((0, 0),))
        assert zero.is_zero
        assert unit.is_unit
        for ideal in (zero, unit):
            with self.assertRaises(InvalidIdealError):
                max_gen_degree(ideal)

    def test_membership(self) -> None:
        """
        Test x^a ∈ I by divisibility.
        """
        from symreg.ideals import MonomialIdeal

        ideal = MonomialIdeal.generated_by(3, [(1, 1, 0), (0, 1, 1)])
        assert ideal.contains((2, 1, 0))
        assert not ideal.contains((1, 0, 1))
        assert ideal.is_squarefree


class TestStanleyReisner(unittest.TestCase):
    """Test cases for the Stanley–Reisner map and its inverse."""

    def test_stanley_reisner_of_path_complex(self) -> None:
        """
        Test I_Δ = (x2x3, x1x2) for Δ = ⟨{1,3},{2}⟩.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import stanley_reisner

        ideal = stanley_reisner(SimplicialComplex(3, PATH3_FACETS))
        assert ideal.generators == ((0, 1, 1), (1, 1, 0))

    def test_complex_of_uses_radical(self) -> None:
        """
        Test that Δ(√I) of (x1²x2) is ⟨{1},{2}⟩.
        """
        from symreg.ideals import MonomialIdeal, complex_of

        assert complex_of(MonomialIdeal(2, ((2, 1),))).facets == ((1,), (2,))

    def test_edge_ideal(self) -> None:
        """
        Test I(H) of the path 1–2–3.
        """
        from symreg.combinatorics import Hypergraph
        from symreg.ideals import edge_ideal

        assert edge_ideal(Hypergraph(3, ((1, 2), (2, 3)))).generators == ((0, 1, 1), (1, 1, 0))

    def test_void_rejected(self) -> None:
        """
        Test that the void complex has no Stanley–Reisner ideal here.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import InvalidIdealError, stanley_reisner

        with self.assertRaises(InvalidIdealError):
            stanley_reisner(SimplicialComplex.void(2))

    @given(proper_complexes())
    @settings(max_examples=60, deadline=None)
    def test_complex_of_inverts_stanley_reisner(self, delta) -> None:
        """
        Property: Δ(I_Δ) = Δ.
        """
        from symreg.ideals import complex_of, stanley_reisner

        assert complex_of(stanley_reisner(delta)) == delta


class TestSymbolicPowers(unittest.TestCase):
    """Test cases for symbolic powers and membership."""

    def test_symbolic_square_of_path_complex(self) -> None:
        """
        Test I^(2) = x2²·(x1, x3)² for Δ = ⟨{1,3},{2}⟩.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import symbolic_power

        ideal = symbolic_power(SimplicialComplex(3, PATH3_FACETS), 2)
        assert ideal.generators == ((0, 2, 2), (1, 2, 1), (2, 2, 0))

    def test_first_symbolic_power_is_the_ideal(self) -> None:
        """
        Test I^(1) = I_Δ on the hollow triangle.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import stanley_reisner, symbolic_power

        hollow = SimplicialComplex(3, ((1, 2), (1, 3), (2, 3)))
        assert symbolic_power(hollow, 1) == stanley_reisner(hollow)

    def test_symbolic_square_of_triangle_differs_from_square(self) -> None:
        """
        Test that for Δ = three points, x1x2x3 lies in I^(2) but not in I^2.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import contains, symbolic_power

        points = SimplicialComplex(3, ((1,), (2,), (3,)))
        assert contains(points, 2, (1, 1, 1))
        assert (1, 1, 1) in symbolic_power(points, 2).generators

    def test_non_positive_exponent_rejected(self) -> None:
        """
        Test that n must be positive.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import InvalidIdealError, symbolic_power

        with self.assertRaises(InvalidIdealError):
            symbolic_power(SimplicialComplex(3, PATH3_FACETS), 0)

    @given(proper_complexes(max_r=3))
    @settings(max_examples=40, deadline=None)
    def test_generators_are_minimal_members(self, delta) -> None:
        """
        Property: every generator of I^(n) is a member and no step down is.
        """
        from symreg.ideals import contains, symbolic_power

        for n in (1, 2, 3):
            for g in symbolic_power(delta, n).generators:
                assert contains(delta, n, g)
                for j, e in enumerate(g):
                    if e:
                        lowered = g[:j] + (e - 1,) + g[j + 1 :]
                        assert not contains(delta, n, lowered)

    @given(proper_complexes(max_r=4))
    @settings(max_examples=30, deadline=None)
    def test_membership_matches_divisibility_on_box(self, delta) -> None:
        """
        Property: on {0..n+1}^r the facet test and generator divisibility agree.
        """
        from itertools import product

        from symreg.ideals import contains, symbolic_power

        for n in (1, 2):
            ideal = symbolic_power(delta, n)
            for a in product(range(n + 2), repeat=delta.r):
                assert contains(delta, n, a) == ideal.contains(a), (n, a)

    @given(proper_complexes(max_r=4))
    @settings(max_examples=40, deadline=None)
    def test_generator_degrees(self, delta) -> None:
        """
        Property: generators of I^(n) have exponents ≤ n and degree ≥ n; d(I)·n ≤ d(I^(n)).
        """
        from symreg.ideals import max_gen_degree, stanley_reisner, symbolic_power

        d = max_gen_degree(stanley_reisner(delta))
        for n in (1, 2, 3):
            power = symbolic_power(delta, n)
            for g in power.generators:
                assert max(g) <= n
                assert sum(g) >= n
            assert d * n <= max_gen_degree(power)


class TestContraction(unittest.TestCase):
    """Test cases for setting variables to one."""

    def test_contraction_drops_variables(self) -> None:
        """
        Test J = (x1, x3) from (x1x2, x2x3) at σ = {2}, with index map.
        """
        from symreg.ideals import MonomialIdeal, contraction

        ideal = MonomialIdeal.generated_by(3, [(1, 1, 0), (0, 1, 1)])
        j = contraction(ideal, (2,))
        assert j.ideal.generators == ((0, 1), (1, 0))
        assert j.index_map == {1: 1, 3: 2}
        assert j.restrict((5, 6, 7)) == (5, 7)

    def test_contraction_reminimalizes(self) -> None:
        """
        Test that x2x3 disappears into x2 after setting x1 = 1.
        """
        from symreg.ideals import MonomialIdeal, contraction

        ideal = MonomialIdeal.generated_by(3, [(1, 1, 0), (0, 1, 1)])
        assert contraction(ideal, (1,)).ideal.generators == ((1, 0),)

    def test_full_contraction_rejected(self) -> None:
        """
        Test that σ may not be every variable.
        """
        from symreg.ideals import InvalidIdealError, MonomialIdeal, contraction

        ideal = MonomialIdeal.generated_by(2, [(1, 1)])
        with self.assertRaises(InvalidIdealError):
            contraction(ideal, (1, 2))


class TestBettiOracle(unittest.TestCase):
    """Test cases for upper Koszul complexes and Betti tables."""

    def test_upper_koszul_complex(self) -> None:
        """
        Test K^(1,1,1) of (x1x2, x2x3) is the two points {1} and {3}.
        """
        from symreg.ideals import MonomialIdeal, upper_koszul_facets

        ideal = MonomialIdeal.generated_by(3, [(1, 1, 0), (0, 1, 1)])
        assert upper_koszul_facets(ideal, (1, 1, 1)) == (0b001, 0b100)

    def test_betti_table_of_path(self) -> None:
        """
        Test the Betti table, regularity and projective dimension of (x1x2, x2x3).
        """
        from symreg.ideals import (
            MonomialIdeal,
            betti_table,
            pd_quotient_via_betti,
            reg_via_betti,
        )

        ideal = MonomialIdeal.generated_by(3, [(1, 1, 0), (0, 1, 1)])
        assert betti_table(ideal) == {
            (0, (0, 1, 1)): 1,
            (0, (1, 1, 0)): 1,
            (1, (1, 1, 1)): 1,
        }
        assert reg_via_betti(ideal) == 2
        assert pd_quotient_via_betti(ideal) == 2

    def test_regularity_of_symbolic_square(self) -> None:
        """
        Test reg(I^(2)) = 4 for Δ = ⟨{1,3},{2}⟩.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import reg_via_betti, symbolic_power

        assert reg_via_betti(symbolic_power(SimplicialComplex(3, PATH3_FACETS), 2)) == 4

    def test_betti_csv(self) -> None:
        """
        Test CSV rows and header of a Betti table.
        """
        from symreg.ideals import MonomialIdeal, betti_csv_header, betti_csv_rows, betti_table

        ideal = MonomialIdeal.generated_by(3, [(1, 1, 0), (0, 1, 1)])
        assert betti_csv_header(3) == ["i", "a_1", "a_2", "a_3", "beta"]
        assert betti_csv_rows(betti_table(ideal)) == [
            [0, 0, 1, 1, 1],
            [0, 1, 1, 0, 1],
            [1, 1, 1, 1, 1],
        ]

    def test_dim_quotient_and_degree(self) -> None:
        """
        Test dim(R/I_Δ) and d(I_Δ) on Δ = ⟨{1,3},{2}⟩.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.ideals import dim_quotient, max_gen_degree, stanley_reisner

        delta = SimplicialComplex(3, PATH3_FACETS)
        assert dim_quotient(delta) == 2
        assert max_gen_degree(stanley_reisner(delta)) == 2

    @given(proper_complexes(max_r=4))
    @settings(max_examples=40, deadline=None)
    def test_terai_duality(self, delta) -> None:
        """
        Property: reg(I_Δ) = pd(R/I_{Δ*}).
        """
        from symreg.combinatorics import alexander_dual
        from symreg.ideals import pd_quotient_via_betti, reg_via_betti, stanley_reisner

        dual = stanley_reisner(alexander_dual(delta))
        assert reg_via_betti(stanley_reisner(delta)) == pd_quotient_via_betti(dual)


if __name__ == "__main__":
    unittest.main()
