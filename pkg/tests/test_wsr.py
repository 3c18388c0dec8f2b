from fractions import Fraction

import pytest

from toricwsr import CharacteristicPair
from toricwsr.errors import DimensionMismatch, IndexOutOfRange
from toricwsr.lattice import Lattice, lattice_index, lattice_member, matvec
from toricwsr.wsr import (
    SRPolynomial,
    integrality_check,
    intersection_oracle,
    is_face,
    lattice_Li,
    phi,
    relation_lattice_K,
    substitute,
    vertex_substitution,
    wsr2_basis,
    wsr2_lattice,
    wsr2_member,
    wsr2_obstruction,
)

from conftest import box, cofactor_det, same_lattice

EX37_BASIS = ((-2, 1, 2, 1), (1, -2, 1, 2), (0, 15, 0, 0), (0, 21, -3, 0))
EX37_HNF = ((1, 1, 2, 7), (0, 3, 1, 5), (0, 0, 5, 10), (0, 0, 0, 15))
EX41_BASIS = ((-2, 1, 1, 0), (1, -2, 0, 1), (0, 3, -1, 0), (0, 0, 2, 0))


def brute_Li_member(pair, i, x):
    """x in L_i iff (x_i, x_{i+1}) = p λ_i + q λ_{i+1}-transposed, other coords free."""
    (a1, b1), (a2, b2) = pair.vector(i), pair.vector(i + 1)
    xi, xj = x[i - 1], x[i % pair.m]
    for p in range(-40, 41):
        for q in range(-40, 41):
            if a1 * p + b1 * q == xi and a2 * p + b2 * q == xj:
                return True
    return False


class TestLi:
    def test_first_block(self, ex37):
        L = lattice_Li(ex37, 1)
        rows = ((-2, 1, 0, 0), (1, -2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        assert L == Lattice.from_generators(rows)
        assert lattice_index(L) == 3 == abs(cofactor_det(rows))

    def test_wraparound_block(self, ex37):
        assert lattice_index(lattice_Li(ex37, 4)) == 5

    def test_smooth_vertex_is_everything(self, ex41):
        assert lattice_Li(ex41, 3) == Lattice.full(4)

    def test_out_of_range(self, ex37):
        with pytest.raises(IndexOutOfRange):
            lattice_Li(ex37, 0)

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_against_coordinate_condition(self, ex37, i):
        L = lattice_Li(ex37, i)
        for x in box(4, 2):
            assert lattice_member(L, x) == brute_Li_member(ex37, i, x)


class TestK:
    def test_example(self, ex37):
        K = relation_lattice_K(ex37)
        assert same_lattice(K, ((5, 4, 3, 0), (7, 5, 5, -1)), 4)

    def test_standard_position_example(self, ex41):
        K = relation_lattice_K(ex41)
        assert same_lattice(K, ((1, 0, 2, -1), (0, 1, -1, 2)), 4)

    def test_rank(self):
        pair = CharacteristicPair(((3, 5), (-2, 7), (1, 1), (4, -9), (0, 1), (-5, -3)))
        K = relation_lattice_K(pair)
        assert len(K) == 4
        assert all(matvec(pair.matrix, t) == (0, 0) for t in K)

    def test_saturated(self):
        pair = CharacteristicPair(((1, 2), (2, 1), (1, -1)))
        L = Lattice.from_generators(relation_lattice_K(pair), 3)
        for x in box(3, 6):
            if matvec(pair.matrix, x) == (0, 0):
                assert lattice_member(L, x)


class TestPhi:
    def test_example(self, ex37):
        assert phi(ex37, (5, 4, 3, 0)) == (0, 15, 0, 0)
        assert phi(ex37, (7, 5, 5, -1)) == (0, 21, -3, 0)

    def test_standard_example(self, ex41):
        assert phi(ex41, (1, 0, 2, -1)) == (0, 3, -1, 0)
        assert phi(ex41, (0, 1, -1, 2)) == (0, 0, 2, 0)

    def test_zero(self, ex37):
        assert phi(ex37, (0, 0, 0, 0)) == (0, 0, 0, 0)

    def test_dimension(self, ex37):
        with pytest.raises(DimensionMismatch):
            phi(ex37, (1, 2, 3))


class TestBasis:
    def test_example(self, ex37):
        basis = wsr2_basis(ex37)
        assert basis.lattice() == Lattice.from_generators(EX37_BASIS)
        assert basis.lattice().basis == EX37_HNF
        assert same_lattice(basis.vectors, EX37_BASIS, 4)
        assert basis.even_cohomology

    def test_standard_example(self, ex41):
        assert wsr2_lattice(ex41) == Lattice.from_generators(EX41_BASIS)

    def test_smooth(self, smooth4):
        basis = wsr2_basis(smooth4)
        assert basis.lattice() == Lattice.full(4)
        assert abs(basis.determinant()) == 1

    def test_flag_off_with_torsion(self):
        pair = CharacteristicPair(((1, 2), (2, 1), (1, -1)))
        assert not wsr2_basis(pair).even_cohomology


class TestOracle:
    def test_example(self, ex37):
        assert intersection_oracle(ex37).basis == EX37_HNF

    def test_standard_example(self, ex41):
        assert intersection_oracle(ex41) == wsr2_lattice(ex41)

    def test_smooth(self, smooth4):
        assert intersection_oracle(smooth4) == Lattice.full(4)

    def test_brute_force_intersection(self, ex41):
        # every small vector lies in all L_i exactly when it is in the oracle lattice
        L = intersection_oracle(ex41)
        for x in box(4, 3):
            in_all = all(brute_Li_member(ex41, i, x) for i in range(1, 5))
            assert lattice_member(L, x) == in_all


class TestSubstitution:
    def test_first_vertex(self, ex37):
        z = vertex_substitution(ex37, 1)
        assert z[0] == {(1, 0): Fraction(-2, 3), (0, 1): Fraction(-1, 3)}
        assert z[1] == {(1, 0): Fraction(-1, 3), (0, 1): Fraction(-2, 3)}
        assert z[2] == z[3] == {}

    def test_identity_chart(self, ex41):
        z = vertex_substitution(ex41, 3)
        assert z == ({}, {}, {(1, 0): 1}, {(0, 1): 1})

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_recovers_u(self, ex37, i):
        assert substitute(ex37, SRPolynomial.linear(ex37.a), i) == {(1, 0): 1}
        assert substitute(ex37, SRPolynomial.linear(ex37.b), i) == {(0, 1): 1}


class TestIntegrality:
    def test_x3_fails_at_vertex_2(self, ex41):
        res = integrality_check(ex41, SRPolynomial.linear((0, 0, 1, 0)))
        assert not res.passed
        assert res.witness.vertex == 2
        # z_3 = u_1 + u_2 / 2 at vertex 2
        assert vertex_substitution(ex41, 2)[2] == {(1, 0): 1, (0, 1): Fraction(1, 2)}
        assert res.witness.coefficient == Fraction(1, 2)

    def test_2x3_passes(self, ex41):
        assert integrality_check(ex41, SRPolynomial.linear((0, 0, 2, 0))).passed

    def test_x3x4_passes(self, ex41):
        f = SRPolynomial.monomial(4, (3, 4))
        assert integrality_check(ex41, f).passed
        assert substitute(ex41, f, 3) == {(1, 1): 1}

    def test_nonface_monomial_vanishes(self, ex37):
        f = SRPolynomial.monomial(4, (1, 3), coeff=7)
        for i in range(1, 5):
            assert substitute(ex37, f, i) == {}

    def test_higher_degree(self, ex37):
        # x_1 lives in the charts at vertex 1 (det 3) and vertex 4 (det 5)
        assert not integrality_check(ex37, SRPolynomial.monomial(4, (1, 1, 1))).passed
        res = integrality_check(ex37, SRPolynomial.monomial(4, (1, 1, 1), coeff=27))
        assert res.witness.vertex == 4
        assert integrality_check(ex37, SRPolynomial.monomial(4, (1, 1, 1), coeff=27 * 125)).passed

    def test_wrong_arity(self, ex37):
        with pytest.raises(DimensionMismatch):
            integrality_check(ex37, SRPolynomial.linear((1, 2, 3)))


class TestMember:
    def test_basis_member(self, ex37):
        assert wsr2_member(ex37, (0, 15, 0, 0))

    def test_nonmember(self, ex37):
        assert not wsr2_member(ex37, (0, 1, 0, 0))
        assert wsr2_obstruction(ex37, (0, 1, 0, 0))[:2] == (1, Fraction(-1, 3))

    def test_a_is_member(self, ex37):
        assert wsr2_member(ex37, ex37.a)

    def test_dimension(self, ex37):
        with pytest.raises(DimensionMismatch):
            wsr2_member(ex37, (1, 2))

    def test_triangle_agrees(self, ex37):
        L = wsr2_lattice(ex37)
        for c in box(4, 2):
            expect = lattice_member(L, c)
            assert wsr2_member(ex37, c) == expect
            assert integrality_check(ex37, SRPolynomial.linear(c)).passed == expect


class TestFace:
    def test_opposite(self, ex37):
        assert not is_face(ex37, {1, 3})

    def test_adjacent(self, ex37):
        assert is_face(ex37, {2, 3})
        assert is_face(ex37, {4, 1})

    def test_triple(self, ex37):
        assert not is_face(ex37, {1, 2, 3})

    def test_small(self, ex37):
        assert is_face(ex37, set()) and is_face(ex37, {2})

    def test_triangle(self):
        pair = CharacteristicPair(((1, 0), (0, 1), (-1, -1)))
        assert is_face(pair, {1, 3})


class TestSRPolynomial:
    def test_zero_terms_dropped(self):
        f = SRPolynomial({(1, 0): 2, (0, 1): 0}, 2)
        assert f.terms == {(1, 0): 2}
        assert (f + SRPolynomial({(1, 0): -2}, 2)).terms == {}

    def test_product(self):
        x = SRPolynomial.linear((1, 1))
        sq = x * x
        assert sq.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
        assert repr(sq) == "1*x1^2 + 2*x1*x2 + 1*x2^2"

    def test_order(self):
        f = SRPolynomial({(0, 1): 1, (2, 0): 3, (1, 0): -1}, 2)
        assert [e for e, _ in f.sorted_terms()] == [(2, 0), (1, 0), (0, 1)]
