import pytest

from toricwsr import CharacteristicPair, InvalidPair
from toricwsr.errors import GenerationFailed, IndexOutOfRange, NoSmoothVertex
from toricwsr.lattice import determinant, snf
from toricwsr.pair import (
    det2,
    even_cohomology_check,
    minor_gcd,
    normalize_smooth,
    random_pair,
    validate,
    vertex_chart,
    vertex_charts,
)

from conftest import EXAMPLE_37, EXAMPLE_41, SMOOTH_4


class TestValidate:
    def test_example_is_valid(self):
        pair = validate(EXAMPLE_37)
        assert isinstance(pair, CharacteristicPair)
        assert pair.m == 4
        assert pair.a == (-2, 1, 2, 1) and pair.b == (1, -2, 1, 2)

    def test_not_primitive(self):
        out = validate([(2, 4), (1, 0), (0, 1)])
        assert [(v.kind, v.index) for v in out] == [("NotPrimitive", 1)]

    def test_degenerate_vertex(self):
        out = validate([(1, 0), (-1, 0), (0, 1)])
        assert [(v.kind, v.index) for v in out] == [("DegenerateVertex", 1)]

    def test_too_few_edges(self):
        out = validate([(1, 0), (0, 1)])
        assert [v.kind for v in out] == ["TooFewEdges"]

    def test_all_violations_reported(self):
        out = validate([(0, 0), (3, 6), (1, 0), (2, 0)])
        kinds = {(v.kind, v.index) for v in out}
        assert ("ZeroVector", 1) in kinds
        assert ("NotPrimitive", 2) in kinds
        assert ("DegenerateVertex", 3) in kinds

    def test_malformed_entries(self):
        out = validate([(1, 0), (0, 1, 2), ("x", 1)])
        assert [v.kind for v in out][:2] == ["Malformed", "Malformed"]

    def test_constructor_raises(self):
        with pytest.raises(InvalidPair) as info:
            CharacteristicPair(((2, 4), (1, 0), (0, 1)))
        assert info.value.violations[0].kind == "NotPrimitive"

    def test_huge_entries(self):
        big = 2**80 + 1
        pair = validate([(big, 1), (1, 0), (0, 1)])
        assert isinstance(pair, CharacteristicPair)
        assert pair.vertex_det(1) == -1


class TestTopology:
    def test_example(self, ex37):
        rep = even_cohomology_check(ex37)
        assert (rep.minor_gcd, rep.h3_invariants, rep.even_cohomology) == (1, (), True)

    def test_torsion(self):
        rep = even_cohomology_check(CharacteristicPair(((1, 2), (2, 1), (1, -1))))
        assert (rep.minor_gcd, rep.h3_invariants, rep.even_cohomology) == (3, (3,), False)

    def test_contains_standard_basis(self):
        pair = CharacteristicPair(((5, 7), (1, 0), (0, 1), (-3, -4)))
        assert even_cohomology_check(pair).even_cohomology

    def test_minor_gcd_equals_snf_product(self):
        for seed in range(60):
            pair = random_pair(3 + seed % 5, 6, seed)
            d1, d2 = snf(pair.matrix).diagonal
            assert minor_gcd(pair) == d1 * d2


class TestCharts:
    def test_first_vertex(self, ex37):
        chart = vertex_chart(ex37, 1)
        assert chart.A == ((-2, 1), (1, -2))
        assert chart.det == 3

    def test_standard_vertex(self, ex41):
        chart = vertex_chart(ex41, 3)
        assert chart.A == ((1, 0), (0, 1)) and chart.det == 1

    def test_wraparound(self, ex37):
        assert vertex_chart(ex37, 4).det == 5  # 1*1 - (-2)*2

    def test_all_nonzero(self, ex37):
        charts = vertex_charts(ex37)
        assert [c.det for c in charts] == [3, 5, 3, 5]
        assert all(determinant(c.A) == c.det for c in charts)

    def test_out_of_range(self, ex37):
        with pytest.raises(IndexOutOfRange):
            vertex_chart(ex37, 5)


class TestNormalizeSmooth:
    def test_already_standard(self, ex41):
        res = normalize_smooth(ex41)
        assert res.g == ((1, 0), (0, 1)) and res.rotation == 0
        assert res.pair == ex41

    def test_rotation(self, smooth4):
        res = normalize_smooth(smooth4)
        assert res.rotation == 2
        assert res.g == ((1, 0), (0, 1))
        assert res.pair.lambdas == ((-1, 1), (0, -1), (1, 0), (0, 1))

    def test_no_smooth_vertex(self, ex37):
        with pytest.raises(NoSmoothVertex):
            normalize_smooth(ex37)

    def test_nontrivial_g(self):
        pair = CharacteristicPair(((3, 1), (2, 1), (-1, -1), (1, -4)))
        res = normalize_smooth(pair)
        assert res.pair.in_standard_position()
        assert abs(determinant(res.g)) == 1
        m = pair.m
        for k in range(m):
            a, b = pair.lambdas[(k + res.rotation) % m]
            g = res.g
            assert res.pair.lambdas[k] == (g[0][0] * a + g[0][1] * b, g[1][0] * a + g[1][1] * b)

    def test_preserves_det_multiset(self):
        for seed in range(200):
            pair = random_pair(3 + seed % 6, 2, seed)
            try:
                res = normalize_smooth(pair)
            except NoSmoothVertex:
                continue
            assert abs(determinant(res.g)) == 1
            assert sorted(map(abs, pair.vertex_dets())) == sorted(map(abs, res.pair.vertex_dets()))


class TestRandomPair:
    def test_deterministic(self):
        assert random_pair(4, 2, 1) == random_pair(4, 2, 1)

    def test_valid_and_bounded(self):
        for m in range(3, 9):
            for bound in (1, 3, 9):
                for seed in range(5):
                    pair = random_pair(m, bound, seed)
                    assert isinstance(validate(pair.lambdas), CharacteristicPair)
                    assert all(abs(x) <= bound for v in pair.lambdas for x in v)

    def test_unit_bound(self):
        allowed = {(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1) if (a, b) != (0, 0)}
        for k in range(30):
            assert set(random_pair(3, 1, k).lambdas) <= allowed

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            random_pair(2, 3, 0)

    def test_retry_cap(self, monkeypatch):
        import toricwsr.pair as mod

        monkeypatch.setattr(mod.random.Random, "randint", lambda self, lo, hi: 0)
        with pytest.raises(GenerationFailed):
            random_pair(3, 2, 0)


def test_det2_antisymmetric():
    assert det2((1, 2), (3, 4)) == -det2((3, 4), (1, 2)) == -2
