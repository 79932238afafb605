"""Brute-force verifiers: the rational grid and the direct-determinant check
of the transformation law."""

from fractions import Fraction

from conftest import example_21, example_23, example_27, random_valid_pair
from minres.analysis import analyze
from minres.dynrep import (
    HomogPair,
    MobiusMap,
    TypeIIPoint,
    normalize,
    ordres_at,
)
from minres.oracle import GridSpec, check_transformation_law, grid_min

F = Fraction


class TestGridMin:
    def test_example_23(self):
        best, argmin = grid_min(example_23(3), spec=GridSpec(1, F(-2), F(2), F(1, 2)))
        assert best == 3
        assert (F(0), F(0)) in argmin

    def test_example_27_arbitrates_the_interval(self):
        best, argmin = grid_min(example_27(), spec=GridSpec(1, F(-2), F(2), F(1, 2)))
        assert best == 6
        zero_centered = sorted(s for b, s in argmin if b == 0)
        assert zero_centered == [F(k, 2) for k in range(-2, 3)]  # s in [-1, 1]

    def test_trivial_map(self):
        best, argmin = grid_min(
            HomogPair(2, [1, 0, 0], [0, 0, 1], 3), spec=GridSpec(1, F(-1), F(1), F(1))
        )
        assert best == 0 and (F(0), F(0)) in argmin

    def test_grid_matches_direct_evaluation(self, rng):
        for _ in range(6):
            pair = random_valid_pair(rng, lo=-9, hi=9)
            pairn, _ = normalize(pair)
            spec = GridSpec(1, F(-3, 2), F(3, 2), F(1, 2))
            best, argmin = grid_min(pair, spec=spec)
            for b, s in argmin[:3]:
                assert ordres_at(pairn, TypeIIPoint(b, s)) == best
            # spot-check an arbitrary non-argmin grid point as well
            b, s = rng.randrange(pair.p), F(rng.randint(-3, 3), 2)
            direct = ordres_at(pairn, TypeIIPoint(F(b), s))
            assert direct >= best

    def test_never_below_analyze(self, rng):
        for _ in range(8):
            pair = random_valid_pair(rng)
            rep = analyze(pair)
            best, _ = grid_min(pair, spec=GridSpec(1, F(-2), F(2), F(1, 2)))
            assert best >= rep.min_value


class TestTransformationLaw:
    def test_identity(self):
        pair, _ = normalize(example_21())
        assert check_transformation_law(pair, MobiusMap.identity())

    def test_example_21_diag(self):
        pair, _ = normalize(example_21())
        gm = MobiusMap(F(5), F(0), F(0), F(1))
        assert check_transformation_law(pair, gm)

    def test_random_exact(self, rng):
        for _ in range(40):
            pair = random_valid_pair(rng, d=2, lo=-9, hi=9)
            while True:
                gm = MobiusMap(*[F(rng.randint(-9, 9)) for _ in range(4)])
                if gm.det() != 0:
                    break
            assert check_transformation_law(pair, gm)
