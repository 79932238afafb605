"""Full minimization (degree >= 2), degree-1 classification, and the
stability thresholds."""

from fractions import Fraction

import pytest

from conftest import (
    example_21,
    example_22,
    example_23,
    example_24,
    example_25,
    example_26,
    example_27,
    random_valid_pair,
)
from minres.analysis import (
    AnalyzeConfig,
    analyze,
    classify_mobius,
    stability_bounds,
    stability_f,
)
from minres.dynrep import (
    Direction,
    HomogPair,
    TypeIIPoint,
    classify_direction,
    conjugate,
    good_reduction_check,
    normalize,
    ordres_at,
    rho_to_gauss,
    same_point,
    translate,
)
from minres.padic import LocalField, elt_val

F = Fraction


class TestStabilityBounds:
    def test_f_values(self):
        assert stability_f(2) == F(13, 4)
        assert stability_f(3) == F(13, 6)
        assert 1 < stability_f(5) < 2

    def test_threshold_example(self):
        eval_t, minres_t = stability_bounds(2, 2, 4)
        assert eval_t == F(13, 2)  # max(2, (2 + 6*4)/4)
        assert minres_t == F(13, 2)


class TestAnalyzeExamples:
    def test_example_21(self):
        rep = analyze(example_21())
        assert rep.min_value == 0 and rep.pgr
        assert rep.locus.kind == "point"
        P = rep.locus.anchors[0]
        assert P.s == F(-1, 3)  # path parameter t = 1/3
        assert rep.extension_degree == 3
        conj, _ = normalize(conjugate(normalize(example_21())[0], rep.gamma))
        assert good_reduction_check(conj)

    def test_example_22(self):
        rep = analyze(example_22())
        assert rep.min_value == 0 and rep.pgr
        assert rep.locus.kind == "point"
        P = rep.locus.anchors[0]
        assert P.s == -1  # radius 1/2
        # center is congruent to a square root of -1 within the radius
        c = P.center
        v = (c * c + 1).val_repr()
        assert v.is_infinite or v.finite >= 1
        conj, _ = normalize(conjugate(normalize(example_22())[0], rep.gamma))
        assert good_reduction_check(conj)

    @pytest.mark.parametrize("p", [3, 5])
    def test_example_23(self, p):
        rep = analyze(example_23(p))
        assert rep.min_value == p and not rep.pgr
        assert rep.locus.kind == "point"
        assert same_point(rep.locus.anchors[0], TypeIIPoint(0, 0), p)

    def test_example_24(self):
        rep = analyze(example_24())
        assert rep.min_value == 3 and not rep.pgr
        assert rep.locus.kind == "point"
        assert rep.locus.anchors[0].s == F(3, 2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_example_25(self, n):
        rep = analyze(example_25(n))
        assert rep.min_value == 4 * n
        assert rep.locus.kind == "segment"
        assert sorted(a.s for a in rep.locus.anchors) == [F(-n), F(n)]
        for a in rep.locus.anchors:
            assert same_point(a, TypeIIPoint(0, a.s), 3)

    def test_example_26(self):
        rep = analyze(example_26())
        assert rep.min_value == F(8, 3) and not rep.pgr
        assert rep.locus.kind == "point"
        assert rep.locus.anchors[0].s == F(4, 3)

    def test_example_27_oracle_derived_segment(self):
        rep = analyze(example_27())
        assert rep.min_value == 6
        assert rep.locus.kind == "segment"
        assert sorted(a.s for a in rep.locus.anchors) == [F(-1), F(1)]


class TestAnalyzeInvariants:
    def test_rebase_invariance(self, rng):
        for _ in range(12):
            pair = random_valid_pair(rng, lo=-9, hi=9)
            base_rep = analyze(pair)
            aprime = rng.choice([F(0), F(1), F(-1)])
            rep2 = analyze(pair, config=AnalyzeConfig(rebase_at=aprime))
            assert rep2.min_value == base_rep.min_value
            assert rep2.locus.kind == base_rep.locus.kind
            assert sorted(a.s for a in rep2.locus.anchors) == sorted(
                a.s for a in base_rep.locus.anchors
            )

    def test_anchor_radius_bound_and_value(self, rng):
        norm_pairs = [normalize(random_valid_pair(rng))[0] for _ in range(15)]
        for pair in norm_pairs:
            rep = analyze(pair)
            R = rep.ordres_at_gauss
            for a in rep.locus.anchors:
                assert rho_to_gauss(a, pair.p) <= F(2, pair.d - 1) * R
                assert ordres_at(pair, a) == rep.min_value

    def test_even_degree_point_locus(self, rng):
        for _ in range(12):
            pair = random_valid_pair(rng, d=rng.choice([2, 4]))
            assert analyze(pair).locus.kind == "point"

    def test_min_zero_point_and_good_reduction(self, rng):
        seen = 0
        for _ in range(60):
            pair = random_valid_pair(rng)
            rep = analyze(pair)
            if rep.min_value != 0:
                continue
            seen += 1
            assert rep.locus.kind == "point" and rep.pgr
            conj, _ = normalize(conjugate(normalize(pair)[0], rep.gamma))
            assert good_reduction_check(conj)
        assert seen >= 3  # the distribution produces plenty of these

    def test_direction_increase_off_anchors(self):
        # at the segment ends of the oracle-arbitrated example, every
        # direction except the one into the segment strictly increases
        rep = analyze(example_27())
        pair, _ = normalize(example_27())
        lo = min(rep.locus.anchors, key=lambda a: a.s)
        hi = max(rep.locus.anchors, key=lambda a: a.s)
        base = LocalField(5)
        # lower endpoint (0, s=-1): inward direction is at infinity
        from minres.analysis import _gamma_at

        gm_lo, _ = _gamma_at(F(0), lo.s, 5, 16)
        anchored_lo, _ = normalize(conjugate(pair, gm_lo))
        kinds = {"inf": classify_direction(anchored_lo, Direction.at_infinity())}
        for b in range(5):
            kinds[b] = classify_direction(
                anchored_lo, Direction.residue_class(base.embed(b))
            )
        assert kinds["inf"] == "constant"
        assert all(v == "increasing" for k, v in kinds.items() if k != "inf")
        # upper endpoint (0, s=1): inward direction is the residue class of 0
        gm_hi, _ = _gamma_at(F(0), hi.s, 5, 16)
        anchored_hi, _ = normalize(conjugate(pair, gm_hi))
        kinds = {"inf": classify_direction(anchored_hi, Direction.at_infinity())}
        for b in range(5):
            kinds[b] = classify_direction(
                anchored_hi, Direction.residue_class(base.embed(b))
            )
        assert kinds[0] == "constant"
        assert all(v == "increasing" for k, v in kinds.items() if k != 0)


class TestDegreeOne:
    def test_identity(self):
        rep = classify_mobius(HomogPair(1, [1, 0], [0, 1], 5))
        assert rep.locus.kind == "everything" and rep.min_value == 0

    def test_multiplication_by_p(self):
        rep = classify_mobius(HomogPair(1, [7, 0], [0, 1], 7))
        assert rep.locus.kind == "path" and rep.min_value == 1
        assert rep.pgr is False

    def test_translation(self):
        rep = classify_mobius(HomogPair(1, [1, 1], [0, 1], 3))
        assert rep.locus.kind == "horodisc" and rep.min_value == 0
        assert rep.radius_codiam() if False else rep.locus.radius == 0  # codiameter 1

    def test_strong_tube(self):
        rep = classify_mobius(HomogPair(1, [1 + 5, 0], [0, 1], 5))
        assert rep.locus.kind == "strong_tube"
        assert rep.min_value == 0 and rep.locus.radius == 1

    def test_tube_value_profile(self):
        # the flat region of (1+p)z: value 0 within distance 1 of the spine
        pair, _ = normalize(HomogPair(1, [6, 0], [0, 1], 5))
        assert ordres_at(pair, TypeIIPoint(0, 0)) == 0
        assert ordres_at(pair, TypeIIPoint(F(1), F(-1))) == 0     # on the tube wall
        assert ordres_at(pair, TypeIIPoint(F(1), F(-2))) == 2     # outside
