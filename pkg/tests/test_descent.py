"""The rational-point steepest-descent walk."""

from fractions import Fraction

import pytest

from conftest import (
    example_21,
    example_22,
    example_23,
    example_24,
    example_25,
    random_valid_pair,
)
from minres.analysis import analyze
from minres.descent import BReport, descend
from minres.dynrep import MobiusMap, conjugate, normalize, ordres
from minres.padic import ordp

F = Fraction


class TestExamples:
    def test_example_22(self):
        rep = descend(example_22())
        assert rep.hv_min == 2 and rep.absolute is False
        # the rational minimum sits at the base point
        assert rep.s == 0 and ordp(rep.center, 2) >= 0

    def test_example_24_tie_break(self):
        rep = descend(example_24())
        assert rep.hv_min == 6 and rep.absolute is False
        # chi ties at radii p and p^2; the smaller |k| wins
        assert rep.center == 0 and rep.s == 1

    @pytest.mark.parametrize("p", [3, 5])
    def test_example_23(self, p):
        rep = descend(example_23(p))
        assert rep.hv_min == p and rep.absolute is True
        assert rep.s == 0

    def test_example_21(self):
        rep = descend(example_21())
        assert rep.hv_min == 2 and rep.absolute is False

    def test_example_25_segment_contains_base(self):
        rep = descend(example_25(1))
        assert rep.hv_min == 4 and rep.absolute is True


class TestInvariants:
    def test_gamma_realizes_hv_min(self, rng):
        for _ in range(25):
            pair = random_valid_pair(rng)
            rep = descend(pair)
            conj, _ = normalize(conjugate(normalize(pair)[0], rep.gamma))
            assert ordres(conj) == rep.hv_min
            assert rep.hv_min == int(rep.hv_min)  # integer-valued over Q_p points

    def test_consistency_with_analyze(self, rng):
        for _ in range(25):
            pair = random_valid_pair(rng)
            arep = analyze(pair)
            brep = descend(pair)
            assert brep.hv_min >= arep.min_value
            assert (brep.hv_min == arep.min_value) == brep.absolute

    def test_trace_monotone_and_bounded(self, rng):
        for _ in range(30):
            pair = random_valid_pair(rng)
            pairn, _ = normalize(pair)
            R0 = ordres(pairn).finite
            rep = descend(pair)
            rs = [st.r_after for st in rep.trace]
            for prev, cur in zip([R0] + rs, rs):
                # strictly decreasing except possibly the final bracketing leg
                if cur is not rs[-1]:
                    assert cur < prev or (cur, prev) == (rs[-1], prev)
            for prev, cur in zip(rs, rs[1:-1] if len(rs) > 2 else []):
                assert cur < prev
            if pair.d > 1:
                assert len(rep.trace) <= 2 * R0 / (pair.d - 1) + 2

    def test_conjugation_invariance_of_minimum(self, rng):
        for _ in range(15):
            pair = random_valid_pair(rng, lo=-9, hi=9)
            p = pair.p
            while True:
                ents = [F(rng.randint(-15, 15)) for _ in range(4)]
                gm = MobiusMap(*ents)
                if gm.det() != 0 and ordp(gm.det(), p) == 0 and all(
                    ordp(x, p) >= 0 for x in ents
                ):
                    break
            moved, _ = normalize(conjugate(normalize(pair)[0], gm))
            assert descend(moved).hv_min == descend(pair).hv_min
